//! Fast self-checks of the library against published or hand-derived values.

use pals::drivers::{beta_fixed, beta_increasing};
use pals::gp::{FoldedData, GpModel, KernelParams, ObservationStore};
use pals::metrics::{dominated_volume_2d, symmetric_difference_volume, DEFAULT_REFERENCE};
use pals::pareto::{classify, pareto_indices, rectangle_from_posterior, MarginVector};
use pals::problems::{BenchmarkProblem, InputGrid, Problem, ProblemId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Pareto-set sizes of the nine problems against `expected(id)`.
pub fn cardinality_checks(expected: impl Fn(ProblemId) -> usize) -> Vec<Check> {
    ProblemId::all()
        .map(|id| match BenchmarkProblem::new(id) {
            Ok(p) => {
                let got = p.truth().pareto_set.len();
                let want = expected(id);
                Check::new(format!("cardinality {id}"), got == want, format!("{got} Pareto points, expected {want}"))
            }
            Err(e) => Check::new(format!("cardinality {id}"), false, e.to_string()),
        })
        .collect()
}

fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1e-300)).fold(0.0, f64::max)
}

/// Folded posterior against the posterior of the same observations kept
/// one per row.
fn folding_check() -> Check {
    let grid = InputGrid::regular_2d(21);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let m = rng.gen_range(2..=20);
        let mut store = ObservationStore::new(grid.len(), 1);
        let (mut idx, mut ones, mut raw) = (Vec::new(), Vec::new(), Vec::new());
        for _ in 0..m {
            let i = rng.gen_range(0..grid.len());
            let rows: Vec<Vec<f64>> = (0..rng.gen_range(1..=10)).map(|_| vec![rng.gen_range(-1.0..1.0)]).collect();
            for r in &rows {
                idx.push(i);
                ones.push(1);
                raw.push(r[0]);
            }
            store.fold(i, &rows).expect("valid index");
        }
        let params = KernelParams::new(rng.gen_range(0.2..2.0), vec![rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0)], rng.gen_range(0.05..0.5))
            .expect("positive params");
        let full = FoldedData::from_means(idx, ones, raw).expect("equal lengths");
        let (Ok(a), Ok(b)) = (GpModel::fit(&store.folded(0), &grid, &params), GpModel::fit(&full, &grid, &params)) else {
            return Check::new("replicate folding", false, "factorization failed");
        };
        let pts: Vec<&[f64]> = grid.points().iter().map(Vec::as_slice).collect();
        let (ma, va) = a.predict(&pts);
        let (mb, vb) = b.predict(&pts);
        let sa: Vec<f64> = va.iter().map(|v| v.sqrt()).collect();
        let sb: Vec<f64> = vb.iter().map(|v| v.sqrt()).collect();
        worst = worst.max(max_rel(&ma, &mb)).max(max_rel(&sa, &sb));
    }
    Check::new("replicate folding", worst <= 1e-8, format!("max relative difference {worst:.2e} over 20 instances"))
}

fn metric_checks() -> Vec<Check> {
    let r = DEFAULT_REFERENCE;
    let single = symmetric_difference_volume(&[vec![0.0, 0.0]], &[vec![0.1, 0.1]], r).unwrap_or(f64::NAN);
    let stair = dominated_volume_2d(&[vec![0.0, 0.5], vec![0.5, 0.0]], r).unwrap_or(f64::NAN);
    let front = vec![vec![0.2, 0.7], vec![0.6, 0.1]];
    let same = symmetric_difference_volume(&front, &front, r).unwrap_or(f64::NAN);

    // Monte-Carlo area of a random staircase.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts: Vec<Vec<f64>> = (0..30).map(|_| vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]).collect();
    let exact = dominated_volume_2d(&pts, r).unwrap_or(f64::NAN);
    let n = 200_000;
    let hits = (0..n)
        .filter(|_| {
            let y = [rng.gen_range(0.0..r[0]), rng.gen_range(0.0..r[1])];
            pts.iter().any(|p| p[0] <= y[0] && p[1] <= y[1])
        })
        .count();
    let area = r[0] * r[1];
    let p = hits as f64 / n as f64;
    let (mc, se) = (p * area, area * (p * (1.0 - p) / n as f64).sqrt());
    vec![
        Check::new("single-point V_d", (single - 0.21).abs() <= 1e-12, format!("{single}, expected 0.21")),
        Check::new("staircase area", (stair - 0.96).abs() <= 1e-12, format!("{stair}, expected 0.96")),
        Check::new("identical fronts", same == 0.0, format!("{same}, expected 0")),
        Check::new("area vs Monte Carlo", (exact - mc).abs() <= 4.0 * se, format!("exact {exact:.5}, MC {mc:.5} ± {se:.5}")),
    ]
}

fn beta_checks() -> Vec<Check> {
    let fixed = beta_fixed(0.5).unwrap_or(f64::NAN);
    let inc = beta_increasing(1, 2, 441, 0.05).unwrap_or(f64::NAN);
    vec![
        Check::new("beta coverage 0.5", (fixed - 0.45494).abs() <= 1e-4, format!("{fixed:.6}, expected 0.45494")),
        Check::new("beta increasing n=1", (inc - 20.551).abs() <= 1e-2, format!("{inc:.4}, expected 20.551")),
    ]
}

fn degenerate_limit_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..100 {
        let n = rng.gen_range(1..=441);
        let mu: Vec<Vec<f64>> = (0..n).map(|_| vec![rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)]).collect();
        let regions: Vec<_> = mu
            .iter()
            .map(|m| rectangle_from_posterior(m, &[rng.gen_range(0.0..0.3), rng.gen_range(0.0..0.3)], 0.0))
            .collect::<Result<_, _>>()
            .expect("finite inputs");
        let ok = match (classify(&regions, &MarginVector::zeros(2)), pareto_indices(&mu)) {
            (Ok(c), Ok(p)) => c.unclassified.is_empty() && c.pareto == p,
            _ => false,
        };
        if !ok {
            return Check::new("classification at beta = 0", false, format!("field {trial} differs from the plug-in set"));
        }
    }
    Check::new("classification at beta = 0", true, "100 random fields match the plug-in set")
}

/// All checks, cardinalities against the published sizes.
pub fn run_all() -> Vec<Check> {
    let mut out = cardinality_checks(ProblemId::published_pareto_size);
    out.push(folding_check());
    out.extend(metric_checks());
    out.extend(beta_checks());
    out.push(degenerate_limit_check());
    out
}
