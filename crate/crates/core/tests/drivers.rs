use pals::drivers::*;
use pals::pareto::{Class, MarginVector};
use pals::problems::{BenchmarkProblem, GroundTruth, InputGrid, Problem};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// Two smooth conflicting objectives on a small grid.
struct Toy {
    grid: InputGrid,
    truth: GroundTruth,
    noise_sd: f64,
    /// Raw objective = offset + scale * toy value.
    affine: (f64, f64),
}

impl Toy {
    fn new(per_axis: usize, noise_sd: f64) -> Self {
        let grid = InputGrid::regular_2d(per_axis);
        let values = grid
            .points()
            .iter()
            .map(|x| {
                // Centres off the grid's symmetry points, so that no two points tie.
                let a = (x[0] - 0.23).powi(2) + 0.57 * (x[1] - 0.31).powi(2);
                let b = (x[0] - 0.77).powi(2) + 0.71 * (x[1] - 0.64).powi(2) + 0.1 * x[0] * x[1];
                vec![a, b]
            })
            .collect();
        Self { grid, truth: GroundTruth::from_values(values).unwrap(), noise_sd, affine: (0.0, 1.0) }
    }

    fn raw_units(mut self, offset: f64, scale: f64) -> Self {
        self.affine = (offset, scale);
        self
    }
}

impl Problem for Toy {
    fn name(&self) -> &str {
        "toy"
    }
    fn grid(&self) -> &InputGrid {
        &self.grid
    }
    fn num_objectives(&self) -> usize {
        2
    }
    fn sample(&self, index: usize, k: usize, rng: &mut dyn RngCore) -> Vec<Vec<f64>> {
        let (o, s) = self.affine;
        (0..k)
            .map(|_| {
                self.truth.values[index]
                    .iter()
                    .map(|v| {
                        let e = if self.noise_sd > 0.0 { Normal::new(0.0, self.noise_sd).unwrap().sample(rng) } else { 0.0 };
                        o + s * (v + e)
                    })
                    .collect()
            })
            .collect()
    }
    fn truth(&self) -> &GroundTruth {
        &self.truth
    }
}

fn config(algorithm: Algorithm, budget: usize) -> RunConfig {
    let mut c = RunConfig::new(algorithm);
    c.budget = budget;
    c.batch_size = 5;
    c.n0 = 6;
    c.initial_replicates = 3;
    c.design_candidates = 50;
    c.sample_paths = 10;
    c.reml.starts = 2;
    c
}

#[test]
fn every_driver_is_deterministic_and_accounts_evaluations() {
    let p = Toy::new(6, 0.02);
    for alg in Algorithm::ALL {
        let c = config(alg, 40);
        let a = run(&p, &c, 17).unwrap();
        let b = run(&p, &c, 17).unwrap();
        assert_eq!(a, b, "{alg}");
        let steps = a.iterations.iter().filter(|r| r.selected.is_some()).count();
        assert_eq!(a.evaluations, c.n0 * c.initial_replicates + steps * c.batch_size, "{alg}");
        assert!(steps <= c.budget.div_ceil(c.batch_size), "{alg}");
        assert!(a.last().selected.is_none());
        for (n, row) in a.iterations.iter().enumerate() {
            assert_eq!(row.iteration, n);
            assert_eq!(row.evaluations, c.n0 * c.initial_replicates + n * c.batch_size);
            assert!(row.v_d >= 0.0 && (0.0..=1.0).contains(&row.misclassification));
        }
        let other = run(&p, &c, 18).unwrap();
        assert_ne!(a.iterations, other.iterations, "{alg}");
    }
}

#[test]
fn baselines_stop_on_budget_only() {
    let p = Toy::new(6, 0.02);
    for alg in [Algorithm::Prs, Algorithm::Cors, Algorithm::ParegoEim] {
        let r = run(&p, &config(alg, 23), 1).unwrap();
        assert_eq!(r.termination, Termination::Budget);
        // 23 evaluations need five batches of 5; the last batch is not truncated.
        assert_eq!(r.iterations.len(), 6);
    }
}

#[test]
fn zero_budget_reports_the_initial_design_only() {
    let p = Toy::new(6, 0.02);
    let r = run(&p, &config(Algorithm::Pals, 0), 3).unwrap();
    assert_eq!(r.iterations.len(), 1);
    assert_eq!(r.evaluations, 18);
    assert!(matches!(r.termination, Termination::Budget | Termination::AllClassified));
}

#[test]
fn pals_selects_from_pareto_or_unclassified() {
    let p = Toy::new(7, 0.05);
    let r = run(&p, &config(Algorithm::Pals, 200), 5).unwrap();
    for row in &r.iterations {
        if row.selected.is_some() {
            assert!(matches!(row.selected_class, Some(Class::Pareto | Class::Unclassified)));
        }
        assert_eq!(row.pareto.unwrap() + row.dominated.unwrap() + row.unclassified.unwrap(), 49);
    }
}

#[test]
fn pal_never_revisits_and_classes_only_grow() {
    let p = Toy::new(5, 0.01);
    let mut c = config(Algorithm::Pal, 10_000);
    c.intersection = IntersectionMode::Intersect;
    let r = run(&p, &c, 2).unwrap();
    let mut seen: Vec<usize> = r.initial_design.clone();
    for row in &r.iterations {
        if let Some(i) = row.selected {
            assert!(!seen.contains(&i), "revisited {i}");
            seen.push(i);
        }
    }
    for w in r.iterations.windows(2) {
        assert!(w[1].pareto >= w[0].pareto && w[1].dominated >= w[0].dominated);
    }
    assert!(seen.len() <= 25);
    assert!(matches!(r.termination, Termination::AllClassified | Termination::Exhausted));
}

#[test]
fn pal_halts_after_visiting_every_point() {
    // A huge β keeps every unvisited point unclassified, so PAL must exhaust the grid.
    let p = Toy::new(4, 0.05);
    let mut c = config(Algorithm::Pal, 10_000);
    c.beta = BetaMode::Fixed { coverage: 1.0 - 1e-12 };
    c.epsilon = MarginVector::zeros(2);
    let r = run(&p, &c, 4).unwrap();
    let steps = r.iterations.iter().filter(|x| x.selected.is_some()).count();
    assert!(steps + c.n0 <= 16);
    assert!(matches!(r.termination, Termination::Exhausted | Termination::AllClassified));
}

#[test]
fn intersect_mode_shrinks_regions_or_counts_fallbacks() {
    let p = Toy::new(6, 0.05);
    for mode in [IntersectionMode::Intersect, IntersectionMode::Corrected] {
        let mut c = config(Algorithm::Pals, 100);
        c.intersection = mode;
        let r = run(&p, &c, 9).unwrap();
        assert!(r.iterations.len() > 1);
        let again = run(&p, &c, 9).unwrap();
        assert_eq!(r.intersection_fallbacks, again.intersection_fallbacks);
    }
}

#[test]
fn increasing_beta_is_recorded() {
    let p = Toy::new(5, 0.05);
    let mut c = config(Algorithm::Pals, 20);
    c.beta = BetaMode::Increasing { delta: 0.05 };
    let r = run(&p, &c, 0).unwrap();
    let betas: Vec<f64> = r.iterations.iter().map(|x| x.beta.unwrap()).collect();
    assert!((betas[0] - beta_increasing(1, 2, 25, 0.05).unwrap()).abs() < 1e-12);
    assert!(betas.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn noiseless_toy_converges_to_the_true_set() {
    let p = Toy::new(6, 0.0);
    let c = config(Algorithm::Pals, 400);
    let r = run(&p, &c, 8).unwrap();
    assert_eq!(r.predicted_set, p.truth().pareto_set);
    assert_eq!(r.last().misclassification, 0.0);
}

#[test]
fn pal_and_pals_agree_on_a_noiseless_problem() {
    let p = Toy::new(6, 0.0);
    let pals = run(&p, &config(Algorithm::Pals, 400), 8).unwrap();
    let pal = run(&p, &config(Algorithm::Pal, 400), 8).unwrap();
    assert_eq!(pals.predicted_set, pal.predicted_set);
}

#[test]
fn selections_do_not_depend_on_objective_units() {
    let scaled = Toy::new(6, 0.03);
    let raw = Toy::new(6, 0.03).raw_units(250.0, 4000.0);
    for alg in [Algorithm::Prs, Algorithm::Pals] {
        let c = config(alg, 60);
        let a = run(&scaled, &c, 21).unwrap();
        let b = run(&raw, &c, 21).unwrap();
        let sel = |r: &RunRecord| r.iterations.iter().map(|x| x.selected).collect::<Vec<_>>();
        assert_eq!(sel(&a), sel(&b), "{alg}");
    }
}

#[test]
fn named_entry_points_check_the_algorithm() {
    let p = Toy::new(4, 0.01);
    let c = config(Algorithm::Prs, 5);
    assert!(run_prs(&p, &c, 0).is_ok());
    assert!(run_pals(&p, &c, 0).is_err());
    assert!(run_pal_original(&p, &c, 0).is_err());
    assert!(run_cors(&p, &c, 0).is_err());
    assert!(run_parego_eim(&p, &c, 0).is_err());
}

#[test]
fn uniform_index_passes_chi_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let n = 441;
    let draws = 100_000;
    let mut counts = vec![0usize; n];
    for _ in 0..draws {
        counts[uniform_index(&mut rng, n)] += 1;
    }
    let e = draws as f64 / n as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - e).powi(2) / e).sum();
    // 99th percentile of chi-square with 440 degrees of freedom.
    assert!(chi2 < 511.9, "chi2 = {chi2}");
}

#[test]
fn plug_in_of_constant_field_is_everything() {
    let grid = InputGrid::regular_2d(3);
    let field = pals::gp::PosteriorField {
        means: vec![vec![0.5; 9], vec![0.5; 9]],
        sds: vec![vec![0.1; 9], vec![0.1; 9]],
        params: vec![],
        mean_constants: vec![],
    };
    let (set, front) = plug_in_prediction(&field).unwrap();
    assert_eq!(set, (0..grid.len()).collect::<Vec<_>>());
    assert_eq!(front.len(), 9);
}

#[test]
fn benchmark_run_smoke() {
    let p = BenchmarkProblem::by_name("g5").unwrap();
    let mut c = RunConfig::new(Algorithm::Pals);
    c.budget = 400;
    let r = run(&p, &c, 1).unwrap();
    assert_eq!(r.iterations.len(), 3);
    assert_eq!(r.initial_design.len(), 20);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(rng.gen::<f64>() < 1.0);
}

