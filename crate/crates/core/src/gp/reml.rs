//! Restricted maximum likelihood for the Matérn 5/2 model with a constant
//! mean integrated out under a flat prior.
//!
//! With replicates folded into per-point means, the restricted likelihood of
//! all `N` individual observations splits into a term over the `m` means
//! (covariance `C + σ² diag(1/nᵢ)`) and a within-point term that only
//! involves `σ²` and the total within-point sum of squares. Both are
//! evaluated here, so the folded likelihood equals the full-data one exactly.

use std::cell::RefCell;
use std::f64::consts::PI;

use argmin::core::{CostFunction, Executor, Gradient, State, TerminationReason};
use argmin::solver::linesearch::MoreThuenteLineSearch;
use argmin::solver::quasinewton::LBFGS;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kernel::KernelParams;
use super::posterior::cholesky_with_jitter;
use super::store::{FoldedData, ObservationStore};
use crate::error::{Error, Result};
use crate::problems::InputGrid;

/// How the observation noise variance is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseEstimation {
    /// Estimated jointly with the kernel parameters.
    #[default]
    Reml,
    /// Fixed at the pooled within-point replicate variance.
    Pooled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemlOptions {
    /// Number of local searches; the first starts from the supplied initial
    /// parameters, the rest from seeded random points of the search box.
    pub starts: usize,
    pub max_iters: u64,
    /// Box for the process variance, relative to the data variance.
    pub variance_bounds: (f64, f64),
    /// Box for each lengthscale, relative to the grid span in that dimension.
    pub lengthscale_bounds: (f64, f64),
    /// Box for the noise variance, relative to the data variance.
    pub noise_bounds: (f64, f64),
    pub noise: NoiseEstimation,
}

impl Default for RemlOptions {
    fn default() -> Self {
        Self {
            starts: 5,
            max_iters: 60,
            variance_bounds: (1e-3, 1e3),
            lengthscale_bounds: (1e-3, 1e3),
            noise_bounds: (1e-10, 1e3),
            noise: NoiseEstimation::Reml,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemlFit {
    pub params: KernelParams,
    /// Restricted log-likelihood at `params`.
    pub log_likelihood: f64,
    /// Restricted log-likelihood at the initial parameters.
    pub initial_log_likelihood: f64,
    /// `false` when no local search reached its convergence tolerance.
    pub converged: bool,
    /// The noise variance ended at its lower bound (e.g. constant data).
    pub degenerate: bool,
}

/// Pairwise squared coordinate differences between training points.
struct Geometry {
    m: usize,
    d: usize,
    /// `diff2[k][i * m + j] = (x_i[k] - x_j[k])²`.
    diff2: Vec<Vec<f64>>,
}

impl Geometry {
    fn new(points: &[&[f64]]) -> Self {
        let m = points.len();
        let d = points.first().map_or(0, |p| p.len());
        let diff2 = (0..d)
            .map(|k| {
                let mut v = vec![0.0; m * m];
                for i in 0..m {
                    for j in 0..m {
                        let t = points[i][k] - points[j][k];
                        v[i * m + j] = t * t;
                    }
                }
                v
            })
            .collect();
        Self { m, d, diff2 }
    }
}

const SQRT5: f64 = 2.236_067_977_499_79;

/// Restricted log-likelihood and its gradient with respect to
/// `(log variance, log lengthscale_1..d, log noise_variance)`.
fn reml_with_gradient(data: &FoldedData, geo: &Geometry, params: &KernelParams) -> Result<(f64, Vec<f64>)> {
    let (m, d) = (geo.m, geo.d);
    let s2 = params.variance;
    let noise = params.noise_variance;
    let inv_l2: Vec<f64> = params.lengthscales.iter().map(|l| 1.0 / (l * l)).collect();

    let mut corr = DMatrix::zeros(m, m);
    // (5/3)(1 + √5 r) e^{-√5 r}, shared by all lengthscale derivatives.
    let mut dfac = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..=i {
            let r2: f64 = (0..d).map(|k| geo.diff2[k][i * m + j] * inv_l2[k]).sum();
            let s = SQRT5 * r2.sqrt();
            let e = (-s).exp();
            let c = (1.0 + s + s * s / 3.0) * e;
            let f = (5.0 / 3.0) * (1.0 + s) * e;
            corr[(i, j)] = c;
            corr[(j, i)] = c;
            dfac[(i, j)] = f;
            dfac[(j, i)] = f;
        }
    }
    let mut k = corr.clone() * s2;
    for i in 0..m {
        k[(i, i)] += noise / data.counts[i] as f64;
    }
    let (chol, _) = cholesky_with_jitter(k, s2)?;
    let log_det: f64 = 2.0 * chol.l_dirty().diagonal().iter().map(|v| v.ln()).sum::<f64>();
    let kinv = chol.inverse();
    let y = DVector::from_column_slice(&data.means);
    let kinv_one: DVector<f64> = kinv.column_sum();
    let a = kinv_one.sum();
    let kinv_y = &kinv * &y;
    let py = &kinv_y - &kinv_one * (kinv_one.dot(&y) / a);
    let quad = y.dot(&py);

    let mut ll = -0.5 * (log_det + a.ln() + quad);
    let mut grad = vec![0.0; d + 2];

    // dL/dθ = ½ Σ_ij (Py Pyᵀ - P)_ij (∂K/∂θ)_ij
    for i in 0..m {
        for j in 0..m {
            let p_ij = kinv[(i, j)] - kinv_one[i] * kinv_one[j] / a;
            let w = py[i] * py[j] - p_ij;
            grad[0] += w * s2 * corr[(i, j)];
            if i != j {
                for kk in 0..d {
                    grad[1 + kk] += w * s2 * dfac[(i, j)] * geo.diff2[kk][i * m + j] * inv_l2[kk];
                }
            }
        }
        let p_ii = kinv[(i, i)] - kinv_one[i] * kinv_one[i] / a;
        grad[d + 1] += (py[i] * py[i] - p_ii) * noise / data.counts[i] as f64;
    }
    for g in grad.iter_mut() {
        *g *= 0.5;
    }

    match data.within_ss {
        Some(ss) => {
            let dof = (data.total - m) as f64;
            let log_n: f64 = data.counts.iter().map(|&c| (c as f64).ln()).sum();
            ll -= 0.5 * (dof * noise.ln() + ss / noise + log_n + (data.total as f64 - 1.0) * (2.0 * PI).ln());
            grad[d + 1] -= 0.5 * (dof - ss / noise);
        }
        None => ll -= 0.5 * (m as f64 - 1.0) * (2.0 * PI).ln(),
    }
    if !ll.is_finite() || grad.iter().any(|g| !g.is_finite()) {
        return Err(Error::IllConditioned);
    }
    Ok((ll, grad))
}

/// Restricted log-likelihood of the folded data at `params`.
pub fn restricted_log_likelihood(data: &FoldedData, grid: &InputGrid, params: &KernelParams) -> Result<f64> {
    let points: Vec<&[f64]> = data.indices.iter().map(|&i| grid.point(i)).collect();
    reml_with_gradient(data, &Geometry::new(&points), params).map(|(ll, _)| ll)
}

/// Restricted log-likelihood and gradient in log-parameter coordinates.
pub fn restricted_log_likelihood_gradient(
    data: &FoldedData,
    grid: &InputGrid,
    params: &KernelParams,
) -> Result<(f64, Vec<f64>)> {
    let points: Vec<&[f64]> = data.indices.iter().map(|&i| grid.point(i)).collect();
    reml_with_gradient(data, &Geometry::new(&points), params)
}

/// Box in log-parameter space with a smooth bijection from `ℝⁿ`.
struct LogBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl LogBox {
    fn to_log(&self, u: &[f64]) -> Vec<f64> {
        u.iter()
            .enumerate()
            .map(|(i, &x)| self.lo[i] + (self.hi[i] - self.lo[i]) * sigmoid(x))
            .collect()
    }

    fn jacobian(&self, u: &[f64]) -> Vec<f64> {
        u.iter()
            .enumerate()
            .map(|(i, &x)| {
                let s = sigmoid(x);
                (self.hi[i] - self.lo[i]) * s * (1.0 - s)
            })
            .collect()
    }

    fn from_log(&self, t: &[f64]) -> Vec<f64> {
        t.iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = ((x - self.lo[i]) / (self.hi[i] - self.lo[i])).clamp(1e-6, 1.0 - 1e-6);
                (f / (1.0 - f)).ln()
            })
            .collect()
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

struct RemlProblem<'a> {
    data: &'a FoldedData,
    geo: Geometry,
    bounds: LogBox,
    /// `Some(log σ²)` when the noise is held fixed.
    fixed_log_noise: Option<f64>,
    best: RefCell<Option<(f64, Vec<f64>)>>,
    /// The solver asks for cost and gradient at the same point separately.
    last: RefCell<Option<(Vec<f64>, Option<(f64, Vec<f64>)>)>>,
}

impl RemlProblem<'_> {
    fn params_from_log(&self, t: &[f64]) -> KernelParams {
        let d = self.geo.d;
        let noise = match self.fixed_log_noise {
            Some(v) => v.exp(),
            None => t[d + 1].exp(),
        };
        KernelParams {
            variance: t[0].exp(),
            lengthscales: t[1..=d].iter().map(|v| v.exp()).collect(),
            noise_variance: noise,
        }
    }

    /// Negative log-likelihood and gradient with respect to `u`.
    fn evaluate(&self, u: &[f64]) -> Result<(f64, Vec<f64>)> {
        if let Some((cu, r)) = self.last.borrow().as_ref() {
            if cu.as_slice() == u {
                return r.clone().ok_or(Error::IllConditioned);
            }
        }
        let r = self.evaluate_uncached(u);
        *self.last.borrow_mut() = Some((u.to_vec(), r.as_ref().ok().cloned()));
        r
    }

    fn evaluate_uncached(&self, u: &[f64]) -> Result<(f64, Vec<f64>)> {
        let t = self.bounds.to_log(u);
        let params = self.params_from_log(&t);
        let (ll, grad) = reml_with_gradient(self.data, &self.geo, &params)?;
        let jac = self.bounds.jacobian(u);
        let g: Vec<f64> = (0..u.len()).map(|i| -grad[i] * jac[i]).collect();
        let mut best = self.best.borrow_mut();
        if best.as_ref().is_none_or(|(b, _)| -ll < *b) {
            *best = Some((-ll, t));
        }
        Ok((-ll, g))
    }
}

/// Borrowing handle; argmin's executor takes the problem by value.
struct RemlHandle<'p, 'a>(&'p RemlProblem<'a>);

impl CostFunction for RemlHandle<'_, '_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, u: &Self::Param) -> std::result::Result<f64, argmin::core::Error> {
        // Failed factorizations repel the line search instead of aborting it.
        Ok(self.0.evaluate(u).map(|(c, _)| c).unwrap_or(f64::MAX))
    }
}

impl Gradient for RemlHandle<'_, '_> {
    type Param = Vec<f64>;
    type Gradient = Vec<f64>;

    fn gradient(&self, u: &Self::Param) -> std::result::Result<Vec<f64>, argmin::core::Error> {
        self.0
            .evaluate(u)
            .map(|(_, g)| g)
            .map_err(|e| argmin::core::Error::msg(e.to_string()))
    }
}

fn data_scale(data: &FoldedData) -> f64 {
    let m = data.means.len() as f64;
    let mean = data.means.iter().sum::<f64>() / m;
    let var = data.means.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / m;
    if var > 0.0 {
        return var;
    }
    match data.within_ss {
        Some(ss) if ss > 0.0 && data.total > 1 => ss / (data.total - 1) as f64,
        _ => 1.0,
    }
}

/// Default starting point: lengthscales at half the grid span, variance and
/// noise each at half the data variance.
pub fn default_initial_params(data: &FoldedData, grid: &InputGrid) -> KernelParams {
    let v = data_scale(data);
    KernelParams {
        variance: 0.5 * v,
        lengthscales: grid.spans().iter().map(|s| 0.5 * s.max(f64::MIN_POSITIVE)).collect(),
        noise_variance: 0.5 * v,
    }
}

/// Maximizes the restricted likelihood for the folded `data` over points of `grid`.
pub fn fit_reml_data(
    data: &FoldedData,
    grid: &InputGrid,
    init: &KernelParams,
    options: &RemlOptions,
    seed: u64,
) -> Result<RemlFit> {
    if data.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, have: data.len() });
    }
    init.validate()?;
    let d = grid.dim();
    if init.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: init.dim() });
    }
    let v = data_scale(data);
    let spans = grid.spans();
    let mut lo = vec![(v * options.variance_bounds.0).ln()];
    let mut hi = vec![(v * options.variance_bounds.1).ln()];
    for s in &spans {
        lo.push((s * options.lengthscale_bounds.0).ln());
        hi.push((s * options.lengthscale_bounds.1).ln());
    }
    let fixed_log_noise = match options.noise {
        NoiseEstimation::Reml => {
            lo.push((v * options.noise_bounds.0).ln());
            hi.push((v * options.noise_bounds.1).ln());
            None
        }
        NoiseEstimation::Pooled => {
            let ss = data.within_ss.unwrap_or(0.0);
            let dof = data.total.saturating_sub(data.len());
            let pooled = if dof > 0 && ss > 0.0 { ss / dof as f64 } else { v * options.noise_bounds.0 };
            Some(pooled.ln())
        }
    };
    let points: Vec<&[f64]> = data.indices.iter().map(|&i| grid.point(i)).collect();
    let problem = RemlProblem {
        data,
        geo: Geometry::new(&points),
        bounds: LogBox { lo, hi },
        fixed_log_noise,
        best: RefCell::new(None),
        last: RefCell::new(None),
    };

    let mut init_log = vec![init.variance.ln()];
    init_log.extend(init.lengthscales.iter().map(|l| l.ln()));
    if fixed_log_noise.is_none() {
        init_log.push(init.noise_variance.ln());
    }
    let u0 = problem.bounds.from_log(&init_log);
    let initial_log_likelihood = problem.evaluate(&u0).map(|(c, _)| -c).unwrap_or(f64::NEG_INFINITY);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = vec![u0];
    for _ in 1..options.starts.max(1) {
        let t: Vec<f64> = (0..problem.bounds.lo.len())
            .map(|i| rng.gen_range(problem.bounds.lo[i]..problem.bounds.hi[i]))
            .collect();
        starts.push(problem.bounds.from_log(&t));
    }

    let mut converged = false;
    for u in starts {
        if problem.evaluate(&u).is_err() {
            continue;
        }
        let linesearch = MoreThuenteLineSearch::new();
        let solver = LBFGS::new(linesearch, 7)
            .with_tolerance_grad(1e-6)
            .expect("valid tolerance")
            .with_tolerance_cost(1e-10)
            .expect("valid tolerance");
        let run = Executor::new(RemlHandle(&problem), solver)
            .configure(|state| state.param(u).max_iters(options.max_iters))
            .run();
        if let Ok(res) = run {
            if matches!(
                res.state().get_termination_reason(),
                Some(TerminationReason::SolverConverged | TerminationReason::TargetCostReached)
            ) {
                converged = true;
            }
        }
    }

    let (neg_ll, t) = problem
        .best
        .into_inner()
        .ok_or(Error::IllConditioned)?;
    let params = {
        let d = grid.dim();
        KernelParams {
            variance: t[0].exp(),
            lengthscales: t[1..=d].iter().map(|v| v.exp()).collect(),
            noise_variance: match fixed_log_noise {
                Some(v) => v.exp(),
                None => t[d + 1].exp(),
            },
        }
    };
    let noise_floor = v * options.noise_bounds.0;
    let degenerate = params.noise_variance <= 1.5 * noise_floor;
    Ok(RemlFit {
        params,
        log_likelihood: -neg_ll,
        initial_log_likelihood,
        converged,
        degenerate,
    })
}

/// Fits the kernel for one objective of an observation store.
pub fn fit_reml(
    store: &ObservationStore,
    grid: &InputGrid,
    objective: usize,
    init: &KernelParams,
    options: &RemlOptions,
    seed: u64,
) -> Result<RemlFit> {
    fit_reml_data(&store.folded(objective), grid, init, options, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_data() -> (FoldedData, InputGrid) {
        let grid = InputGrid::regular_2d(6);
        let mut store = ObservationStore::new(grid.len(), 1);
        let vals = [0.3, -0.2, 0.8, 0.1, 0.5, -0.4, 0.0];
        for (n, &i) in [0usize, 5, 9, 14, 22, 30, 35].iter().enumerate() {
            let rows: Vec<Vec<f64>> = (0..(n % 3 + 2)).map(|r| vec![vals[n] + 0.05 * r as f64]).collect();
            store.fold(i, &rows).unwrap();
        }
        (store.folded(0), grid)
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let (data, grid) = small_data();
        let params = KernelParams::new(0.4, vec![0.3, 0.6], 0.02).unwrap();
        let (_, grad) = restricted_log_likelihood_gradient(&data, &grid, &params).unwrap();
        let h = 1e-5;
        let perturb = |i: usize, sign: f64| {
            let mut p = params.clone();
            match i {
                0 => p.variance *= (sign * h).exp(),
                3 => p.noise_variance *= (sign * h).exp(),
                k => p.lengthscales[k - 1] *= (sign * h).exp(),
            }
            restricted_log_likelihood(&data, &grid, &p).unwrap()
        };
        for i in 0..4 {
            let fd = (perturb(i, 1.0) - perturb(i, -1.0)) / (2.0 * h);
            assert!((fd - grad[i]).abs() < 1e-5 * fd.abs().max(1.0), "param {i}: {fd} vs {}", grad[i]);
        }
    }

    #[test]
    fn fit_improves_on_init() {
        let (data, grid) = small_data();
        let init = default_initial_params(&data, &grid);
        let fit = fit_reml_data(&data, &grid, &init, &RemlOptions::default(), 7).unwrap();
        assert!(fit.log_likelihood.is_finite());
        assert!(fit.log_likelihood >= fit.initial_log_likelihood);
        let again = fit_reml_data(&data, &grid, &init, &RemlOptions::default(), 7).unwrap();
        assert_eq!(fit, again);
    }

    #[test]
    fn insufficient_data() {
        let grid = InputGrid::regular_2d(3);
        let data = FoldedData::from_means(vec![1], vec![4], vec![0.2]).unwrap();
        let init = KernelParams::new(1.0, vec![0.5, 0.5], 0.1).unwrap();
        assert!(matches!(
            fit_reml_data(&data, &grid, &init, &RemlOptions::default(), 0),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn constant_observations_are_degenerate() {
        let grid = InputGrid::regular_2d(5);
        let mut store = ObservationStore::new(grid.len(), 1);
        for i in [0, 6, 12, 18, 24] {
            store.fold(i, &vec![vec![0.7]; 3]).unwrap();
        }
        let data = store.folded(0);
        let init = default_initial_params(&data, &grid);
        let fit = fit_reml_data(&data, &grid, &init, &RemlOptions::default(), 1).unwrap();
        assert!(fit.degenerate, "{fit:?}");
    }

    #[test]
    fn pooled_noise_is_fixed() {
        let (data, grid) = small_data();
        let init = default_initial_params(&data, &grid);
        let opts = RemlOptions { noise: NoiseEstimation::Pooled, ..Default::default() };
        let fit = fit_reml_data(&data, &grid, &init, &opts, 3).unwrap();
        let pooled = data.within_ss.unwrap() / (data.total - data.len()) as f64;
        assert!((fit.params.noise_variance - pooled).abs() < 1e-12 * pooled);
    }
}
