//! Sequential optimization loops: PALS, the original PAL, and the PRS, CoRS
//! and ParEGO-EI_m baselines, plus β schedules and the initial design.
//!
//! Every driver shares one loop. Each iteration refits the hyperparameters
//! (every `refit_every` iterations), computes the posterior on the whole
//! grid, records the plug-in prediction and its error metrics, then either
//! stops or picks one grid point and evaluates it `batch_size` times.

mod acquisition;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

pub use acquisition::{augmented_chebyshev, expected_improvement, misclassification_weights, uniform_simplex};

use crate::error::{Error, Result};
use crate::gp::{default_initial_params, fit_reml_data, sample_paths, FoldedData, GpModel, KernelParams, ObservationStore, PosteriorField, RemlOptions};
use crate::metrics::{clipped_symmetric_difference_volume, misclassification_rate, DEFAULT_REFERENCE};
use crate::pareto::{
    classify_subset, corrected_intersect, intersect_regions, pareto_indices, rectangle_from_posterior, select_next, Class,
    Classification, MarginVector, UncertaintyRegion,
};
use crate::problems::{InputGrid, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Prs,
    Cors,
    ParegoEim,
    Pals,
    Pal,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Prs, Algorithm::Cors, Algorithm::ParegoEim, Algorithm::Pals, Algorithm::Pal];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Prs => "PRS",
            Algorithm::Cors => "CoRS",
            Algorithm::ParegoEim => "ParEGO-EIm",
            Algorithm::Pals => "PALS",
            Algorithm::Pal => "PAL",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "prs" => Ok(Algorithm::Prs),
            "cors" => Ok(Algorithm::Cors),
            "parego-eim" | "parego" | "parego_eim" => Ok(Algorithm::ParegoEim),
            "pals" => Ok(Algorithm::Pals),
            "pal" => Ok(Algorithm::Pal),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

/// `(Φ⁻¹(0.5 + 0.5 p))²`: the β whose rectangles have marginal coverage `p`.
pub fn beta_fixed(coverage: f64) -> Result<f64> {
    if !(coverage > 0.0 && coverage < 1.0) {
        return Err(Error::InvalidArgument(format!("coverage must lie in (0, 1), got {coverage}")));
    }
    let z = Normal::new(0.0, 1.0).expect("standard normal").inverse_cdf(0.5 + 0.5 * coverage);
    Ok(z * z)
}

/// `2 log(q |X| π² n² / (6 δ))`.
pub fn beta_increasing(n: usize, q: usize, grid_size: usize, delta: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("iteration index starts at 1".into()));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, 1), got {delta}")));
    }
    let n = n as f64;
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    Ok(2.0 * (q as f64 * grid_size as f64 * pi2 * n * n / (6.0 * delta)).ln())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaMode {
    Fixed { coverage: f64 },
    Increasing { delta: f64 },
}

impl BetaMode {
    /// β at 1-based iteration `n`.
    pub fn value(&self, n: usize, q: usize, grid_size: usize) -> Result<f64> {
        match *self {
            BetaMode::Fixed { coverage } => beta_fixed(coverage),
            BetaMode::Increasing { delta } => beta_increasing(n, q, grid_size, delta),
        }
    }
}

impl fmt::Display for BetaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaMode::Fixed { coverage } => write!(f, "{coverage}"),
            BetaMode::Increasing { .. } => f.write_str("increasing"),
        }
    }
}

impl FromStr for BetaMode {
    type Err = Error;

    /// `"increasing"` (δ = 0.05), `"increasing:<δ>"`, or a coverage in (0, 1).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("bad beta {s:?}"));
        let mode = if s == "increasing" {
            BetaMode::Increasing { delta: 0.05 }
        } else if let Some(d) = s.strip_prefix("increasing:") {
            BetaMode::Increasing { delta: d.parse().map_err(|_| bad())? }
        } else {
            BetaMode::Fixed { coverage: s.parse().map_err(|_| bad())? }
        };
        match mode {
            BetaMode::Fixed { coverage: p } if !(p > 0.0 && p < 1.0) => Err(bad()),
            BetaMode::Increasing { delta } if !(delta > 0.0 && delta < 1.0) => Err(bad()),
            m => Ok(m),
        }
    }
}

/// How classification regions relate to earlier iterations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntersectionMode {
    /// Regions are this iteration's rectangles.
    #[default]
    None,
    /// Intersect with the previous region; an empty intersection falls back
    /// to the corrected construction and is counted.
    Intersect,
    /// Always use the bounding box of the intersection and the posterior mean.
    Corrected,
}

impl FromStr for IntersectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(IntersectionMode::None),
            "intersect" => Ok(IntersectionMode::Intersect),
            "corrected" => Ok(IntersectionMode::Corrected),
            _ => Err(Error::InvalidArgument(format!("unknown intersection mode {s:?}"))),
        }
    }
}

impl fmt::Display for IntersectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntersectionMode::None => "none",
            IntersectionMode::Intersect => "intersect",
            IntersectionMode::Corrected => "corrected",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub beta: BetaMode,
    pub epsilon: MarginVector,
    /// Replicates per selected point.
    pub batch_size: usize,
    /// Evaluations allowed after the initial design. The last batch is never truncated.
    pub budget: usize,
    pub intersection: IntersectionMode,
    pub n0: usize,
    pub initial_replicates: usize,
    /// Random designs scored when building the maximin initial design.
    pub design_candidates: usize,
    pub refit_every: usize,
    /// Posterior sample paths per CoRS iteration.
    pub sample_paths: usize,
    /// ParEGO augmentation weight.
    pub rho: f64,
    pub reml: RemlOptions,
}

impl RunConfig {
    /// Benchmark settings: budget 50000, k = 200, 20 initial points with 10
    /// replicates each, β at coverage 0.5, ε = 0.
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            beta: BetaMode::Fixed { coverage: 0.5 },
            epsilon: MarginVector::zeros(2),
            batch_size: 200,
            budget: 50_000,
            intersection: IntersectionMode::None,
            n0: 20,
            initial_replicates: 10,
            design_candidates: 1000,
            refit_every: 1,
            sample_paths: 40,
            rho: 0.05,
            reml: RemlOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.batch_size == 0 {
            return bad("batch size must be >= 1");
        }
        if self.n0 == 0 || self.initial_replicates == 0 || self.design_candidates == 0 {
            return bad("initial design needs n0, replicates and candidates >= 1");
        }
        if self.refit_every == 0 {
            return bad("refit_every must be >= 1");
        }
        if self.sample_paths == 0 {
            return bad("sample_paths must be >= 1");
        }
        if !(self.rho >= 0.0) {
            return bad("rho must be >= 0");
        }
        match self.beta {
            BetaMode::Fixed { coverage } => beta_fixed(coverage).map(|_| ()),
            BetaMode::Increasing { delta } => beta_increasing(1, 1, 1, delta).map(|_| ()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    AllClassified,
    Budget,
    /// Every point has been visited (PAL only).
    Exhausted,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::AllClassified => "all_classified",
            Termination::Budget => "budget",
            Termination::Exhausted => "exhausted",
        })
    }
}

/// One loop pass. Class sizes and β are only set for PAL and PALS.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Evaluations spent before this iteration's batch, initial design included.
    pub evaluations: usize,
    pub beta: Option<f64>,
    pub pareto: Option<usize>,
    pub dominated: Option<usize>,
    pub unclassified: Option<usize>,
    /// `None` on the final pass.
    pub selected: Option<usize>,
    /// Class of the selected point when it was chosen (PAL and PALS).
    pub selected_class: Option<Class>,
    /// Plug-in prediction, from which `v_d` and `misclassification` are computed.
    pub predicted_set: Vec<usize>,
    pub predicted_front: Vec<Vec<f64>>,
    pub v_d: f64,
    pub misclassification: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub initial_design: Vec<usize>,
    pub iterations: Vec<IterationRecord>,
    pub predicted_set: Vec<usize>,
    pub predicted_front: Vec<Vec<f64>>,
    pub final_classification: Option<Classification>,
    pub final_params: Vec<KernelParams>,
    pub evaluations: usize,
    pub termination: Termination,
    /// Empty intersections resolved by the corrected construction.
    pub intersection_fallbacks: usize,
    /// Hyperparameter fits that failed and kept the previous estimate.
    pub reml_failures: usize,
    /// Hyperparameter fits that hit the iteration cap.
    pub reml_unconverged: usize,
}

impl RunRecord {
    pub fn last(&self) -> &IterationRecord {
        self.iterations.last().expect("a run records at least one iteration")
    }
}

/// Wall-clock seconds per iteration, kept apart from the record so records
/// compare equal across repeated runs.
pub type Timings = Vec<f64>;

/// Best of `candidates` uniformly drawn `n0`-subsets by minimal pairwise
/// distance. Ties keep the earliest draw.
pub fn initial_design(grid: &InputGrid, n0: usize, candidates: usize, seed: u64) -> Result<Vec<usize>> {
    if n0 == 0 || n0 > grid.len() {
        return Err(Error::InvalidArgument(format!(
            "initial design of {n0} points on a grid of {}",
            grid.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for _ in 0..candidates.max(1) {
        let mut set = rand::seq::index::sample(&mut rng, grid.len(), n0).into_vec();
        set.sort_unstable();
        let d = min_pairwise_distance(grid, &set);
        if best.as_ref().is_none_or(|(b, _)| d > *b) {
            best = Some((d, set));
        }
    }
    Ok(best.expect("at least one candidate").1)
}

/// `+∞` for fewer than two points.
pub fn min_pairwise_distance(grid: &InputGrid, set: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    for (a, &i) in set.iter().enumerate() {
        for &j in &set[a + 1..] {
            let d2: f64 = grid.point(i).iter().zip(grid.point(j)).map(|(x, y)| (x - y) * (x - y)).sum();
            best = best.min(d2);
        }
    }
    best.sqrt()
}

/// Pareto set and front of the posterior means.
pub fn plug_in_prediction(field: &PosteriorField) -> Result<(Vec<usize>, Vec<Vec<f64>>)> {
    let means = field.mean_vectors();
    let set = pareto_indices(&means)?;
    let front = set.iter().map(|&i| means[i].clone()).collect();
    Ok((set, front))
}

/// Uniform grid index, as drawn by PRS.
pub fn uniform_index<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    rng.gen_range(0..n)
}

// Independent random streams of one run.
const STREAM_DESIGN: u64 = 1;
const STREAM_NOISE: u64 = 2;
const STREAM_SELECT: u64 = 3;
const STREAM_FIT: u64 = 4;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

struct Hyper {
    params: Vec<Option<KernelParams>>,
    failures: usize,
    unconverged: usize,
}

impl Hyper {
    /// Refits `slot` on `data`, warm-started from the previous estimate. A
    /// failed fit keeps the previous estimate when there is one.
    fn refit(&mut self, slot: usize, data: &FoldedData, grid: &InputGrid, options: &RemlOptions, seed: u64) -> Result<KernelParams> {
        let init = match &self.params[slot] {
            Some(p) => p.clone(),
            None => default_initial_params(data, grid),
        };
        match fit_reml_data(data, grid, &init, options, seed) {
            Ok(fit) => {
                if !fit.converged {
                    self.unconverged += 1;
                }
                self.params[slot] = Some(fit.params.clone());
                Ok(fit.params)
            }
            Err(e) => match &self.params[slot] {
                Some(p) => {
                    self.failures += 1;
                    Ok(p.clone())
                }
                None => Err(e),
            },
        }
    }
}

/// Runs `config.algorithm` on `problem`. Deterministic in `(problem, config, seed)`.
pub fn run(problem: &dyn Problem, config: &RunConfig, seed: u64) -> Result<RunRecord> {
    run_with_clock(problem, config, seed, false).map(|(r, _)| r)
}

/// As [`run`], also returning per-iteration wall-clock time.
pub fn run_timed(problem: &dyn Problem, config: &RunConfig, seed: u64) -> Result<(RunRecord, Timings)> {
    run_with_clock(problem, config, seed, true)
}

// The clock is optional because some targets (browsers) have no `Instant`.
fn run_with_clock(problem: &dyn Problem, config: &RunConfig, seed: u64, timed: bool) -> Result<(RunRecord, Timings)> {
    config.validate()?;
    let grid = problem.grid();
    let n = grid.len();
    let q = problem.num_objectives();
    if config.epsilon.as_slice().len() != q {
        return Err(Error::DimensionMismatch { expected: q, found: config.epsilon.as_slice().len() });
    }
    let truth = problem.truth();

    let mut fit_rng = stream(seed, STREAM_FIT);
    let mut noise_rng = stream(seed, STREAM_NOISE);
    let mut select_rng = stream(seed, STREAM_SELECT);
    let design = initial_design(grid, config.n0, config.design_candidates, stream(seed, STREAM_DESIGN).next_u64())?;
    let mut store = ObservationStore::new(n, q);
    for &i in &design {
        store.fold(i, &problem.sample(i, config.initial_replicates, &mut noise_rng))?;
    }

    // One slot per objective, plus one for the ParEGO scalarization.
    let mut hyper = Hyper { params: vec![None; q + 1], failures: 0, unconverged: 0 };
    let mut prev_regions: Option<Vec<UncertaintyRegion>> = None;
    let mut prev_class: Option<Classification> = None;
    let mut fallbacks = 0;
    let mut iterations = Vec::new();
    let mut timings = Vec::new();
    let mut spent = 0usize;

    let (termination, final_pred, final_params) = 'run: loop {
        let it = iterations.len();
        let started = timed.then(Instant::now);
        let ctx = |e: Error| e.at_iteration(it);

        let refit = it % config.refit_every == 0;
        let mut params = Vec::with_capacity(q);
        for j in 0..q {
            let p = match (&hyper.params[j], refit) {
                (Some(p), false) => p.clone(),
                _ => hyper.refit(j, &store.folded(j), grid, &config.reml, fit_rng.next_u64()).map_err(ctx)?,
            };
            params.push(p);
        }
        let models = (0..q)
            .map(|j| GpModel::fit(&store.folded(j), grid, &params[j]))
            .collect::<Result<Vec<_>>>()
            .map_err(ctx)?;
        let field = PosteriorField::from_models(&models, grid);
        let (pred_set, pred_front) = plug_in_prediction(&field).map_err(ctx)?;
        let mut row = IterationRecord {
            iteration: it,
            evaluations: store.total_evaluations(),
            beta: None,
            pareto: None,
            dominated: None,
            unclassified: None,
            selected: None,
            selected_class: None,
            v_d: clipped_symmetric_difference_volume(&truth.front, &pred_front, DEFAULT_REFERENCE),
            misclassification: misclassification_rate(&truth.pareto_set, &pred_set, n).map_err(ctx)?,
            predicted_set: pred_set.clone(),
            predicted_front: pred_front.clone(),
        };

        let budget_left = spent < config.budget;
        let mut stop = None;
        let selected = match config.algorithm {
            Algorithm::Pals | Algorithm::Pal => {
                let pal = config.algorithm == Algorithm::Pal;
                let beta = config.beta.value(it + 1, q, n).map_err(ctx)?;
                row.beta = Some(beta);
                let mut regions = Vec::with_capacity(n);
                for i in 0..n {
                    let mu = field.mean_at(i);
                    if pal {
                        if let Some(z) = store.mean(i) {
                            regions.push(UncertaintyRegion::degenerate(z));
                            continue;
                        }
                    }
                    let rect = rectangle_from_posterior(&mu, &field.sd_at(i), beta).map_err(ctx)?;
                    let region = match (config.intersection, &prev_regions) {
                        (IntersectionMode::None, _) | (_, None) => rect,
                        (IntersectionMode::Intersect, Some(prev)) => match intersect_regions(&prev[i], &rect) {
                            Some(r) => r,
                            None => {
                                fallbacks += 1;
                                corrected_intersect(&prev[i], &rect, &mu)
                            }
                        },
                        (IntersectionMode::Corrected, Some(prev)) => {
                            if intersect_regions(&prev[i], &rect).is_none() {
                                fallbacks += 1;
                            }
                            corrected_intersect(&prev[i], &rect, &mu)
                        }
                    };
                    regions.push(region);
                }
                // PAL only revisits points that were still unclassified.
                let candidates: Vec<usize> = match (&prev_class, pal) {
                    (Some(c), true) => c.unclassified.clone(),
                    _ => (0..n).collect(),
                };
                let class = classify_subset(&regions, &config.epsilon, &candidates, if pal { prev_class.as_ref() } else { None })
                    .map_err(ctx)?;
                row.pareto = Some(class.pareto.len());
                row.dominated = Some(class.dominated.len());
                row.unclassified = Some(class.unclassified.len());
                let pick = if class.all_classified() {
                    stop = Some(Termination::AllClassified);
                    None
                } else if !budget_left {
                    stop = Some(Termination::Budget);
                    None
                } else {
                    match select_next(&class, &regions, pal, &store.visited_mask()) {
                        Ok(i) => Some(i),
                        Err(Error::NoSelectablePoint) => {
                            stop = Some(Termination::Exhausted);
                            None
                        }
                        Err(e) => return Err(ctx(e)),
                    }
                };
                row.selected_class = pick.map(|i| class.labels(n)[i]);
                prev_regions = Some(regions);
                prev_class = Some(class);
                pick
            }
            _ if !budget_left => {
                stop = Some(Termination::Budget);
                None
            }
            Algorithm::Prs => Some(uniform_index(&mut select_rng, n)),
            Algorithm::Cors => {
                let paths = sample_paths(&models, grid, config.sample_paths, select_rng.next_u64()).map_err(ctx)?;
                let w = misclassification_weights(&pred_set, &paths).map_err(ctx)?;
                let dist = WeightedIndex::new(&w).map_err(|e| ctx(Error::InvalidArgument(e.to_string())))?;
                Some(dist.sample(&mut select_rng))
            }
            Algorithm::ParegoEim => {
                let lambda = uniform_simplex(q, &mut select_rng);
                let visited = store.distinct_visited();
                let counts = visited.iter().map(|&i| store.count(i)).collect();
                let values = visited
                    .iter()
                    .map(|&i| augmented_chebyshev(store.mean(i).expect("visited"), &lambda, config.rho))
                    .collect();
                let data = FoldedData::from_means(visited.clone(), counts, values).map_err(ctx)?;
                let p = hyper.refit(q, &data, grid, &config.reml, fit_rng.next_u64()).map_err(ctx)?;
                let model = GpModel::fit(&data, grid, &p).map_err(ctx)?;
                let pts: Vec<&[f64]> = grid.points().iter().map(Vec::as_slice).collect();
                let (mean, var) = model.predict(&pts);
                let best = visited.iter().map(|&i| mean[i]).fold(f64::INFINITY, f64::min);
                let mut pick = 0;
                let mut best_ei = f64::NEG_INFINITY;
                for i in 0..n {
                    let ei = expected_improvement(mean[i], var[i].sqrt(), best);
                    if ei > best_ei {
                        best_ei = ei;
                        pick = i;
                    }
                }
                Some(pick)
            }
        };

        row.selected = selected;
        iterations.push(row);
        if let Some(reason) = stop {
            timings.push(started.map_or(0.0, |t| t.elapsed().as_secs_f64()));
            break 'run (reason, (pred_set, pred_front), params);
        }
        let x = selected.expect("a point is selected unless the run stops");
        store.fold(x, &problem.sample(x, config.batch_size, &mut noise_rng)).map_err(ctx)?;
        spent += config.batch_size;
        timings.push(started.map_or(0.0, |t| t.elapsed().as_secs_f64()));
    };

    let record = RunRecord {
        algorithm: config.algorithm,
        seed,
        initial_design: design,
        iterations,
        predicted_set: final_pred.0,
        predicted_front: final_pred.1,
        final_classification: prev_class,
        final_params,
        evaluations: store.total_evaluations(),
        termination,
        intersection_fallbacks: fallbacks,
        reml_failures: hyper.failures,
        reml_unconverged: hyper.unconverged,
    };
    Ok((record, timings))
}

fn run_as(expected: Algorithm, problem: &dyn Problem, config: &RunConfig, seed: u64) -> Result<RunRecord> {
    if config.algorithm != expected {
        return Err(Error::InvalidArgument(format!("config is for {}, not {expected}", config.algorithm)));
    }
    run(problem, config, seed)
}

pub fn run_pals(problem: &dyn Problem, config: &RunConfig, seed: u64) -> Result<RunRecord> {
    run_as(Algorithm::Pals, problem, config, seed)
}

pub fn run_pal_original(problem: &dyn Problem, config: &RunConfig, seed: u64) -> Result<RunRecord> {
    run_as(Algorithm::Pal, problem, config, seed)
}

pub fn run_prs(problem: &dyn Problem, config: &RunConfig, seed: u64) -> Result<RunRecord> {
    run_as(Algorithm::Prs, problem, config, seed)
}

pub fn run_cors(problem: &dyn Problem, config: &RunConfig, seed: u64) -> Result<RunRecord> {
    run_as(Algorithm::Cors, problem, config, seed)
}

pub fn run_parego_eim(problem: &dyn Problem, config: &RunConfig, seed: u64) -> Result<RunRecord> {
    run_as(Algorithm::ParegoEim, problem, config, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_values() {
        assert!((beta_fixed(0.5).unwrap() - 0.45494).abs() < 1e-4);
        assert!((beta_fixed(0.99).unwrap() - 6.6349).abs() < 1e-3);
        assert!(beta_fixed(1e-9).unwrap() < 1e-15);
        assert!(beta_fixed(0.0).is_err() && beta_fixed(1.0).is_err());
        assert!((beta_increasing(1, 2, 441, 0.05).unwrap() - 20.551).abs() < 1e-2);
        assert!(beta_increasing(0, 2, 441, 0.05).is_err());
    }

    #[test]
    fn beta_parse() {
        assert_eq!("0.25".parse::<BetaMode>().unwrap(), BetaMode::Fixed { coverage: 0.25 });
        assert_eq!("increasing".parse::<BetaMode>().unwrap(), BetaMode::Increasing { delta: 0.05 });
        assert!("1.5".parse::<BetaMode>().is_err());
    }

    #[test]
    fn design_is_argmax_of_min_distance() {
        let g = InputGrid::benchmark();
        let d = initial_design(&g, 20, 50, 9).unwrap();
        assert_eq!(d.len(), 20);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let first = rand::seq::index::sample(&mut rng, g.len(), 20).into_vec();
        assert!(min_pairwise_distance(&g, &d) >= min_pairwise_distance(&g, &first));
        assert_eq!(d, initial_design(&g, 20, 50, 9).unwrap());
        assert_eq!(initial_design(&g, 1, 5, 0).unwrap().len(), 1);
        assert!(initial_design(&g, 442, 5, 0).is_err());
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
    }
}
