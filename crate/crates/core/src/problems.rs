//! Bi-objective benchmark problems g1–g9 on a 21 × 21 grid over `[0, 1]²`.
//!
//! Each problem pairs two test functions (optionally with shifted inputs),
//! rescales them to `[0, 1]` using the minimum and maximum over the grid, and
//! adds homoscedastic Gaussian noise whose variance is given in raw units.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::pareto::pareto_indices;

/// Finite search space: an ordered list of distinct points in `ℝ^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputGrid {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl InputGrid {
    /// Regular grid with `per_axis` points per axis on `[0, 1]²`.
    ///
    /// Row-major: index `i * per_axis + j` holds `(i / (per_axis - 1), j / (per_axis - 1))`,
    /// so the second coordinate varies fastest.
    pub fn regular_2d(per_axis: usize) -> Self {
        assert!(per_axis >= 2);
        let step = 1.0 / (per_axis - 1) as f64;
        let points = (0..per_axis)
            .flat_map(|i| (0..per_axis).map(move |j| vec![i as f64 * step, j as f64 * step]))
            .collect();
        Self { dim: 2, points }
    }

    /// The 441-point benchmark grid.
    pub fn benchmark() -> Self {
        Self::regular_2d(21)
    }

    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().map(Vec::len).ok_or(Error::EmptyPointSet)?;
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
            if p.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidArgument("non-finite grid coordinate".into()));
            }
        }
        for i in 0..points.len() {
            for j in 0..i {
                if points[i] == points[j] {
                    return Err(Error::InvalidArgument(format!("duplicate grid points {j} and {i}")));
                }
            }
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, index: usize) -> &[f64] {
        &self.points[index]
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// Per-dimension `max - min` over the grid.
    pub fn spans(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|k| {
                let (lo, hi) = self
                    .points
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])));
                hi - lo
            })
            .collect()
    }
}

/// Test functions f1–f15.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestFunction {
    F1,
    F2,
    /// Evaluated on `[-5,5]²`.
    F3,
    /// Branin, mapped from `[0,1]²` to `[-5,10] × [0,15]`.
    F4,
    /// Rosenbrock, mapped from `[0,1]²` to `[-5,5]²`.
    F5,
    /// Random cubic with coefficient column `0..10` (f6 → 0, …, f15 → 9).
    Cubic(u8),
}

/// Coefficients `c1..c10` of the cubic test functions f6–f15, one row per function.
pub const CUBIC_COEFFICIENTS: [[f64; 10]; 10] = [
    [0.36, 8.1, 7.5, -83.0, 26.0, -80.0, -440.0, 94.0, 920.0, 930.0],
    [0.68, -9.4, 9.1, -2.9, -60.0, 72.0, 160.0, -830.0, -580.0, -920.0],
    [0.094, -7.2, 7.0, 49.0, 68.0, -49.0, 630.0, -510.0, 860.0, -300.0],
    [0.61, 5.0, 2.3, -5.3, 30.0, -66.0, -170.0, -99.0, -830.0, 430.0],
    [-0.38, 8.5, 1.4, 63.0, 81.0, 96.0, -120.0, -780.0, -480.0, -180.0],
    [-0.19, 4.8, 2.1, 42.0, 56.0, 77.0, 410.0, 360.0, 150.0, -16.0],
    [0.78, 6.0, -4.7, 90.0, -85.0, -82.0, 600.0, 890.0, 370.0, -740.0],
    [-0.45, 7.8, -7.7, 28.0, 34.0, -31.0, -500.0, -170.0, -480.0, 530.0],
    [-0.45, -9.3, -3.5, 14.0, -9.7, 22.0, -880.0, -370.0, 550.0, 390.0],
    [0.75, 7.4, -8.2, -98.0, 15.0, -31.0, -450.0, -62.0, 780.0, -260.0],
];

const BRANIN_A: f64 = 5.1 / (4.0 * PI * PI);
const BRANIN_B: f64 = 5.0 / PI;
// The cosine weight is s(1 - t) with s = 10, t = 1/(8π).
const BRANIN_C: f64 = 10.0 * (1.0 - 1.0 / (8.0 * PI));

impl TestFunction {
    pub const ALL: [TestFunction; 15] = [
        TestFunction::F1,
        TestFunction::F2,
        TestFunction::F3,
        TestFunction::F4,
        TestFunction::F5,
        TestFunction::Cubic(0),
        TestFunction::Cubic(1),
        TestFunction::Cubic(2),
        TestFunction::Cubic(3),
        TestFunction::Cubic(4),
        TestFunction::Cubic(5),
        TestFunction::Cubic(6),
        TestFunction::Cubic(7),
        TestFunction::Cubic(8),
        TestFunction::Cubic(9),
    ];

    /// Evaluates the function at a 2-d point, without noise or scaling.
    pub fn eval(self, x: &[f64]) -> f64 {
        let (x1, x2) = (x[0], x[1]);
        match self {
            TestFunction::F1 => {
                780000.0 + 110000.0 * x1 - 12000.0 * x2 - 36000.0 * x1 * x2 + 280000.0 * x1 * x1 + 50000.0 * x2 * x2
            }
            TestFunction::F2 => {
                0.83 + 0.17 * x1 - 0.015 * x2 - 0.0038 * x1 * x2 + 0.061 * x1 * x1 + 0.0011 * x2 * x2
            }
            TestFunction::F3 => {
                let u = -5.0 + 10.0 * x1;
                let v = -5.0 + 10.0 * x2;
                (0.36 * (u + v)).exp() + 0.6 * u + 1.2 * v * v + 3.0 * (0.8 * PI * u).sin()
            }
            TestFunction::F4 => {
                let u = -5.0 + 15.0 * x1;
                let v = 15.0 * x2;
                let t = v - BRANIN_A * u * u + BRANIN_B * u - 6.0;
                t * t + BRANIN_C * u.cos() + 10.0
            }
            TestFunction::F5 => {
                let u = -5.0 + 10.0 * x1;
                let v = -5.0 + 10.0 * x2;
                100.0 * (v - u * u).powi(2) + (1.0 - u).powi(2)
            }
            TestFunction::Cubic(k) => {
                let c = &CUBIC_COEFFICIENTS[k as usize];
                let in_x2 = c[0] + x2 * (c[2] + x2 * (c[5] + x2 * c[9]));
                in_x2 + x1 * (c[1] + c[3] * x2 + c[7] * x2 * x2 + x1 * (c[4] + c[6] * x2 + c[8] * x1))
            }
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::F1 => write!(f, "f1"),
            TestFunction::F2 => write!(f, "f2"),
            TestFunction::F3 => write!(f, "f3"),
            TestFunction::F4 => write!(f, "f4"),
            TestFunction::F5 => write!(f, "f5"),
            TestFunction::Cubic(k) => write!(f, "f{}", 6 + *k as usize),
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n: usize = s
            .strip_prefix('f')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))?;
        match n {
            1 => Ok(TestFunction::F1),
            2 => Ok(TestFunction::F2),
            3 => Ok(TestFunction::F3),
            4 => Ok(TestFunction::F4),
            5 => Ok(TestFunction::F5),
            6..=15 => Ok(TestFunction::Cubic((n - 6) as u8)),
            _ => Err(Error::UnknownFunction(s.to_string())),
        }
    }
}

/// Evaluates a test function by name, e.g. `eval_raw("f6", &[0.0, 0.0])`.
pub fn eval_raw(function: &str, x: &[f64]) -> Result<f64> {
    Ok(function.parse::<TestFunction>()?.eval(x))
}

/// A test function with shifted input, rescaled to `[0, 1]` over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledObjective {
    pub function: TestFunction,
    pub shift: [f64; 2],
    pub min: f64,
    pub max: f64,
    /// Scaled noiseless values at every grid point.
    pub values: Vec<f64>,
}

impl ScaledObjective {
    pub fn range(&self) -> f64 {
        self.max - self.min
    }

    pub fn scale(&self, raw: f64) -> f64 {
        (raw - self.min) / (self.max - self.min)
    }
}

/// `g(x) = (f(x - x0) - min) / (max - min)`, with min and max taken over `grid`.
pub fn scale_to_unit(function: TestFunction, shift: [f64; 2], grid: &InputGrid) -> Result<ScaledObjective> {
    if grid.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let raw: Vec<f64> = grid
        .points()
        .iter()
        .map(|p| function.eval(&[p[0] - shift[0], p[1] - shift[1]]))
        .collect();
    let min = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let max = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(max > min) {
        return Err(Error::DegenerateObjective(function.to_string()));
    }
    let values = raw.iter().map(|r| (r - min) / (max - min)).collect();
    Ok(ScaledObjective { function, shift, min, max, values })
}

/// Noiseless scaled values and the exact Pareto set/front of a problem.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    /// `values[i]` is the objective vector at grid index `i`.
    pub values: Vec<Vec<f64>>,
    pub pareto_set: Vec<usize>,
    pub front: Vec<Vec<f64>>,
}

impl GroundTruth {
    pub fn from_values(values: Vec<Vec<f64>>) -> Result<Self> {
        let pareto_set = pareto_indices(&values)?;
        let front = pareto_set.iter().map(|&i| values[i].clone()).collect();
        Ok(Self { values, pareto_set, front })
    }
}

/// A noisy multi-objective simulator on a finite grid, as seen by the drivers.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;
    fn grid(&self) -> &InputGrid;
    fn num_objectives(&self) -> usize;
    /// `k` independent noisy evaluations at grid point `index`, each of length `q`.
    fn sample(&self, index: usize, k: usize, rng: &mut dyn RngCore) -> Vec<Vec<f64>>;
    fn truth(&self) -> &GroundTruth;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProblemId(u8);

impl ProblemId {
    pub fn new(n: u8) -> Result<Self> {
        if (1..=9).contains(&n) {
            Ok(Self(n))
        } else {
            Err(Error::UnknownProblem(format!("g{n}")))
        }
    }

    pub fn all() -> impl Iterator<Item = ProblemId> {
        (1..=9).map(ProblemId)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    /// Pareto-set cardinality reported for the problem's reference definition.
    pub fn published_pareto_size(self) -> usize {
        [136, 10, 12, 7, 60, 22, 67, 63, 36][self.0 as usize - 1]
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

impl FromStr for ProblemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix('g')
            .and_then(|d| d.parse::<u8>().ok())
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
            .and_then(ProblemId::new)
    }
}

struct ProblemDef {
    functions: [TestFunction; 2],
    noise_variances: [f64; 2],
    shifts: [[f64; 2]; 2],
}

fn definition(id: ProblemId) -> ProblemDef {
    use TestFunction::*;
    let none = [[0.0, 0.0]; 2];
    let half = [[0.5, 0.5]; 2];
    let (functions, noise_variances, shifts) = match id.0 {
        1 => ([F1, F2], [3.6e9, 3.9e-3], none),
        2 => ([F4, F3], [3.1e2, 4.8e3], none),
        3 => ([F4, F5], [3.1e2, 5.7e8], none),
        4 => ([F3, F5], [4.8e3, 5.7e8], none),
        5 => ([Cubic(0), Cubic(1)], [7.0e2, 5.6e3], half),
        6 => ([Cubic(2), Cubic(3)], [5.8e2, 3.1e3], half),
        7 => ([Cubic(4), Cubic(5)], [2.1e3, 3.2e2], half),
        8 => ([Cubic(6), Cubic(7)], [1.4e4, 1.6e3], [[0.3, 0.8], [0.6, 0.6]]),
        9 => ([Cubic(8), Cubic(9)], [3.7e3, 2.0e4], [[0.3, 0.8], [0.3, 0.8]]),
        _ => unreachable!("ProblemId is validated on construction"),
    };
    ProblemDef { functions, noise_variances, shifts }
}

/// One of the nine benchmark problems, with cached scaling and ground truth.
#[derive(Debug, Clone)]
pub struct BenchmarkProblem {
    id: ProblemId,
    name: String,
    grid: InputGrid,
    objectives: [ScaledObjective; 2],
    noise_variances: [f64; 2],
    noise_sd_scaled: [f64; 2],
    truth: GroundTruth,
}

impl BenchmarkProblem {
    pub fn new(id: ProblemId) -> Result<Self> {
        let def = definition(id);
        let grid = InputGrid::benchmark();
        let objectives = [
            scale_to_unit(def.functions[0], def.shifts[0], &grid)?,
            scale_to_unit(def.functions[1], def.shifts[1], &grid)?,
        ];
        let values = (0..grid.len())
            .map(|i| vec![objectives[0].values[i], objectives[1].values[i]])
            .collect();
        let truth = GroundTruth::from_values(values)?;
        let mut p = Self {
            id,
            name: id.to_string(),
            grid,
            objectives,
            noise_variances: def.noise_variances,
            noise_sd_scaled: [0.0; 2],
            truth,
        };
        p.set_noise(def.noise_variances)?;
        Ok(p)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Self::new(name.parse()?)
    }

    /// Same problem with the raw-unit noise variances replaced.
    pub fn with_noise_variances(mut self, variances: [f64; 2]) -> Result<Self> {
        self.set_noise(variances)?;
        Ok(self)
    }

    fn set_noise(&mut self, variances: [f64; 2]) -> Result<()> {
        if variances.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidArgument("noise variances must be finite and >= 0".into()));
        }
        self.noise_variances = variances;
        for j in 0..2 {
            self.noise_sd_scaled[j] = variances[j].sqrt() / self.objectives[j].range();
        }
        Ok(())
    }

    pub fn id(&self) -> ProblemId {
        self.id
    }

    pub fn objectives(&self) -> &[ScaledObjective; 2] {
        &self.objectives
    }

    /// Noise variances in raw (unscaled) units.
    pub fn noise_variances(&self) -> [f64; 2] {
        self.noise_variances
    }

    /// Noise standard deviations after scaling to `[0, 1]`.
    pub fn scaled_noise_sd(&self) -> [f64; 2] {
        self.noise_sd_scaled
    }
}

impl Problem for BenchmarkProblem {
    fn name(&self) -> &str {
        &self.name
    }

    fn grid(&self) -> &InputGrid {
        &self.grid
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn sample(&self, index: usize, k: usize, rng: &mut dyn RngCore) -> Vec<Vec<f64>> {
        sample_noisy(self, index, k, rng)
    }

    fn truth(&self) -> &GroundTruth {
        &self.truth
    }
}

/// `k` draws of `g_j(x) + ε_j` at grid point `index`, where the noise has the
/// problem's raw variance pushed through the same affine scaling as `g_j`.
pub fn sample_noisy(problem: &BenchmarkProblem, index: usize, k: usize, rng: &mut dyn RngCore) -> Vec<Vec<f64>> {
    let means = &problem.truth.values[index];
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let row = (0..2)
            .map(|j| {
                let sd = problem.noise_sd_scaled[j];
                if sd > 0.0 {
                    means[j] + Normal::new(0.0, sd).expect("finite sd").sample(rng)
                } else {
                    means[j]
                }
            })
            .collect();
        out.push(row);
    }
    out
}

/// Exact Pareto set and front of a benchmark problem.
pub fn ground_truth(problem: &BenchmarkProblem) -> (&[usize], &[Vec<f64>]) {
    (&problem.truth.pareto_set, &problem.truth.front)
}
