use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use super::kernel::{matern52, KernelParams};
use super::store::{FoldedData, ObservationStore};
use crate::error::{Error, Result};
use crate::problems::InputGrid;

/// Relative jitter range tried, in order, when a covariance factorization fails.
pub(crate) const JITTER_START: f64 = 1e-10;
pub(crate) const JITTER_MAX: f64 = 1e-4;

/// Cholesky factor of `matrix`, adding `jitter * scale` to the diagonal
/// (starting from none, then `JITTER_START`, ×10 up to `JITTER_MAX`) until it
/// succeeds. Returns the factor and the jitter used.
pub(crate) fn cholesky_with_jitter(matrix: DMatrix<f64>, scale: f64) -> Result<(Cholesky<f64, Dyn>, f64)> {
    if let Some(c) = Cholesky::new(matrix.clone()) {
        return Ok((c, 0.0));
    }
    let mut rel = JITTER_START;
    while rel <= JITTER_MAX * (1.0 + 1e-9) {
        let mut m = matrix.clone();
        let add = rel * scale;
        for i in 0..m.nrows() {
            m[(i, i)] += add;
        }
        if let Some(c) = Cholesky::new(m) {
            return Ok((c, add));
        }
        rel *= 10.0;
    }
    Err(Error::IllConditioned)
}

/// A GP conditioned on replicate-folded data, with the constant mean
/// integrated out under a flat prior (ordinary kriging).
///
/// Observation noise at a point with `n` replicates is `noise_variance / n`,
/// so the cost is cubic in the number of distinct visited points only.
#[derive(Debug, Clone)]
pub struct GpModel {
    params: KernelParams,
    train_x: Vec<Vec<f64>>,
    chol: Cholesky<f64, Dyn>,
    /// `K⁻¹ (y - m̂ 1)`.
    alpha: DVector<f64>,
    /// `1ᵀ K⁻¹ 1`.
    one_kinv_one: f64,
    mean_const: f64,
    jitter: f64,
}

impl GpModel {
    /// Conditions on `data`, where `data.indices` index into `grid`.
    pub fn fit(data: &FoldedData, grid: &InputGrid, params: &KernelParams) -> Result<Self> {
        params.validate()?;
        if data.is_empty() {
            return Err(Error::InsufficientData { needed: 1, have: 0 });
        }
        if params.dim() != grid.dim() {
            return Err(Error::DimensionMismatch { expected: grid.dim(), found: params.dim() });
        }
        let train_x: Vec<Vec<f64>> = data.indices.iter().map(|&i| grid.point(i).to_vec()).collect();
        let m = train_x.len();
        let mut k = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..=i {
                let v = matern52(&train_x[i], &train_x[j], params);
                k[(i, j)] = v;
                k[(j, i)] = v;
            }
            k[(i, i)] += params.noise_variance / data.counts[i] as f64;
        }
        let (chol, jitter) = cholesky_with_jitter(k, params.variance)?;
        let y = DVector::from_column_slice(&data.means);
        let kinv_one = chol.solve(&DVector::from_element(m, 1.0));
        let one_kinv_one = kinv_one.sum();
        let kinv_y = chol.solve(&y);
        let mean_const = kinv_one.dot(&y) / one_kinv_one;
        let alpha = kinv_y - kinv_one * mean_const;
        Ok(Self {
            params: params.clone(),
            train_x,
            chol,
            alpha,
            one_kinv_one,
            mean_const,
            jitter,
        })
    }

    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    /// Generalized least-squares estimate of the constant mean.
    pub fn mean_constant(&self) -> f64 {
        self.mean_const
    }

    /// Diagonal jitter added to make the training covariance factorizable.
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    fn cross_cov(&self, points: &[&[f64]]) -> DMatrix<f64> {
        let m = self.train_x.len();
        DMatrix::from_fn(m, points.len(), |i, j| matern52(&self.train_x[i], points[j], &self.params))
    }

    /// Posterior means and variances at `points`.
    pub fn predict(&self, points: &[&[f64]]) -> (Vec<f64>, Vec<f64>) {
        let kx = self.cross_cov(points);
        let v = self.chol.solve(&kx);
        let mut means = Vec::with_capacity(points.len());
        let mut vars = Vec::with_capacity(points.len());
        for j in 0..points.len() {
            let col = kx.column(j);
            let vcol = v.column(j);
            means.push(self.mean_const + col.dot(&self.alpha));
            let u = 1.0 - vcol.sum();
            let var = self.params.variance - col.dot(&vcol) + u * u / self.one_kinv_one;
            vars.push(var.max(0.0));
        }
        (means, vars)
    }

    /// Posterior variance at `points` had the constant mean been known
    /// (simple kriging). Never exceeds the process variance.
    pub fn known_mean_variance(&self, points: &[&[f64]]) -> Vec<f64> {
        let kx = self.cross_cov(points);
        let v = self.chol.solve(&kx);
        (0..points.len())
            .map(|j| (self.params.variance - kx.column(j).dot(&v.column(j))).max(0.0))
            .collect()
    }

    /// Full posterior covariance matrix over `points`.
    pub fn posterior_covariance(&self, points: &[&[f64]]) -> DMatrix<f64> {
        let kx = self.cross_cov(points);
        let v = self.chol.solve(&kx);
        let u: DVector<f64> = DVector::from_iterator(points.len(), (0..points.len()).map(|j| 1.0 - v.column(j).sum()));
        let n = points.len();
        // kxᵀ K⁻¹ kx is symmetric only up to rounding; average both halves.
        let explained = kx.transpose() * v;
        let mut cov = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let prior = matern52(points[i], points[j], &self.params);
                let c = prior - 0.5 * (explained[(i, j)] + explained[(j, i)]) + u[i] * u[j] / self.one_kinv_one;
                cov[(i, j)] = c;
                cov[(j, i)] = c;
            }
        }
        cov
    }
}

/// Posterior means and standard deviations on the whole grid, per objective.
#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorField {
    /// `means[j][i]`: objective `j` at grid index `i`.
    pub means: Vec<Vec<f64>>,
    pub sds: Vec<Vec<f64>>,
    pub params: Vec<KernelParams>,
    pub mean_constants: Vec<f64>,
}

impl PosteriorField {
    pub fn from_models(models: &[GpModel], grid: &InputGrid) -> Self {
        let pts: Vec<&[f64]> = grid.points().iter().map(Vec::as_slice).collect();
        let mut field = PosteriorField {
            means: Vec::with_capacity(models.len()),
            sds: Vec::with_capacity(models.len()),
            params: Vec::with_capacity(models.len()),
            mean_constants: Vec::with_capacity(models.len()),
        };
        for m in models {
            let (mu, var) = m.predict(&pts);
            field.means.push(mu);
            field.sds.push(var.into_iter().map(f64::sqrt).collect());
            field.params.push(m.params().clone());
            field.mean_constants.push(m.mean_constant());
        }
        field
    }

    pub fn num_objectives(&self) -> usize {
        self.means.len()
    }

    pub fn len(&self) -> usize {
        self.means.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Posterior mean vector at grid index `i`.
    pub fn mean_at(&self, i: usize) -> Vec<f64> {
        self.means.iter().map(|m| m[i]).collect()
    }

    pub fn sd_at(&self, i: usize) -> Vec<f64> {
        self.sds.iter().map(|s| s[i]).collect()
    }

    /// Per-point mean vectors, indexed by grid point.
    pub fn mean_vectors(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.mean_at(i)).collect()
    }
}

/// Fits one GP per objective with the given parameters and evaluates it on the grid.
pub fn posterior(store: &ObservationStore, grid: &InputGrid, params: &[KernelParams]) -> Result<(PosteriorField, Vec<GpModel>)> {
    if params.len() != store.num_objectives() {
        return Err(Error::DimensionMismatch { expected: store.num_objectives(), found: params.len() });
    }
    let models = params
        .iter()
        .enumerate()
        .map(|(j, p)| GpModel::fit(&store.folded(j), grid, p))
        .collect::<Result<Vec<_>>>()?;
    Ok((PosteriorField::from_models(&models, grid), models))
}
