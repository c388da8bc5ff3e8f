use crate::error::{Error, Result};

const SQRT5: f64 = 2.236_067_977_499_79;

/// Matérn 5/2 hyperparameters plus the homoscedastic noise variance.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelParams {
    /// Process variance.
    pub variance: f64,
    /// One lengthscale per input dimension.
    pub lengthscales: Vec<f64>,
    /// Variance of a single noisy observation.
    pub noise_variance: f64,
}

impl KernelParams {
    pub fn new(variance: f64, lengthscales: Vec<f64>, noise_variance: f64) -> Result<Self> {
        let p = Self { variance, lengthscales, noise_variance };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.variance) || !ok(self.noise_variance) || !self.lengthscales.iter().all(|l| ok(*l)) {
            return Err(Error::InvalidArgument(format!("kernel parameters must be positive and finite: {self:?}")));
        }
        if self.lengthscales.is_empty() {
            return Err(Error::InvalidArgument("at least one lengthscale is required".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.lengthscales.len()
    }

    /// Anisotropically scaled Euclidean distance.
    #[inline]
    pub fn scaled_distance(&self, x: &[f64], x2: &[f64]) -> f64 {
        x.iter()
            .zip(x2)
            .zip(&self.lengthscales)
            .map(|((a, b), l)| {
                let d = (a - b) / l;
                d * d
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Correlation at scaled distance `r` (kernel value divided by the variance).
    #[inline]
    pub fn correlation(r: f64) -> f64 {
        let s = SQRT5 * r;
        (1.0 + s + s * s / 3.0) * (-s).exp()
    }
}

/// Matérn 5/2 covariance between two input points.
///
/// # Panics
///
/// Panics on non-finite inputs.
pub fn matern52(x: &[f64], x2: &[f64], params: &KernelParams) -> f64 {
    assert!(x.iter().chain(x2).all(|v| v.is_finite()), "non-finite kernel input");
    params.variance * KernelParams::correlation(params.scaled_distance(x, x2))
}
