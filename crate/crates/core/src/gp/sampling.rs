use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::posterior::{cholesky_with_jitter, GpModel};
use crate::error::{Error, Result};
use crate::metrics::SamplePath;
use crate::problems::InputGrid;

/// Joint posterior draws over the whole grid, one independent GP per objective.
///
/// Returns `count` paths; `paths[s][i][j]` is objective `j` at grid index `i`.
/// Draws are a deterministic function of `seed`.
pub fn sample_paths(models: &[GpModel], grid: &InputGrid, count: usize, seed: u64) -> Result<Vec<SamplePath>> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample path count must be >= 1".into()));
    }
    let pts: Vec<&[f64]> = grid.points().iter().map(Vec::as_slice).collect();
    let n = pts.len();
    let mut paths = vec![vec![vec![0.0; models.len()]; n]; count];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (j, model) in models.iter().enumerate() {
        let (mean, _) = model.predict(&pts);
        let cov = model.posterior_covariance(&pts);
        let (chol, _) = cholesky_with_jitter(cov, model.params().variance)?;
        let l = chol.l();
        for path in paths.iter_mut() {
            let z = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
            let draw = &l * z;
            for i in 0..n {
                path[i][j] = mean[i] + draw[i];
            }
        }
    }
    Ok(paths)
}
