//! Selection rules of the baseline methods.

use rand::Rng;
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::metrics::SamplePath;
use crate::pareto::pareto_indices;

/// Augmented Chebyshev scalarization `max_j λ_j z_j + ρ Σ_j λ_j z_j`.
pub fn augmented_chebyshev(z: &[f64], lambda: &[f64], rho: f64) -> f64 {
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for (v, l) in z.iter().zip(lambda) {
        max = max.max(l * v);
        sum += l * v;
    }
    max + rho * sum
}

/// Uniform draw from the probability simplex in `q` dimensions.
pub fn uniform_simplex<R: Rng + ?Sized>(q: usize, rng: &mut R) -> Vec<f64> {
    // Normalized unit exponentials are Dirichlet(1, ..., 1).
    let e: Vec<f64> = (0..q).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

/// Expected improvement below `best` for a Gaussian prediction `N(mean, sd²)`.
pub fn expected_improvement(mean: f64, sd: f64, best: f64) -> f64 {
    let gain = best - mean;
    if sd <= 0.0 {
        return gain.max(0.0);
    }
    let z = gain / sd;
    let n = Normal::new(0.0, 1.0).expect("standard normal");
    (gain * n.cdf(z) + sd * n.pdf(z)).max(0.0)
}

/// Selection probabilities proportional to how often each point's Pareto
/// membership under a sample path disagrees with the plug-in membership.
/// Falls back to uniform weights when no path disagrees anywhere.
pub fn misclassification_weights(plug_in: &[usize], paths: &[SamplePath]) -> Result<Vec<f64>> {
    let n = paths
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one sample path is required".into()))?
        .len();
    let mut in_plug = vec![false; n];
    for &i in plug_in {
        in_plug[i] = true;
    }
    let mut counts = vec![0usize; n];
    for path in paths {
        let mut member = vec![false; n];
        for i in pareto_indices(path)? {
            member[i] = true;
        }
        for i in 0..n {
            if member[i] != in_plug[i] {
                counts[i] += 1;
            }
        }
    }
    let total: usize = counts.iter().sum();
    Ok(if total == 0 {
        vec![1.0 / n as f64; n]
    } else {
        counts.into_iter().map(|c| c as f64 / total as f64).collect()
    })
}
