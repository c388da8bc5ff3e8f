//! Gaussian-process regression on a finite grid with replicate folding.

mod kernel;
mod posterior;
mod reml;
mod sampling;
mod store;

pub use kernel::{matern52, KernelParams};
pub use posterior::{posterior, GpModel, PosteriorField};
pub use reml::{
    default_initial_params, fit_reml, fit_reml_data, restricted_log_likelihood, restricted_log_likelihood_gradient,
    NoiseEstimation, RemlFit, RemlOptions,
};
pub use sampling::sample_paths;
pub use store::{FoldedData, ObservationStore};
