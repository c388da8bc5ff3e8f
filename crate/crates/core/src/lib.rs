//! Pareto active learning for noisy multi-objective simulators on finite grids.
//!
//! The crate provides the PALS driver and its PAL ancestor, baseline
//! optimizers (pure random search, concentrated random search, ParEGO with
//! the EI_m criterion), a replicate-folding Gaussian-process layer, nine
//! bi-objective benchmark problems and the error metrics used to compare
//! Pareto set and front predictions.

pub mod drivers;
pub mod error;
pub mod gp;
pub mod metrics;
pub mod pareto;
pub mod problems;

pub use error::{Error, Result};
