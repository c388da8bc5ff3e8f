//! Benchmark harness: seeded replications of every (problem, method) pair,
//! CSV traces, summary tables and averaged curves.

pub mod config;
pub mod curves;
pub mod experiment;
pub mod listing;
pub mod output;
pub mod table;
pub mod validate;

use thiserror::Error;

pub use config::{CliOverrides, ExperimentConfig, MethodSpec, ProblemSpec, Profile};
pub use experiment::{run_experiment, run_seed, ExperimentResult, RunOutcome};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{0} run(s) failed")]
    RunsFailed(usize),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] pals::Error),
}

impl BenchError {
    /// 2 for configuration problems, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) => 2,
            _ => 1,
        }
    }
}
