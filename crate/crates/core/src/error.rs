use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("no selectable point")]
    NoSelectablePoint,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} out of range for grid of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("insufficient data: need at least {needed} distinct points, have {have}")]
    InsufficientData { needed: usize, have: usize },
    #[error("ill-conditioned covariance")]
    IllConditioned,
    #[error("degenerate objective: {0}")]
    DegenerateObjective(String),
    #[error("unknown function id: {0}")]
    UnknownFunction(String),
    #[error("unknown problem: {0}")]
    UnknownProblem(String),
    #[error("reference point violated")]
    ReferencePointViolated,
    #[error("iteration {iteration}: {source}")]
    AtIteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_iteration(self, iteration: usize) -> Self {
        Error::AtIteration {
            iteration,
            source: Box::new(self),
        }
    }
}
