use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("move budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("realization failed, offending pairs {pairs:?}")]
    RealizationFailed { pairs: Vec<(usize, usize)> },
    #[error("homotopic codes at indices {0} and {1}")]
    DuplicateClass(usize, usize),
    #[error("family is not certified")]
    NotCertified,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
