use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("state count exceeds the budget of {budget}")]
    CapacityExceeded { budget: usize },
    #[error("matrix fill exceeds the budget of {budget} entries")]
    BudgetExceeded { budget: usize },
    #[error("matrix is not primitive")]
    NotPrimitive,
    #[error("no recurrence found up to exponent {0}")]
    NotFound(usize),
    #[error("power iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("need at least {needed} initial values, got {got}")]
    InsufficientInitialValues { needed: usize, got: usize },
    #[error("no tabulated formula for {problem} at height {n}")]
    OutOfTable { problem: String, n: usize },
    #[error("band height {h} is too large for a {n}x{m} grid")]
    DimensionTooSmall { n: usize, m: usize, h: usize },
    #[error("search space too large for brute force")]
    TooLarge,
    #[error("{0} has no loss model for this operation")]
    LossUnsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("state cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
