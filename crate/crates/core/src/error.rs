use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("space has {size} points, above the enumeration cap of {cap}")]
    CapExceeded { size: String, cap: u64 },

    #[error("exact search exceeded its node budget of {budget}")]
    BudgetExceeded { budget: u64 },

    #[error("a center point is required for ball volumes in {0}")]
    MissingCenter(String),

    #[error("K_{k}(x; q={q}, n={n}) has no sign change on [0, n]")]
    NoPositiveRoot { k: u64, q: u64, n: u64 },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
