use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The search explored more nodes than the configured budget allowed.
    #[error("node budget of {budget} exceeded after exploring {explored} nodes")]
    BudgetExceeded { budget: u64, explored: u64 },

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
