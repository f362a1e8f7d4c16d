use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("parameter `{0}` has no assigned value")]
    MissingParameter(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular (no pivot in column {column})")]
    Singular { column: usize },

    #[error("partition {partition} has weight {weight}, expected {expected}")]
    WeightMismatch {
        partition: String,
        weight: u32,
        expected: u32,
    },

    #[error("tensor model would have {size} basis monomials, above the guard of {guard}")]
    BasisGuard { size: usize, guard: usize },

    #[error("rewrite system is not confluent: {0}")]
    NotConfluent(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("generator constant for dimension {0} must be nonzero")]
    ZeroConstant(u32),

    #[error("combination has no nonzero coefficient")]
    ZeroCombo,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
