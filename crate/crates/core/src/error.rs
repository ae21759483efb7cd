use thiserror::Error;

/// Errors raised by the exact kernels and the coincidence solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("exterior algebra rank {0} exceeds the supported maximum of 64")]
    RankTooLarge(usize),

    #[error("integer overflow in {0}")]
    IntegerOverflow(&'static str),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-transverse system: stacked difference determinant is 0")]
    NonTransverse,

    #[error("unknown identifier: {0}")]
    UnknownIdentifier(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
