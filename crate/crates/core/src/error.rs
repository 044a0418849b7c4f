use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// are reported through [`crate::dualities::VerificationReport`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {lambda} has length {length} > rank {rank}")]
    LengthExceedsRank {
        lambda: String,
        length: usize,
        rank: usize,
    },

    #[error("partition {lambda} has size {size}, expected {expected}")]
    SizeMismatch {
        lambda: String,
        size: usize,
        expected: usize,
    },

    #[error("group elements of different degrees {0} and {1}")]
    DegreeMismatch(usize, usize),

    #[error("operators act on different spaces: {0}")]
    SpaceMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("operator is not parity-homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("operator is not diagonal on the given basis: {0}")]
    NotDiagonal(String),

    #[error("vector is not singular: {0}")]
    NotSingular(String),

    #[error("ambient dimension {dim} exceeds the guard {bound}")]
    DimensionGuard { dim: usize, bound: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
