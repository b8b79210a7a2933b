use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("highest weight must have at least one entry")]
    EmptyWeight,
    /// 1-based index of the first positive entry.
    #[error("entry {index} positive ({value})")]
    PositiveEntry { index: usize, value: i64 },
    /// 1-based index of the entry that exceeds its predecessor.
    #[error("entry {index} increases ({previous} < {value})")]
    IncreasingEntry { index: usize, previous: i64, value: i64 },
    #[error("entry {index} negative ({value}) in non-negative label convention")]
    NegativeLabel { index: usize, value: i64 },
    #[error("malformed pattern: {0}")]
    Shape(String),
    #[error("patterns are associated with different highest weights")]
    MixedWeights,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("{0}")]
    Domain(String),
    #[error("dimension {count} exceeds guard {guard}")]
    GuardExceeded { count: BigUint, guard: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}
