use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("negative count {0}")]
    NegativeCount(i64),

    #[error("parts must be nonincreasing and positive (index {index}: {value})")]
    NotCanonical { index: usize, value: i64 },

    #[error("prevalence vector must be nonincreasing and nonnegative (index {index}: {value})")]
    InvalidPrevalence { index: usize, value: i64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("malformed partition input: {0}")]
    Parse(String),

    #[error("partition size {size} exceeds the size bound {bound}")]
    SizeExceedsBound { size: i64, bound: u64 },

    #[error("invalid epsilon {0}: {1}")]
    InvalidEpsilon(f64, &'static str),

    #[error("invalid delta {0}: must lie in [0, 1)")]
    InvalidDelta(f64),

    #[error("invalid geometric parameter {0}: must lie in (0, 1)")]
    InvalidAlpha(f64),

    #[error("{0}")]
    Precondition(String),

    #[error("expected a bit vector of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("encoding invariant violated: {0}")]
    EncodingInvariant(String),

    #[error("{what} = {got} exceeds the exhaustive-search limit {limit}")]
    Guardrail {
        what: &'static str,
        limit: u64,
        got: u64,
    },

    #[error("certification failed: {0}")]
    Certification(String),
}
