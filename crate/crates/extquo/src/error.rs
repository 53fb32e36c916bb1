use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown group label `{0}`")]
    UnknownLabel(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("group generation exceeded {0} elements; the datum is not of finite type or the bound is too small")]
    NonFiniteType(usize),
    #[error("group order {order} exceeds the configured bound {bound}")]
    ResourceBound { order: usize, bound: usize },
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("point has nonzero q-exponent; only finite-order points are accepted here")]
    QExponent,
    #[error("point does not lie on the stratum")]
    OffCoset,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("ambiguous stratum label: {0}")]
    AmbiguousLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
