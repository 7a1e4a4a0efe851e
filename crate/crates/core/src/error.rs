use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar {0:?}")]
    MalformedScalar(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed algebra element {text:?}: {reason}")]
    MalformedElement { text: String, reason: String },
    #[error("word of {len} generators exceeds the cap of {cap}")]
    WordTooLong { len: usize, cap: usize },
    #[error("normal ordering produced more than {0} terms")]
    TermLimit(usize),
    #[error("malformed module spec {text:?}: {reason}")]
    MalformedSpec { text: String, reason: String },
    #[error("offset {offset} is inconsistent with {kind}")]
    OffsetMismatch { offset: String, kind: String },
    #[error("incompatible parts: {0}")]
    Incompatible(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("vector at weight index {k} has {len} coordinates, expected {dim}")]
    BadVector { k: i64, len: usize, dim: usize },
    #[error("L{i} acting at weight index {k} leaves the realized window")]
    Truncated { i: i64, k: i64 },
    #[error("generator index {i} exceeds the stored bound {bound}")]
    GeneratorOutOfRange { i: i64, bound: i64 },
    #[error("subspace family is not invariant under L{i} at weight index {k}")]
    NotInvariant { i: i64, k: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
