use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invalid braid: {0}")]
    InvalidBraid(String),
    #[error("skein reduction exceeded the limit of {limit} nodes")]
    ReductionLimit { limit: usize },
    #[error("colour of size {0} is outside the supported range (sizes 1 and 2)")]
    ColorScope(usize),
    #[error("degree {degree} exceeds the supported maximum of {max} for {what}")]
    DegreeScope { what: &'static str, degree: usize, max: usize },
    #[error("unsupported link identifier `{0}` (expected `unknot` or `hopf`)")]
    UnsupportedLink(String),
    #[error("inconsistent conventions: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
