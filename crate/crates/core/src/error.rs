use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("negative argument: {0}")]
    NegativeArgument(i64),

    #[error("{what} = {requested} exceeds the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        requested: usize,
        bound: usize,
    },

    #[error("jump index {jump} out of range 1..={n}")]
    JumpOutOfRange { jump: usize, n: usize },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("tree does not avoid {{h, d}}")]
    NotIncreasing,

    #[error("malformed path: {0}")]
    MalformedPath(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("series constant term must be {expected}")]
    ConstantTerm { expected: &'static str },

    #[error("coefficient index {index} beyond series order {order}")]
    OrderExceeded { index: usize, order: usize },

    #[error("{0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
