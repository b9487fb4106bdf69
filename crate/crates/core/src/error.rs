use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("error parameter must lie in (0, 1), got {0}")]
    InvalidEps(f64),

    #[error("arity mismatch: expected {expected}, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("arity {arity} outside the supported range 1..={max}")]
    ArityOutOfRange { arity: usize, max: usize },

    #[error("point index {index} does not fit in arity {arity}")]
    PointOutOfRange { index: u64, arity: usize },

    #[error("invalid band [{lo}, {hi}] for arity {arity}")]
    InvalidBand { lo: usize, hi: usize, arity: usize },

    #[error("enumeration of {predicted} points exceeds the cap of {cap}")]
    EnumerationCap { predicted: u128, cap: u64 },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("not a violation: {0}")]
    NotAViolation(String),

    #[error("level matching requires 2w < a, got a={a}, w={w}")]
    LevelOutOfRange { a: usize, w: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
