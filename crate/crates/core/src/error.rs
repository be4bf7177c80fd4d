use thiserror::Error;

/// Errors raised by the library and the command-line front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {0} must be even and non-negative")]
    OddDimension(usize),

    #[error("dimension {dim} exceeds the configured cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range [{lo}, {hi}]")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("invalid interval [{a}, {b}] in dimension {dim}")]
    InvalidInterval { a: usize, b: usize, dim: usize },

    #[error("interval basis of {subspace} has {found} independent interval vectors, expected {expected}")]
    IntervalBasis {
        subspace: String,
        expected: usize,
        found: usize,
    },

    #[error("fiber structure violated at {root}: {reason}")]
    FiberStructure { root: String, reason: String },

    #[error("basis matrix is singular or could not be triangularized")]
    SingularBasis,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("exact verification failed: {0}")]
    Verification(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("value is not rational")]
    NotRational,

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("unknown label: {0}")]
    UnknownLabel(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("json error: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
