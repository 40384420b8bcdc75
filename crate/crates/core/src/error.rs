use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("kind violation: {reason}{}", pair.map(|(u, v)| format!(" at ({u}, {v})")).unwrap_or_default())]
    KindViolation {
        reason: String,
        pair: Option<(usize, usize)>,
    },

    #[error("vertex {vertex} out of range for a structure on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },

    #[error("mapping size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("bound exceeded: {what} is {value}, limit is {limit}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("signatures are over different type tables")]
    TableMismatch,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("verdict is not an antichain verdict")]
    NotAnAntichainVerdict,

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("unknown proposition tag `{0}`")]
    UnknownTag(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn kind(reason: impl Into<String>, pair: Option<(usize, usize)>) -> Self {
        Error::KindViolation {
            reason: reason.into(),
            pair,
        }
    }
}
