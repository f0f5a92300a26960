use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("continued fraction expansion terminated at depth {achieved} (requested {requested})")]
    ExpansionTerminated { achieved: usize, requested: usize },

    #[error("values live in different quadratic fields (sqrt({0}) vs sqrt({1}))")]
    FieldMismatch(u64, u64),

    #[error("requested {requested} exceeds the limit {limit}")]
    LimitExceeded { requested: u64, limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
