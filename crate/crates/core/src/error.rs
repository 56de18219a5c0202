use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at L = 1: class has no Euler-characteristic specialization")]
    Pole,

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown builtin curve `{0}`")]
    UnknownBuiltin(String),

    #[error("out of scope: {0}")]
    Scope(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("insufficient truncation: {0}")]
    Truncation(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("cache mismatch: {0}")]
    CacheMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    /// True for errors caused by malformed user input rather than a failed computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::InvalidInput(_) | Error::UnknownBuiltin(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
