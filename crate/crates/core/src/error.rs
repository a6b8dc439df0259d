use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed ring file or polynomial text.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// Inconsistent ambient data (prime, variable count, grading).
    #[error("configuration error: {0}")]
    Config(String),

    /// The operation is mathematically inapplicable to this input.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// The requested window cannot contain the answer.
    #[error("window too small: {0}")]
    WindowTooSmall(String),

    /// A computed quantity contradicts a theorem the engine relies on.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
