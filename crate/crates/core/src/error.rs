use thiserror::Error;

/// Errors surfaced by every module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text (edge lists, seed lists, embedding files).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally invalid input (empty edge set, duplicate seed pairs, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// An argument outside an operation's domain (bad id, bad parameter).
    #[error("domain error: {0}")]
    Domain(String),

    /// Embedding training diverged or hit a non-finite loss.
    #[error("training failure: {0}")]
    Training(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
