use thiserror::Error;

/// Errors produced by topology handling, simulation and the optimizers.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A topology file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Parsed data violates a structural invariant.
    #[error("validation error: {0}")]
    Validation(String),

    /// An internal invariant was broken. Indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
