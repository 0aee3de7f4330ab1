use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    /// Bad flags, keys or values. Exit code 1.
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("plot {path}: {message}")]
    Plot { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] trilat_core::Error),
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }

    pub fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        HarnessError::Csv { path: path.into(), source }
    }

    /// 1 for usage problems, 2 for anything touching files.
    pub fn exit_code(&self) -> u8 {
        use trilat_core::Error as E;
        match self {
            HarnessError::Usage(_) => 1,
            HarnessError::Core(E::InvalidArgument(_) | E::Validation(_)) => 1,
            HarnessError::Core(E::Internal(_)) => 1,
            HarnessError::Io { .. } | HarnessError::Csv { .. } | HarnessError::Plot { .. } => 2,
            HarnessError::Core(E::Io(_) | E::Parse { .. }) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
