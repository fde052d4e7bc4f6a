//! Error type of the tool layer and its mapping to process exit codes.

use std::path::PathBuf;

use secrecy_core::Error;

/// Anything that can go wrong running a sweep, a figure or a command.
#[derive(Debug, thiserror::Error)]
pub enum SimError {
    /// A library error.
    #[error(transparent)]
    Core(#[from] Error),
    /// A malformed config file or command argument.
    #[error("{0}")]
    Config(String),
    /// Reading or writing a file failed.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying failure.
        source: std::io::Error,
    },
}

/// Result alias for the tool layer.
pub type SimResult<T> = Result<T, SimError>;

impl SimError {
    /// Wraps an IO error with the path it concerns.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SimError::Io { path: path.into(), source }
    }

    /// 2 for invalid input, 3 for numerical failures, 4 for IO.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Core(Error::Numerical(_)) => 3,
            SimError::Core(_) | SimError::Config(_) => 2,
            SimError::Io { .. } => 4,
        }
    }
}
