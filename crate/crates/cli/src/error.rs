use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] condmc::Error),

    #[error("{}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },

    #[error("{}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },

    #[error("{}: {message}", path.display())]
    Format { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),

    #[error("serializing output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 0 success, 2 invalid input, 3 numerical, budget or output failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_input_error() => 2,
            CliError::Read { .. } | CliError::Format { .. } | CliError::Usage(_) => 2,
            CliError::Lib(_) | CliError::Write { .. } | CliError::Json(_) => 3,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
