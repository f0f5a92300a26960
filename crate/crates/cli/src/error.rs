use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] ergocorr::Error),

    #[error("{path}: {source}")]
    Input { path: PathBuf, source: ergocorr::Error },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// 3 for I/O failures, 2 for everything the caller can fix in the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Library(ergocorr::Error::Io(_)) | CliError::Input { source: ergocorr::Error::Io(_), .. } => 3,
            _ => 2,
        }
    }
}
