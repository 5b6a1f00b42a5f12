use thiserror::Error;

use crate::statefile::StateFileError;

/// Everything the front end can fail with, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    StateFile(#[from] StateFileError),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Precondition(_) => 3,
            _ => 2,
        }
    }
}

impl From<ccrkit::Error> for CliError {
    fn from(e: ccrkit::Error) -> Self {
        match e {
            ccrkit::Error::Precondition(msg) => CliError::Precondition(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}
