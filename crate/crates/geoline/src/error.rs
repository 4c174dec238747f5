use std::io;
use std::path::Path;

use thiserror::Error;

/// Failures surfaced to the command line. The exit code is 1 for bad input
/// and 2 when the model itself has no answer.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numerical(_) => 2,
            CliError::Validation(_) | CliError::Io { .. } => 1,
        }
    }

    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl From<geoline_core::Error> for CliError {
    fn from(e: geoline_core::Error) -> Self {
        use geoline_core::Error as E;
        match e {
            E::InfeasibleCentralState { .. }
            | E::DegenerateEquality { .. }
            | E::StateCountChanged { .. }
            | E::InvalidBracket { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
