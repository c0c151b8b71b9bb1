use std::path::PathBuf;

use blotto_core::Error as CoreError;

/// Process exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{context}: {message}")]
    Parse { context: String, message: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("record invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Core(e) => match e {
                CoreError::NotAFactor { .. }
                | CoreError::InfeasibleDivision { .. }
                | CoreError::InfeasibleGap(_)
                | CoreError::BoundaryCase => EXIT_INFEASIBLE,
                CoreError::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            },
            CliError::Write { .. } | CliError::Csv(_) | CliError::Invariant(_) => EXIT_INTERNAL,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
