use thiserror::Error;

/// Exit code for a successful command.
pub const EXIT_OK: i32 = 0;
/// Exit code for runtime failures, including a detected divergence.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for usage and configuration errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Library(#[from] bitchrom::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn usage(field: &str, reason: impl std::fmt::Display) -> Self {
        CliError::Usage(format!("invalid {field}: {reason}"))
    }

    pub fn exit_code(&self) -> i32 {
        use bitchrom::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Library(
                E::Config { .. }
                | E::InvalidLength { .. }
                | E::CapacityExceeded { .. }
                | E::InvalidCapacity { .. }
                | E::InvalidWidth(_)
                | E::InvalidBit(_)
                | E::InvalidSchemaSymbol(_)
                | E::IncompatibleSchema { .. },
            ) => EXIT_USAGE,
            CliError::Library(_) | CliError::Io(_) | CliError::Output(_) => EXIT_FAILURE,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
