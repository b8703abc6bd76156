use thiserror::Error;

/// Everything that ends a command with exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Domain(#[from] tpschedule::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "USAGE",
            CliError::Malformed(_) => "MALFORMED_SCENARIO",
            CliError::Io(_) => "IO",
            CliError::Domain(e) => e.code(),
        }
    }
}
