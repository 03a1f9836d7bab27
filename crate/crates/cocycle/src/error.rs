use thiserror::Error;

/// Failures of a CLI run. Mathematical verdicts are never errors.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<cocycle_core::Error> for CliError {
    fn from(e: cocycle_core::Error) -> Self {
        match e {
            cocycle_core::Error::BudgetExceeded(msg) => CliError::Budget(msg),
            other => CliError::Parse(other.to_string()),
        }
    }
}
