use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input that violates a precondition.
    #[error("validation error: {0}")]
    Validation(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<elasym::Error> for CliError {
    fn from(e: elasym::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
