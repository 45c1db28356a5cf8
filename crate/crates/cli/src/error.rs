use rumin_core::error::StructuralError;
use thiserror::Error;

/// Exit status of a run.
pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(rumin_core::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Input(String),
}

impl From<rumin_core::Error> for CliError {
    fn from(e: rumin_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<StructuralError> for CliError {
    fn from(e: StructuralError) -> Self {
        CliError::Core(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use rumin_core::Error as E;
        match self {
            CliError::Core(E::IdentityFailure { .. } | E::SingularBlock { .. }) => EXIT_IDENTITY,
            CliError::Core(E::BudgetExceeded(_)) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }
}
