use torsoid_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 1 for usage and unreadable input, 2 for precondition failures, 3 for
    /// broken invariants and failed verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => 1,
            CliError::Core(e) if e.is_internal() => 3,
            CliError::Core(_) => 2,
            CliError::Failed(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
