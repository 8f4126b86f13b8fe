use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid `{field}`: {reason}")]
    Usage { field: &'static str, reason: String },

    #[error(transparent)]
    Model(#[from] spin_manifold::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn usage(field: &'static str, reason: impl Into<String>) -> Self {
        CliError::Usage {
            field,
            reason: reason.into(),
        }
    }

    /// Process exit status: 2 for anything the caller can fix by changing the arguments.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } | CliError::Model(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}
