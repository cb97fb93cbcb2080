use std::path::PathBuf;

use thiserror::Error;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] jacring_core::Error),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use jacring_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_PARSE,
            CliError::Core(
                E::Parse { .. }
                | E::NotPrime(_)
                | E::PrimeTooLarge(_)
                | E::NotHomogeneous
                | E::VariableOutOfRange { .. }
                | E::TooManyVariables(_),
            ) => EXIT_PARSE,
            CliError::Core(_) | CliError::Io { .. } => EXIT_PRECONDITION,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
