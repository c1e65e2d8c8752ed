use srg_core::SrgError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Numerical(#[from] SrgError),

    #[error("containment check failed: {0}")]
    Check(String),
}

impl CliError {
    /// Process exit code: 1 for parse and IO problems, 2 for numerical
    /// failures, 3 for a failed validation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } | Self::Json { .. } | Self::Input(_) => 1,
            Self::Numerical(_) => 2,
            Self::Check(_) => 3,
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
