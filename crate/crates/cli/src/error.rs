use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("missing artifact {0}; run the corresponding command first")]
    MissingArtifact(PathBuf),

    #[error("malformed artifact {path}: {reason}")]
    BadArtifact { path: PathBuf, reason: String },

    #[error("level mode needs an observable that anticommutes with H; offending term: {0}")]
    Anticommutation(String),

    #[error("{0}")]
    ResourceCap(String),

    #[error("comparison failed: {0}")]
    Mismatch(String),

    #[error(transparent)]
    Core(qlevels_core::Error),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_)
            | CliError::Io { .. }
            | CliError::MissingArtifact(_)
            | CliError::BadArtifact { .. }
            | CliError::Core(_) => 1,
            CliError::Anticommutation(_) => 2,
            CliError::ResourceCap(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<qlevels_core::Error> for CliError {
    fn from(e: qlevels_core::Error) -> Self {
        match e {
            qlevels_core::Error::NotAnticommuting { term } => CliError::Anticommutation(term),
            e @ qlevels_core::Error::ResourceCap { .. } => CliError::ResourceCap(e.to_string()),
            e => CliError::Core(e),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
