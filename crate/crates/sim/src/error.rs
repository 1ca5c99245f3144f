use std::path::PathBuf;

use glass_core::SimError;
use thiserror::Error;

/// A malformed or invalid scenario file, tagged with the offending key path
/// (for example `guidance.k_G`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("config error at `{key}`: {reason}")]
pub struct ConfigError {
    pub key: String,
    pub reason: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            reason: reason.into(),
        }
    }
}

/// Everything a CLI command can fail with.
#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("simulation error: {0}")]
    Sim(#[from] SimError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl AppError {
    /// Process exit status: 2 for configuration problems, 3 for simulation
    /// failures, 1 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) => 2,
            Self::Sim(_) => 3,
            Self::Io { .. } => 1,
        }
    }
}
