use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config {}: {source}", path.display())]
    ReadConfig {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{line}: {message}", path.display())]
    Config {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{}: missing required key `{key}`", path.display())]
    MissingKey { path: PathBuf, key: &'static str },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] qdemon_core::Error),
}

impl CliError {
    /// 1 for bad input (config or arguments), 2 for failures while running.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ReadConfig { .. }
            | CliError::Config { .. }
            | CliError::MissingKey { .. }
            | CliError::InvalidArgument(_) => 1,
            CliError::Write { .. } | CliError::Core(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
