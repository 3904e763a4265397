//! Library side of the `mss` command-line tool.

pub mod bench;
pub mod commands;
pub mod counts;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, malformed files, invariant violations. Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// A share, deal binding or secret failed to verify. Exit code 1.
    #[error("{0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } => 2,
        }
    }
}

impl From<mss_core::Error> for CliError {
    fn from(e: mss_core::Error) -> Self {
        match e {
            mss_core::Error::WrongDeal => CliError::Verification(e.to_string()),
            mss_core::Error::BadQuorum(m) => CliError::Usage(format!("QuorumError: {m}")),
            other => CliError::Usage(other.to_string()),
        }
    }
}
