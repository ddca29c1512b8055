//! Command-line front end for `schext`: JSON documents, the corpus and the
//! statement-check harness.

pub mod commands;
pub mod corpus;
pub mod doc;
pub mod harness;
pub mod report;

use doc::ParseError;

/// Errors surfaced by commands, each with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid input: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) | CliError::Internal(_) => 1,
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Input(_) => 2,
            CliError::BoundExceeded(_) => 3,
        }
    }
}
