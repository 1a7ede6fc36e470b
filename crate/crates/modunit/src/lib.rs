//! Std companion to `modunit-core`: the JSON series format, argument parsing,
//! the lattice-sum ℘ oracle, identity verification and the command-line front end.

pub mod cli;
pub mod json;
pub mod oracle;
pub mod parse;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] modunit_core::Error),
    #[error("malformed {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("unknown {what}: {name:?}")]
    Unknown { what: &'static str, name: String },
    #[error("{0}")]
    Usage(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn parse(what: &'static str, input: &str) -> Self {
        CliError::Parse { what, input: input.to_string() }
    }
}
