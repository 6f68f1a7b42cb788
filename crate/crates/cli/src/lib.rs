//! Command-line harness: matrix files, the seeded fuzz suite and the
//! subcommands of the `polyrank` binary.

pub mod commands;
pub mod fuzz;
pub mod generators;
pub mod io;

use thiserror::Error;

/// Exit status when every checked contract holds.
pub const EXIT_OK: i32 = 0;
/// Exit status when a contract is violated.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status for usage, parse and precondition errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] polyrank::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}
