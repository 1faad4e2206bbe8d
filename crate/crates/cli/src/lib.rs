//! Driver for `charp`: problem files in, JSON reports out.
//!
//! A problem file names a field, a dimension, a mode and a mode-specific
//! payload. Exit code 0 means success, 1 an input error, 2 a failed
//! verification.

pub mod json;
pub mod problem;
pub mod selftest;

use thiserror::Error;

pub use problem::{run, Mode, Options, Outcome, ProblemFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("verification failure: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

impl From<charp_core::Error> for CliError {
    fn from(e: charp_core::Error) -> CliError {
        use charp_core::Error as E;
        match e {
            E::VerificationFailure(_)
            | E::DescentFailure(_)
            | E::RelationFailure(_)
            | E::LinearityFailure(_) => CliError::Verification(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Input(format!("schema error: {e}"))
    }
}
