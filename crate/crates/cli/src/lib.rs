//! Front end for `jordanlab`: element files, single computations,
//! counterexample demos and seeded property suites.

pub mod commands;
pub mod document;

use jordanlab::Error;

pub use document::ElementDocument;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 2;
    pub const DOMAIN: u8 = 3;
    pub const INCONSISTENT: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Domain(_) => exit::DOMAIN,
        }
    }
}

impl From<Error> for CliError {
    /// Malformed input is a usage error; everything else is a failed
    /// precondition of the computation.
    fn from(e: Error) -> Self {
        match e {
            Error::BadFamilySpec(_)
            | Error::AlgebraMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::NonFinite => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}
