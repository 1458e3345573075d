use std::path::PathBuf;

use thiserror::Error;

/// Exit statuses.
pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] hamdg::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use hamdg::Error as E;
        match self {
            CliError::Usage(_) | CliError::Read { .. } => EXIT_USAGE,
            CliError::Write(_) | CliError::Csv(_) => EXIT_NEGATIVE,
            CliError::Core(e) => match e {
                E::BudgetExceeded { .. } => EXIT_BUDGET,
                E::TooManyVertices { .. }
                | E::VertexOutOfRange { .. }
                | E::SelfLoop(_)
                | E::DuplicateArc(..)
                | E::ArcMissing(..)
                | E::NotAMatching { .. }
                | E::SizeCapExceeded { .. }
                | E::BadParams(_)
                | E::ClassMismatch { .. }
                | E::Parse { .. }
                | E::InvalidPattern(_) => EXIT_USAGE,
                // algorithmic failures on well-formed input
                _ => EXIT_NEGATIVE,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
