use bvn_core::{BraidError, ElementError, GenError, SubgroupError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error(transparent)]
    Generators(#[from] GenError),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Process exit code: 3 for a failed internal check, 2 for everything
    /// the user can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) | CliError::Generators(GenError::Internal(_)) => 3,
            _ => 2,
        }
    }
}
