use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, BenchError>;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Core(#[from] anonhist::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),

    #[error("serializing output: {0}")]
    Json(#[from] serde_json::Error),
}

impl BenchError {
    /// Process exit status: 2 bad input, 3 oracle guardrail, 4 failed
    /// self-check, 1 I/O.
    pub fn exit_code(&self) -> u8 {
        use anonhist::Error as E;
        match self {
            BenchError::Core(E::Guardrail { .. }) => 3,
            BenchError::Core(E::Certification(_) | E::EncodingInvariant(_)) => 4,
            BenchError::Core(_) => 2,
            BenchError::Io { .. } | BenchError::Output(_) | BenchError::Json(_) => 1,
        }
    }
}

pub(crate) fn guardrail(what: &'static str, limit: u64, got: u64) -> BenchError {
    anonhist::Error::Guardrail { what, limit, got }.into()
}
