use poset_endo::{GenerateError, MorphismError, PosetError};
use thiserror::Error;

/// Exit code for a successful run.
pub const EXIT_OK: i32 = 0;
/// A verification check or strict sweep bound failed.
pub const EXIT_CHECK: i32 = 1;
/// Bad arguments or unreadable input.
pub const EXIT_USAGE: i32 = 2;
/// A search budget or size limit was hit.
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}:{line}:{column}: {msg}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid poset: {0}")]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("{0}")]
    CheckFailed(String),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Morphism(MorphismError::Budget(_) | MorphismError::SizeLimit(_))
            | HarnessError::Generate(GenerateError::BudgetExceeded(_) | GenerateError::SizeLimit(_)) => {
                EXIT_BUDGET
            }
            HarnessError::CheckFailed(_) | HarnessError::Morphism(_) => EXIT_CHECK,
            _ => EXIT_USAGE,
        }
    }

    pub(crate) fn io(path: &str, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.to_string(),
            source,
        }
    }

    pub(crate) fn json(path: &str, e: &serde_json::Error) -> Self {
        HarnessError::Parse {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        }
    }
}
