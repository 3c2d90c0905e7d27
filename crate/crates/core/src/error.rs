use thiserror::Error;

/// Errors raised by the library and the CLI.
///
/// Domain errors name the precondition that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{precondition}: {detail}")]
    Domain {
        precondition: &'static str,
        detail: String,
    },
    #[error("parse error at line {line}, column {column}: {detail}")]
    Parse {
        line: usize,
        column: usize,
        detail: String,
    },
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    pub fn domain(precondition: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            precondition,
            detail: detail.into(),
        }
    }

    pub fn usage(detail: impl Into<String>) -> Self {
        Error::Usage(detail.into())
    }

    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. } => 1,
            Error::Parse { .. } | Error::Usage(_) => 2,
        }
    }

    /// Name of the violated precondition, if any.
    pub fn precondition(&self) -> Option<&'static str> {
        match self {
            Error::Domain { precondition, .. } => Some(precondition),
            _ => None,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            detail: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
