use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A frame, LU, semantic type, document or relation type that does not
    /// exist was requested by name or ID.
    #[error("no {kind} matching {key:?}")]
    NotFound { kind: &'static str, key: String },

    #[error("invalid search pattern {pattern:?}: {source}")]
    Pattern {
        pattern: String,
        #[source]
        source: Box<regex::Error>,
    },

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("{origin}:{line}: {message}")]
    Parse { origin: String, line: u32, message: String },

    #[error("{origin}: {message}")]
    Integrity { origin: String, message: String },

    #[error("cannot open data directory {}: {message}", path.display())]
    Open { path: PathBuf, message: String },

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Coarse classification used to map errors onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Lookup,
    Usage,
    Data,
}

impl Error {
    pub(crate) fn not_found(kind: &'static str, key: impl ToString) -> Self {
        Error::NotFound {
            kind,
            key: key.to_string(),
        }
    }

    pub(crate) fn integrity(origin: &str, message: impl Into<String>) -> Self {
        Error::Integrity {
            origin: origin.to_string(),
            message: message.into(),
        }
    }

    /// True for the "nonexistent entry" failure of singular lookups.
    pub fn is_lookup_failure(&self) -> bool {
        matches!(self, Error::NotFound { .. })
    }

    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::NotFound { .. } => ErrorCategory::Lookup,
            Error::Pattern { .. } | Error::InvalidOption(_) => ErrorCategory::Usage,
            Error::Parse { .. } | Error::Integrity { .. } | Error::Open { .. } | Error::Io { .. } => {
                ErrorCategory::Data
            }
        }
    }
}
