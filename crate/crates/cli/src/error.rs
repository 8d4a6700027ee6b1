use std::path::PathBuf;

use thiserror::Error;

/// Any failure that ends a run before a verdict; all map to exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{field}: {message}")]
    Schema { field: String, message: String },

    #[error("{field}: {source}")]
    Invalid {
        field: String,
        #[source]
        source: maqa_core::Error,
    },

    #[error("dataset {}: {message}", path.display())]
    Dataset { path: PathBuf, message: String },

    #[error("{0}")]
    Run(#[from] maqa_core::Error),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Core error behind this failure, if any.
    pub fn core(&self) -> Option<&maqa_core::Error> {
        match self {
            CliError::Invalid { source, .. } | CliError::Run(source) => Some(source),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<&str> {
        match self {
            CliError::Schema { field, .. } | CliError::Invalid { field, .. } => Some(field),
            _ => None,
        }
    }
}
