use std::path::PathBuf;

use privres_core::dataset::DatasetError;
use privres_core::imaging::ImagingError;
use privres_core::model::ModelError;
use privres_core::survey::SurveyError;
use privres_core::SchemaError;
use thiserror::Error;

/// Process exit status for input and schema problems.
pub const EXIT_INPUT: u8 = 2;
/// Process exit status for violated internal invariants.
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },
    #[error("no input frames found under {0}")]
    EmptyInput(PathBuf),
    #[error("{0} file(s) failed")]
    PartialFailure(usize),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Survey(#[from] SurveyError),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Imaging(#[from] ImagingError),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Attaches a file path to a parse or validation error.
    pub fn in_file(path: impl Into<PathBuf>, err: impl std::fmt::Display) -> Self {
        CliError::File {
            path: path.into(),
            message: err.to_string(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }
}
