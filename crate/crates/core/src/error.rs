use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: line {line}: {message}")]
    CorpusLine {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid document: {0}")]
    InvalidDocument(String),

    #[error("document {index}: {error}")]
    Document { index: usize, error: Box<Error> },

    #[error("not enough {tag} documents: need {needed}, have {available}")]
    InsufficientDocuments {
        tag: String,
        needed: usize,
        available: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("lexicon {name}: {message}")]
    Lexicon { name: String, message: String },

    #[error("training labels contain a single class")]
    SingleClass,

    #[error("{what}: expected {expected}, found {found}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("non-finite value at row {row}, column {column}")]
    NonFinite { row: usize, column: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("unknown feature {0:?}")]
    UnknownFeature(String),

    #[error("model schema: {0}")]
    Schema(String),

    #[error("{path}: {message}")]
    Table { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// `true` for failures caused by input data or arguments, as opposed to
    /// I/O or internal faults.
    pub fn is_data_error(&self) -> bool {
        match self {
            Error::Io(e) => matches!(
                e.kind(),
                std::io::ErrorKind::NotFound | std::io::ErrorKind::InvalidData
            ),
            Error::Document { error, .. } => error.is_data_error(),
            _ => true,
        }
    }
}
