use std::path::PathBuf;

use thiserror::Error;

use crate::skeleton::Schema;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown joint group `{0}` (expected upper_body, lower_body, trunk or limbs)")]
    UnknownGroup(String),

    #[error("joint index {index} is outside the {schema} schema")]
    JointOutOfRange { index: usize, schema: Schema },

    #[error("expected schema {expected}, got {actual}")]
    SchemaMismatch { expected: Schema, actual: Schema },

    #[error("non-finite parameter `{0}`")]
    NonFiniteParameter(&'static str),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("sequences differ in shape: {0}")]
    ShapeMismatch(String),

    #[error("streams differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{path}: malformed header: {reason}")]
    MalformedHeader { path: PathBuf, reason: String },

    #[error("{path}: row {row}: expected {expected} columns, found {found}")]
    ColumnCount {
        path: PathBuf,
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("{path}: row {row}, column {column}: non-finite or unparsable token `{token}`")]
    BadToken {
        path: PathBuf,
        row: usize,
        column: usize,
        token: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
