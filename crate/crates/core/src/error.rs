use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while loading, parsing, or processing models.
#[derive(Debug, Error)]
pub enum Error {
    #[error("model file is not valid JSON: {0}")]
    ModelJson(#[from] serde_json::Error),

    #[error("cell {cell} is listed but its face {face} is missing")]
    MissingFace { cell: String, face: String },

    #[error("cell {cell} uses vertex {vertex}, which is not declared")]
    UnknownVertex { cell: String, vertex: String },

    #[error("cell {cell} has no \"atoms\" entry")]
    MissingValuation { cell: String },

    #[error("cell {cell} uses atom {atom}, which is not declared in \"atoms\"")]
    UndeclaredAtom { cell: String, atom: String },

    #[error("cell {0} is listed more than once")]
    DuplicateCell(String),

    #[error("a cell must have at least one vertex")]
    EmptyCell,

    #[error("unknown element {0}")]
    UnknownElement(String),

    #[error("relation is not reflexive at element {0}")]
    NotReflexive(String),

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("undefined identifier {name} at line {line}, column {column}")]
    UndefinedIdentifier {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("save name {0} is used more than once")]
    DuplicateSave(String),

    #[error("formula is not in the eta fragment: {0}")]
    NotEtaPure(String),

    #[error("atom list must not be empty")]
    EmptyAtomList,

    #[error("unknown atom {0} (strict atom checking is enabled)")]
    UnknownAtom(String),

    #[error("path bound {0} is too small, at least 2 is required")]
    BoundTooSmall(usize),

    #[error("partition does not match the state set: {0}")]
    PartitionMismatch(String),

    #[error("unknown class id {0}")]
    UnknownClass(usize),

    #[error("malformed .aut input at line {line}: {message}")]
    Aut { line: usize, message: String },

    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
