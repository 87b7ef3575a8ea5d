use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphErrorKind {
    Malformed(String),
    Empty,
    /// Vertex indices here are 1-based, as they appear in files.
    Loop(usize),
    DuplicateEdge(usize, usize),
    VertexOutOfRange {
        vertex: usize,
        count: usize,
    },
    IsolatedVertex(usize),
}

/// Graph construction or parse failure. `line` is the 1-based input line, when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphError {
    pub line: Option<usize>,
    pub kind: GraphErrorKind,
}

impl GraphError {
    pub(crate) fn new(kind: GraphErrorKind) -> Self {
        GraphError { line: None, kind }
    }

    pub(crate) fn at(line: usize, kind: GraphErrorKind) -> Self {
        GraphError {
            line: Some(line),
            kind,
        }
    }
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        match &self.kind {
            GraphErrorKind::Malformed(msg) => write!(f, "malformed input: {msg}"),
            GraphErrorKind::Empty => write!(f, "no vertex count found"),
            GraphErrorKind::Loop(v) => write!(f, "loop edge at vertex {v}"),
            GraphErrorKind::DuplicateEdge(i, j) => write!(f, "duplicate edge {i} {j}"),
            GraphErrorKind::VertexOutOfRange { vertex, count } => {
                write!(f, "vertex {vertex} out of range 1..={count}")
            }
            GraphErrorKind::IsolatedVertex(v) => write!(f, "isolated vertex {v}"),
        }
    }
}

impl std::error::Error for GraphError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("unsupported wedge of grades {0} and {1}")]
    UnsupportedGrade(usize, usize),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("cobracket is not nearly coboundary")]
    NotNearlyCoboundary,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
