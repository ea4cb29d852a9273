use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter context mismatch: [{left}] vs [{right}]")]
    Context { left: String, right: String },

    #[error("unknown parameter `{0}`")]
    UnknownParameter(String),

    #[error("series is not invertible: {0}")]
    Singular(String),

    #[error("pole of order {order} present; decompose before evaluating")]
    Pole { order: i32 },

    #[error("truncation window exhausted: {0}")]
    Truncation(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("vertex index {index} out of range (tree has {len} vertices)")]
    Index { index: usize, len: usize },

    #[error("inadmissible subgraph: {0}")]
    Admissibility(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insertion leaves the catalog closure: {0}")]
    UnsupportedInsertion(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("locality violated on {generator}: residual pole in {value}")]
    LocalityViolation { generator: String, value: String },

    #[error("unknown graph `{0}`")]
    UnknownGraph(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
