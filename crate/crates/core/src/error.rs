use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid uniformity: {0}")]
    InvalidUniformity(String),

    #[error("invalid edge {edge:?}: {reason}")]
    InvalidEdge { edge: Vec<usize>, reason: String },

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("link set of size {set} is too large for uniformity {r} (at most r-2 allowed)")]
    InvalidLinkArity { set: usize, r: usize },

    #[error("blowup class size for vertex {vertex} must be positive, got {size}")]
    InvalidSize { vertex: usize, size: i64 },

    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },

    #[error("uniformity mismatch: host is {host}-uniform, pattern is {pattern}-uniform")]
    UniformityMismatch { host: usize, pattern: usize },

    #[error("{what} is {actual}, above the limit of {limit}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("no Steiner triple system of order {0}: the order must be at least 7 and congruent to 1 or 3 (mod 6)")]
    NoDesign(usize),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("search aborted after exploring {nodes} nodes (node limit reached)")]
    NodeLimit { nodes: u64 },

    #[error("inconsistent bounds at n = {n}: {msg}")]
    Inconsistent { n: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("malformed hypergraph JSON: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
