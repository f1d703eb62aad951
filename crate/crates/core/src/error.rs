use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("crossing id {id} out of range (diagram has {count} crossings)")]
    InvalidCrossing { id: usize, count: usize },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("zero polynomial has no degree or span")]
    ZeroPolynomial,

    #[error("invalid delta diagram: {0}")]
    InvalidDelta(String),

    #[error("theorem-a construction failed: {0}")]
    Construction(String),

    #[error("relations file, line {line}: {msg}")]
    Relations { line: usize, msg: String },

    #[error("unknown edge id {0}")]
    UnknownEdge(String),

    #[error("contradiction for knot {knot}: {invariant} has empty interval [{lo}, {hi}] (chain: {chain})")]
    Contradiction {
        knot: String,
        invariant: String,
        lo: String,
        hi: String,
        chain: String,
    },

    #[error("propagation for knot {0} exceeded the iteration cap")]
    IterationCap(String),

    #[error("bounds data, record {record}: {msg}")]
    Bounds { record: usize, msg: String },

    #[error("knot {knot} violates edge {edge}: {detail}")]
    Soundness {
        knot: String,
        edge: String,
        detail: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
