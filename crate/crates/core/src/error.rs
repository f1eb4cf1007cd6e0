use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge {
        u: usize,
        v: usize,
        reason: &'static str,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not a tree: {0}")]
    NotATree(&'static str),

    #[error("vertex {0} has degree zero")]
    ZeroDegree(usize),

    #[error("index {index} is out of range or already struck (order {order})")]
    Index { index: usize, order: usize },

    #[error("matrix of order {order} exceeds the cap of {cap}")]
    TooLarge { order: usize, cap: usize },

    #[error("vertex {0} is not a pendant vertex")]
    NotPendant(usize),

    #[error("({0}, {1}) is not an edge")]
    NoSuchEdge(usize, usize),

    #[error("invalid family spec: {0}")]
    InvalidSpec(String),

    #[error("value has a nonzero sqrt(2) component")]
    NonRational,

    #[error("vertex {vertex} has degree {actual}, expected {expected}")]
    DegreeMismatch {
        vertex: usize,
        expected: usize,
        actual: usize,
    },

    #[error("vertex sequence is not a path in the tree")]
    NotAPath,

    #[error("path of length {length} is not diametral (diameter {diameter})")]
    NotDiametral { length: usize, diameter: usize },

    #[error("unknown lemma tag {0:?}")]
    UnknownLemma(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
