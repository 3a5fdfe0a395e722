use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("color {color} is out of range for palette size {k}")]
    InvalidColor { color: usize, k: usize },
    #[error("vertex {vertex} is out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("order {n} outside supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("palette map rejected: {context}")]
    PaletteCollision { context: String },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("pattern needs {needed} vertices but the coloring has only {n}")]
    PatternTooLarge { needed: usize, n: usize },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("graph order {0} is below 3; pancyclicity is undefined")]
    OrderTooSmall(usize),
    #[error("parts do not form a partition of the vertex set: {0}")]
    MalformedPartition(String),
    #[error("coloring contains a rainbow triangle on vertices {0:?}")]
    NotGallai([usize; 3]),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("partition is not valid for this coloring: {0}")]
    InvalidPartition(String),
    #[error("base coloring rejected: {0}")]
    InvalidBase(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("arguments out of order: expected {m} <= {n}")]
    ArgumentOrder { m: usize, n: usize },
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("constructed coloring failed its own verification: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
