use thiserror::Error;

/// Errors raised by graph construction, exact linear algebra, and the
/// counting and potential routines built on top of them.
///
/// Vertex indices carried by variants are 0-based; `Display` renders them
/// 1-based to match the edge-list file format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge {edge} is a loop at vertex {}", .vertex + 1)]
    LoopEdge { edge: usize, vertex: usize },

    #[error("vertex {} is out of range for a graph on {n} vertices", .vertex + 1)]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {edge} has nonpositive length {length}")]
    NonPositiveLength { edge: usize, length: String },

    #[error("graph is disconnected: vertex {} and vertex {} lie in different components", .a + 1, .b + 1)]
    Disconnected { a: usize, b: usize },

    #[error("graph must have at least {required} vertices, found {found}")]
    TooFewVertices { required: usize, found: usize },

    #[error("operation requires unit edge lengths")]
    NonUnitLengths,

    #[error("expected a square matrix, found {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is singular")]
    Singular,

    #[error("index {index} out of range for dimension {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("root set is empty")]
    EmptyRoots,

    #[error("vertex {} appears more than once in the root set", .0 + 1)]
    DuplicateRoot(usize),

    #[error("enumeration limited to {limit} edges, graph has {edges}")]
    TooManyEdges { edges: usize, limit: usize },

    #[error("invalid family size {n} for {family} (minimum {min})")]
    InvalidFamily {
        family: &'static str,
        n: usize,
        min: usize,
    },

    #[error("no closed form is implemented for the {0} family")]
    NoClosedForm(&'static str),

    #[error("value depends on the base vertex: q = {} disagrees with q = 1", .q + 1)]
    BasePointDependence { q: usize },

    #[error("the graph has no two-forests")]
    NoTwoForests,

    #[error("at least one trial is required")]
    ZeroTrials,
}

pub type Result<T> = std::result::Result<T, Error>;
