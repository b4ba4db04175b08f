use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed line {content:?}")]
    Malformed { line: usize, content: String },
    #[error("{}self-loop on {label}", line_prefix(*.line))]
    SelfLoop { line: Option<usize>, label: String },
    #[error("{}duplicate edge {u} {v}", line_prefix(*.line))]
    DuplicateEdge { line: Option<usize>, u: String, v: String },
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("header declares {declared} vertices but {found} labels appear")]
    HeaderTooSmall { declared: usize, found: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("graph is disconnected")]
    Disconnected,
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

/// The rule a move broke during sequence validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveViolation {
    /// `from == to`, or a vertex id outside the graph.
    Degenerate,
    /// No token on the from-vertex.
    FromEmpty,
    /// The to-vertex already holds a token.
    ToOccupied,
    /// Sliding requires `from`–`to` to be an edge.
    NotAnEdge,
    /// The resulting set is not independent.
    Conflict,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("step {step}: {violation:?}")]
pub struct SequenceError {
    pub step: usize,
    pub violation: MoveViolation,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertices {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("independent set is bound to a different graph")]
    GraphMismatch,
    #[error("invalid sequence: {0}")]
    InvalidSequence(#[from] SequenceError),
    #[error("vertex {0} has degree above 2 in the symmetric difference (graph not claw-free?)")]
    NotClawFree(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("state space exceeds cap of {cap} sets")]
    CapExceeded { cap: usize },
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
