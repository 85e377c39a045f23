use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} has neighbor {neighbor} out of range")]
    VertexOutOfRange { vertex: usize, neighbor: usize },
    #[error("vertex {0} has an empty rotation")]
    EmptyRotation(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("repeated neighbor {neighbor} in the rotation of vertex {vertex}")]
    MultiEdge { vertex: usize, neighbor: usize },
    #[error("inconsistent rotation: {from} lists {to} but not vice versa")]
    InconsistentRotation { from: usize, to: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("rotation system is not a sphere embedding: n - e + f = {0}")]
    EulerViolation(i64),
    #[error("outer face hint ({0}, {1}) is not a directed edge of the graph")]
    BadOuterHint(usize, usize),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("vertex sequence is not a cycle of the graph: {0}")]
    NotACycle(String),
    #[error("face {0} does not exist")]
    NoSuchFace(usize),
    #[error("vertex {0} is not on the outer cycle")]
    VertexNotOnOuterCycle(usize),
    #[error("graph is already a near-triangulation")]
    IsNearTriangulation,
    #[error("graph has no hole")]
    NoHole,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("t must be at least 4 (got {0})")]
    BadT(usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("order {0} is not supported here")]
    BadOrder(usize),
    #[error("level {0} exceeds the supported maximum of 6")]
    LevelTooLarge(usize),
    #[error("k = {0} gives m <= 2; the glued construction is not instantiable")]
    KTooSmall(usize),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
