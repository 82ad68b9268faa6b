use alloc::string::String;

use crate::graph::Edge;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("multiplicity must be positive for edge {0:?}")]
    ZeroMultiplicity(Edge),
    #[error("required edge {0:?} is not present in the graph with sufficient multiplicity")]
    RequiredNotInGraph(Edge),
    #[error("vertex {0} has odd degree")]
    Imbalanced(usize),
    #[error("disconnected: vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),
    #[error("cannot perfectly match an odd number ({0}) of vertices")]
    OddCardinality(usize),
    #[error("distance matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("distance matrix has non-zero diagonal at {0}")]
    NonZeroDiagonal(usize),
    #[error("weights violate the triangle inequality at ({0}, {1}, {2})")]
    NotMetric(usize, usize, usize),
    #[error("required edge {0:?} is lighter than the distance between its endpoints")]
    BelowDistance(Edge),
    #[error("terminal set is empty")]
    NoTerminals,
    #[error("required edge {0:?} has an endpoint outside the terminal set")]
    NotTerminal(Edge),
    #[error("terminals {0} and {1} are unreachable from each other")]
    Unreachable(usize, usize),
    #[error("walk step {0} is not a shortest path and not an original edge")]
    NotExpandable(usize),
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("cannot extract vertex {vertex}: {clause}")]
    Extraction { vertex: usize, clause: &'static str },
    #[error("weight {weight} exceeds cap {cap}")]
    WeightAboveCap { weight: u64, cap: u64 },
    #[error("solution size cap must be positive")]
    ZeroSolutionSize,
    #[error("exact search refused: {0}")]
    SearchTooLarge(String),
    #[error("walk does not contain required edge {0:?}")]
    MissingRequired(Edge),
    #[error("malformed walk: {0}")]
    MalformedWalk(String),
    #[error("not an Eulerian extension: {0}")]
    InvalidExtension(String),
    #[error("trace does not apply: {0}")]
    Trace(String),
}
