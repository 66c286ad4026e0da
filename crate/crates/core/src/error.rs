use thiserror::Error;

use crate::instance::VertexId;
use crate::matroid::GenPartitionError;

/// Errors raised by constructors, oracles and solvers.
///
/// Infeasibility is never an error: it is reported as a
/// [`Violation`](crate::feasibility::Violation) certificate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} is {got}, above the configured cap of {cap}")]
    CapExceeded { what: &'static str, got: usize, cap: usize },

    #[error("vertex {vertex} is out of range for an instance on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("hyperedge {index} has {size} distinct vertices; at least two are required")]
    HyperedgeTooSmall { index: usize, size: usize },

    #[error("hyperedge {index} has {size} vertices; this operation needs a graph")]
    NotAGraph { index: usize, size: usize },

    #[error("vertex sets must be disjoint")]
    Overlapping,

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("trim endpoints {u} and {v} must be two distinct members of the hyperedge")]
    InvalidTrim { u: VertexId, v: VertexId },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partitions live on ground sets of sizes {left} and {right}")]
    GroundMismatch { left: usize, right: usize },

    #[error("matroid ground sets differ")]
    MatroidGroundMismatch,

    #[error("uniform matroid rank {rank} exceeds ground size {ground}")]
    UniformRankTooLarge { rank: usize, ground: usize },

    #[error("cannot contract a dependent set")]
    DependentContraction,

    #[error("direct sum needs disjoint ground sets")]
    OverlappingGrounds,

    #[error("element set {0} is not contained in the ground set")]
    OutsideGround(String),

    #[error(transparent)]
    GenPartition(#[from] GenPartitionError),

    #[error("root tokens placed at vertex {vertex} are dependent in the matroid")]
    DependentRoots { vertex: VertexId },

    #[error("the root matroid must live on exactly the root tokens ({tokens} of them)")]
    RootMatroidMismatch { tokens: usize },

    #[error("bound vector has length {got}, expected one entry per vertex ({expected})")]
    BoundLength { got: usize, expected: usize },

    #[error("this problem needs `{0}` to be set")]
    MissingParameter(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no edge can be placed on fewer than two vertices")]
    NoEdgePossible,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
