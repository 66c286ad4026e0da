//! Matroid-based packing of rooted trees and hypertrees.
//!
//! The crate covers the partition lattice and supermodular partition
//! functions, rank-oracle matroids (uniform, generalized partition, direct
//! sums, minors, the packing matroids on edges and root tokens) with matroid
//! intersection, feasibility checkers that return violation certificates,
//! constructive solvers, and independent brute-force oracles that certify
//! them on small instances.
//!
//! Everything is exact and exhaustive at desk scale; see [`limits`] for the
//! caps past which operations refuse to run.

pub mod bits;
pub mod error;
pub mod feasibility;
pub mod instance;
pub mod kt;
pub mod limits;
pub mod matroid;
pub mod oracle;
pub mod partition;
pub mod random;
mod scan;
pub mod solvers;

pub use bits::{ElementSet, VertexSet};
pub use error::{Error, Result};
pub use feasibility::{check, Bound, Condition, Evaluator, ProblemKind, ProblemSpec, Verdict, Violation, Witness};
pub use instance::{EdgeId, Hypergraph, RootMultiset, TokenId, VertexId};
pub use kt::{KtContext, KtMatroid};
pub use matroid::{DynMatroid, RankOracle};
pub use oracle::ValidationReport;
pub use partition::Partition;
pub use solvers::{Outcome, PackedEdge, Packing, Root, RootedForest};
