//! Constructive packing, covering, trimming and augmentation algorithms.
//!
//! Every solver either returns a structure that passes
//! [`crate::oracle::validate_packing`] or a [`Violation`] that re-verifies
//! through [`Violation::reverify`].

mod cover;
mod hyper;
mod mbased;
mod spanning;
mod trim;

use std::fmt;

use crate::bits::{ElementSet, VertexSet};
use crate::feasibility::Violation;
use crate::instance::{EdgeId, TokenId, VertexId};

pub use cover::{cover_partition_functions, min_cover_size};
pub use hyper::{augment_hypergraph, min_augmentation, pack_limited_hyper, Augmentation};
pub use mbased::{decompose, mbased_pack, pack_bounded_k, pack_limited, solve};
pub use spanning::{pack_spanning_trees, ExtensionBound};
pub use trim::{trim_hypergraph, Trimming};

/// A root token placed at its vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub vertex: VertexId,
    pub token: TokenId,
}

/// A hyperedge together with the two ends it is trimmed to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PackedEdge {
    pub edge: EdgeId,
    pub ends: (VertexId, VertexId),
}

/// Roots plus trimmed edges; a member of a packing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootedForest {
    pub roots: Vec<Root>,
    pub edges: Vec<PackedEdge>,
}

impl RootedForest {
    /// Vertices of the forest: its roots and every trimmed end.
    pub fn vertices(&self) -> VertexSet {
        let mut set = VertexSet::empty();
        for r in &self.roots {
            set.insert(r.vertex);
        }
        for e in &self.edges {
            set.insert(e.ends.0);
            set.insert(e.ends.1);
        }
        set
    }

    pub fn edge_ids(&self) -> ElementSet {
        self.edges.iter().map(|e| e.edge).collect()
    }
}

/// Pairwise edge-disjoint rooted forests.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Packing {
    pub members: Vec<RootedForest>,
}

impl Packing {
    pub fn root_count(&self) -> usize {
        self.members.iter().map(|m| m.roots.len()).sum()
    }

    pub fn root_tokens(&self) -> ElementSet {
        self.members.iter().flat_map(|m| m.roots.iter().map(|r| r.token)).collect()
    }

    pub fn edge_ids(&self) -> ElementSet {
        self.members.iter().fold(ElementSet::empty(), |acc, m| acc | m.edge_ids())
    }

    /// Members sorted by their first root token; edges sorted by id.
    pub fn canonical(mut self) -> Self {
        for m in &mut self.members {
            m.roots.sort_by_key(|r| r.token);
            m.edges.sort();
        }
        self.members.sort_by_key(|m| (m.roots.first().map(|r| r.token), m.edges.first().map(|e| e.edge)));
        self
    }
}

impl fmt::Display for Packing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "tree {i}: roots")?;
            for r in &m.roots {
                write!(f, " {}@{}", r.token, r.vertex)?;
            }
            write!(f, "; edges")?;
            for e in &m.edges {
                write!(f, " {}:{}-{}", e.edge, e.ends.0, e.ends.1)?;
            }
        }
        Ok(())
    }
}

/// A solver result: either the construction or an infeasibility certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Solved(T),
    Infeasible(Violation),
}

impl<T> Outcome<T> {
    pub fn is_solved(&self) -> bool {
        matches!(self, Outcome::Solved(_))
    }

    pub fn solved(self) -> Option<T> {
        match self {
            Outcome::Solved(t) => Some(t),
            Outcome::Infeasible(_) => None,
        }
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Outcome::Solved(_) => None,
            Outcome::Infeasible(v) => Some(v),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Solved(t) => Outcome::Solved(f(t)),
            Outcome::Infeasible(v) => Outcome::Infeasible(v),
        }
    }
}
