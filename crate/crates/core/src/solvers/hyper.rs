//! Limited packings of hypertrees and the minimum graph-edge augmentation.
//!
//! A hypergraph is trimmed to a graph that still satisfies both cut
//! conditions, then packed as a graph; edge ids survive trimming, so the
//! packing's edges carry the hyperedge id and the pair it was trimmed to.
//! Augmentation covers `p_i - e` by `γ` new graph edges and packs the result.

use crate::error::{Error, Result};
use crate::feasibility::{check, Evaluator, ProblemKind, ProblemSpec, Verdict};
use crate::instance::{Hypergraph, VertexId};
use crate::solvers::{cover_partition_functions, min_cover_size, pack_limited, trim_hypergraph, Outcome, Packing};

/// Result of [`augment_hypergraph`]: the added pairs, the extended instance
/// (added edges get ids after the original ones) and a packing in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub added: Vec<(VertexId, VertexId)>,
    pub instance: Hypergraph,
    pub packing: Packing,
}

/// `(α, β)`-limited, `(f, g)`-bounded M-based packing of hypertrees.
pub fn pack_limited_hyper(spec: &ProblemSpec) -> Result<Outcome<Packing>> {
    let spec = spec.normalized(ProblemKind::LimitedHyper)?;
    if let Verdict::Violated(v) = check(&spec, ProblemKind::LimitedHyper)? {
        return Ok(Outcome::Infeasible(v));
    }
    if spec.instance.is_graph() {
        return pack_limited(&spec);
    }
    let ev = Evaluator::new(&spec)?;
    let trimmed = match trim_hypergraph(&spec.instance, |p| ev.p1(p), |p| ev.p2(p))? {
        Outcome::Solved(t) => t,
        Outcome::Infeasible(v) => return Err(Error::Internal(format!("trimming failed after a feasible check: {v}"))),
    };
    let graph_spec = ProblemSpec { instance: trimmed.graph, ..spec };
    match pack_limited(&graph_spec)? {
        Outcome::Solved(p) => Ok(Outcome::Solved(p)),
        Outcome::Infeasible(v) => Err(Error::Internal(format!("trimmed graph fails {v}"))),
    }
}

/// Adds exactly `γ` graph edges so that a limited packing of hypertrees exists,
/// and returns that packing.
pub fn augment_hypergraph(spec: &ProblemSpec) -> Result<Outcome<Augmentation>> {
    let spec = spec.normalized(ProblemKind::Augment)?;
    if let Verdict::Violated(v) = check(&spec, ProblemKind::Augment)? {
        return Ok(Outcome::Infeasible(v));
    }
    let gamma = spec.budget_required()?;
    let ev = Evaluator::new(&spec)?;
    let added = match cover_partition_functions(spec.vertex_count(), |p| ev.p1(p) - ev.e(p), |p| ev.p2(p) - ev.e(p), gamma)? {
        Outcome::Solved(f) => f,
        Outcome::Infeasible(v) => return Err(Error::Internal(format!("covering failed after a feasible check: {v}"))),
    };
    let instance = spec.instance.with_extra_edges(added.iter().map(|&(u, v)| [u, v].into_iter().collect()))?;
    let extended = ProblemSpec { instance: instance.clone(), budget: None, ..spec };
    match pack_limited_hyper(&extended)? {
        Outcome::Solved(packing) => Ok(Outcome::Solved(Augmentation { added, instance, packing })),
        Outcome::Infeasible(v) => Err(Error::Internal(format!("augmented instance fails {v}"))),
    }
}

/// Smallest `γ` for which [`augment_hypergraph`] succeeds, or `None` when a
/// condition that no added edge can fix is violated.
pub fn min_augmentation(spec: &ProblemSpec) -> Result<Option<usize>> {
    let probe = spec.normalized(ProblemKind::Augment)?.with_budget(0);
    if let Verdict::Violated(v) = check(&probe, ProblemKind::Augment)? {
        if !v.condition.depends_on_budget() {
            return Ok(None);
        }
    } else {
        return Ok(Some(0));
    }
    let ev = Evaluator::new(&probe)?;
    let gamma = min_cover_size(probe.vertex_count(), |p| ev.p1(p) - ev.e(p), |p| ev.p2(p) - ev.e(p))?;
    if probe.vertex_count() < 2 {
        return Err(Error::NoEdgePossible);
    }
    Ok(Some(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::Condition;
    use crate::oracle::{brute_min_augmentation, validate_packing};

    fn spanning_limits(h: Hypergraph, k: usize) -> ProblemSpec {
        let graph_shell = Hypergraph::empty(h.vertex_count()).unwrap();
        let base = ProblemSpec::spanning(graph_shell, k).unwrap();
        ProblemSpec { instance: h, tree_count: None, ..base }
    }

    #[test]
    fn two_triples_hold_one_spanning_hypertree() {
        let h = Hypergraph::new(3, [vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        let spec = spanning_limits(h, 1);
        let p = pack_limited_hyper(&spec).unwrap().solved().unwrap();
        assert!(validate_packing(&p, &spec.normalized(ProblemKind::LimitedHyper).unwrap()).ok());
        assert_eq!(p.edge_ids().len(), 2);
    }

    #[test]
    fn one_triple_is_not_enough() {
        let h = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        let v = pack_limited_hyper(&spanning_limits(h, 1)).unwrap().violation().cloned().unwrap();
        assert_eq!(v.condition, Condition::UpperCut);
    }

    #[test]
    fn empty_triangle_needs_two_edges_per_tree() {
        for (k, expected) in [(1, 2), (2, 4)] {
            let spec = spanning_limits(Hypergraph::empty(3).unwrap(), k);
            assert_eq!(min_augmentation(&spec).unwrap(), Some(expected));
            assert_eq!(brute_min_augmentation(&spec).unwrap(), Some(expected));
            let a = augment_hypergraph(&spec.clone().with_budget(expected)).unwrap().solved().unwrap();
            assert_eq!(a.added.len(), expected);
            let extended = ProblemSpec { instance: a.instance.clone(), budget: None, ..spec.clone() };
            assert!(validate_packing(&a.packing, &extended.normalized(ProblemKind::LimitedHyper).unwrap()).ok());
            let short = augment_hypergraph(&spec.with_budget(expected - 1)).unwrap().violation().cloned().unwrap();
            assert_eq!(short.deficit, 1);
        }
    }

    #[test]
    fn zero_budget_on_a_feasible_instance() {
        let c4 = Hypergraph::graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let spec = spanning_limits(c4, 1);
        assert_eq!(min_augmentation(&spec).unwrap(), Some(0));
        let a = augment_hypergraph(&spec.with_budget(0)).unwrap().solved().unwrap();
        assert!(a.added.is_empty());
    }

    #[test]
    fn budget_independent_violation_has_no_augmentation() {
        let spec = spanning_limits(Hypergraph::empty(3).unwrap(), 1).with_limits(2, 1);
        assert_eq!(min_augmentation(&spec).unwrap(), None);
        assert_eq!(brute_min_augmentation(&spec).unwrap(), None);
    }

    #[test]
    fn surplus_budget_is_spent_on_padding() {
        let spec = spanning_limits(Hypergraph::empty(2).unwrap(), 1).with_budget(3);
        let a = augment_hypergraph(&spec).unwrap().solved().unwrap();
        assert_eq!(a.added, vec![(0, 1); 3]);
        assert_eq!(a.instance.edge_count(), 3);
    }
}
