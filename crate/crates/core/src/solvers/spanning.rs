//! `k` edge-disjoint spanning trees by the tight-partition recursion.
//!
//! While `|E| > k(|V|-1)`, a nontrivial partition with `e(P) = k(|P|-1)`
//! splits the instance into `G[X]` and `G/X`; without one, the smallest
//! edge is deletable. At `|E| = k(|V|-1)` one tree is grown from vertex 0
//! keeping `i_{E∖F}(X) ≤ m(X)` for every `X`, and the rest is packed with
//! `k - 1`.

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::feasibility::{check, ProblemKind, ProblemSpec, Verdict};
use crate::instance::{EdgeId, Hypergraph, VertexId};
use crate::partition::Partition;
use crate::scan;
use crate::solvers::{Outcome, PackedEdge, Packing, Root, RootedForest};

/// `m(X) = k(|X| - 1) - |X ∩ S| + 1` for the tree vertex set `S`.
///
/// Modular: `m(X) + m(Y) = m(X ∩ Y) + m(X ∪ Y)` for every `X`, `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionBound {
    pub k: usize,
    pub tree: VertexSet,
}

impl ExtensionBound {
    pub fn value(&self, x: VertexSet) -> i64 {
        self.k as i64 * (x.len() as i64 - 1) - (x & self.tree).len() as i64 + 1
    }
}

/// Edge in local vertex numbering, carrying its original id.
#[derive(Clone, Copy, Debug)]
struct LocalEdge {
    id: EdgeId,
    u: VertexId,
    v: VertexId,
}

/// Tree `i` of the result is rooted at vertex 0 with root token `i`.
pub fn pack_spanning_trees(graph: &Hypergraph, k: usize) -> Result<Outcome<Packing>> {
    graph.ensure_graph()?;
    let spec = ProblemSpec::spanning(graph.clone(), k)?;
    if let Verdict::Violated(v) = check(&spec, ProblemKind::Spanning)? {
        return Ok(Outcome::Infeasible(v));
    }
    let edges: Vec<LocalEdge> = (0..graph.edge_count())
        .map(|id| {
            let (u, v) = graph.endpoints(id).expect("graph edges have two ends");
            LocalEdge { id, u, v }
        })
        .collect();
    let trees = pack(graph.vertex_count(), edges, k)?;
    let members = trees
        .into_iter()
        .enumerate()
        .map(|(token, mut ids)| {
            ids.sort_unstable();
            RootedForest {
                roots: vec![Root { vertex: 0, token }],
                edges: ids.into_iter().map(|edge| PackedEdge { edge, ends: graph.endpoints(edge).expect("graph edge") }).collect(),
            }
        })
        .collect();
    Ok(Outcome::Solved(Packing { members }))
}

fn crossing(edges: &[LocalEdge], p: &Partition) -> usize {
    let labels = p.labels();
    edges.iter().filter(|e| labels[e.u] != labels[e.v]).count()
}

fn induced(edges: &[LocalEdge], x: VertexSet) -> i64 {
    edges.iter().filter(|e| x.contains(e.u) && x.contains(e.v)).count() as i64
}

/// `k` spanning trees of a graph on `0..n` known to satisfy the partition condition.
fn pack(n: usize, mut edges: Vec<LocalEdge>, k: usize) -> Result<Vec<Vec<EdgeId>>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![Vec::new(); k]);
    }
    let target = k * (n - 1);
    while edges.len() > target {
        let (p, tight) = scan::argmax(n, |p| i64::from(p.len() > 1 && crossing(&edges, p) == k * (p.len() - 1)))?;
        if tight == 1 {
            let x = *p.blocks().iter().find(|b| b.len() > 1 && b.len() < n).expect("a tight partition other than the singletons");
            return split(n, edges, k, x);
        }
        edges.remove(0);
    }
    if edges.len() < target {
        return Err(Error::Internal(format!("{} edges left for {k} spanning trees on {n} vertices", edges.len())));
    }

    let full = VertexSet::full(n);
    let mut bound = ExtensionBound { k, tree: VertexSet::singleton(0) };
    let mut rest = edges;
    let mut tree: Vec<EdgeId> = Vec::with_capacity(n - 1);
    while bound.tree != full {
        let x = full
            .subsets()
            .filter(|&x| !x.is_empty() && !x.is_subset(bound.tree) && induced(&rest, x) == bound.value(x))
            .min_by_key(|&x| (x.len(), x.bits()))
            .ok_or_else(|| Error::Internal("no dangerous set while the tree is not spanning".into()))?;
        let inside = x & bound.tree;
        let pos = rest
            .iter()
            .position(|e| {
                (inside.contains(e.u) && x.contains(e.v) && !bound.tree.contains(e.v))
                    || (inside.contains(e.v) && x.contains(e.u) && !bound.tree.contains(e.u))
            })
            .ok_or_else(|| Error::Internal(format!("no edge leaves the tree inside dangerous set {x}")))?;
        let e = rest.remove(pos);
        let new = if bound.tree.contains(e.u) { e.v } else { e.u };
        bound.tree.insert(new);
        tree.push(e.id);
        if let Some(y) = full.subsets().find(|&y| !y.is_empty() && induced(&rest, y) > bound.value(y)) {
            return Err(Error::Internal(format!("extension condition fails at {y}")));
        }
    }
    let mut trees = vec![tree];
    trees.extend(pack(n, rest, k - 1)?);
    Ok(trees)
}

/// Packs `G[X]` and `G/X` separately and glues tree `i` of each.
fn split(n: usize, edges: Vec<LocalEdge>, k: usize, x: VertexSet) -> Result<Vec<Vec<EdgeId>>> {
    let rep = x.first().expect("nonempty block");
    let inner_index: Vec<usize> = (0..n).map(|v| x.iter().take_while(|&w| w < v).count()).collect();
    let outer: Vec<VertexId> = (0..n).filter(|&v| v == rep || !x.contains(v)).collect();
    let outer_index = |v: VertexId| {
        let v = if x.contains(v) { rep } else { v };
        outer.iter().position(|&w| w == v).expect("vertex kept in the contraction")
    };
    let (inside, across): (Vec<LocalEdge>, Vec<LocalEdge>) = edges.into_iter().partition(|e| x.contains(e.u) && x.contains(e.v));
    let inside = inside.into_iter().map(|e| LocalEdge { id: e.id, u: inner_index[e.u], v: inner_index[e.v] }).collect();
    let across = across.into_iter().map(|e| LocalEdge { id: e.id, u: outer_index(e.u), v: outer_index(e.v) }).collect();
    let a = pack(x.len(), inside, k)?;
    let b = pack(outer.len(), across, k)?;
    Ok(a.into_iter()
        .zip(b)
        .map(|(mut s, t)| {
            s.extend(t);
            s
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::{Condition, Witness};
    use crate::oracle::validate_packing;
    use proptest::prelude::*;

    fn solve(g: &Hypergraph, k: usize) -> Outcome<Packing> {
        pack_spanning_trees(g, k).unwrap()
    }

    fn valid(g: &Hypergraph, k: usize, p: &Packing) -> bool {
        let spec = ProblemSpec::spanning(g.clone(), k).unwrap().normalized(ProblemKind::Spanning).unwrap();
        validate_packing(p, &spec).ok()
    }

    #[test]
    fn a_tree_packs_itself() {
        let g = Hypergraph::graph(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let p = solve(&g, 1).solved().unwrap();
        assert_eq!(p.members.len(), 1);
        assert_eq!(p.edge_ids().iter().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(valid(&g, 1, &p));
    }

    #[test]
    fn k4_two_trees_use_every_edge() {
        let g = Hypergraph::graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let p = solve(&g, 2).solved().unwrap();
        assert_eq!(p.edge_ids().len(), 6);
        assert!(valid(&g, 2, &p));
    }

    #[test]
    fn c4_two_trees_fail_at_singletons() {
        let g = Hypergraph::graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let v = solve(&g, 2).violation().cloned().unwrap();
        assert_eq!(v.condition, Condition::SpanningCut);
        assert_eq!(v.witness, Witness::Partition(Partition::singletons(4)));
        assert_eq!(v.deficit, 2);
    }

    #[test]
    fn zero_trees_and_single_vertex() {
        let g = Hypergraph::graph(3, &[(0, 1)]).unwrap();
        assert_eq!(solve(&g, 0).solved().unwrap().members.len(), 0);
        let lone = Hypergraph::empty(1).unwrap();
        let p = solve(&lone, 3).solved().unwrap();
        assert_eq!(p.members.len(), 3);
        assert!(valid(&lone, 3, &p));
    }

    #[test]
    fn surplus_edges_go_through_tight_split() {
        // Two triangles joined by a double bridge: {0,1,2} is tight for k = 2
        // and the surplus parallel edge inside it must be dropped.
        let g = Hypergraph::graph(6, &[(0, 1), (1, 2), (0, 2), (0, 1), (1, 2), (2, 3), (2, 3), (3, 4), (4, 5), (3, 5), (3, 4), (4, 5)])
            .unwrap();
        let p = solve(&g, 2).solved().unwrap();
        assert!(valid(&g, 2, &p));
    }

    proptest! {
        #[test]
        fn extension_bound_is_modular(k in 0usize..4, tree in 0u32..64, x in 0u32..64, y in 0u32..64) {
            let m = ExtensionBound { k, tree: VertexSet::from_bits(tree) };
            let (x, y) = (VertexSet::from_bits(x), VertexSet::from_bits(y));
            prop_assert_eq!(m.value(x) + m.value(y), m.value(x & y) + m.value(x | y));
        }

        #[test]
        fn solved_packings_validate(n in 2usize..6, pairs in proptest::collection::vec((0usize..5, 0usize..5), 0..10), k in 1usize..3) {
            let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
            let g = Hypergraph::graph(n, &pairs).unwrap();
            match solve(&g, k) {
                Outcome::Solved(p) => prop_assert!(valid(&g, k, &p)),
                Outcome::Infeasible(v) => prop_assert!(v.deficit > 0),
            }
        }
    }
}
