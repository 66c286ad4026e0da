//! Exhaustive packing search.
//!
//! A packing of rooted trees is enumerated in three layers: the root token
//! set `T`, the set of trees through each vertex (which must be a basis), and
//! finally an assignment of hyperedges with trimmed ends to trees. Every
//! candidate is accepted only if [`validate_packing`] passes.

use crate::bits::{ElementSet, VertexSet};
use crate::error::Result;
use crate::feasibility::{ProblemKind, ProblemSpec};
use crate::instance::VertexId;
use crate::limits;
use crate::matroid::RankOracle;
use crate::oracle::validate_packing;
use crate::solvers::{PackedEdge, Packing, Root, RootedForest};

pub const BRUTE_VERTEX_CAP: usize = 5;
pub const BRUTE_EDGE_CAP: usize = 7;
pub const BRUTE_TOKEN_CAP: usize = 4;
/// Vertex cap of [`brute_min_augmentation`].
pub const AUGMENT_VERTEX_CAP: usize = 4;

/// Whether a packing of `kind` exists, by exhaustive search.
///
/// For [`ProblemKind::Augment`] this asks whether some `γ` added graph
/// edges make a limited hypertree packing exist.
pub fn brute_exists_packing(spec: &ProblemSpec, kind: ProblemKind) -> Result<bool> {
    ensure_caps(spec)?;
    if kind.needs_graph() {
        spec.instance.ensure_graph()?;
    }
    if kind == ProblemKind::Augment {
        let gamma = spec.budget_required()?;
        return Ok(brute_min_augmentation(spec)?.is_some_and(|m| m <= gamma));
    }
    let spec = spec.normalized(kind)?;
    Ok(find_packing(&spec, None).is_some())
}

/// Whether an M-based packing exists whose edge set is exactly `edges` and
/// whose root set is exactly `tokens`; the bounds of `spec` still apply.
pub fn brute_exists_with(spec: &ProblemSpec, edges: ElementSet, tokens: ElementSet) -> Result<bool> {
    ensure_caps(spec)?;
    if !edges.is_subset(spec.instance.edge_ids()) || !tokens.is_subset(spec.roots.all()) {
        return Ok(false);
    }
    Ok(find_packing(spec, Some((edges, tokens))).is_some())
}

/// Fewest graph edges whose addition makes a limited hypertree packing
/// exist, or `None` if no number of edges suffices.
///
/// An added edge is useful only if some tree uses it, so at most
/// `r(S)·|V|` edges and at most `r(S)` copies of each vertex pair matter.
pub fn brute_min_augmentation(spec: &ProblemSpec) -> Result<Option<usize>> {
    limits::ensure("vertex count for brute-force augmentation", spec.vertex_count(), AUGMENT_VERTEX_CAP)?;
    ensure_caps(spec)?;
    let spec = spec.normalized(ProblemKind::LimitedHyper)?;
    let n = spec.vertex_count();
    let rank_s = spec.matroid.rank(spec.matroid.ground());
    let pairs: Vec<VertexSet> = (0..n).flat_map(|u| (u + 1..n).map(move |v| VertexSet::from_iter([u, v]))).collect();
    for j in 0..=rank_s * n {
        let mut counts = vec![0usize; pairs.len()];
        if multisets(&pairs, &mut counts, 0, j, rank_s, &mut |extra| {
            let instance = spec.instance.with_extra_edges(extra.iter().copied()).expect("pairs are valid edges");
            let grown = ProblemSpec { instance, ..spec.clone() };
            find_packing(&grown, None).is_some()
        }) {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

fn ensure_caps(spec: &ProblemSpec) -> Result<()> {
    limits::ensure("vertex count for brute-force search", spec.vertex_count(), BRUTE_VERTEX_CAP)?;
    limits::ensure("hyperedge count for brute-force search", spec.instance.edge_count(), BRUTE_EDGE_CAP)?;
    limits::ensure("root count for brute-force search", spec.roots.len(), BRUTE_TOKEN_CAP)
}

/// Calls `test` on every multiset of `left` more pairs drawn from
/// `pairs[at..]` with multiplicity at most `cap`, in lexicographic order;
/// stops at the first `true`.
fn multisets(
    pairs: &[VertexSet],
    counts: &mut [usize],
    at: usize,
    left: usize,
    cap: usize,
    test: &mut dyn FnMut(&[VertexSet]) -> bool,
) -> bool {
    if left == 0 {
        let extra: Vec<VertexSet> = pairs.iter().zip(counts.iter()).flat_map(|(&p, &c)| std::iter::repeat_n(p, c)).collect();
        return test(&extra);
    }
    if at == pairs.len() {
        return false;
    }
    for c in (0..=left.min(cap)).rev() {
        counts[at] = c;
        if multisets(pairs, counts, at + 1, left - c, cap, test) {
            counts[at] = 0;
            return true;
        }
    }
    counts[at] = 0;
    false
}

/// A packing satisfying `spec`, optionally with a prescribed edge and root set.
fn find_packing(spec: &ProblemSpec, exact: Option<(ElementSet, ElementSet)>) -> Option<Packing> {
    let n = spec.vertex_count();
    let m = &spec.matroid;
    let rank_s = m.rank(m.ground());
    let edges: Vec<usize> = exact.map_or(spec.instance.edge_ids(), |(f, _)| f).iter().collect();
    let candidates: Vec<ElementSet> = match exact {
        Some((_, t)) => vec![t],
        None => spec.roots.all().subsets().collect(),
    };
    for t in candidates {
        if !admissible_roots(spec, t) {
            continue;
        }
        let tokens: Vec<usize> = t.iter().collect();
        let root_vertex: Vec<VertexId> = tokens.iter().map(|&x| spec.roots.vertex_of(x)).collect();
        let mut options: Vec<Vec<u32>> = Vec::with_capacity(n);
        for v in 0..n {
            let must: u32 = (0..tokens.len()).filter(|&i| root_vertex[i] == v).fold(0, |a, i| a | 1 << i);
            let opts: Vec<u32> = (0u32..1 << tokens.len())
                .filter(|&c| c & must == must && c.count_ones() as usize == rank_s)
                .filter(|&c| m.is_independent((0..tokens.len()).filter(|&i| c >> i & 1 == 1).map(|i| tokens[i]).collect()))
                .collect();
            options.push(opts);
        }
        if options.iter().any(Vec::is_empty) {
            continue;
        }
        let search = Search { spec, edges: &edges, tokens: &tokens, root_vertex: &root_vertex, exact: exact.is_some() };
        let mut choice = vec![0u32; n];
        if let Some(p) = search.over_memberships(&options, 0, &mut choice) {
            return Some(p);
        }
    }
    None
}

/// Root-set constraints that every packing rooted at exactly `t` must meet.
fn admissible_roots(spec: &ProblemSpec, t: ElementSet) -> bool {
    let k = t.len();
    if k < spec.min_total || k > spec.max_total || spec.tree_count.is_some_and(|c| c != k) {
        return false;
    }
    (0..spec.vertex_count()).all(|v| {
        let at = t & spec.roots.tokens_at(v);
        at.len() >= spec.lower[v] && spec.upper[v].admits(at.len()) && spec.matroid.is_independent(at)
    })
}

struct Search<'a> {
    spec: &'a ProblemSpec,
    edges: &'a [usize],
    tokens: &'a [usize],
    root_vertex: &'a [VertexId],
    exact: bool,
}

struct Trees {
    span: Vec<VertexSet>,
    label: Vec<Vec<usize>>,
    need: Vec<usize>,
    chosen: Vec<Option<(usize, VertexId, VertexId)>>,
}

impl Search<'_> {
    fn over_memberships(&self, options: &[Vec<u32>], v: usize, choice: &mut [u32]) -> Option<Packing> {
        let n = options.len();
        if v == n {
            let trees = self.tokens.len();
            let span: Vec<VertexSet> = (0..trees).map(|i| (0..n).filter(|&u| choice[u] >> i & 1 == 1).collect()).collect();
            let need: Vec<usize> = span.iter().map(|s| s.len() - 1).collect();
            let total: usize = need.iter().sum();
            if total > self.edges.len() || (self.exact && total != self.edges.len()) {
                return None;
            }
            let mut state = Trees { span, label: vec![(0..n).collect(); trees], need, chosen: vec![None; self.edges.len()] };
            return self.over_edges(&mut state, 0, total);
        }
        for &c in &options[v] {
            choice[v] = c;
            if let Some(p) = self.over_memberships(options, v + 1, choice) {
                return Some(p);
            }
        }
        None
    }

    fn over_edges(&self, st: &mut Trees, j: usize, left: usize) -> Option<Packing> {
        if left == 0 {
            if self.exact && j < self.edges.len() {
                return None;
            }
            let p = self.assemble(st);
            return validate_packing(&p, self.spec).ok().then_some(p);
        }
        if self.edges.len() - j < left {
            return None;
        }
        let id = self.edges[j];
        let e = self.spec.instance.edge(id);
        // Copies of one hyperedge take options in non-decreasing order, skip last.
        let prev = (j > 0 && self.spec.instance.edge(self.edges[j - 1]) == e).then(|| st.chosen[j - 1]);
        let floor = match prev {
            Some(None) => return if self.exact { None } else { self.over_edges(st, j + 1, left) },
            Some(Some(f)) => Some(f),
            None => None,
        };
        for i in 0..self.tokens.len() {
            if st.need[i] == 0 {
                continue;
            }
            let inside = e & st.span[i];
            for u in inside.iter() {
                for v in inside.iter().filter(|&v| v > u) {
                    if floor.is_some_and(|f| (i, u, v) < f) || st.label[i][u] == st.label[i][v] {
                        continue;
                    }
                    let saved = st.label[i].clone();
                    let (from, to) = (st.label[i][u], st.label[i][v]);
                    for l in st.label[i].iter_mut() {
                        if *l == from {
                            *l = to;
                        }
                    }
                    st.need[i] -= 1;
                    st.chosen[j] = Some((i, u, v));
                    if let Some(p) = self.over_edges(st, j + 1, left - 1) {
                        return Some(p);
                    }
                    st.chosen[j] = None;
                    st.need[i] += 1;
                    st.label[i] = saved;
                }
            }
        }
        if self.exact {
            return None;
        }
        self.over_edges(st, j + 1, left)
    }

    fn assemble(&self, st: &Trees) -> Packing {
        let members = (0..self.tokens.len())
            .map(|i| RootedForest {
                roots: vec![Root { vertex: self.root_vertex[i], token: self.tokens[i] }],
                edges: st
                    .chosen
                    .iter()
                    .zip(self.edges)
                    .filter_map(|(c, &edge)| c.filter(|c| c.0 == i).map(|c| PackedEdge { edge, ends: (c.1, c.2) }))
                    .collect(),
            })
            .collect();
        Packing { members }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::feasibility::Bound;
    use crate::instance::{Hypergraph, RootMultiset};
    use crate::matroid::{free, uniform};
    use std::sync::Arc;

    fn k4() -> Hypergraph {
        Hypergraph::graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn c4() -> Hypergraph {
        Hypergraph::graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    fn spanning(g: Hypergraph, k: usize) -> bool {
        brute_exists_packing(&ProblemSpec::spanning(g, k).unwrap(), ProblemKind::Spanning).unwrap()
    }

    #[test]
    fn spanning_examples() {
        assert!(spanning(k4(), 2));
        assert!(!spanning(k4(), 3));
        assert!(!spanning(c4(), 2));
        assert!(spanning(c4(), 1));
        assert!(spanning(Hypergraph::empty(3).unwrap(), 0));
        assert!(!spanning(Hypergraph::empty(3).unwrap(), 1));
    }

    #[test]
    fn caps_refused() {
        let g = Hypergraph::graph(6, &[(0, 1)]).unwrap();
        let spec = ProblemSpec::spanning(g, 1).unwrap();
        assert!(matches!(brute_exists_packing(&spec, ProblemKind::Spanning), Err(Error::CapExceeded { .. })));
        let many = Hypergraph::graph(3, &[(0, 1); 8]).unwrap();
        assert!(matches!(
            brute_exists_packing(&ProblemSpec::spanning(many, 1).unwrap(), ProblemKind::Spanning),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn single_edge_uniform_rank_one_bounded() {
        // Either endpoint may root the single tree.
        let g = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        let roots = RootMultiset::new(2, vec![0, 1]).unwrap();
        let m = Arc::new(uniform(roots.all(), 1).unwrap());
        let spec = ProblemSpec::new(g, roots, m).unwrap().with_bounds(vec![0, 0], vec![Bound::Finite(1); 2]).unwrap().with_tree_count(1);
        assert!(brute_exists_packing(&spec, ProblemKind::Bounded).unwrap());
        assert!(brute_exists_with(&spec, ElementSet::singleton(0), ElementSet::singleton(0)).unwrap());
        assert!(brute_exists_with(&spec, ElementSet::singleton(0), ElementSet::singleton(1)).unwrap());
        assert!(!brute_exists_with(&spec, ElementSet::empty(), ElementSet::singleton(1)).unwrap());
    }

    #[test]
    fn hyperedges_trim_to_a_spanning_tree() {
        let h = Hypergraph::new(3, [vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        let roots = RootMultiset::new(3, vec![0]).unwrap();
        let spec = ProblemSpec::new(h.clone(), roots.clone(), Arc::new(free(roots.all()))).unwrap().with_limits(1, 1);
        assert!(brute_exists_packing(&spec, ProblemKind::LimitedHyper).unwrap());
        let single = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        let spec = ProblemSpec::new(single, roots.clone(), Arc::new(free(roots.all()))).unwrap().with_limits(1, 1);
        assert!(!brute_exists_packing(&spec, ProblemKind::LimitedHyper).unwrap());
        assert!(matches!(brute_exists_packing(&spec, ProblemKind::Limited), Err(Error::NotAGraph { .. })));
    }

    #[test]
    fn minimum_augmentations() {
        let empty = Hypergraph::empty(3).unwrap();
        let one = ProblemSpec::spanning(empty.clone(), 1).unwrap().normalized(ProblemKind::Spanning).unwrap();
        assert_eq!(brute_min_augmentation(&one).unwrap(), Some(2));
        let two = ProblemSpec::spanning(empty, 2).unwrap().normalized(ProblemKind::Spanning).unwrap();
        assert_eq!(brute_min_augmentation(&two).unwrap(), Some(4));
        let feasible = ProblemSpec::spanning(c4(), 1).unwrap().normalized(ProblemKind::Spanning).unwrap();
        assert_eq!(brute_min_augmentation(&feasible).unwrap(), Some(0));
    }

    #[test]
    fn impossible_augmentation_is_none() {
        // Lower bound 1 at a vertex without tokens can never be met.
        let roots = RootMultiset::new(2, vec![0]).unwrap();
        let spec = ProblemSpec::new(Hypergraph::empty(2).unwrap(), roots.clone(), Arc::new(free(roots.all())))
            .unwrap()
            .with_bounds(vec![0, 1], vec![Bound::Infinite; 2])
            .unwrap();
        assert_eq!(brute_min_augmentation(&spec).unwrap(), None);
    }

    #[test]
    fn multisets_in_order() {
        let pairs = [VertexSet::singleton(0), VertexSet::singleton(1)];
        let mut seen = Vec::new();
        multisets(&pairs, &mut [0, 0], 0, 2, 1, &mut |m| {
            seen.push(m.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![pairs[0], pairs[1]]]);
        let mut all = 0;
        multisets(&pairs, &mut [0, 0], 0, 2, 2, &mut |_| {
            all += 1;
            false
        });
        assert_eq!(all, 3);
    }
}
