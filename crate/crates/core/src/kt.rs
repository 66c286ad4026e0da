//! The two matroids on edges and root tokens.
//!
//! For a graph `G = (V, E)`, root tokens `S` placed on vertices and a matroid
//! `M` on `S`:
//!
//! ```text
//! r'(F ∪ T) = r(S)|V| + min_P ( e_F(P) - Σ_{X∈P} (r(S) - r(T_X)) )
//! r_KT(F)   = r(S)|V| - |S| + min_P ( e_F(P) - Σ_{X∈P} (r(S) - r(S_X)) )
//! ```
//!
//! Both minima are taken by enumerating every partition of `V`. Independent
//! sets of `r'` of size `r(S)|V|` are exactly the edge/root sets of M-based
//! packings, which is what the bounded packing solver intersects against.

use crate::bits::{ElementSet, VertexSet};
use crate::error::{Error, Result};
use crate::instance::{Hypergraph, RootMultiset, VertexId};
use crate::limits::{self, GROUND_CAP, PARTITION_VERTEX_CAP};
use crate::matroid::{DynMatroid, Memoized, RankOracle};
use crate::partition::{enumerate_partitions, Partition};

/// Graph, placed root tokens and a matroid on the tokens.
#[derive(Clone)]
pub struct KtContext {
    graph: Hypergraph,
    roots: RootMultiset,
    matroid: DynMatroid,
    rank_s: usize,
    /// `S_X` for every `X ⊆ V`, by bit pattern.
    tokens_of: Vec<ElementSet>,
}

impl std::fmt::Debug for KtContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KtContext")
            .field("graph", &self.graph)
            .field("roots", &self.roots)
            .field("rank_s", &self.rank_s)
            .finish_non_exhaustive()
    }
}

impl KtContext {
    /// The matroid's ground set must be exactly the tokens `0..|S|`, and
    /// `|E| + |S|` must fit in one element set.
    pub fn new(graph: Hypergraph, roots: RootMultiset, matroid: DynMatroid) -> Result<Self> {
        graph.ensure_graph()?;
        let n = graph.vertex_count();
        limits::ensure("vertex count for partition enumeration", n, PARTITION_VERTEX_CAP)?;
        limits::ensure("edges plus root tokens", graph.edge_count() + roots.len(), GROUND_CAP)?;
        if roots.placements().iter().any(|&v| v >= n) {
            let vertex = roots.placements().iter().copied().find(|&v| v >= n).unwrap_or(n);
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        if matroid.ground() != roots.all() {
            return Err(Error::RootMatroidMismatch { tokens: roots.len() });
        }
        let rank_s = matroid.rank(roots.all());
        let tokens_of = roots.tokens_by_subset(n);
        Ok(Self { graph, roots, matroid, rank_s, tokens_of })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn roots(&self) -> &RootMultiset {
        &self.roots
    }

    pub fn matroid(&self) -> &DynMatroid {
        &self.matroid
    }

    /// `r_M(S)`.
    pub fn rank_s(&self) -> usize {
        self.rank_s
    }

    /// `r_M(S)|V|`, the size of a basis of the packing matroid.
    pub fn basis_size(&self) -> usize {
        self.rank_s * self.graph.vertex_count()
    }

    /// `S_X`.
    pub fn tokens_in(&self, x: VertexSet) -> ElementSet {
        self.tokens_of[x.bits() as usize]
    }

    /// First vertex whose tokens are dependent in `M`.
    pub fn dependent_vertex(&self) -> Option<VertexId> {
        (0..self.graph.vertex_count()).find(|&v| !self.matroid.is_independent(self.roots.tokens_at(v)))
    }

    /// `e_F(P) - Σ_X (r(S) - r(T_X))`.
    fn objective(&self, f: ElementSet, t: ElementSet, p: &Partition) -> i64 {
        let deficit: i64 = p.blocks().iter().map(|&x| (self.rank_s - self.matroid.rank(t & self.tokens_in(x))) as i64).sum();
        self.graph.crossing_count_of(f, p) as i64 - deficit
    }

    fn minimize(&self, f: ElementSet, t: ElementSet) -> (Partition, i64) {
        let mut best: Option<(Partition, i64)> = None;
        for p in enumerate_partitions(self.graph.vertex_count()).expect("vertex cap checked at construction") {
            let value = self.objective(f, t, &p);
            if best.as_ref().is_none_or(|(_, b)| value < *b) {
                best = Some((p, value));
            }
        }
        best.expect("at least one partition")
    }

    fn check_subsets(&self, f: ElementSet, t: ElementSet) -> Result<()> {
        if !f.is_subset(self.graph.edge_ids()) {
            return Err(Error::OutsideGround(format!("edges {f}")));
        }
        if !t.is_subset(self.roots.all()) {
            return Err(Error::OutsideGround(format!("tokens {t}")));
        }
        Ok(())
    }
}

/// `r'(F ∪ T)`.
pub fn r_prime_kt(ctx: &KtContext, f: ElementSet, t: ElementSet) -> Result<usize> {
    ctx.check_subsets(f, t)?;
    let (_, min) = ctx.minimize(f, t);
    let value = ctx.basis_size() as i64 + min;
    debug_assert!(value >= 0);
    Ok(value as usize)
}

/// A partition attaining the minimum in `r'(F ∪ T)`; the first in enumeration order.
pub fn min_partition_certificate(ctx: &KtContext, f: ElementSet, t: ElementSet) -> Result<Partition> {
    ctx.check_subsets(f, t)?;
    Ok(ctx.minimize(f, t).0)
}

/// `r_KT(F)`; needs every `S_v` independent.
pub fn r_kt(ctx: &KtContext, f: ElementSet) -> Result<usize> {
    ctx.check_subsets(f, ElementSet::empty())?;
    if let Some(vertex) = ctx.dependent_vertex() {
        return Err(Error::DependentRoots { vertex });
    }
    let (_, min) = ctx.minimize(f, ctx.roots.all());
    let value = ctx.basis_size() as i64 - ctx.roots.len() as i64 + min;
    debug_assert!(value >= 0);
    Ok(value as usize)
}

/// `r'` as a rank oracle on the mixed ground set: edge `e` is element `e`,
/// token `t` is element `|E| + t`.
pub struct KtMatroid {
    inner: Memoized<KtRank>,
}

struct KtRank {
    ctx: KtContext,
}

impl RankOracle for KtRank {
    fn ground(&self) -> ElementSet {
        mixed_ground(&self.ctx)
    }

    fn rank(&self, set: ElementSet) -> usize {
        let (f, t) = split_mixed(&self.ctx, set);
        let (_, min) = self.ctx.minimize(f, t);
        (self.ctx.basis_size() as i64 + min) as usize
    }
}

impl KtMatroid {
    pub fn new(ctx: KtContext) -> Self {
        Self { inner: Memoized::new(KtRank { ctx }) }
    }

    pub fn context(&self) -> &KtContext {
        &self.inner.inner().ctx
    }

    /// Edge set `F` and token set `T` as one mixed set.
    pub fn mixed(&self, f: ElementSet, t: ElementSet) -> ElementSet {
        join_mixed(self.context(), f, t)
    }

    /// Inverse of [`KtMatroid::mixed`].
    pub fn split(&self, set: ElementSet) -> (ElementSet, ElementSet) {
        split_mixed(self.context(), set)
    }
}

impl RankOracle for KtMatroid {
    fn ground(&self) -> ElementSet {
        self.inner.ground()
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.inner.rank(set)
    }
}

fn mixed_ground(ctx: &KtContext) -> ElementSet {
    join_mixed(ctx, ctx.graph.edge_ids(), ctx.roots.all())
}

fn join_mixed(ctx: &KtContext, f: ElementSet, t: ElementSet) -> ElementSet {
    f | t.shifted(ctx.graph.edge_count())
}

fn split_mixed(ctx: &KtContext, set: ElementSet) -> (ElementSet, ElementSet) {
    let m = ctx.graph.edge_count();
    let f = set & ctx.graph.edge_ids();
    let t = if m >= 64 { ElementSet::empty() } else { ElementSet::from_bits(set.bits() >> m) } & ctx.roots.all();
    (f, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{free, uniform};
    use crate::oracle::verify_matroid_axioms;
    use std::sync::Arc;

    fn es(items: &[usize]) -> ElementSet {
        items.iter().collect()
    }

    fn ctx(n: usize, edges: &[(usize, usize)], placements: Vec<usize>, m: DynMatroid) -> KtContext {
        KtContext::new(Hypergraph::graph(n, edges).unwrap(), RootMultiset::new(n, placements).unwrap(), m).unwrap()
    }

    fn free_on(k: usize) -> DynMatroid {
        Arc::new(free(ElementSet::full(k)))
    }

    #[test]
    fn empty_sets_have_rank_zero() {
        let c = ctx(3, &[(0, 1), (1, 2)], vec![0], free_on(1));
        assert_eq!(r_prime_kt(&c, ElementSet::empty(), ElementSet::empty()).unwrap(), 0);
        assert_eq!(min_partition_certificate(&c, ElementSet::empty(), ElementSet::empty()).unwrap(), Partition::singletons(3));
        assert_eq!(r_kt(&c, ElementSet::empty()).unwrap(), 0);
    }

    /// Two vertices, one edge, one token at vertex 0, free matroid.
    ///
    /// Partitions: `{V}` gives `2 + 0 - (1 - 1) = 2`; singletons give
    /// `2 + 1 - (0 + 1) = 2`. Both attain 2.
    #[test]
    fn single_edge_examples() {
        let c = ctx(2, &[(0, 1)], vec![0], free_on(1));
        assert_eq!(r_prime_kt(&c, es(&[0]), es(&[0])).unwrap(), 2);
        assert_eq!(r_kt(&c, es(&[0])).unwrap(), 1);
    }

    #[test]
    fn spanning_tree_with_covering_basis_has_trivial_minimizer() {
        // Path 0-1-2 with one token at vertex 0: {V} is among the minimizers.
        let c = ctx(3, &[(0, 1), (1, 2)], vec![0], free_on(1));
        let f = es(&[0, 1]);
        let t = es(&[0]);
        let best = r_prime_kt(&c, f, t).unwrap() as i64;
        assert_eq!(best, 3);
        let trivial = Partition::trivial(3);
        assert_eq!(c.basis_size() as i64 + c.objective(f, t, &trivial), best);
    }

    #[test]
    fn certificate_attains_the_rank() {
        let c = ctx(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], vec![0, 0, 3], Arc::new(uniform(ElementSet::full(3), 2).unwrap()));
        for f in ElementSet::full(5).subsets() {
            for t in ElementSet::full(3).subsets() {
                let p = min_partition_certificate(&c, f, t).unwrap();
                let value = c.basis_size() as i64 + c.objective(f, t, &p);
                assert_eq!(value, r_prime_kt(&c, f, t).unwrap() as i64);
                assert!(value as usize <= f.len() + t.len());
            }
        }
    }

    #[test]
    fn dependent_roots_rejected_by_r_kt() {
        let c = ctx(2, &[(0, 1)], vec![0, 0], Arc::new(uniform(ElementSet::full(2), 1).unwrap()));
        assert_eq!(r_kt(&c, es(&[0])).unwrap_err(), Error::DependentRoots { vertex: 0 });
    }

    #[test]
    fn contraction_identity_on_small_instance() {
        let c = ctx(3, &[(0, 1), (1, 2), (0, 2), (0, 1)], vec![0, 1, 2], Arc::new(uniform(ElementSet::full(3), 2).unwrap()));
        for f in ElementSet::full(4).subsets() {
            assert_eq!(r_kt(&c, f).unwrap() + 3, r_prime_kt(&c, f, ElementSet::full(3)).unwrap());
        }
    }

    #[test]
    fn mixed_oracle_is_a_matroid() {
        let c = ctx(3, &[(0, 1), (1, 2), (0, 2)], vec![0, 2], Arc::new(uniform(ElementSet::full(2), 1).unwrap()));
        let m = KtMatroid::new(c);
        assert_eq!(m.ground(), ElementSet::full(5));
        assert_eq!(m.split(m.mixed(es(&[1]), es(&[1]))), (es(&[1]), es(&[1])));
        assert!(verify_matroid_axioms(&m).unwrap().ok());
    }

    #[test]
    fn mismatched_root_matroid_rejected() {
        let g = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        let roots = RootMultiset::new(2, vec![0]).unwrap();
        let err = KtContext::new(g, roots, free_on(2)).unwrap_err();
        assert_eq!(err, Error::RootMatroidMismatch { tokens: 1 });
    }
}
