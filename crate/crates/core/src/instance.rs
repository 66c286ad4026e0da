//! Multigraph and hypergraph instances and the counting functions every
//! packing condition is phrased in.

use crate::bits::{ElementSet, VertexSet};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;
/// Stable index of a hyperedge in insertion order.
pub type EdgeId = usize;
/// Index of a root token; tokens are the ground set of the root matroid.
pub type TokenId = usize;

/// A hypergraph on `n` vertices with a multiset of hyperedges, each of size at least two.
///
/// A graph is the special case where every hyperedge has exactly two vertices.
/// Parallel hyperedges are allowed; singletons (loops) are not. Instances are
/// immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<VertexSet>,
}

impl Hypergraph {
    pub fn new<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = VertexId>,
    {
        if n > VertexSet::CAPACITY {
            return Err(Error::CapExceeded { what: "vertex count", got: n, cap: VertexSet::CAPACITY });
        }
        let mut sets = Vec::new();
        for edge in edges {
            let mut set = VertexSet::empty();
            for v in edge {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                set.insert(v);
            }
            sets.push(set);
        }
        Self::from_sets(n, sets)
    }

    pub fn from_sets(n: usize, edges: Vec<VertexSet>) -> Result<Self> {
        if n > VertexSet::CAPACITY {
            return Err(Error::CapExceeded { what: "vertex count", got: n, cap: VertexSet::CAPACITY });
        }
        let all = VertexSet::full(n);
        for (index, e) in edges.iter().enumerate() {
            if !e.is_subset(all) {
                let vertex = (*e - all).first().unwrap_or(n);
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            if e.len() < 2 {
                return Err(Error::HyperedgeTooSmall { index, size: e.len() });
            }
        }
        Ok(Self { n, edges })
    }

    /// A multigraph from endpoint pairs.
    pub fn graph(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| [u, v]))
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_sets(n, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge(&self, id: EdgeId) -> VertexSet {
        self.edges[id]
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    /// All edge ids as a set.
    pub fn edge_ids(&self) -> ElementSet {
        ElementSet::full(self.edges.len())
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    pub fn ensure_graph(&self) -> Result<()> {
        match self.edges.iter().position(|e| e.len() != 2) {
            Some(index) => Err(Error::NotAGraph { index, size: self.edges[index].len() }),
            None => Ok(()),
        }
    }

    /// Endpoints `(u, v)` with `u < v`, for a size-2 hyperedge.
    pub fn endpoints(&self, id: EdgeId) -> Option<(VertexId, VertexId)> {
        let e = self.edges[id];
        if e.len() != 2 {
            return None;
        }
        let mut it = e.iter();
        Some((it.next()?, it.next()?))
    }

    /// Number of edges with both ends in `x` (`i_E(X)`).
    pub fn induced_count(&self, x: VertexSet) -> Result<usize> {
        self.ensure_graph()?;
        Ok(self.edges.iter().filter(|e| e.is_subset(x)).count())
    }

    /// `i_F(X)` for the edge subset `f`.
    pub fn induced_count_of(&self, f: ElementSet, x: VertexSet) -> usize {
        f.iter().filter(|&id| self.edges[id].is_subset(x)).count()
    }

    /// Number of edges with one end in `x` and the other in `y` (`d_E(X, Y)`).
    pub fn cross_degree(&self, x: VertexSet, y: VertexSet) -> Result<usize> {
        self.ensure_graph()?;
        if x.intersects(y) {
            return Err(Error::Overlapping);
        }
        Ok(self.edges.iter().filter(|e| e.intersects(x) && e.intersects(y) && e.is_subset(x | y)).count())
    }

    /// Number of hyperedges not contained in a single block of `p` (`e(P)`).
    pub fn crossing_count(&self, p: &Partition) -> usize {
        self.edges.iter().filter(|&&e| crosses_blocks(e, p)).count()
    }

    /// `e_F(P)` for the hyperedge subset `f`.
    pub fn crossing_count_of(&self, f: ElementSet, p: &Partition) -> usize {
        f.iter().filter(|&id| crosses_blocks(self.edges[id], p)).count()
    }

    /// `G/X`: `x` is replaced by one new vertex, edges inside `x` are deleted and
    /// edges leaving `x` are redirected to it (parallel copies are kept).
    ///
    /// The vertices outside `x` keep their relative order; the new vertex is last.
    pub fn contract(&self, x: VertexSet) -> Result<Contraction> {
        self.ensure_graph()?;
        if x.is_empty() {
            return Err(Error::EmptySet);
        }
        check_within(x, self.n)?;
        let outside = self.vertices() - x;
        let merged = outside.len();
        let mut vertex_map = vec![merged; self.n];
        for (new, old) in outside.iter().enumerate() {
            vertex_map[old] = new;
        }
        let mut edges = Vec::new();
        let mut edge_origin = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if e.is_subset(x) {
                continue;
            }
            edges.push(e.iter().map(|v| vertex_map[v]).collect::<VertexSet>());
            edge_origin.push(id);
        }
        Ok(Contraction { graph: Hypergraph::from_sets(merged + 1, edges)?, vertex_map, edge_origin })
    }

    /// `G[X]`, vertices relabelled to `0..|x|` in increasing order.
    pub fn induced_subgraph(&self, x: VertexSet) -> Result<Induced> {
        check_within(x, self.n)?;
        let vertex_origin: Vec<VertexId> = x.iter().collect();
        let mut local = vec![usize::MAX; self.n];
        for (new, &old) in vertex_origin.iter().enumerate() {
            local[old] = new;
        }
        let mut edges = Vec::new();
        let mut edge_origin = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if e.is_subset(x) {
                edges.push(e.iter().map(|v| local[v]).collect());
                edge_origin.push(id);
            }
        }
        Ok(Induced { graph: Hypergraph::from_sets(x.len(), edges)?, vertex_origin, edge_origin })
    }

    /// The same instance with `extra` hyperedges appended after the existing ones.
    pub fn with_extra_edges(&self, extra: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.extend(extra);
        Self::from_sets(self.n, edges)
    }

    /// The same instance with every edge outside `keep` removed (ids are renumbered).
    pub fn restricted_to(&self, keep: ElementSet) -> Self {
        Self { n: self.n, edges: keep.iter().map(|id| self.edges[id]).collect() }
    }
}

fn crosses_blocks(e: VertexSet, p: &Partition) -> bool {
    !p.blocks().iter().any(|b| e.is_subset(*b))
}

fn check_within(x: VertexSet, n: usize) -> Result<()> {
    match (x - VertexSet::full(n)).first() {
        Some(vertex) => Err(Error::VertexOutOfRange { vertex, n }),
        None => Ok(()),
    }
}

/// Result of [`Hypergraph::contract`].
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Hypergraph,
    /// Old vertex id to new vertex id; vertices of `X` map to the merged vertex.
    pub vertex_map: Vec<VertexId>,
    /// New edge id to original edge id.
    pub edge_origin: Vec<EdgeId>,
}

/// Result of [`Hypergraph::induced_subgraph`].
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Hypergraph,
    pub vertex_origin: Vec<VertexId>,
    pub edge_origin: Vec<EdgeId>,
}

/// Trim hyperedge `z` to the edge `uv`.
pub fn trim_hyperedge(z: VertexSet, u: VertexId, v: VertexId) -> Result<(VertexId, VertexId)> {
    if u == v || !z.contains(u) || !z.contains(v) {
        return Err(Error::InvalidTrim { u, v });
    }
    Ok((u.min(v), u.max(v)))
}

/// The multiset `S` of root vertices. Token `t` sits at `vertex_of(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RootMultiset {
    placements: Vec<VertexId>,
}

impl RootMultiset {
    pub fn new(n: usize, placements: Vec<VertexId>) -> Result<Self> {
        if let Some(&vertex) = placements.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        if placements.len() > ElementSet::CAPACITY {
            return Err(Error::CapExceeded { what: "root tokens", got: placements.len(), cap: ElementSet::CAPACITY });
        }
        Ok(Self { placements })
    }

    /// `count` tokens, all at vertex `v`.
    pub fn repeated(n: usize, v: VertexId, count: usize) -> Result<Self> {
        Self::new(n, vec![v; count])
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn vertex_of(&self, token: TokenId) -> VertexId {
        self.placements[token]
    }

    pub fn placements(&self) -> &[VertexId] {
        &self.placements
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.placements.len())
    }

    /// `S_X`: tokens placed inside `x`.
    pub fn tokens_in(&self, x: VertexSet) -> ElementSet {
        self.placements.iter().enumerate().filter(|&(_, &v)| x.contains(v)).map(|(t, _)| t).collect()
    }

    pub fn tokens_at(&self, v: VertexId) -> ElementSet {
        self.tokens_in(VertexSet::singleton(v))
    }

    /// `S_X` for every `X ⊆ V`, indexed by the bit pattern of `X`.
    pub fn tokens_by_subset(&self, n: usize) -> Vec<ElementSet> {
        let mut table = vec![ElementSet::empty(); 1 << n];
        for x in 1usize..1 << n {
            let low = x.trailing_zeros() as usize;
            table[x] = table[x & (x - 1)] | self.tokens_at(low);
        }
        table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(items: &[usize]) -> VertexSet {
        items.iter().collect()
    }

    fn triangle() -> Hypergraph {
        Hypergraph::graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn induced_count_examples() {
        let g = triangle();
        assert_eq!(g.induced_count(vs(&[0, 1])).unwrap(), 1);
        assert_eq!(g.induced_count(g.vertices()).unwrap(), 3);
        assert_eq!(g.induced_count(vs(&[0])).unwrap(), 0);
        let h = Hypergraph::new(3, [vec![0, 1, 2]]).unwrap();
        assert!(matches!(h.induced_count(vs(&[0, 1])), Err(Error::NotAGraph { .. })));
    }

    #[test]
    fn cross_degree_examples() {
        assert_eq!(triangle().cross_degree(vs(&[0]), vs(&[1])).unwrap(), 1);
        let multi = Hypergraph::graph(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(multi.cross_degree(vs(&[0]), vs(&[1])).unwrap(), 2);
        let path = Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.cross_degree(vs(&[0]), vs(&[2])).unwrap(), 0);
        assert_eq!(path.cross_degree(vs(&[0, 1]), vs(&[1])), Err(Error::Overlapping));
    }

    #[test]
    fn crossing_count_examples() {
        let g = triangle();
        assert_eq!(g.crossing_count(&Partition::singletons(3)), 3);
        assert_eq!(g.crossing_count(&Partition::trivial(3)), 0);
        let h = Hypergraph::new(3, [vec![0, 1, 2], vec![0, 1]]).unwrap();
        let p = Partition::new(3, vec![vs(&[0, 1]), vs(&[2])]).unwrap();
        assert_eq!(h.crossing_count(&p), 1);
    }

    #[test]
    fn contract_examples() {
        let path = Hypergraph::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let c = path.contract(vs(&[0, 1])).unwrap();
        assert_eq!(c.graph.vertex_count(), 2);
        assert_eq!(c.graph.edges(), &[vs(&[0, 1])]);
        assert_eq!(c.edge_origin, vec![1]);

        let c = triangle().contract(vs(&[0, 1])).unwrap();
        assert_eq!(c.graph.vertex_count(), 2);
        assert_eq!(c.graph.edge_count(), 2);
        assert!(c.graph.edges().iter().all(|&e| e == vs(&[0, 1])));
        assert_eq!(c.vertex_map, vec![1, 1, 0]);

        let c = triangle().contract(triangle().vertices()).unwrap();
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_count(), 0);

        assert_eq!(triangle().contract(VertexSet::empty()).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn trim_examples() {
        assert_eq!(trim_hyperedge(vs(&[0, 1, 2]), 0, 2).unwrap(), (0, 2));
        assert_eq!(trim_hyperedge(vs(&[0, 1]), 0, 1).unwrap(), (0, 1));
        assert!(trim_hyperedge(vs(&[0, 1, 2]), 0, 0).is_err());
        assert!(trim_hyperedge(vs(&[0, 1, 2]), 0, 3).is_err());
    }

    #[test]
    fn loops_and_out_of_range_rejected() {
        assert!(matches!(Hypergraph::new(3, [vec![1, 1]]), Err(Error::HyperedgeTooSmall { .. })));
        assert!(matches!(Hypergraph::new(3, [vec![1, 3]]), Err(Error::VertexOutOfRange { .. })));
        assert!(RootMultiset::new(2, vec![0, 2]).is_err());
    }

    #[test]
    fn tokens_by_subset_matches_direct() {
        let s = RootMultiset::new(4, vec![0, 2, 2, 3]).unwrap();
        let table = s.tokens_by_subset(4);
        for x in VertexSet::full(4).subsets() {
            assert_eq!(table[x.bits() as usize], s.tokens_in(x));
        }
    }

    /// `i(X ∪ Y) = i(X) + i(Y) + d(X, Y)` for disjoint sets, and `i` is supermodular.
    #[test]
    fn induced_count_identities_exhaustive() {
        let g = Hypergraph::graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (0, 5), (1, 4), (1, 4), (2, 3)]).unwrap();
        let all = g.vertices();
        for x in all.subsets() {
            for y in all.subsets() {
                let (ix, iy) = (g.induced_count(x).unwrap(), g.induced_count(y).unwrap());
                let meet = g.induced_count(x & y).unwrap();
                let union = g.induced_count(x | y).unwrap();
                assert!(ix + iy <= meet + union);
                if !x.intersects(y) {
                    assert_eq!(union, ix + iy + g.cross_degree(x, y).unwrap());
                }
            }
        }
    }
}
