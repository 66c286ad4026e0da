//! Fixed benchmark instances shared by the criterion benches.
//!
//! Sizes sit near the caps where the exhaustive scans still finish in
//! milliseconds, so regressions in the partition scans show up clearly.

use std::sync::Arc;

use fforge_core::matroid::{direct_sum, uniform, DynMatroid};
use fforge_core::random::{Generator, SpecShape};
use fforge_core::{Bound, ElementSet, Hypergraph, ProblemSpec, Result, RootMultiset};

/// Complete graph on `n` vertices, edges in lexicographic order.
pub fn complete_graph(n: usize) -> Result<Hypergraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Hypergraph::graph(n, &pairs)
}

/// `k` copies of the cycle `0-1-...-(n-1)-0`.
pub fn thick_cycle(n: usize, k: usize) -> Result<Hypergraph> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|_| (0..n).map(move |i| (i.min((i + 1) % n), i.max((i + 1) % n)))).collect();
    Hypergraph::graph(n, &pairs)
}

/// Bounded problem on `K_n` with four tokens and a rank-2 direct sum of uniforms.
pub fn bounded_on_complete(n: usize) -> Result<ProblemSpec> {
    let g = complete_graph(n)?;
    let roots = RootMultiset::new(n, vec![0, 1, 2, n - 1])?;
    let left = uniform(ElementSet::full(2), 1)?;
    let right = uniform(ElementSet::full(4) - ElementSet::full(2), 1)?;
    let m: DynMatroid = Arc::new(direct_sum(left, right)?);
    let upper = (0..n).map(|v| if v == 0 { Bound::Finite(1) } else { Bound::Infinite }).collect();
    Ok(ProblemSpec::new(g, roots, m)?.with_bounds(vec![0; n], upper)?.with_limits(2, 4).with_tree_count(2))
}

/// Hypergraph on `n` vertices with every triple `{i, i+1, i+2}` (cyclically), rooted at 0.
pub fn triple_ring(n: usize, tokens: usize) -> Result<ProblemSpec> {
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n, (i + 2) % n]).collect();
    let h = Hypergraph::new(n, edges)?;
    let roots = RootMultiset::repeated(n, 0, tokens)?;
    let m: DynMatroid = Arc::new(uniform(roots.all(), tokens)?);
    Ok(ProblemSpec::new(h, roots, m)?.with_limits(tokens, tokens))
}

/// A fixed stream of small random specs.
pub fn random_specs(seed: u64, count: usize) -> Result<Vec<ProblemSpec>> {
    let shape = SpecShape { max_vertices: 4, max_edges: 5, max_edge_size: 2, max_tokens: 3, max_bound: 2, max_total: 3 };
    let mut g = Generator::new(seed);
    (0..count).map(|_| g.spec(shape)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fforge_core::{check, ProblemKind};

    #[test]
    fn instances_build() {
        assert_eq!(complete_graph(6).unwrap().edge_count(), 15);
        assert_eq!(thick_cycle(5, 2).unwrap().edge_count(), 10);
        assert!(check(&bounded_on_complete(6).unwrap(), ProblemKind::Bounded).unwrap().is_feasible());
        assert!(check(&triple_ring(6, 1).unwrap(), ProblemKind::LimitedHyper).unwrap().is_feasible());
        assert_eq!(random_specs(1, 4).unwrap().len(), 4);
    }
}
