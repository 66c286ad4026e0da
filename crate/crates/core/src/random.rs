//! Seeded instance generators for property tests and the `verify --random` runner.
//!
//! Every generator draws from one `ChaCha8Rng`, so a seed reproduces the whole
//! stream of instances on any platform.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{ElementSet, VertexSet};
use crate::error::Result;
use crate::feasibility::{Bound, ProblemSpec};
use crate::instance::{Hypergraph, RootMultiset, VertexId};
use crate::kt::KtContext;
use crate::matroid::{direct_sum, free, uniform, DynMatroid};

/// Size limits for [`Generator::spec`]. Edges are drawn with sizes in
/// `2..=max_edge_size`; size 2 only gives a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecShape {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_edge_size: usize,
    pub max_tokens: usize,
    /// Largest finite `f(v)`, `g(v)`.
    pub max_bound: usize,
    /// Largest `α`, `β` and `k`.
    pub max_total: usize,
}

#[derive(Clone, Debug)]
pub struct Generator {
    seed: u64,
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Self { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// `m` edges, each a uniformly random pair of distinct vertices. `n ≥ 2`.
    pub fn graph(&mut self, n: usize, m: usize) -> Result<Hypergraph> {
        let pairs: Vec<(VertexId, VertexId)> = (0..m).map(|_| self.pair(n)).collect();
        Hypergraph::graph(n, &pairs)
    }

    /// `m` hyperedges with sizes uniform in `2..=min(max_size, n)`. `n ≥ 2`.
    pub fn hypergraph(&mut self, n: usize, m: usize, max_size: usize) -> Result<Hypergraph> {
        let top = max_size.clamp(2, n);
        let edges: Vec<VertexSet> = (0..m)
            .map(|_| {
                let size = self.rng.gen_range(2..=top);
                let mut vertices: Vec<VertexId> = (0..n).collect();
                vertices.shuffle(&mut self.rng);
                vertices[..size].iter().copied().collect()
            })
            .collect();
        Hypergraph::from_sets(n, edges)
    }

    fn pair(&mut self, n: usize) -> (VertexId, VertexId) {
        let u = self.rng.gen_range(0..n);
        let v = (u + self.rng.gen_range(1..n)) % n;
        (u.min(v), u.max(v))
    }

    /// `s` tokens on uniformly random vertices.
    pub fn roots(&mut self, n: usize, s: usize) -> Result<RootMultiset> {
        RootMultiset::new(n, (0..s).map(|_| self.rng.gen_range(0..n)).collect())
    }

    /// Free, uniform, or a two-part partition matroid of uniforms on `ground = 0..s`.
    pub fn matroid(&mut self, s: usize) -> Result<DynMatroid> {
        let ground = ElementSet::full(s);
        Ok(match self.rng.gen_range(0..3) {
            0 => Arc::new(free(ground)),
            1 => Arc::new(uniform(ground, self.rng.gen_range(0..=s))?),
            _ => {
                let cut = self.rng.gen_range(0..=s);
                let left = ElementSet::full(cut);
                let right = ground - left;
                let a = uniform(left, self.rng.gen_range(0..=cut))?;
                let b = uniform(right, self.rng.gen_range(0..=s - cut))?;
                Arc::new(direct_sum(a, b)?)
            }
        })
    }

    /// Graph on `2..=max_n` vertices with up to `max_m` edges and up to `max_s` tokens.
    pub fn kt_context(&mut self, max_n: usize, max_m: usize, max_s: usize) -> Result<KtContext> {
        let n = self.rng.gen_range(2..=max_n.max(2));
        let m = self.rng.gen_range(0..=max_m);
        let s = self.rng.gen_range(0..=max_s);
        let graph = self.graph(n, m)?;
        let roots = self.roots(n, s)?;
        let matroid = self.matroid(s)?;
        KtContext::new(graph, roots, matroid)
    }

    /// A spec with random bounds, limits and tree count; no budget.
    pub fn spec(&mut self, shape: SpecShape) -> Result<ProblemSpec> {
        let n = self.rng.gen_range(2..=shape.max_vertices.max(2));
        let m = self.rng.gen_range(0..=shape.max_edges);
        let s = self.rng.gen_range(0..=shape.max_tokens);
        let instance = if shape.max_edge_size <= 2 { self.graph(n, m)? } else { self.hypergraph(n, m, shape.max_edge_size)? };
        let roots = self.roots(n, s)?;
        let matroid = self.matroid(s)?;
        let lower: Vec<usize> = (0..n).map(|_| if self.rng.gen_bool(0.6) { 0 } else { self.rng.gen_range(0..=shape.max_bound) }).collect();
        let upper: Vec<Bound> = lower
            .iter()
            .map(|&f| if self.rng.gen_bool(0.4) { Bound::Infinite } else { Bound::Finite(self.rng.gen_range(f..=shape.max_bound.max(f))) })
            .collect();
        let alpha = self.rng.gen_range(0..=shape.max_total);
        let beta = self.rng.gen_range(alpha..=shape.max_total.max(alpha));
        let k = self.rng.gen_range(alpha..=beta);
        Ok(ProblemSpec::new(instance, roots, matroid)?.with_bounds(lower, upper)?.with_limits(alpha, beta).with_tree_count(k))
    }
}
