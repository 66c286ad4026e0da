//! M-based packings through the packing matroid `M'_KT`.
//!
//! Edge and root sets of M-based packings are exactly the bases of `M'_KT`
//! of size `r(S)|V|`. The bounded solver intersects `M'_KT` with a uniform
//! matroid on edges plus a generalized partition matroid on tokens, and
//! [`decompose`] turns the resulting basis into explicit trees.

use std::sync::Arc;

use crate::bits::{ElementSet, VertexSet};
use crate::error::{Error, Result};
use crate::feasibility::{check, ProblemKind, ProblemSpec, Verdict};
use crate::instance::{RootMultiset, TokenId, VertexId};
use crate::kt::{r_prime_kt, KtContext, KtMatroid};
use crate::matroid::{
    direct_sum, free, matroid_intersection, uniform, DynMatroid, GenPartitionMatroid, GenPartitionSpec, Intersection, Memoized, RankOracle,
};
use crate::solvers::{hyper, spanning, Outcome, PackedEdge, Packing, Root, RootedForest};

/// Complete M-based packing: every token of `ctx` roots one tree.
pub fn mbased_pack(ctx: &KtContext) -> Result<Outcome<Packing>> {
    let spec = ProblemSpec::new(ctx.graph().clone(), ctx.roots().clone(), ctx.matroid().clone())?;
    if let Verdict::Violated(v) = check(&spec, ProblemKind::MBased)? {
        return Ok(Outcome::Infeasible(v));
    }
    let kt = KtMatroid::new(ctx.clone());
    let tokens = ctx.roots().all();
    let mut basis = kt.mixed(ElementSet::empty(), tokens);
    if !kt.is_independent(basis) {
        return Err(Error::Internal("root set is dependent in the packing matroid".into()));
    }
    for e in ctx.graph().edge_ids() {
        if basis.len() == ctx.basis_size() {
            break;
        }
        let grown = basis.with(e);
        if kt.is_independent(grown) {
            basis = grown;
        }
    }
    if basis.len() != ctx.basis_size() {
        return Err(Error::Internal(format!("greedy basis has {} elements, expected {}", basis.len(), ctx.basis_size())));
    }
    let (f, t) = kt.split(basis);
    decompose(ctx, f, t).map(Outcome::Solved)
}

/// M-based, `(f, g)`-bounded packing of exactly `k` trees.
pub fn pack_bounded_k(spec: &ProblemSpec) -> Result<Outcome<Packing>> {
    let spec = spec.normalized(ProblemKind::Bounded)?;
    if let Verdict::Violated(v) = check(&spec, ProblemKind::Bounded)? {
        return Ok(Outcome::Infeasible(v));
    }
    let k = spec.tree_count_required()?;
    let (ctx, kept) = reduced_context(&spec)?;
    let kt = KtMatroid::new(ctx.clone());
    let m = ctx.graph().edge_count();
    let edges = ElementSet::full(m);
    let edge_rank = ctx.basis_size().saturating_sub(k);
    let on_edges: DynMatroid = if edge_rank <= m { Arc::new(uniform(edges, edge_rank)?) } else { Arc::new(free(edges)) };
    let n = ctx.graph().vertex_count();
    let parts: Vec<ElementSet> = (0..n).map(|v| ctx.roots().tokens_at(v).shifted(m)).collect();
    let upper: Vec<usize> = (0..n).map(|v| spec.upper[v].cap(parts[v].len())).collect();
    let on_tokens = GenPartitionMatroid::new(GenPartitionSpec { parts, lower: spec.lower.clone(), upper, size: k })
        .map_err(|e| Error::Internal(format!("bound matroid rejected after a feasible check: {e}")))?;
    let m2 = direct_sum(on_edges, on_tokens)?;
    match matroid_intersection(&kt, &m2, ctx.basis_size())? {
        Intersection::Common(set) => {
            let (f, t) = kt.split(set);
            let packing = decompose(&ctx, f, t)?;
            Ok(Outcome::Solved(relabel_tokens(packing, &kept)))
        }
        Intersection::Deficient(z) => Err(Error::Internal(format!("no common basis after a feasible check; deficient set {z}"))),
    }
}

/// `(α, β)`-limited packing with the smallest feasible tree count.
pub fn pack_limited(spec: &ProblemSpec) -> Result<Outcome<Packing>> {
    let spec = spec.normalized(ProblemKind::Limited)?;
    if let Verdict::Violated(v) = check(&spec, ProblemKind::Limited)? {
        return Ok(Outcome::Infeasible(v));
    }
    for k in spec.min_total..=spec.max_total {
        let exact = spec.clone().with_tree_count(k).normalized(ProblemKind::Bounded)?;
        if check(&exact, ProblemKind::Bounded)?.is_feasible() {
            return pack_bounded_k(&exact);
        }
    }
    Err(Error::Internal(format!("no tree count in [{}, {}] is feasible after a feasible check", spec.min_total, spec.max_total)))
}

/// Runs the solver for `kind`. For [`ProblemKind::Augment`] the packing
/// lives in the instance extended by the added edges.
pub fn solve(spec: &ProblemSpec, kind: ProblemKind) -> Result<Outcome<Packing>> {
    match kind {
        ProblemKind::Spanning => spanning::pack_spanning_trees(&spec.instance, spec.tree_count_required()?),
        ProblemKind::MBased => {
            let ctx = KtContext::new(spec.instance.clone(), spec.roots.clone(), spec.matroid.clone())?;
            mbased_pack(&ctx)
        }
        ProblemKind::Bounded => pack_bounded_k(spec),
        ProblemKind::Limited => pack_limited(spec),
        ProblemKind::LimitedHyper => hyper::pack_limited_hyper(spec),
        ProblemKind::Augment => Ok(hyper::augment_hypergraph(spec)?.map(|a| a.packing)),
    }
}

/// Splits a basis `F ∪ T` of `M'_KT` into one tree per token of `T`.
///
/// Depth-first over edges in id order; each edge joins one tree, trees
/// already touching the edge are tried first. Every vertex must end up in
/// trees whose roots form a basis of `M`.
pub fn decompose(ctx: &KtContext, f: ElementSet, t: ElementSet) -> Result<Packing> {
    let r = r_prime_kt(ctx, f, t)?;
    let size = f.len() + t.len();
    if r != size || size != ctx.basis_size() {
        return Err(Error::Precondition(format!(
            "F ∪ T must be a basis of the packing matroid: |F ∪ T| = {size}, rank {r}, basis size {}",
            ctx.basis_size()
        )));
    }
    let g = ctx.graph();
    let n = g.vertex_count();
    let edges: Vec<(usize, VertexId, VertexId)> = f
        .iter()
        .map(|id| {
            let (u, v) = g.endpoints(id).expect("graph edge");
            (id, u, v)
        })
        .collect();
    let tokens: Vec<TokenId> = t.iter().collect();
    let roots: Vec<VertexId> = tokens.iter().map(|&x| ctx.roots().vertex_of(x)).collect();
    let mut incident_after = vec![vec![0usize; n]; edges.len() + 1];
    for j in (0..edges.len()).rev() {
        incident_after[j] = incident_after[j + 1].clone();
        incident_after[j][edges[j].1] += 1;
        incident_after[j][edges[j].2] += 1;
    }
    let mut through = vec![ElementSet::empty(); n];
    for (i, &v) in roots.iter().enumerate() {
        through[v].insert(tokens[i]);
    }
    let mut state = Decomposition {
        label: (0..tokens.len()).map(|_| (0..n).collect()).collect(),
        touched: roots.iter().map(|&v| VertexSet::singleton(v)).collect(),
        through,
        owner: vec![0; edges.len()],
    };
    let search = Decomposer {
        matroid: ctx.matroid().as_ref(),
        rank_s: ctx.rank_s(),
        edges: &edges,
        tokens: &tokens,
        incident_after: &incident_after,
    };
    if !search.run(&mut state, 0) {
        return Err(Error::Internal("decomposition search exhausted for a basis of the packing matroid".into()));
    }
    let members = (0..tokens.len())
        .map(|i| RootedForest {
            roots: vec![Root { vertex: roots[i], token: tokens[i] }],
            edges: edges
                .iter()
                .zip(&state.owner)
                .filter(|(_, &o)| o == i)
                .map(|(&(edge, u, v), _)| PackedEdge { edge, ends: (u, v) })
                .collect(),
        })
        .collect();
    Ok(Packing { members })
}

struct Decomposition {
    /// Per tree, a component label for every vertex.
    label: Vec<Vec<usize>>,
    touched: Vec<VertexSet>,
    /// Tokens of the trees through each vertex.
    through: Vec<ElementSet>,
    owner: Vec<usize>,
}

struct Decomposer<'a> {
    matroid: &'a dyn RankOracle,
    rank_s: usize,
    edges: &'a [(usize, VertexId, VertexId)],
    tokens: &'a [TokenId],
    incident_after: &'a [Vec<usize>],
}

impl Decomposer<'_> {
    fn components(st: &Decomposition, i: usize) -> usize {
        let mut labels: Vec<usize> = st.touched[i].iter().map(|v| st.label[i][v]).collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    fn hopeless(&self, st: &Decomposition, j: usize) -> bool {
        let left = self.edges.len() - j;
        let joins: usize = (0..self.tokens.len()).map(|i| Self::components(st, i) - 1).sum();
        joins > left || st.through.iter().enumerate().any(|(v, b)| self.rank_s - b.len() > self.incident_after[j][v])
    }

    fn run(&self, st: &mut Decomposition, j: usize) -> bool {
        if self.hopeless(st, j) {
            return false;
        }
        if j == self.edges.len() {
            return (0..self.tokens.len()).all(|i| Self::components(st, i) == 1) && st.through.iter().all(|b| b.len() == self.rank_s);
        }
        let (_, u, v) = self.edges[j];
        let (touching, apart): (Vec<usize>, Vec<usize>) =
            (0..self.tokens.len()).partition(|&i| st.touched[i].contains(u) || st.touched[i].contains(v));
        for i in touching.into_iter().chain(apart) {
            if st.label[i][u] == st.label[i][v] {
                continue;
            }
            let fresh: Vec<VertexId> = [u, v].into_iter().filter(|&w| !st.touched[i].contains(w)).collect();
            let token = self.tokens[i];
            if fresh.iter().any(|&w| st.through[w].len() >= self.rank_s || !self.matroid.is_independent(st.through[w].with(token))) {
                continue;
            }
            let saved = st.label[i].clone();
            let (from, to) = (st.label[i][u], st.label[i][v]);
            for l in st.label[i].iter_mut() {
                if *l == from {
                    *l = to;
                }
            }
            for &w in &fresh {
                st.touched[i].insert(w);
                st.through[w].insert(token);
            }
            st.owner[j] = i;
            if self.run(st, j + 1) {
                return true;
            }
            for &w in &fresh {
                st.touched[i].remove(w);
                st.through[w].remove(token);
            }
            st.label[i] = saved;
        }
        false
    }
}

/// Context on a maximal `S* ⊆ S` with every `S*_v` independent, plus the
/// original id of each kept token.
fn reduced_context(spec: &ProblemSpec) -> Result<(KtContext, Vec<TokenId>)> {
    let n = spec.vertex_count();
    let mut kept: Vec<TokenId> = Vec::new();
    for v in 0..n {
        let mut at = ElementSet::empty();
        for x in spec.roots.tokens_at(v) {
            if spec.matroid.is_independent(at.with(x)) {
                at.insert(x);
            }
        }
        kept.extend(at.iter());
    }
    kept.sort_unstable();
    let placements: Vec<VertexId> = kept.iter().map(|&x| spec.roots.vertex_of(x)).collect();
    let roots = RootMultiset::new(n, placements)?;
    let matroid: DynMatroid = Arc::new(Memoized::new(Reindexed { inner: spec.matroid.clone(), map: kept.clone() }));
    Ok((KtContext::new(spec.instance.clone(), roots, matroid)?, kept))
}

/// `M|_{S*}` with its elements renumbered `0..|S*|`.
struct Reindexed {
    inner: DynMatroid,
    map: Vec<TokenId>,
}

impl RankOracle for Reindexed {
    fn ground(&self) -> ElementSet {
        ElementSet::full(self.map.len())
    }

    fn rank(&self, set: ElementSet) -> usize {
        self.inner.rank((set & self.ground()).iter().map(|i| self.map[i]).collect())
    }
}

fn relabel_tokens(mut packing: Packing, kept: &[TokenId]) -> Packing {
    for m in &mut packing.members {
        for r in &mut m.roots {
            r.token = kept[r.token];
        }
    }
    packing
}
