//! Problem specifications, the partition functions `p1`/`p2`, and the
//! feasibility condition bundle of every packing characterization.
//!
//! ```text
//! p1(P) = -g(V) + Σ_{X∈P} max_{Y⊆X} ( r(S) + g(Y) - r(S_Y) )
//! p2(P) = -β    + Σ_{X∈P} max_{Y⊆X} ( r(S) + f(Y) - r(S_Y) )
//! ```
//!
//! [`check`] evaluates the conditions of one [`ProblemKind`] in a fixed order
//! and returns the first failing condition as a [`Violation`]. For a
//! partition-quantified condition the witness is the partition of largest
//! deficit, earliest in restricted-growth order among ties.

use std::fmt;
use std::sync::Arc;

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::instance::{Hypergraph, RootMultiset, VertexId};
use crate::limits::{self, PARTITION_VERTEX_CAP, SUBSET_SCAN_CAP};
use crate::matroid::{free, DynMatroid, RankOracle};
use crate::partition::Partition;
use crate::scan;

/// A per-vertex upper bound that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Finite(usize),
    Infinite,
}

impl Bound {
    pub fn finite(self) -> Option<usize> {
        match self {
            Bound::Finite(b) => Some(b),
            Bound::Infinite => None,
        }
    }

    /// `min(self, x)`.
    pub fn cap(self, x: usize) -> usize {
        match self {
            Bound::Finite(b) => b.min(x),
            Bound::Infinite => x,
        }
    }

    pub fn admits(self, x: usize) -> bool {
        match self {
            Bound::Finite(b) => x <= b,
            Bound::Infinite => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(b) => write!(f, "{b}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

/// Which packing problem is asked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    /// `k` edge-disjoint spanning trees.
    Spanning,
    /// Complete M-based packing: every root token used.
    MBased,
    /// M-based, `(f, g)`-bounded, exactly `k` trees.
    Bounded,
    /// M-based, `(f, g)`-bounded, between `α` and `β` trees.
    Limited,
    /// As `Limited`, on a hypergraph.
    LimitedHyper,
    /// As `LimitedHyper` after adding `γ` graph edges.
    Augment,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] = [
        ProblemKind::Spanning,
        ProblemKind::MBased,
        ProblemKind::Bounded,
        ProblemKind::Limited,
        ProblemKind::LimitedHyper,
        ProblemKind::Augment,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Spanning => "spanning",
            ProblemKind::MBased => "mbased",
            ProblemKind::Bounded => "bounded",
            ProblemKind::Limited => "limited",
            ProblemKind::LimitedHyper => "limited-hyper",
            ProblemKind::Augment => "augment",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Kinds whose characterization holds for graphs only.
    pub fn needs_graph(self) -> bool {
        matches!(self, ProblemKind::Spanning | ProblemKind::MBased | ProblemKind::Bounded | ProblemKind::Limited)
    }

    /// The conditions [`check`] evaluates, in order.
    pub fn conditions(self) -> &'static [Condition] {
        use Condition::*;
        match self {
            ProblemKind::Spanning => &[SpanningCut],
            ProblemKind::MBased => &[RootsIndependent, KtCut],
            ProblemKind::Bounded => &[LowerWithinCaps, CountWithinCaps, UpperCut, CountCut],
            ProblemKind::Limited | ProblemKind::LimitedHyper => &[LowerWithinCaps, AlphaBelowBeta, AlphaWithinCaps, UpperCut, BetaCut],
            ProblemKind::Augment => &[LowerWithinCaps, AlphaBelowBeta, AlphaWithinCaps, RootDeficitBound, AugmentUpperCut, AugmentBetaCut],
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything a packing question is asked about.
///
/// Root tokens are the ground set `0..|S|` of `matroid`. Defaults:
/// `f ≡ 0`, `g ≡ ∞`, `α = 0`, `β = |S|`, no `k`, no `γ`.
#[derive(Clone)]
pub struct ProblemSpec {
    pub instance: Hypergraph,
    pub roots: RootMultiset,
    pub matroid: DynMatroid,
    /// `f`.
    pub lower: Vec<usize>,
    /// `g`.
    pub upper: Vec<Bound>,
    /// `α`.
    pub min_total: usize,
    /// `β`.
    pub max_total: usize,
    /// `k`.
    pub tree_count: Option<usize>,
    /// `γ`.
    pub budget: Option<usize>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("instance", &self.instance)
            .field("roots", &self.roots)
            .field("matroid_rank", &self.matroid.full_rank())
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .field("min_total", &self.min_total)
            .field("max_total", &self.max_total)
            .field("tree_count", &self.tree_count)
            .field("budget", &self.budget)
            .finish()
    }
}

impl ProblemSpec {
    pub fn new(instance: Hypergraph, roots: RootMultiset, matroid: DynMatroid) -> Result<Self> {
        let n = instance.vertex_count();
        if let Some(&vertex) = roots.placements().iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        if matroid.ground() != roots.all() {
            return Err(Error::RootMatroidMismatch { tokens: roots.len() });
        }
        let max_total = roots.len();
        Ok(Self {
            instance,
            roots,
            matroid,
            lower: vec![0; n],
            upper: vec![Bound::Infinite; n],
            min_total: 0,
            max_total,
            tree_count: None,
            budget: None,
        })
    }

    /// `k` spanning trees: `k` tokens at vertex 0, free matroid, `α = β = k`.
    pub fn spanning(graph: Hypergraph, k: usize) -> Result<Self> {
        if graph.vertex_count() == 0 {
            return Err(Error::EmptySet);
        }
        let roots = RootMultiset::repeated(graph.vertex_count(), 0, k)?;
        let matroid: DynMatroid = Arc::new(free(roots.all()));
        Ok(Self::new(graph, roots, matroid)?.with_limits(k, k).with_tree_count(k))
    }

    pub fn with_bounds(mut self, lower: Vec<usize>, upper: Vec<Bound>) -> Result<Self> {
        let n = self.instance.vertex_count();
        for got in [lower.len(), upper.len()] {
            if got != n {
                return Err(Error::BoundLength { got, expected: n });
            }
        }
        self.lower = lower;
        self.upper = upper;
        Ok(self)
    }

    pub fn with_limits(mut self, min_total: usize, max_total: usize) -> Self {
        self.min_total = min_total;
        self.max_total = max_total;
        self
    }

    pub fn with_tree_count(mut self, k: usize) -> Self {
        self.tree_count = Some(k);
        self
    }

    pub fn with_budget(mut self, gamma: usize) -> Self {
        self.budget = Some(gamma);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.instance.vertex_count()
    }

    pub fn tree_count_required(&self) -> Result<usize> {
        self.tree_count.ok_or(Error::MissingParameter("k"))
    }

    pub fn budget_required(&self) -> Result<usize> {
        self.budget.ok_or(Error::MissingParameter("gamma"))
    }

    /// The same question with every requirement made explicit in the fields,
    /// so that a packing answers `kind` iff it respects `f`, `g`, `α`, `β`
    /// (and `k` when set) of the returned spec.
    pub fn normalized(&self, kind: ProblemKind) -> Result<ProblemSpec> {
        let n = self.vertex_count();
        match kind {
            ProblemKind::Spanning => ProblemSpec::spanning(self.instance.clone(), self.tree_count_required()?),
            ProblemKind::MBased => {
                let s = self.roots.len();
                Ok(self.clone().with_bounds(vec![0; n], vec![Bound::Infinite; n])?.with_limits(s, s).with_tree_count(s))
            }
            ProblemKind::Bounded => {
                let k = self.tree_count_required()?;
                Ok(self.clone().with_limits(k, k))
            }
            ProblemKind::Limited | ProblemKind::LimitedHyper | ProblemKind::Augment => Ok(ProblemSpec { tree_count: None, ..self.clone() }),
        }
    }

    fn check_shape(&self, kind: ProblemKind) -> Result<()> {
        let n = self.vertex_count();
        for got in [self.lower.len(), self.upper.len()] {
            if got != n {
                return Err(Error::BoundLength { got, expected: n });
            }
        }
        if kind.needs_graph() {
            self.instance.ensure_graph()?;
        }
        match kind {
            ProblemKind::Spanning | ProblemKind::Bounded => {
                self.tree_count_required()?;
            }
            ProblemKind::Augment => {
                self.budget_required()?;
            }
            _ => {}
        }
        limits::ensure("vertex count for partition enumeration", n, PARTITION_VERTEX_CAP)
    }
}

/// The numbered feasibility conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    /// `e(P) ≥ k(|P| - 1)`.
    SpanningCut,
    /// `S_v` independent in `M`.
    RootsIndependent,
    /// `e(P) ≥ Σ_X (r(S) - r(S_X))`.
    KtCut,
    /// `f(v) ≤ min(r(S_v), g(v))`.
    LowerWithinCaps,
    /// `k ≤ Σ_v min(r(S_v), g(v))`.
    CountWithinCaps,
    /// `e(P) ≥ p1(P)`.
    UpperCut,
    /// `e(P) ≥ p2(P)` with `β = k`.
    CountCut,
    /// `α ≤ β`.
    AlphaBelowBeta,
    /// `α ≤ Σ_v min(r(S_v), g(v))`.
    AlphaWithinCaps,
    /// `e(P) ≥ p2(P)`.
    BetaCut,
    /// `r(S) - r(S_Y) ≤ min(β - f(Y), g(V \ Y))`.
    RootDeficitBound,
    /// `γ + e(P) ≥ p1(P)`.
    AugmentUpperCut,
    /// `γ + e(P) ≥ p2(P)`.
    AugmentBetaCut,
    /// `e(P) ≥ max(p1(P), p2(P))` for caller-supplied functions.
    TrimCover,
    /// `max(p1({V}), p2({V})) ≤ 0` for caller-supplied functions.
    CoverRoot,
    /// `γ ≥ max(p1(P), p2(P))` for caller-supplied functions.
    CoverBudget,
}

impl Condition {
    /// Whether adding edges can repair a violation of this condition.
    pub fn depends_on_budget(self) -> bool {
        matches!(self, Condition::AugmentUpperCut | Condition::AugmentBetaCut)
    }

    pub fn name(self) -> &'static str {
        use Condition::*;
        match self {
            SpanningCut => "spanning-cut",
            RootsIndependent => "roots-independent",
            KtCut => "kt-cut",
            LowerWithinCaps => "lower-within-caps",
            CountWithinCaps => "count-within-caps",
            UpperCut => "upper-cut",
            CountCut => "count-cut",
            AlphaBelowBeta => "alpha-below-beta",
            AlphaWithinCaps => "alpha-within-caps",
            BetaCut => "beta-cut",
            RootDeficitBound => "root-deficit-bound",
            AugmentUpperCut => "augment-upper-cut",
            AugmentBetaCut => "augment-beta-cut",
            TrimCover => "trim-cover",
            CoverRoot => "cover-root",
            CoverBudget => "cover-budget",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        use Condition::*;
        [
            SpanningCut,
            RootsIndependent,
            KtCut,
            LowerWithinCaps,
            CountWithinCaps,
            UpperCut,
            CountCut,
            AlphaBelowBeta,
            AlphaWithinCaps,
            BetaCut,
            RootDeficitBound,
            AugmentUpperCut,
            AugmentBetaCut,
            TrimCover,
            CoverRoot,
            CoverBudget,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }

    /// The inequality in words, for reports.
    pub fn statement(self) -> &'static str {
        use Condition::*;
        match self {
            SpanningCut => "e(P) >= k(|P|-1)",
            RootsIndependent => "S_v independent in M",
            KtCut => "e(P) >= sum_X (r(S) - r(S_X))",
            LowerWithinCaps => "f(v) <= min(r(S_v), g(v))",
            CountWithinCaps => "k <= sum_v min(r(S_v), g(v))",
            UpperCut => "e(P) >= p1(P)",
            CountCut => "e(P) >= p2(P) with beta = k",
            AlphaBelowBeta => "alpha <= beta",
            AlphaWithinCaps => "alpha <= sum_v min(r(S_v), g(v))",
            BetaCut => "e(P) >= p2(P)",
            RootDeficitBound => "r(S) - r(S_Y) <= min(beta - f(Y), g(V-Y))",
            AugmentUpperCut => "gamma + e(P) >= p1(P)",
            AugmentBetaCut => "gamma + e(P) >= p2(P)",
            TrimCover => "e(P) >= max(p1(P), p2(P))",
            CoverRoot => "max(p1({V}), p2({V})) <= 0",
            CoverBudget => "gamma >= max(p1(P), p2(P))",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Global,
    Vertex(VertexId),
    Subset(VertexSet),
    Partition(Partition),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Global => write!(f, "global"),
            Witness::Vertex(v) => write!(f, "vertex {v}"),
            Witness::Subset(y) => write!(f, "subset {y}"),
            Witness::Partition(p) => write!(f, "partition {p}"),
        }
    }
}

/// A failed condition with its witness and the (positive) amount by which it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Witness,
    pub deficit: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {} by {}", self.condition, self.witness, self.deficit)
    }
}

impl Violation {
    /// Recompute the deficit of `condition` at `witness` from scratch.
    ///
    /// Conditions on caller-supplied partition functions cannot be
    /// recomputed from a spec and are rejected.
    pub fn reverify(&self, spec: &ProblemSpec) -> Result<i64> {
        let ev = Evaluator::new(spec)?;
        let mismatch = || Error::Precondition(format!("witness {} does not fit condition {}", self.witness, self.condition));
        use Condition::*;
        match (&self.witness, self.condition) {
            (Witness::Vertex(v), RootsIndependent) => {
                let t = spec.roots.tokens_at(*v);
                Ok((t.len() - spec.matroid.rank(t)) as i64)
            }
            (Witness::Vertex(v), LowerWithinCaps) => Ok(ev.lower_gap(*v)),
            (Witness::Global, CountWithinCaps) => Ok(spec.tree_count_required()? as i64 - ev.cap_sum()),
            (Witness::Global, AlphaBelowBeta) => Ok(spec.min_total as i64 - spec.max_total as i64),
            (Witness::Global, AlphaWithinCaps) => Ok(spec.min_total as i64 - ev.cap_sum()),
            (Witness::Subset(y), RootDeficitBound) => Ok(ev.root_deficit_gap(*y)),
            (Witness::Partition(p), c) => {
                if p.ground_size() != spec.vertex_count() {
                    return Err(mismatch());
                }
                match c {
                    SpanningCut => Ok(spanning_gap(spec, spec.tree_count_required()?, p)),
                    KtCut => Ok(ev.kt_gap(p)),
                    UpperCut => Ok(ev.p1(p) - ev.e(p)),
                    CountCut => Ok(ev.p2_with(spec.tree_count_required()?, p) - ev.e(p)),
                    BetaCut => Ok(ev.p2(p) - ev.e(p)),
                    AugmentUpperCut => Ok(ev.p1(p) - ev.e(p) - spec.budget_required()? as i64),
                    AugmentBetaCut => Ok(ev.p2(p) - ev.e(p) - spec.budget_required()? as i64),
                    _ => Err(mismatch()),
                }
            }
            _ => Err(mismatch()),
        }
    }
}

/// Result of [`check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Violated(Violation),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Feasible => None,
            Verdict::Violated(v) => Some(v),
        }
    }
}

/// Which bound enters the inner maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `r(S) + g(Y) - r(S_Y)`.
    Upper,
    /// `r(S) + f(Y) - r(S_Y)`.
    Lower,
}

/// Stand-in for `g(v) = ∞`: larger than any value a finite bound can matter at.
pub fn infinity_sentinel(spec: &ProblemSpec) -> i64 {
    (spec.matroid.rank(spec.roots.all()) * spec.vertex_count()) as i64 + 1
}

fn bound_value(b: Bound, sentinel: i64) -> i64 {
    match b {
        Bound::Finite(x) => x as i64,
        Bound::Infinite => sentinel,
    }
}

/// `max_{Y ⊆ X} (r(S) + h(Y) - r(S_Y))` by scanning every `Y`, with the
/// lexicographically smallest maximizer.
pub fn inner_max(x: VertexSet, spec: &ProblemSpec, mode: Mode) -> Result<(i64, VertexSet)> {
    limits::ensure("block size for subset scan", x.len(), SUBSET_SCAN_CAP)?;
    let sentinel = infinity_sentinel(spec);
    let rank_s = spec.matroid.rank(spec.roots.all()) as i64;
    let mut best: Option<(i64, VertexSet)> = None;
    for y in x.subsets() {
        let h: i64 = y
            .iter()
            .map(|v| match mode {
                Mode::Upper => bound_value(spec.upper[v], sentinel),
                Mode::Lower => spec.lower[v] as i64,
            })
            .sum();
        let value = rank_s + h - spec.matroid.rank(spec.roots.tokens_in(y)) as i64;
        let better = match best {
            None => true,
            Some((b, by)) => value > b || (value == b && y < by),
        };
        if better {
            best = Some((value, y));
        }
    }
    Ok(best.expect("the empty set is always a candidate"))
}

/// `p1(P)`.
pub fn eval_p1(p: &Partition, spec: &ProblemSpec) -> Result<i64> {
    let sentinel = infinity_sentinel(spec);
    let mut total = -(spec.upper.iter().map(|&b| bound_value(b, sentinel)).sum::<i64>());
    for &x in p.blocks() {
        total += inner_max(x, spec, Mode::Upper)?.0;
    }
    Ok(total)
}

/// `p2(P)`.
pub fn eval_p2(p: &Partition, spec: &ProblemSpec) -> Result<i64> {
    let mut total = -(spec.max_total as i64);
    for &x in p.blocks() {
        total += inner_max(x, spec, Mode::Lower)?.0;
    }
    Ok(total)
}

/// Tables over all `Y ⊆ V` that make `p1`, `p2` and the cut conditions O(|P|).
#[derive(Clone, Debug)]
pub struct Evaluator {
    n: usize,
    instance: Hypergraph,
    rank_s: i64,
    /// `r(S_Y)`.
    rank_at: Vec<i64>,
    /// `max_{Y⊆X} (r(S) + g(Y) - r(S_Y))`.
    inner_upper: Vec<i64>,
    /// `max_{Y⊆X} (r(S) + f(Y) - r(S_Y))`.
    inner_lower: Vec<i64>,
    upper_sum: Vec<i64>,
    lower_sum: Vec<i64>,
    g_total: i64,
    beta: i64,
    cap_sum: i64,
    lower_gaps: Vec<i64>,
}

impl Evaluator {
    pub fn new(spec: &ProblemSpec) -> Result<Self> {
        let n = spec.vertex_count();
        limits::ensure("vertex count for subset tables", n, SUBSET_SCAN_CAP)?;
        for got in [spec.lower.len(), spec.upper.len()] {
            if got != n {
                return Err(Error::BoundLength { got, expected: n });
            }
        }
        let sentinel = infinity_sentinel(spec);
        let rank_s = spec.matroid.rank(spec.roots.all()) as i64;
        let tokens = spec.roots.tokens_by_subset(n);
        let size = 1usize << n;
        let rank_at: Vec<i64> = tokens.iter().map(|&t| spec.matroid.rank(t) as i64).collect();
        let g: Vec<i64> = spec.upper.iter().map(|&b| bound_value(b, sentinel)).collect();
        let f: Vec<i64> = spec.lower.iter().map(|&x| x as i64).collect();
        let mut upper_sum = vec![0i64; size];
        let mut lower_sum = vec![0i64; size];
        for y in 1..size {
            let low = y.trailing_zeros() as usize;
            upper_sum[y] = upper_sum[y & (y - 1)] + g[low];
            lower_sum[y] = lower_sum[y & (y - 1)] + f[low];
        }
        let inner = |h: &[i64]| {
            let mut table: Vec<i64> = (0..size).map(|y| rank_s + h[y] - rank_at[y]).collect();
            for x in 1..size {
                let mut rest = x;
                while rest != 0 {
                    let low = rest & rest.wrapping_neg();
                    table[x] = table[x].max(table[x ^ low]);
                    rest ^= low;
                }
            }
            table
        };
        let inner_upper = inner(&upper_sum);
        let inner_lower = inner(&lower_sum);
        let caps: Vec<i64> = (0..n).map(|v| rank_at[1 << v].min(g[v])).collect();
        let lower_gaps = (0..n).map(|v| f[v] - caps[v]).collect();
        Ok(Self {
            n,
            instance: spec.instance.clone(),
            rank_s,
            g_total: upper_sum[size - 1],
            beta: spec.max_total as i64,
            cap_sum: caps.iter().sum(),
            rank_at,
            inner_upper,
            inner_lower,
            upper_sum,
            lower_sum,
            lower_gaps,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `e(P)` in the problem hypergraph.
    pub fn e(&self, p: &Partition) -> i64 {
        self.instance.crossing_count(p) as i64
    }

    pub fn p1(&self, p: &Partition) -> i64 {
        -self.g_total + p.blocks().iter().map(|x| self.inner_upper[x.bits() as usize]).sum::<i64>()
    }

    pub fn p2(&self, p: &Partition) -> i64 {
        self.p2_with(self.beta as usize, p)
    }

    /// `p2` with `β` replaced by `beta`.
    pub fn p2_with(&self, beta: usize, p: &Partition) -> i64 {
        -(beta as i64) + p.blocks().iter().map(|x| self.inner_lower[x.bits() as usize]).sum::<i64>()
    }

    /// `Σ_X (r(S) - r(S_X)) - e(P)`.
    pub fn kt_gap(&self, p: &Partition) -> i64 {
        p.blocks().iter().map(|x| self.rank_s - self.rank_at[x.bits() as usize]).sum::<i64>() - self.e(p)
    }

    /// `f(v) - min(r(S_v), g(v))`.
    pub fn lower_gap(&self, v: VertexId) -> i64 {
        self.lower_gaps[v]
    }

    /// `Σ_v min(r(S_v), g(v))`.
    pub fn cap_sum(&self) -> i64 {
        self.cap_sum
    }

    /// `r(S) - r(S_Y) - min(β - f(Y), g(V \ Y))`.
    pub fn root_deficit_gap(&self, y: VertexSet) -> i64 {
        let y = y.bits() as usize;
        let complement = (1usize << self.n) - 1 - y;
        let room = (self.beta - self.lower_sum[y]).min(self.upper_sum[complement]);
        self.rank_s - self.rank_at[y] - room
    }
}

fn spanning_gap(spec: &ProblemSpec, k: usize, p: &Partition) -> i64 {
    (k * (p.len().saturating_sub(1))) as i64 - spec.instance.crossing_count(p) as i64
}

/// Evaluate the conditions of `kind` in order; the first failure is returned.
pub fn check(spec: &ProblemSpec, kind: ProblemKind) -> Result<Verdict> {
    spec.check_shape(kind)?;
    let ev = Evaluator::new(spec)?;
    for &condition in kind.conditions() {
        if let Some(v) = check_condition(spec, &ev, condition)? {
            return Ok(Verdict::Violated(v));
        }
    }
    Ok(Verdict::Feasible)
}

fn global(condition: Condition, deficit: i64) -> Option<Violation> {
    (deficit > 0).then_some(Violation { condition, witness: Witness::Global, deficit })
}

fn worst_partition<F>(n: usize, condition: Condition, gap: F) -> Result<Option<Violation>>
where
    F: Fn(&Partition) -> i64 + Sync,
{
    let (p, deficit) = scan::argmax(n, gap)?;
    Ok((deficit > 0).then_some(Violation { condition, witness: Witness::Partition(p), deficit }))
}

fn check_condition(spec: &ProblemSpec, ev: &Evaluator, condition: Condition) -> Result<Option<Violation>> {
    use Condition::*;
    let n = spec.vertex_count();
    match condition {
        RootsIndependent => Ok((0..n).find_map(|v| {
            let t = spec.roots.tokens_at(v);
            let deficit = (t.len() - spec.matroid.rank(t)) as i64;
            (deficit > 0).then_some(Violation { condition, witness: Witness::Vertex(v), deficit })
        })),
        LowerWithinCaps => Ok((0..n).find_map(|v| {
            let deficit = ev.lower_gap(v);
            (deficit > 0).then_some(Violation { condition, witness: Witness::Vertex(v), deficit })
        })),
        CountWithinCaps => Ok(global(condition, spec.tree_count_required()? as i64 - ev.cap_sum())),
        AlphaBelowBeta => Ok(global(condition, spec.min_total as i64 - spec.max_total as i64)),
        AlphaWithinCaps => Ok(global(condition, spec.min_total as i64 - ev.cap_sum())),
        RootDeficitBound => {
            let mut worst: Option<Violation> = None;
            for y in VertexSet::full(n).subsets() {
                let deficit = ev.root_deficit_gap(y);
                if deficit > 0 && worst.as_ref().is_none_or(|w| deficit > w.deficit) {
                    worst = Some(Violation { condition, witness: Witness::Subset(y), deficit });
                }
            }
            Ok(worst)
        }
        SpanningCut => {
            let k = spec.tree_count_required()?;
            worst_partition(n, condition, |p| spanning_gap(spec, k, p))
        }
        KtCut => worst_partition(n, condition, |p| ev.kt_gap(p)),
        UpperCut => worst_partition(n, condition, |p| ev.p1(p) - ev.e(p)),
        CountCut => {
            let k = spec.tree_count_required()?;
            worst_partition(n, condition, |p| ev.p2_with(k, p) - ev.e(p))
        }
        BetaCut => worst_partition(n, condition, |p| ev.p2(p) - ev.e(p)),
        AugmentUpperCut => {
            let gamma = spec.budget_required()? as i64;
            worst_partition(n, condition, |p| ev.p1(p) - ev.e(p) - gamma)
        }
        AugmentBetaCut => {
            let gamma = spec.budget_required()? as i64;
            worst_partition(n, condition, |p| ev.p2(p) - ev.e(p) - gamma)
        }
        TrimCover | CoverRoot | CoverBudget => {
            Err(Error::Precondition(format!("{condition} is checked by the solver that owns its partition functions")))
        }
    }
}
