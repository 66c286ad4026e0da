//! Matroids given by rank oracles.
//!
//! Every construction (free, uniform, restriction, contraction, direct sum,
//! generalized partition, explicit table, and the packing matroid in
//! [`crate::kt`]) exposes the same [`RankOracle`] interface over element ids
//! `0..64`. A matroid's ground set need not start at zero, which lets direct
//! sums place components side by side.

mod gen_partition;
mod intersection;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::bits::ElementSet;
use crate::error::{Error, Result};

pub use gen_partition::{GenPartitionError, GenPartitionMatroid, GenPartitionSpec};
pub use intersection::{matroid_intersection, Intersection};

/// A matroid `(ground, rank)`.
///
/// `rank` is only meaningful on subsets of `ground`; implementations
/// intersect their argument with the ground set.
pub trait RankOracle: Send + Sync {
    fn ground(&self) -> ElementSet;

    fn rank(&self, set: ElementSet) -> usize;

    fn is_independent(&self, set: ElementSet) -> bool {
        set.is_subset(self.ground()) && self.rank(set) == set.len()
    }

    /// Rank of the whole ground set.
    fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }
}

impl<M: RankOracle + ?Sized> RankOracle for &M {
    fn ground(&self) -> ElementSet {
        (**self).ground()
    }
    fn rank(&self, set: ElementSet) -> usize {
        (**self).rank(set)
    }
}

impl<M: RankOracle + ?Sized> RankOracle for Arc<M> {
    fn ground(&self) -> ElementSet {
        (**self).ground()
    }
    fn rank(&self, set: ElementSet) -> usize {
        (**self).rank(set)
    }
}

impl<M: RankOracle + ?Sized> RankOracle for Box<M> {
    fn ground(&self) -> ElementSet {
        (**self).ground()
    }
    fn rank(&self, set: ElementSet) -> usize {
        (**self).rank(set)
    }
}

/// Shared handle used wherever the concrete matroid type is chosen at runtime.
pub type DynMatroid = Arc<dyn RankOracle>;

/// `rank(X) = |X|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeMatroid {
    ground: ElementSet,
}

pub fn free(ground: ElementSet) -> FreeMatroid {
    FreeMatroid { ground }
}

impl RankOracle for FreeMatroid {
    fn ground(&self) -> ElementSet {
        self.ground
    }
    fn rank(&self, set: ElementSet) -> usize {
        (set & self.ground).len()
    }
}

/// `rank(X) = min(|X|, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniformMatroid {
    ground: ElementSet,
    k: usize,
}

pub fn uniform(ground: ElementSet, k: usize) -> Result<UniformMatroid> {
    if k > ground.len() {
        return Err(Error::UniformRankTooLarge { rank: k, ground: ground.len() });
    }
    Ok(UniformMatroid { ground, k })
}

impl RankOracle for UniformMatroid {
    fn ground(&self) -> ElementSet {
        self.ground
    }
    fn rank(&self, set: ElementSet) -> usize {
        (set & self.ground).len().min(self.k)
    }
}

/// `M|_T`: same rank function, ground set cut down to `T`.
#[derive(Clone, Debug)]
pub struct Restriction<M> {
    inner: M,
    ground: ElementSet,
}

pub fn restrict<M: RankOracle>(inner: M, t: ElementSet) -> Result<Restriction<M>> {
    if !t.is_subset(inner.ground()) {
        return Err(Error::OutsideGround(t.to_string()));
    }
    Ok(Restriction { inner, ground: t })
}

impl<M: RankOracle> RankOracle for Restriction<M> {
    fn ground(&self) -> ElementSet {
        self.ground
    }
    fn rank(&self, set: ElementSet) -> usize {
        self.inner.rank(set & self.ground)
    }
}

/// `M/X` for independent `X`: `rank(Z) = r(X ∪ Z) - |X|` on `S \ X`.
#[derive(Clone, Debug)]
pub struct Contraction<M> {
    inner: M,
    contracted: ElementSet,
}

pub fn contract<M: RankOracle>(inner: M, x: ElementSet) -> Result<Contraction<M>> {
    if !x.is_subset(inner.ground()) {
        return Err(Error::OutsideGround(x.to_string()));
    }
    if !inner.is_independent(x) {
        return Err(Error::DependentContraction);
    }
    Ok(Contraction { inner, contracted: x })
}

impl<M: RankOracle> RankOracle for Contraction<M> {
    fn ground(&self) -> ElementSet {
        self.inner.ground() - self.contracted
    }
    fn rank(&self, set: ElementSet) -> usize {
        let z = set & self.ground();
        self.inner.rank(z | self.contracted) - self.contracted.len()
    }
}

/// `M1 ⊕ M2` on disjoint ground sets.
#[derive(Clone, Debug)]
pub struct DirectSum<A, B> {
    left: A,
    right: B,
}

pub fn direct_sum<A: RankOracle, B: RankOracle>(left: A, right: B) -> Result<DirectSum<A, B>> {
    if left.ground().intersects(right.ground()) {
        return Err(Error::OverlappingGrounds);
    }
    Ok(DirectSum { left, right })
}

impl<A: RankOracle, B: RankOracle> RankOracle for DirectSum<A, B> {
    fn ground(&self) -> ElementSet {
        self.left.ground() | self.right.ground()
    }
    fn rank(&self, set: ElementSet) -> usize {
        self.left.rank(set & self.left.ground()) + self.right.rank(set & self.right.ground())
    }
}

/// A rank function given as an explicit table over the subsets of `0..n`.
///
/// The table is taken as is; callers that load untrusted tables should run
/// [`crate::oracle::verify_matroid_axioms`] first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMatroid {
    n: usize,
    ranks: Vec<usize>,
}

impl TableMatroid {
    /// `ranks[bits]` is the rank of the subset with that bit pattern.
    pub fn new(n: usize, ranks: Vec<usize>) -> Result<Self> {
        crate::limits::ensure("rank table ground size", n, crate::limits::SUBSET_SCAN_CAP)?;
        if ranks.len() != 1 << n {
            return Err(Error::Precondition(format!("rank table has {} entries, expected {}", ranks.len(), 1usize << n)));
        }
        Ok(Self { n, ranks })
    }

    /// Tabulate any oracle whose ground set is `0..n`.
    pub fn tabulate(oracle: &dyn RankOracle) -> Result<Self> {
        let n = oracle.ground().len();
        if oracle.ground() != ElementSet::full(n) {
            return Err(Error::Precondition("tabulation needs ground set 0..n".into()));
        }
        Self::new(n, ElementSet::full(n).subsets().map(|s| oracle.rank(s)).collect())
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
}

impl RankOracle for TableMatroid {
    fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }
    fn rank(&self, set: ElementSet) -> usize {
        self.ranks[(set & self.ground()).bits() as usize]
    }
}

/// Rank cache keyed by bitmask.
///
/// The cache sits behind a lock, so a memoized oracle stays shareable
/// between threads and observably pure.
pub struct Memoized<M> {
    inner: M,
    cache: RwLock<HashMap<u64, usize>>,
}

impl<M: RankOracle> Memoized<M> {
    pub fn new(inner: M) -> Self {
        Self { inner, cache: RwLock::new(HashMap::new()) }
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    /// Number of distinct sets evaluated so far.
    pub fn cached(&self) -> usize {
        self.cache.read().map(|c| c.len()).unwrap_or(0)
    }
}

impl<M: RankOracle> RankOracle for Memoized<M> {
    fn ground(&self) -> ElementSet {
        self.inner.ground()
    }

    fn rank(&self, set: ElementSet) -> usize {
        let key = (set & self.inner.ground()).bits();
        if let Some(&r) = self.cache.read().ok().and_then(|c| c.get(&key).copied()).as_ref() {
            return r;
        }
        let r = self.inner.rank(ElementSet::from_bits(key));
        if let Ok(mut c) = self.cache.write() {
            c.insert(key, r);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::verify_matroid_axioms;

    fn es(items: &[usize]) -> ElementSet {
        items.iter().collect()
    }

    #[test]
    fn free_and_uniform_examples() {
        let g = ElementSet::full(3);
        assert_eq!(free(g).rank(es(&[0, 2])), 2);
        assert_eq!(uniform(g, 1).unwrap().rank(es(&[0, 2])), 1);
        let zero = uniform(g, 0).unwrap();
        assert!(g.subsets().all(|x| zero.rank(x) == 0));
        assert!(uniform(g, 4).is_err());
    }

    #[test]
    fn restrict_contract_sum_examples() {
        let u = uniform(ElementSet::full(3), 2).unwrap();
        let c = contract(u, es(&[1])).unwrap();
        assert_eq!(c.rank(es(&[2])), 1);
        assert_eq!(c.ground(), es(&[0, 2]));

        let t = es(&[0, 2]);
        let r = restrict(free(ElementSet::full(4)), t).unwrap();
        assert_eq!(r.rank(t), 2);
        assert_eq!(r.ground(), t);

        let left = uniform(es(&[0, 1]), 1).unwrap();
        let right = uniform(es(&[2, 3]), 1).unwrap();
        let sum = direct_sum(left, right).unwrap();
        assert_eq!(sum.full_rank(), 2);
        assert!(direct_sum(left, left).is_err());
    }

    #[test]
    fn contracting_dependent_set_rejected() {
        let u = uniform(ElementSet::full(3), 1).unwrap();
        assert_eq!(contract(u, es(&[0, 1])).unwrap_err(), Error::DependentContraction);
    }

    #[test]
    fn constructions_satisfy_axioms() {
        let g = ElementSet::full(6);
        let oracles: Vec<Box<dyn RankOracle>> = vec![
            Box::new(free(g)),
            Box::new(uniform(g, 3).unwrap()),
            Box::new(restrict(uniform(g, 2).unwrap(), es(&[0, 1, 4])).unwrap()),
            Box::new(contract(uniform(g, 4).unwrap(), es(&[2, 5])).unwrap()),
            Box::new(direct_sum(uniform(es(&[0, 1, 2]), 1).unwrap(), free(es(&[3, 4]))).unwrap()),
            Box::new(Memoized::new(uniform(ElementSet::full(8), 5).unwrap())),
        ];
        for m in &oracles {
            let report = verify_matroid_axioms(m.as_ref()).unwrap();
            assert!(report.ok(), "{report}");
        }
    }

    #[test]
    fn memoized_is_transparent() {
        let base = direct_sum(uniform(es(&[0, 1, 2]), 2).unwrap(), free(es(&[3]))).unwrap();
        let memo = Memoized::new(base.clone());
        for x in ElementSet::full(4).subsets() {
            assert_eq!(memo.rank(x), base.rank(x));
            assert_eq!(memo.rank(x), base.rank(x));
        }
        assert_eq!(memo.cached(), 16);
    }

    #[test]
    fn table_roundtrips_oracle() {
        let u = uniform(ElementSet::full(3), 2).unwrap();
        let t = TableMatroid::tabulate(&u).unwrap();
        assert!(ElementSet::full(3).subsets().all(|x| t.rank(x) == u.rank(x)));
    }

    /// For independent `A`, `B` with `|A| < |B|` some `b ∈ B \ A` extends `A`.
    #[test]
    fn exchange_property_spot_check() {
        let g = ElementSet::full(6);
        let m = direct_sum(uniform(es(&[0, 1, 2]), 2).unwrap(), uniform(es(&[3, 4, 5]), 1).unwrap()).unwrap();
        let indep: Vec<_> = g.subsets().filter(|&x| m.is_independent(x)).collect();
        for &a in &indep {
            for &b in &indep {
                if a.len() < b.len() {
                    assert!((b - a).iter().any(|e| m.is_independent(a.with(e))), "{a} vs {b}");
                }
            }
        }
    }
}
