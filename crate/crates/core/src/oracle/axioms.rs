use crate::bits::ElementSet;
use crate::error::Result;
use crate::limits::{self, AXIOM_GROUND_CAP};
use crate::matroid::RankOracle;
use crate::oracle::ValidationReport;
use crate::partition::{enumerate_partitions_capped, join, meet, Partition};

/// Largest `n` for the all-pairs supermodularity check.
pub const SUPERMODULAR_CAP: usize = 5;

/// The four rank axioms of `m` over every subset pair of its ground set.
pub fn verify_matroid_axioms(m: &dyn RankOracle) -> Result<ValidationReport> {
    verify_rank_function(m.ground(), |x| m.rank(x) as i64)
}

/// Non-negative, subcardinal, non-decreasing and submodular, checked
/// exhaustively; the first failure of each rule is reported.
pub fn verify_rank_function<R>(ground: ElementSet, r: R) -> Result<ValidationReport>
where
    R: Fn(ElementSet) -> i64,
{
    limits::ensure("ground set for axiom verification", ground.len(), AXIOM_GROUND_CAP)?;
    let subsets: Vec<ElementSet> = ground.subsets().collect();
    let ranks: Vec<i64> = subsets.iter().map(|&x| r(x)).collect();
    let index = |x: ElementSet| subsets.binary_search_by_key(&x.bits(), |s| s.bits()).expect("subset of ground");
    let mut report = ValidationReport::default();

    if let Some(i) = ranks.iter().position(|&v| v < 0) {
        report.fail("non-negative", format!("r({}) = {}", subsets[i], ranks[i]));
    }
    if let Some(i) = (0..subsets.len()).find(|&i| ranks[i] > subsets[i].len() as i64) {
        report.fail("subcardinal", format!("r({}) = {} > {}", subsets[i], ranks[i], subsets[i].len()));
    }
    'mono: for (i, &x) in subsets.iter().enumerate() {
        for (j, &y) in subsets.iter().enumerate() {
            if x.is_subset(y) && ranks[i] > ranks[j] {
                report.fail("non-decreasing", format!("r({x}) = {} > r({y}) = {}", ranks[i], ranks[j]));
                break 'mono;
            }
        }
    }
    'sub: for (i, &x) in subsets.iter().enumerate() {
        for (j, &y) in subsets.iter().enumerate().skip(i + 1) {
            let lhs = ranks[i] + ranks[j];
            let rhs = ranks[index(x & y)] + ranks[index(x | y)];
            if lhs < rhs {
                report.fail("submodular", format!("X = {x}, Y = {y}: {lhs} < {rhs}"));
                break 'sub;
            }
        }
    }
    Ok(report)
}

/// `p(P1) + p(P2) ≤ p(P1 ⊓ P2) + p(P1 ⊔ P2)` over all ordered pairs.
pub fn verify_partition_supermodular<P>(p: P, n: usize) -> Result<ValidationReport>
where
    P: Fn(&Partition) -> i64,
{
    let all: Vec<Partition> = enumerate_partitions_capped(n, SUPERMODULAR_CAP)?.collect();
    let values: Vec<i64> = all.iter().map(&p).collect();
    let mut report = ValidationReport::default();
    for (i, p1) in all.iter().enumerate() {
        for (j, p2) in all.iter().enumerate() {
            let lhs = values[i] + values[j];
            let rhs = p(&meet(p1, p2)?) + p(&join(p1, p2)?);
            if lhs > rhs {
                report.fail("supermodular", format!("P1 = {p1}, P2 = {p2}: {lhs} > {rhs}"));
                return Ok(report);
            }
        }
    }
    Ok(report)
}
