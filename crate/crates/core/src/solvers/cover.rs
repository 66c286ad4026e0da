use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::feasibility::{Condition, Violation, Witness};
use crate::instance::VertexId;
use crate::partition::Partition;
use crate::scan;
use crate::solvers::Outcome;

/// `γ* = max(0, max_P max(p1(P), p2(P)))`, the fewest edges that can cover both.
pub fn min_cover_size<P1, P2>(n: usize, p1: P1, p2: P2) -> Result<usize>
where
    P1: Fn(&Partition) -> i64 + Sync,
    P2: Fn(&Partition) -> i64 + Sync,
{
    let (_, top) = scan::argmax(n, |p| p1(p).max(p2(p)))?;
    Ok(top.max(0) as usize)
}

fn crossing(f: &[(VertexId, VertexId)], p: &Partition) -> i64 {
    let labels = p.labels();
    f.iter().filter(|&&(u, v)| labels[u] != labels[v]).count() as i64
}

/// An edge set `F` of size `γ` on `0..n` with `e_F(P) ≥ max(p1(P), p2(P))`
/// for every partition.
///
/// Each step takes, for every `p_i` still at the current maximum, the
/// largest block among its maximizing partitions (lexicographically first
/// on ties), and adds the first vertex pair separated by all of them. Once
/// both functions are covered, copies of `(0, 1)` pad `F` up to `γ`.
pub fn cover_partition_functions<P1, P2>(n: usize, p1: P1, p2: P2, gamma: usize) -> Result<Outcome<Vec<(VertexId, VertexId)>>>
where
    P1: Fn(&Partition) -> i64 + Sync,
    P2: Fn(&Partition) -> i64 + Sync,
{
    let whole = Partition::trivial(n);
    let root = p1(&whole).max(p2(&whole));
    if root > 0 {
        return Ok(Outcome::Infeasible(Violation { condition: Condition::CoverRoot, witness: Witness::Partition(whole), deficit: root }));
    }
    let (worst, top) = scan::argmax(n, |p| p1(p).max(p2(p)))?;
    if top > gamma as i64 {
        return Ok(Outcome::Infeasible(Violation {
            condition: Condition::CoverBudget,
            witness: Witness::Partition(worst),
            deficit: top - gamma as i64,
        }));
    }

    let mut f: Vec<(VertexId, VertexId)> = Vec::with_capacity(gamma);
    loop {
        let r1 = |p: &Partition| p1(p) - crossing(&f, p);
        let r2 = |p: &Partition| p2(p) - crossing(&f, p);
        let (_, current) = scan::argmax(n, |p| r1(p).max(r2(p)))?;
        if current <= 0 {
            break;
        }
        if f.len() as i64 >= top {
            return Err(Error::Precondition("covering needs more than max(p1, p2) edges; the functions are not supermodular".into()));
        }
        let mut separators = Vec::with_capacity(2);
        for q in [scan::filter(n, |p| r1(p) == current)?, scan::filter(n, |p| r2(p) == current)?] {
            let largest = q.iter().flat_map(|p| p.blocks().iter().copied()).max_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)));
            separators.extend(largest);
        }
        let pair = first_separated_pair(n, &separators)
            .ok_or_else(|| Error::Precondition("no vertex pair is separated by the maximal blocks".into()))?;
        f.push(pair);
    }
    if f.len() < gamma && n < 2 {
        return Err(Error::NoEdgePossible);
    }
    f.resize(gamma, (0, 1));
    Ok(Outcome::Solved(f))
}

fn first_separated_pair(n: usize, sets: &[VertexSet]) -> Option<(VertexId, VertexId)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| sets.iter().all(|x| x.contains(u) != x.contains(v)))
}
