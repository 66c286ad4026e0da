use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::feasibility::{Condition, Violation, Witness};
use crate::instance::{Hypergraph, VertexId};
use crate::partition::{crosses, Partition};
use crate::scan;
use crate::solvers::Outcome;

/// A graph obtained by trimming every hyperedge; `ends[i]` is the pair
/// hyperedge `i` was shrunk to, and graph edge `i` is that pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trimming {
    pub graph: Hypergraph,
    pub ends: Vec<(VertexId, VertexId)>,
}

/// Largest `max(p1(P), p2(P)) - e(P)` over all partitions, with its partition.
fn worst<P1, P2>(n: usize, edges: &[VertexSet], p1: &P1, p2: &P2) -> Result<(Partition, i64)>
where
    P1: Fn(&Partition) -> i64 + Sync,
    P2: Fn(&Partition) -> i64 + Sync,
{
    scan::argmax(n, |p| p1(p).max(p2(p)) - edges.iter().filter(|&&e| crosses(e, p)).count() as i64)
}

/// Shrinks hyperedges one vertex at a time, always keeping
/// `e(P) ≥ max(p1(P), p2(P))` for every partition.
///
/// The lowest-id hyperedge with three or more vertices loses its smallest
/// removable vertex. `p1` and `p2` must be supermodular on partitions; if
/// no vertex is removable the functions are reported as not supermodular.
pub fn trim_hypergraph<P1, P2>(h: &Hypergraph, p1: P1, p2: P2) -> Result<Outcome<Trimming>>
where
    P1: Fn(&Partition) -> i64 + Sync,
    P2: Fn(&Partition) -> i64 + Sync,
{
    let n = h.vertex_count();
    let mut edges: Vec<VertexSet> = h.edges().to_vec();
    let (p, deficit) = worst(n, &edges, &p1, &p2)?;
    if deficit > 0 {
        return Ok(Outcome::Infeasible(Violation { condition: Condition::TrimCover, witness: Witness::Partition(p), deficit }));
    }
    while let Some(i) = edges.iter().position(|e| e.len() > 2) {
        let x = edges[i];
        let mut shrunk = false;
        for v in x.iter() {
            edges[i] = x.without(v);
            if worst(n, &edges, &p1, &p2)?.1 <= 0 {
                shrunk = true;
                break;
            }
        }
        if !shrunk {
            return Err(Error::Precondition(format!(
                "no vertex of hyperedge {i} = {x} can be dropped; the partition functions are not supermodular"
            )));
        }
    }
    let ends = edges
        .iter()
        .map(|e| {
            let mut it = e.iter();
            (it.next().expect("two ends"), it.next().expect("two ends"))
        })
        .collect();
    Ok(Outcome::Solved(Trimming { graph: Hypergraph::from_sets(n, edges)?, ends }))
}
