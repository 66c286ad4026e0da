//! Deterministic parallel scans over all partitions of `V`.
//!
//! Partitions are streamed in restricted-growth order and evaluated in
//! batches on the rayon pool. Reductions pick the extreme value and break
//! ties by stream index, so results never depend on the thread count.

use rayon::prelude::*;

use crate::error::Result;
use crate::partition::{enumerate_partitions, Partition};

const BATCH: usize = 4096;

/// The partition maximizing `f`, earliest in enumeration order among ties.
pub(crate) fn argmax<F>(n: usize, f: F) -> Result<(Partition, i64)>
where
    F: Fn(&Partition) -> i64 + Sync,
{
    let mut best: Option<(Partition, i64)> = None;
    let mut stream = enumerate_partitions(n)?;
    loop {
        let batch: Vec<Partition> = stream.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let local =
            batch
                .par_iter()
                .enumerate()
                .map(|(i, p)| (f(p), i))
                .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
        if let Some((value, i)) = local {
            if best.as_ref().is_none_or(|(_, v)| value > *v) {
                best = Some((batch[i].clone(), value));
            }
        }
    }
    Ok(best.expect("every ground set has at least one partition"))
}

/// Every partition with `pred`, in enumeration order.
pub(crate) fn filter<F>(n: usize, pred: F) -> Result<Vec<Partition>>
where
    F: Fn(&Partition) -> bool + Sync,
{
    let mut out = Vec::new();
    let mut stream = enumerate_partitions(n)?;
    loop {
        let batch: Vec<Partition> = stream.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let keep: Vec<bool> = batch.par_iter().map(&pred).collect();
        out.extend(batch.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p));
    }
    Ok(out)
}
