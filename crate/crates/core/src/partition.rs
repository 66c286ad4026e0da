//! Set partitions of `V`, the uncrossing calculus behind meet (`⊓`) and join (`⊔`),
//! and lazy enumeration of all partitions in restricted-growth-string order.

use std::fmt;

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::instance::VertexId;
use crate::limits::{self, PARTITION_VERTEX_CAP};

/// A partition of `{0, .., n-1}` into nonempty blocks, sorted by minimum element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::empty();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if b.intersects(seen) {
                return Err(Error::InvalidPartition(format!("block {b} overlaps another block")));
            }
            seen = seen | *b;
        }
        if seen != VertexSet::full(n) {
            return Err(Error::InvalidPartition(format!("blocks cover {seen}, not all of 0..{n}")));
        }
        blocks.sort_by_key(|b| b.first());
        Ok(Self { n, blocks })
    }

    /// Blocks read off a label per vertex (vertices with equal labels share a block).
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<(usize, VertexSet)> = Vec::new();
        for (v, &label) in labels.iter().enumerate() {
            match blocks.iter_mut().find(|(l, _)| *l == label) {
                Some((_, b)) => b.insert(v),
                None => blocks.push((label, VertexSet::singleton(v))),
            }
        }
        Self { n: labels.len(), blocks: blocks.into_iter().map(|(_, b)| b).collect() }
    }

    /// `{V}`.
    pub fn trivial(n: usize) -> Self {
        let blocks = if n == 0 { Vec::new() } else { vec![VertexSet::full(n)] };
        Self { n, blocks }
    }

    /// `{{v} : v ∈ V}`.
    pub fn singletons(n: usize) -> Self {
        Self { n, blocks: (0..n).map(VertexSet::singleton).collect() }
    }

    /// `{X} ∪ {{v} : v ∉ X}`.
    pub fn with_block(n: usize, x: VertexSet) -> Result<Self> {
        let mut blocks = vec![x];
        blocks.extend((VertexSet::full(n) - x).iter().map(VertexSet::singleton));
        Self::new(n, blocks)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Number of blocks, `|P|`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block_of(&self, v: VertexId) -> Option<VertexSet> {
        self.blocks.iter().copied().find(|b| b.contains(v))
    }

    /// Block index per vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for v in b.iter() {
                labels[v] = i;
            }
        }
        labels
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.n == other.n && self.blocks.iter().all(|b| other.blocks.iter().any(|c| b.is_subset(*c)))
    }

    fn same_ground(&self, other: &Partition) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::GroundMismatch { left: self.n, right: other.n })
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// `X` meets at least two blocks of `p`.
pub fn crosses(x: VertexSet, p: &Partition) -> bool {
    p.blocks.iter().filter(|b| b.intersects(x)).take(2).count() == 2
}

/// Neither `a ∩ b`, `a \ b` nor `b \ a` is empty.
pub fn properly_intersecting(a: VertexSet, b: VertexSet) -> bool {
    a.intersects(b) && !a.is_subset(b) && !b.is_subset(a)
}

/// `P1 ⊔ P2`: the components of the block-overlap relation.
///
/// This coincides with the maximal sets left by uncrossing `P1 ∪ P2`
/// (checked exhaustively in the tests).
pub fn join(p1: &Partition, p2: &Partition) -> Result<Partition> {
    p1.same_ground(p2)?;
    let mut parent: Vec<usize> = (0..p1.n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for b in p1.blocks.iter().chain(&p2.blocks) {
        let head = b.first().expect("blocks are nonempty");
        for v in b.iter() {
            let (a, c) = (find(&mut parent, head), find(&mut parent, v));
            parent[a.max(c)] = a.min(c);
        }
    }
    let labels: Vec<usize> = (0..p1.n).map(|v| find(&mut parent, v)).collect();
    Ok(Partition::from_labels(&labels))
}

/// `P1 ⊓ P2` under the fixed rule: always uncross the lexicographically
/// smallest properly intersecting pair, sets compared as sorted vertex lists.
pub fn meet(p1: &Partition, p2: &Partition) -> Result<Partition> {
    uncross_by(p1, p2, |_| 0).map(|(m, _)| m)
}

/// Run the uncrossing method on the family `P1 ∪ P2` and return
/// `(minimal sets, maximal sets)`.
///
/// At each step `choose` receives every properly intersecting pair, sorted
/// lexicographically, and returns the index of the pair to uncross.
pub fn uncross_by<F>(p1: &Partition, p2: &Partition, mut choose: F) -> Result<(Partition, Partition)>
where
    F: FnMut(&[(VertexSet, VertexSet)]) -> usize,
{
    p1.same_ground(p2)?;
    let mut family: Vec<VertexSet> = p1.blocks.iter().chain(&p2.blocks).copied().collect();
    loop {
        family.sort();
        let mut pairs = Vec::new();
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                if properly_intersecting(family[i], family[j]) {
                    pairs.push((i, j));
                }
            }
        }
        if pairs.is_empty() {
            break;
        }
        let sets: Vec<_> = pairs.iter().map(|&(i, j)| (family[i], family[j])).collect();
        let pick = choose(&sets);
        let (i, j) = *pairs.get(pick).ok_or_else(|| Error::Internal(format!("uncrossing choice {pick} out of {} pairs", pairs.len())))?;
        let (a, b) = (family[i], family[j]);
        family[i] = a & b;
        family[j] = a | b;
    }
    family.dedup();
    let minimal: Vec<_> = family.iter().copied().filter(|&x| !family.iter().any(|&y| y != x && y.is_subset(x))).collect();
    let maximal: Vec<_> = family.iter().copied().filter(|&x| !family.iter().any(|&y| y != x && x.is_subset(y))).collect();
    Ok((Partition::new(p1.n, minimal)?, Partition::new(p1.n, maximal)?))
}

/// Bell number `B(n)`, the number of partitions of an `n`-set.
pub fn bell(n: usize) -> u64 {
    // Bell triangle.
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Every partition of an `n`-set exactly once, in restricted-growth-string order
/// (so `{V}` comes first and the singletons last).
pub fn enumerate_partitions(n: usize) -> Result<Partitions> {
    enumerate_partitions_capped(n, PARTITION_VERTEX_CAP)
}

pub fn enumerate_partitions_capped(n: usize, cap: usize) -> Result<Partitions> {
    limits::ensure("vertex count for partition enumeration", n, cap)?;
    Ok(Partitions { rgs: vec![0; n], prefix_max: vec![0; n], done: false })
}

/// Lazy stream over restricted growth strings `a` with `a[0] = 0` and
/// `a[i] ≤ 1 + max(a[..i])`.
#[derive(Clone, Debug)]
pub struct Partitions {
    rgs: Vec<usize>,
    /// `prefix_max[i] = max(a[..=i])`.
    prefix_max: Vec<usize>,
    done: bool,
}

impl Partitions {
    fn advance(&mut self) {
        let n = self.rgs.len();
        // Rightmost position that can still grow.
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let n = self.rgs.len();
        let mut blocks = vec![VertexSet::empty(); if n == 0 { 0 } else { self.prefix_max[n - 1] + 1 }];
        for (v, &label) in self.rgs.iter().enumerate() {
            blocks[label].insert(v);
        }
        let p = Partition { n, blocks };
        if n == 0 {
            self.done = true;
        } else {
            self.advance();
        }
        Some(p)
    }
}
