use thiserror::Error;

use crate::bits::ElementSet;
use crate::matroid::RankOracle;

/// Parameters of a generalized partition matroid: parts `S_i` with lower and
/// upper bounds `α_i ≤ |Z ∩ S_i| ≤ β_i` on the bases, and base size `μ`.
///
/// Every subset of a part is allowed inside it; no inner matroid is imposed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPartitionSpec {
    pub parts: Vec<ElementSet>,
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
    pub size: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GenPartitionError {
    #[error("parts, lower and upper bounds have different lengths")]
    ShapeMismatch,
    #[error("parts must be pairwise disjoint")]
    OverlappingParts,
    #[error("part {part}: lower bound {lower} exceeds min(upper bound, part size) = {cap}")]
    LowerAboveCap { part: usize, lower: usize, cap: usize },
    #[error("base size {size} is below the sum of lower bounds {lower_sum}")]
    SizeBelowLower { size: usize, lower_sum: usize },
    #[error("base size {size} exceeds the sum of capped upper bounds {cap_sum}")]
    SizeAboveCap { size: usize, cap_sum: usize },
}

/// Rank `min{ Σ min(β_i, |Z∩S_i|), μ - Σ max(α_i - |Z∩S_i|, 0) }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPartitionMatroid {
    spec: GenPartitionSpec,
    ground: ElementSet,
}

impl GenPartitionMatroid {
    pub fn new(spec: GenPartitionSpec) -> Result<Self, GenPartitionError> {
        let n = spec.parts.len();
        if spec.lower.len() != n || spec.upper.len() != n {
            return Err(GenPartitionError::ShapeMismatch);
        }
        let mut ground = ElementSet::empty();
        for &p in &spec.parts {
            if p.intersects(ground) {
                return Err(GenPartitionError::OverlappingParts);
            }
            ground = ground | p;
        }
        let mut cap_sum = 0;
        for (part, (&p, (&lower, &upper))) in spec.parts.iter().zip(spec.lower.iter().zip(&spec.upper)).enumerate() {
            let cap = upper.min(p.len());
            if lower > cap {
                return Err(GenPartitionError::LowerAboveCap { part, lower, cap });
            }
            cap_sum += cap;
        }
        let lower_sum: usize = spec.lower.iter().sum();
        if spec.size < lower_sum {
            return Err(GenPartitionError::SizeBelowLower { size: spec.size, lower_sum });
        }
        if spec.size > cap_sum {
            return Err(GenPartitionError::SizeAboveCap { size: spec.size, cap_sum });
        }
        Ok(Self { spec, ground })
    }

    pub fn spec(&self) -> &GenPartitionSpec {
        &self.spec
    }
}

impl RankOracle for GenPartitionMatroid {
    fn ground(&self) -> ElementSet {
        self.ground
    }

    fn rank(&self, set: ElementSet) -> usize {
        let mut capped = 0;
        let mut missing = 0;
        for ((&p, &lower), &upper) in self.spec.parts.iter().zip(&self.spec.lower).zip(&self.spec.upper) {
            let hit = (set & p).len();
            capped += upper.min(hit);
            missing += lower.saturating_sub(hit);
        }
        // Feasibility guarantees `size >= Σ lower >= missing`.
        capped.min(self.spec.size - missing)
    }
}
