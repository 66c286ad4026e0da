//! Size caps for the exhaustive scans.
//!
//! Every algorithm here is exponential by construction. Rather than sample,
//! operations refuse inputs past these caps with [`Error::CapExceeded`].

use crate::error::{Error, Result};

/// Largest vertex count for which partitions of `V` are enumerated.
pub const PARTITION_VERTEX_CAP: usize = 12;

/// Largest set for which all subsets are scanned.
pub const SUBSET_SCAN_CAP: usize = 20;

/// Largest matroid ground set (elements are bits of a `u64`).
pub const GROUND_CAP: usize = 64;

/// Largest ground set for exhaustive axiom verification.
pub const AXIOM_GROUND_CAP: usize = 10;

pub(crate) fn ensure(what: &'static str, got: usize, cap: usize) -> Result<()> {
    if got > cap {
        Err(Error::CapExceeded { what, got, cap })
    } else {
        Ok(())
    }
}
