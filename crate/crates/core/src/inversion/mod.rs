//! Preimage search for R1, R2 and R_N.
//!
//! [`brute_preimages`] is the exhaustive baseline. [`attack_r1`] and
//! [`attack_r2`] fill the lookup-table scheme from the known output upward,
//! guessing input symbols only when propagation stalls.

mod brute;
mod grid;
mod histogram;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use brute::brute_preimages;
pub use grid::{attack_r1, attack_r2, attack_rn, AttackGrid, StepLeader};
pub(crate) use histogram::is_permutation;
pub use histogram::{preimage_histogram, PreimageHistogram};

use crate::transform::QString;

/// Default cap on forward evaluations or explored guesses: `2^24`.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Cap on the work an exhaustive or search operation may perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub(crate) fn check(self, required: u64) -> crate::Result<()> {
        if required > self.0 {
            Err(crate::Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AttackOptions {
    /// Stop at the first verified preimage.
    pub first_hit: bool,
    pub budget: Budget,
}

/// Outcome of an inversion attempt.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackTrace {
    /// Verified preimages in ascending order.
    pub preimages: Vec<QString>,
    /// Guessed symbol assignments explored (for brute force: `s^N`).
    pub guesses: u64,
    /// Multiplication and division table reads.
    pub lookups: u64,
    pub elapsed: Duration,
    /// Attack hypotheses that did not hold for the quasigroup.
    pub warnings: Vec<String>,
}
