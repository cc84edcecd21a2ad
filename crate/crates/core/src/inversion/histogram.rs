use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Budget;
use crate::error::Result;
use crate::transform::{pack, unpack_into, OwfSpec};

/// Number of preimages of every output value of an R_N instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreimageHistogram {
    /// `counts[v]` is the number of inputs whose output packs to `v`.
    pub counts: Vec<u32>,
    /// `s^N`.
    pub domain_size: u64,
}

impl PreimageHistogram {
    /// Every output value has exactly one preimage.
    pub fn is_permutation(&self) -> bool {
        self.counts.iter().all(|&c| c == 1)
    }

    /// All output values that are hit are hit equally often.
    pub fn is_regular(&self) -> bool {
        let mut hit = self.counts.iter().filter(|&&c| c > 0);
        match hit.next() {
            Some(&first) => hit.all(|&c| c == first),
            None => true,
        }
    }

    pub fn image_size(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// `(preimage count, number of output values with that count)`, ascending.
    pub fn count_distribution(&self) -> Vec<(u32, usize)> {
        let mut dist = std::collections::BTreeMap::new();
        for &c in &self.counts {
            *dist.entry(c).or_insert(0usize) += 1;
        }
        dist.into_iter().collect()
    }
}

/// Forward-evaluates every input of `spec` and tallies the outputs.
pub fn preimage_histogram(spec: &OwfSpec, budget: Budget) -> Result<PreimageHistogram> {
    let total = spec.domain_size();
    budget.check(total)?;
    let s = spec.quasigroup().order();
    let n = spec.n();
    let counts: Vec<AtomicU32> = (0..total).map(|_| AtomicU32::new(0)).collect();
    (0..total.div_ceil(4096)).into_par_iter().for_each(|c| {
        let mut input = vec![0; n];
        let mut out = vec![0; n];
        for k in c * 4096..((c + 1) * 4096).min(total) {
            unpack_into(s, k, &mut input);
            spec.eval_into(&input, &mut out);
            counts[pack(s, &out) as usize].fetch_add(1, Ordering::Relaxed);
        }
    });
    Ok(PreimageHistogram {
        counts: counts.into_iter().map(AtomicU32::into_inner).collect(),
        domain_size: total,
    })
}

/// Early-exit bijectivity test used by the permutation search.
pub(crate) fn is_permutation(spec: &OwfSpec) -> bool {
    let total = spec.domain_size();
    let s = spec.quasigroup().order();
    let n = spec.n();
    let mut seen = vec![false; total as usize];
    let mut input = vec![0; n];
    let mut out = vec![0; n];
    for k in 0..total {
        unpack_into(s, k, &mut input);
        spec.eval_into(&input, &mut out);
        if std::mem::replace(&mut seen[pack(s, &out) as usize], true) {
            return false;
        }
    }
    true
}
