use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quasigroup::{Quasigroup, Symbol};
use crate::transform::{e_in_place, QString};

/// Minimal period of one iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSample {
    /// Number of e-transformations applied, starting at 1.
    pub iteration: usize,
    pub period: usize,
    /// No full repetition fits in the window; `period` is the width.
    pub capped: bool,
}

/// Smallest shift under which `s` agrees with itself, from the failure
/// function. Returns `(s.len(), true)` when the period is not confirmed by a
/// complete repetition inside the window.
pub fn minimal_period(s: &[Symbol]) -> (usize, bool) {
    let n = s.len();
    if n == 0 {
        return (0, false);
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if 2 * p > n && p != n {
        (n, true)
    } else {
        (p, p == n && n > 1)
    }
}

/// Iterates the e-transformation with a constant leader over a periodic
/// string and records the minimal period after each step.
pub fn period_profile(
    q: &Quasigroup,
    leader: Symbol,
    motif: &QString,
    width: usize,
    iterations: usize,
) -> Result<Vec<PeriodSample>> {
    if motif.order() != q.order() {
        return Err(Error::OrderMismatch {
            quasigroup: q.order(),
            string: motif.order(),
        });
    }
    if (leader as usize) >= q.order() {
        return Err(Error::SymbolOutOfRange {
            symbol: leader as usize,
            order: q.order(),
        });
    }
    if motif.is_empty() {
        return Err(Error::EmptyString);
    }
    if width == 0 || !width.is_multiple_of(motif.len()) {
        return Err(Error::InvalidParameter(format!(
            "width {width} is not a positive multiple of the motif length {}",
            motif.len()
        )));
    }
    let mut buf: Vec<Symbol> = motif
        .symbols()
        .iter()
        .copied()
        .cycle()
        .take(width)
        .collect();
    let mut out = Vec::with_capacity(iterations);
    for iteration in 1..=iterations {
        e_in_place(q, leader, &mut buf);
        let (period, capped) = minimal_period(&buf);
        out.push(PeriodSample {
            iteration,
            period,
            capped,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::order4_by_index;
    use crate::quasigroup::fixtures::trivial;
    use proptest::prelude::*;

    fn naive_period(s: &[Symbol]) -> usize {
        (1..=s.len())
            .find(|&p| (p..s.len()).all(|i| s[i] == s[i - p]))
            .unwrap()
    }

    fn motif() -> QString {
        QString::new(4, vec![0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn small_periods() {
        assert_eq!(minimal_period(&[1, 2, 1, 2, 1, 2]), (2, false));
        assert_eq!(minimal_period(&[1, 2, 1, 2, 1]), (2, false));
        assert_eq!(minimal_period(&[0, 0, 0]), (1, false));
        assert_eq!(minimal_period(&[0]), (1, false));
        assert_eq!(minimal_period(&[0, 1, 2]), (3, true));
        // shift of 3 agrees on the window but never repeats in full
        assert_eq!(minimal_period(&[0, 1, 2, 0, 1]), (5, true));
    }

    #[test]
    fn trivial_quasigroup_is_constant() {
        let zeros = QString::new(1, vec![0; 3]).unwrap();
        let p = period_profile(&trivial(), 0, &zeros, 12, 5).unwrap();
        assert_eq!(p.len(), 5);
        assert!(p.iter().all(|s| s.period == 1 && !s.capped));
    }

    #[test]
    fn number_46_grows_slowly() {
        let q = order4_by_index(46).unwrap();
        let p = period_profile(q, 0, &motif(), 4096, 32).unwrap();
        assert!(p.iter().all(|s| !s.capped));
        assert!(p.last().unwrap().period <= 4 * 32 * 4);
        assert!(p.windows(2).all(|w| w[0].period <= w[1].period));
    }

    #[test]
    fn number_47_hits_the_cap() {
        let q = order4_by_index(47).unwrap();
        let p = period_profile(q, 0, &motif(), 4096, 32).unwrap();
        assert!(p.last().unwrap().period > 4 * 32 * 4);
        assert!(p.iter().any(|s| s.capped));
    }

    #[test]
    fn preconditions() {
        let q = order4_by_index(1).unwrap();
        assert!(period_profile(q, 0, &motif(), 6, 1).is_err());
        assert!(period_profile(q, 4, &motif(), 8, 1).is_err());
        assert!(period_profile(q, 0, &QString::new(4, vec![]).unwrap(), 8, 1).is_err());
        assert!(period_profile(q, 0, &motif(), 8, 0).unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn failure_function_matches_naive(s in proptest::collection::vec(0u8..3, 1..40)) {
            let p = naive_period(&s);
            let (got, capped) = minimal_period(&s);
            if 2 * p > s.len() && p != s.len() {
                prop_assert_eq!((got, capped), (s.len(), true));
            } else {
                prop_assert_eq!(got, p);
            }
            prop_assert!(got >= 1 && got <= s.len());
        }
    }
}
