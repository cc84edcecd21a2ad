use std::time::Instant;

use rayon::prelude::*;

use super::{AttackTrace, Budget};
use crate::error::{Error, Result};
use crate::transform::{pack, unpack_into, OwfSpec, QString};

const CHUNK: u64 = 4096;

/// Every `A` in `Q^N` with `R_N(A) = B`, by full enumeration.
///
/// The domain is split into fixed chunks evaluated in parallel; results are
/// merged in domain order, so the output does not depend on the worker count.
pub fn brute_preimages(spec: &OwfSpec, b: &QString, budget: Budget) -> Result<AttackTrace> {
    let start = Instant::now();
    let s = spec.quasigroup().order();
    if b.order() != s {
        return Err(Error::OrderMismatch {
            quasigroup: s,
            string: b.order(),
        });
    }
    if b.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            actual: b.len(),
        });
    }
    let total = spec.domain_size();
    budget.check(total)?;

    let n = spec.n();
    let target = b.symbols();
    let chunks = total.div_ceil(CHUNK);
    let found: Vec<u64> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut input = vec![0; n];
            let mut out = vec![0; n];
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut hits = Vec::new();
            for k in lo..hi {
                unpack_into(s, k, &mut input);
                spec.eval_into(&input, &mut out);
                if out == target {
                    hits.push(pack(s, &input));
                }
            }
            hits
        })
        .collect();

    let preimages = found
        .into_iter()
        .map(|k| QString::from_index(s, n, k).expect("in-domain index"))
        .collect();
    Ok(AttackTrace {
        preimages,
        guesses: total,
        lookups: total * spec.lookups_per_eval(),
        elapsed: start.elapsed(),
        warnings: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasigroup::fixtures::q355;
    use crate::transform::{r_n, LeaderString, LeaderSymbol::*};

    fn two_to_one_spec() -> OwfSpec {
        OwfSpec::new(
            q355(),
            2,
            vec![Const(3), Const(3), Index(0), Index(1)].into(),
        )
        .unwrap()
    }

    fn values(t: &AttackTrace) -> Vec<u64> {
        t.preimages.iter().map(QString::to_index).collect()
    }

    #[test]
    fn two_to_one_preimages() {
        let spec = two_to_one_spec();
        let b = QString::from_index(4, 2, 11).unwrap();
        let t = brute_preimages(&spec, &b, Budget::default()).unwrap();
        assert_eq!(values(&t), vec![3, 4]);
        assert_eq!(t.guesses, 16);
        assert_eq!(t.lookups, 16 * 8 * 2);
        let b = QString::from_index(4, 2, 2).unwrap();
        assert!(brute_preimages(&spec, &b, Budget::default())
            .unwrap()
            .preimages
            .is_empty());
    }

    #[test]
    fn r2_preimage_of_03202() {
        let spec = OwfSpec::new(q355(), 5, LeaderString::empty()).unwrap();
        let b = QString::new(4, vec![0, 3, 2, 0, 2]).unwrap();
        let t = brute_preimages(&spec, &b, Budget::default()).unwrap();
        let a = QString::new(4, vec![0, 1, 2, 3, 0]).unwrap();
        assert!(t.preimages.contains(&a));
        for p in &t.preimages {
            assert_eq!(r_n(&spec, p).unwrap(), b);
        }
        assert_eq!(t.guesses, 1024);
    }

    #[test]
    fn budget_and_shape_errors() {
        let spec = two_to_one_spec();
        let b = QString::from_index(4, 2, 11).unwrap();
        assert_eq!(
            brute_preimages(&spec, &b, Budget(15)),
            Err(Error::BudgetExceeded {
                required: 16,
                budget: 15
            })
        );
        let short = QString::new(4, vec![1]).unwrap();
        assert!(matches!(
            brute_preimages(&spec, &short, Budget::default()),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn worker_count_independent() {
        let spec = OwfSpec::new(q355(), 7, vec![Const(1), Index(3)].into()).unwrap();
        let a = QString::new(4, vec![3, 1, 0, 2, 2, 1, 0]).unwrap();
        let b = r_n(&spec, &a).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    brute_preimages(&spec, &b, Budget::default())
                        .unwrap()
                        .preimages
                })
        };
        let one = run(1);
        assert!(one.contains(&a));
        assert_eq!(one, run(4));
    }
}
