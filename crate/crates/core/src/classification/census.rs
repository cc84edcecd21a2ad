use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::published::{PUBLISHED_FRACTAL, PUBLISHED_STATED_COUNT};
use super::{classify, ClassifierSettings, Label};
use crate::error::Result;
use crate::latin::enumerate_order4;
use crate::transform::LeaderString;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    /// Lexicographic number, 1-based.
    pub index: usize,
    /// Permutation-criterion verdict.
    pub label: Label,
    pub witness: Option<LeaderString>,
    /// Period-growth verdict.
    pub period_label: Label,
    pub period_at_k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub settings: ClassifierSettings,
    pub entries: Vec<CensusEntry>,
    pub fractal_set: Vec<usize>,
    pub non_fractal_set: Vec<usize>,
    pub published_stated_count: usize,
    pub published_printed_count: usize,
    /// Listed as fractal but no witness found.
    pub missing_from_computed: Vec<usize>,
    /// Witness found but not listed.
    pub extra_in_computed: Vec<usize>,
    /// Quasigroups on which the two criteria disagree.
    pub classifier_disagreements: Vec<usize>,
}

impl CensusReport {
    pub fn matches_published(&self) -> bool {
        self.missing_from_computed.is_empty() && self.extra_in_computed.is_empty()
    }
}

/// Classifies all 576 order-4 quasigroups by both criteria and compares the
/// permutation-criterion split with the published class list.
pub fn census_order4(settings: &ClassifierSettings) -> Result<CensusReport> {
    let entries: Vec<CensusEntry> = enumerate_order4()
        .par_iter()
        .enumerate()
        .map(|(i, q)| {
            let c = classify(q, settings)?;
            Ok(CensusEntry {
                index: i + 1,
                label: c.search_label(),
                period_label: c.label,
                period_at_k: c.period_at_k(),
                witness: c.permutation_witness,
            })
        })
        .collect::<Result<_>>()?;

    let (fractal, non_fractal): (Vec<&CensusEntry>, Vec<&CensusEntry>) =
        entries.iter().partition(|e| e.label == Label::Fractal);
    let fractal_set: Vec<usize> = fractal.iter().map(|e| e.index).collect();
    let non_fractal_set = non_fractal.iter().map(|e| e.index).collect();
    let missing_from_computed = PUBLISHED_FRACTAL
        .iter()
        .copied()
        .filter(|k| fractal_set.binary_search(k).is_err())
        .collect();
    let extra_in_computed = fractal_set
        .iter()
        .copied()
        .filter(|k| !PUBLISHED_FRACTAL.contains(k))
        .collect();
    let classifier_disagreements = entries
        .iter()
        .filter(|e| e.label != e.period_label)
        .map(|e| e.index)
        .collect();
    Ok(CensusReport {
        settings: settings.clone(),
        entries,
        fractal_set,
        non_fractal_set,
        published_stated_count: PUBLISHED_STATED_COUNT,
        published_printed_count: PUBLISHED_FRACTAL.len(),
        missing_from_computed,
        extra_in_computed,
        classifier_disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::{LeaderAlphabet, SearchSettings};
    use crate::inversion::{preimage_histogram, Budget};
    use crate::latin::order4_by_index;
    use crate::transform::OwfSpec;
    use std::sync::OnceLock;

    fn default_report() -> &'static CensusReport {
        static R: OnceLock<CensusReport> = OnceLock::new();
        R.get_or_init(|| census_order4(&ClassifierSettings::default()).unwrap())
    }

    #[test]
    fn published_list_fixture() {
        assert_eq!(PUBLISHED_FRACTAL.len(), 192);
        assert!(PUBLISHED_FRACTAL.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(PUBLISHED_FRACTAL[0], 1);
        assert_eq!(*PUBLISHED_FRACTAL.last().unwrap(), 576);
    }

    #[test]
    fn default_census() {
        let r = default_report();
        assert_eq!(r.fractal_set.len(), 192);
        assert_eq!(r.non_fractal_set.len(), 384);
        assert!(r.matches_published());
        assert!(r.classifier_disagreements.is_empty());
        for k in [355, 46] {
            assert!(r.fractal_set.contains(&k));
        }
        for k in [6, 47] {
            assert!(r.non_fractal_set.contains(&k));
        }
    }

    #[test]
    fn partition() {
        let r = default_report();
        let mut all: Vec<usize> = r
            .fractal_set
            .iter()
            .chain(&r.non_fractal_set)
            .copied()
            .collect();
        all.sort_unstable();
        assert_eq!(all, (1..=576).collect::<Vec<_>>());
    }

    #[test]
    fn witnesses_are_bijections() {
        for e in &default_report().entries {
            if let Some(w) = &e.witness {
                let spec =
                    OwfSpec::new(order4_by_index(e.index).unwrap().clone(), 2, w.clone()).unwrap();
                let h = preimage_histogram(&spec, Budget::default()).unwrap();
                assert!(h.counts.iter().all(|&c| c == 1), "#{}", e.index);
            }
        }
    }

    #[test]
    fn monotone_in_max_len() {
        let with = |max_len| ClassifierSettings {
            iterations: 1,
            width: 4,
            search: SearchSettings {
                max_len,
                ..Default::default()
            },
            ..Default::default()
        };
        let mut prev: Vec<usize> = Vec::new();
        for max_len in 0..=3 {
            let r = census_order4(&with(max_len)).unwrap();
            assert!(prev.iter().all(|k| r.fractal_set.contains(k)));
            prev = r.fractal_set;
        }
        assert!(prev
            .iter()
            .all(|k| default_report().fractal_set.contains(k)));
    }

    #[test]
    fn full_alphabet_census_is_larger() {
        let settings = ClassifierSettings {
            iterations: 1,
            width: 4,
            search: SearchSettings {
                alphabet: LeaderAlphabet::Full,
                ..Default::default()
            },
            ..Default::default()
        };
        let r = census_order4(&settings).unwrap();
        assert!(default_report()
            .fractal_set
            .iter()
            .all(|k| r.fractal_set.contains(k)));
        assert!(r.fractal_set.len() > 192);
    }

    #[test]
    fn worker_count_independent() {
        let settings = ClassifierSettings {
            iterations: 8,
            width: 256,
            ..Default::default()
        };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| census_order4(&settings).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
