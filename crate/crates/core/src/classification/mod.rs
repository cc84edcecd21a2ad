//! Order-4 fractal / non-fractal classification.
//!
//! Two independent criteria are provided: a bounded search for a leader
//! string that makes R_N a permutation, and the growth of the minimal period
//! of a periodic string under repeated e-transformations.

mod census;
mod period;
pub mod published;
mod search;

use serde::{Deserialize, Serialize};

pub use census::{census_order4, CensusEntry, CensusReport};
pub use period::{minimal_period, period_profile, PeriodSample};
pub use search::{permutation_search, LeaderAlphabet};

use crate::error::{Error, Result};
use crate::inversion::Budget;
use crate::quasigroup::{Quasigroup, Symbol};
use crate::transform::{LeaderString, QString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Fractal,
    NonFractal,
}

impl Label {
    pub fn name(self) -> &'static str {
        match self {
            Label::Fractal => "fractal",
            Label::NonFractal => "non-fractal",
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of the leader-string search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSettings {
    pub n: usize,
    pub max_len: usize,
    pub alphabet: LeaderAlphabet,
    pub budget: Budget,
}

impl Default for SearchSettings {
    fn default() -> Self {
        SearchSettings {
            n: 2,
            max_len: 4,
            alphabet: LeaderAlphabet::Constants,
            budget: Budget::default(),
        }
    }
}

/// Parameters of the period-growth classifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierSettings {
    pub alpha: usize,
    pub iterations: usize,
    pub width: usize,
    pub motif: Vec<Symbol>,
    /// Constant leaders to try; `None` means every symbol. The label uses the
    /// largest final period over these leaders.
    pub leaders: Option<Vec<Symbol>>,
    pub search: SearchSettings,
}

impl Default for ClassifierSettings {
    fn default() -> Self {
        ClassifierSettings {
            alpha: 4,
            iterations: 32,
            width: 4096,
            motif: vec![0, 1, 2, 3],
            leaders: None,
            search: SearchSettings::default(),
        }
    }
}

impl ClassifierSettings {
    /// Largest final period still labelled fractal: `alpha * K * |motif|`.
    pub fn threshold(&self) -> usize {
        self.alpha * self.iterations * self.motif.len()
    }

    fn leaders_for(&self, order: usize) -> Vec<Symbol> {
        match &self.leaders {
            Some(l) => l.clone(),
            None => (0..order).map(|l| l as Symbol).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassLabel {
    /// Period-growth verdict.
    pub label: Label,
    pub permutation_witness: Option<LeaderString>,
    /// Profile under the leader with the largest final period.
    pub period_profile: Vec<PeriodSample>,
    pub profile_leader: Symbol,
    /// Final period for each leader tried.
    pub final_periods: Vec<(Symbol, usize)>,
}

impl ClassLabel {
    /// Period at the last iteration, maximised over leaders.
    pub fn period_at_k(&self) -> usize {
        self.period_profile.last().map_or(0, |s| s.period)
    }

    /// Verdict of the permutation criterion.
    pub fn search_label(&self) -> Label {
        if self.permutation_witness.is_some() {
            Label::Fractal
        } else {
            Label::NonFractal
        }
    }

    pub fn criteria_agree(&self) -> bool {
        self.label == self.search_label()
    }
}

/// Runs both criteria on `q`.
pub fn classify(q: &Quasigroup, settings: &ClassifierSettings) -> Result<ClassLabel> {
    if settings.iterations == 0 {
        return Err(Error::InvalidParameter(
            "iterations must be at least 1".into(),
        ));
    }
    let motif = QString::new(q.order(), settings.motif.clone())?;
    let leaders = settings.leaders_for(q.order());
    if leaders.is_empty() {
        return Err(Error::InvalidParameter(
            "no leaders to classify with".into(),
        ));
    }
    let mut best: Option<(Symbol, Vec<PeriodSample>)> = None;
    let mut final_periods = Vec::with_capacity(leaders.len());
    for &l in &leaders {
        let profile = period_profile(q, l, &motif, settings.width, settings.iterations)?;
        let last = profile.last().expect("iterations >= 1").period;
        final_periods.push((l, last));
        if best
            .as_ref()
            .is_none_or(|(_, p)| last > p.last().unwrap().period)
        {
            best = Some((l, profile));
        }
    }
    let (profile_leader, period_profile) = best.expect("at least one leader");
    let label = if period_profile.last().unwrap().period <= settings.threshold() {
        Label::Fractal
    } else {
        Label::NonFractal
    };
    let s = settings.search;
    let permutation_witness = permutation_search(q, s.n, s.max_len, s.alphabet, s.budget)?;
    Ok(ClassLabel {
        label,
        permutation_witness,
        period_profile,
        profile_leader,
        final_periods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::{lex_index, order4_by_index};
    use crate::quasigroup::fixtures::{q355, z4};

    fn run(q: &Quasigroup) -> ClassLabel {
        classify(q, &ClassifierSettings::default()).unwrap()
    }

    #[test]
    fn anchors() {
        let c = run(&q355());
        assert_eq!(c.label, Label::Fractal);
        assert!(c.permutation_witness.is_some());
        for (k, want) in [
            (46, Label::Fractal),
            (47, Label::NonFractal),
            (6, Label::NonFractal),
        ] {
            let c = run(order4_by_index(k).unwrap());
            assert_eq!(c.label, want, "#{k}");
            assert!(c.criteria_agree(), "#{k}");
        }
    }

    #[test]
    fn z4_criteria_agree() {
        let q = z4();
        let c = run(&q);
        assert!(c.criteria_agree());
        let listed = published::PUBLISHED_FRACTAL.contains(&lex_index(&q).unwrap());
        assert_eq!(c.label == Label::Fractal, listed);
    }

    #[test]
    fn profile_bounds() {
        let c = run(order4_by_index(47).unwrap());
        assert_eq!(c.period_profile.len(), 32);
        assert!(c
            .period_profile
            .iter()
            .all(|s| s.period >= 1 && s.period <= 4096));
        assert_eq!(c.final_periods.len(), 4);
        assert_eq!(
            c.period_at_k(),
            c.final_periods.iter().map(|&(_, p)| p).max().unwrap()
        );
    }

    #[test]
    fn single_leader_setting() {
        let settings = ClassifierSettings {
            leaders: Some(vec![0]),
            ..Default::default()
        };
        let c = classify(order4_by_index(46).unwrap(), &settings).unwrap();
        assert_eq!(c.profile_leader, 0);
        assert_eq!(c.final_periods.len(), 1);
        assert!(classify(
            &q355(),
            &ClassifierSettings {
                iterations: 0,
                ..Default::default()
            }
        )
        .is_err());
    }
}
