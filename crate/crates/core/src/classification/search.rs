use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::inversion::{is_permutation, Budget};
use crate::quasigroup::{Quasigroup, Symbol};
use crate::transform::{LeaderString, LeaderSymbol, OwfSpec};

/// Symbols a candidate leader string may be drawn from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LeaderAlphabet {
    /// Constant symbols of the quasigroup only.
    #[default]
    Constants,
    /// Constants followed by the input references `i_0 .. i_{N-1}`.
    Full,
}

impl LeaderAlphabet {
    pub fn name(self) -> &'static str {
        match self {
            LeaderAlphabet::Constants => "constants",
            LeaderAlphabet::Full => "full",
        }
    }

    fn symbols(self, order: usize, n: usize) -> Vec<LeaderSymbol> {
        let mut out: Vec<LeaderSymbol> = (0..order)
            .map(|c| LeaderSymbol::Const(c as Symbol))
            .collect();
        if self == LeaderAlphabet::Full {
            out.extend((0..n).map(LeaderSymbol::Index));
        }
        out
    }
}

impl std::str::FromStr for LeaderAlphabet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "constants" => Ok(LeaderAlphabet::Constants),
            "full" => Ok(LeaderAlphabet::Full),
            other => Err(format!("unknown leader alphabet `{other}`")),
        }
    }
}

/// First leader string of length at most `max_len` for which R_N over `q`
/// is a bijection on `Q^N`.
///
/// Candidates are visited by length, then lexicographically with constants
/// ordered before input references.
pub fn permutation_search(
    q: &Quasigroup,
    n: usize,
    max_len: usize,
    alphabet: LeaderAlphabet,
    budget: Budget,
) -> Result<Option<LeaderString>> {
    let probe = OwfSpec::new(q.clone(), n, LeaderString::empty())?;
    budget.check(probe.domain_size())?;
    let symbols = alphabet.symbols(q.order(), n);
    for len in 0..=max_len {
        let mut digits = vec![0usize; len];
        loop {
            let leaders: LeaderString = digits
                .iter()
                .map(|&d| symbols[d])
                .collect::<Vec<_>>()
                .into();
            let spec = OwfSpec::new(q.clone(), n, leaders)?;
            if is_permutation(&spec) {
                return Ok(Some(spec.leaders().clone()));
            }
            // odometer, last position fastest
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < symbols.len() {
                    break;
                }
                digits[pos] = 0;
            }
            if digits.iter().all(|&d| d == 0) {
                break;
            }
        }
    }
    Ok(None)
}
