//! e-transformations, leader sequences and the functions R1, R2 and R_N.
//!
//! Leader sequences are always read left to right as application order:
//! the first leader listed drives the first e-transformation applied. The
//! reversed input contributes `(a_{N-1}, .., a_0)` in that order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quasigroup::{Quasigroup, Symbol};

/// A string over the alphabet of a quasigroup of a given order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QString {
    order: usize,
    symbols: Vec<Symbol>,
}

impl QString {
    pub fn new(order: usize, symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(&x) = symbols.iter().find(|&&x| x as usize >= order) {
            return Err(Error::SymbolOutOfRange {
                symbol: x as usize,
                order,
            });
        }
        Ok(QString { order, symbols })
    }

    pub(crate) fn from_raw(order: usize, symbols: Vec<Symbol>) -> Self {
        debug_assert!(symbols.iter().all(|&x| (x as usize) < order));
        QString { order, symbols }
    }

    /// The `len`-symbol string whose base-`order` value (most significant
    /// symbol first) is `value`. For `order` a power of two this is the
    /// fixed-width bit packing, e.g. `(3, 0)` is `1100 = 12` at order 4.
    pub fn from_index(order: usize, len: usize, mut value: u64) -> Result<Self> {
        let mut symbols = vec![0; len];
        for slot in symbols.iter_mut().rev() {
            *slot = (value % order as u64) as Symbol;
            value /= order as u64;
        }
        if value != 0 {
            return Err(Error::SymbolOutOfRange {
                symbol: value as usize,
                order,
            });
        }
        Ok(QString { order, symbols })
    }

    /// Inverse of [`QString::from_index`].
    pub fn to_index(&self) -> u64 {
        pack(self.order, &self.symbols)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// `(a_{N-1}, .., a_0)`.
    pub fn reversed(&self) -> QString {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        QString {
            order: self.order,
            symbols,
        }
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }
}

pub(crate) fn pack(order: usize, symbols: &[Symbol]) -> u64 {
    symbols
        .iter()
        .fold(0u64, |acc, &x| acc * order as u64 + x as u64)
}

pub(crate) fn unpack_into(order: usize, mut value: u64, out: &mut [Symbol]) {
    for slot in out.iter_mut().rev() {
        *slot = (value % order as u64) as Symbol;
        value /= order as u64;
    }
}

impl fmt::Debug for QString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QString{:?}", self.symbols)
    }
}

impl fmt::Display for QString {
    /// Whitespace-separated base-10 symbols.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn check_string(q: &Quasigroup, a: &QString) -> Result<()> {
    if a.order != q.order() {
        return Err(Error::OrderMismatch {
            quasigroup: q.order(),
            string: a.order,
        });
    }
    if a.is_empty() {
        return Err(Error::EmptyString);
    }
    Ok(())
}

fn check_leader(q: &Quasigroup, l: Symbol) -> Result<()> {
    if (l as usize) < q.order() {
        Ok(())
    } else {
        Err(Error::SymbolOutOfRange {
            symbol: l as usize,
            order: q.order(),
        })
    }
}

/// In-place e-transformation; symbols must already be in range.
#[inline]
pub(crate) fn e_in_place(q: &Quasigroup, leader: Symbol, buf: &mut [Symbol]) {
    let mut b = leader;
    for x in buf.iter_mut() {
        b = q.mul_unchecked(b, *x);
        *x = b;
    }
}

/// `b_0 = l * a_0`, `b_i = b_{i-1} * a_i`.
pub fn e_transform(q: &Quasigroup, leader: Symbol, a: &QString) -> Result<QString> {
    check_string(q, a)?;
    check_leader(q, leader)?;
    let mut out = a.symbols.clone();
    e_in_place(q, leader, &mut out);
    Ok(QString::from_raw(a.order, out))
}

/// Two-sided inverse of [`e_transform`] for a fixed leader.
pub fn e_inverse(q: &Quasigroup, leader: Symbol, b: &QString) -> Result<QString> {
    check_string(q, b)?;
    check_leader(q, leader)?;
    let mut prev = leader;
    let out = b
        .symbols
        .iter()
        .map(|&x| {
            let a = q.ldiv_unchecked(prev, x);
            prev = x;
            a
        })
        .collect();
    Ok(QString::from_raw(b.order, out))
}

/// E-transformation: one e-transformation per leader, first leader first.
pub fn apply_leader_sequence(q: &Quasigroup, leaders: &[Symbol], a: &QString) -> Result<QString> {
    check_string(q, a)?;
    for &l in leaders {
        check_leader(q, l)?;
    }
    let mut out = a.symbols.clone();
    for &l in leaders {
        e_in_place(q, l, &mut out);
    }
    Ok(QString::from_raw(a.order, out))
}

/// Single reverse transformation: leaders `(a_{N-1}, .., a_0)`.
pub fn r1(q: &Quasigroup, a: &QString) -> Result<QString> {
    check_string(q, a)?;
    apply_leader_sequence(q, a.reversed().symbols(), a)
}

/// Double reverse transformation: the reversed input twice, `2N` steps.
pub fn r2(q: &Quasigroup, a: &QString) -> Result<QString> {
    check_string(q, a)?;
    let rev = a.reversed();
    let leaders: Vec<Symbol> = rev.symbols().iter().chain(rev.symbols()).copied().collect();
    apply_leader_sequence(q, &leaders, a)
}

/// One entry of a preprocessing leader string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LeaderSymbol {
    /// A fixed symbol.
    Const(Symbol),
    /// `i_j`: the j-th symbol of the input string.
    Index(usize),
}

impl fmt::Display for LeaderSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeaderSymbol::Const(c) => write!(f, "{c}"),
            LeaderSymbol::Index(j) => write!(f, "i{j}"),
        }
    }
}

/// Preprocessing leader string; may be empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeaderString(pub Vec<LeaderSymbol>);

impl LeaderString {
    pub fn empty() -> Self {
        LeaderString(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LeaderSymbol> {
        self.0.iter()
    }
}

impl From<Vec<LeaderSymbol>> for LeaderString {
    fn from(v: Vec<LeaderSymbol>) -> Self {
        LeaderString(v)
    }
}

impl fmt::Display for LeaderString {
    /// Comma-separated tokens, e.g. `3,3,i1,i0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// A fully determined member of the family R_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwfSpec {
    q: Quasigroup,
    n: usize,
    leaders: LeaderString,
}

impl OwfSpec {
    pub fn new(q: Quasigroup, n: usize, leaders: LeaderString) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyString);
        }
        for l in leaders.iter() {
            match *l {
                LeaderSymbol::Const(c) => check_leader(&q, c)?,
                LeaderSymbol::Index(j) if j >= n => {
                    return Err(Error::IndexLeaderOutOfRange { index: j, len: n })
                }
                LeaderSymbol::Index(_) => {}
            }
        }
        Ok(OwfSpec { q, n, leaders })
    }

    pub fn quasigroup(&self) -> &Quasigroup {
        &self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leaders(&self) -> &LeaderString {
        &self.leaders
    }

    /// Number of e-transformations applied: `|L| + 2N`.
    pub fn steps(&self) -> usize {
        self.leaders.len() + 2 * self.n
    }

    /// Size of the domain `s^N`, saturating at `u64::MAX`.
    pub fn domain_size(&self) -> u64 {
        (self.q.order() as u64)
            .checked_pow(self.n as u32)
            .unwrap_or(u64::MAX)
    }

    fn check_input(&self, a: &QString) -> Result<()> {
        if a.order() != self.q.order() {
            return Err(Error::OrderMismatch {
                quasigroup: self.q.order(),
                string: a.order(),
            });
        }
        if a.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: a.len(),
            });
        }
        Ok(())
    }

    /// Concrete leaders for input `a`: `L` with indices resolved against `a`,
    /// followed by the reversed input twice.
    pub fn resolve_leaders(&self, a: &QString) -> Result<Vec<Symbol>> {
        self.check_input(a)?;
        let mut out = Vec::with_capacity(self.steps());
        self.resolve_into(a.symbols(), &mut out);
        Ok(out)
    }

    fn resolve_into(&self, a: &[Symbol], out: &mut Vec<Symbol>) {
        out.clear();
        out.extend(self.leaders.iter().map(|l| match *l {
            LeaderSymbol::Const(c) => c,
            LeaderSymbol::Index(j) => a[j],
        }));
        for _ in 0..2 {
            out.extend(a.iter().rev());
        }
    }

    /// Evaluates R_N on `input` (length `n`, symbols in range) into `out`
    /// without allocating. Every index leader refers to `input`, never to an
    /// intermediate string.
    #[inline]
    pub(crate) fn eval_into(&self, input: &[Symbol], out: &mut [Symbol]) {
        out.copy_from_slice(input);
        for l in self.leaders.iter() {
            let leader = match *l {
                LeaderSymbol::Const(c) => c,
                LeaderSymbol::Index(j) => input[j],
            };
            e_in_place(&self.q, leader, out);
        }
        for _ in 0..2 {
            for &leader in input.iter().rev() {
                e_in_place(&self.q, leader, out);
            }
        }
    }

    /// Table reads per forward evaluation.
    pub(crate) fn lookups_per_eval(&self) -> u64 {
        (self.steps() * self.n) as u64
    }
}

/// `E_{L Ā Ā}(A)` for the given spec.
pub fn r_n(spec: &OwfSpec, a: &QString) -> Result<QString> {
    spec.check_input(a)?;
    let mut out = vec![0; spec.n];
    spec.eval_into(a.symbols(), &mut out);
    Ok(QString::from_raw(a.order(), out))
}
