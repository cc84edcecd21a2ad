//! Finite quasigroups stored as Latin squares.
//!
//! A [`Quasigroup`] is only ever constructed through [`Quasigroup::validate`],
//! so every value in circulation satisfies the Latin-square invariants and
//! carries precomputed left and right division tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symbol of the alphabet `{0, .., s-1}`.
pub type Symbol = u8;

/// Largest supported order; symbols must fit in a [`Symbol`].
pub const MAX_ORDER: usize = 256;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quasigroup {
    order: usize,
    table: Vec<Symbol>,
    // ldiv[u*s + v] = x with u*x = v; rdiv[u*s + v] = y with y*u = v
    ldiv: Vec<Symbol>,
    rdiv: Vec<Symbol>,
}

impl Quasigroup {
    /// Checks that `rows` is a Latin square and builds the quasigroup.
    ///
    /// Checks run in the order: shape, entry range, rows, columns.
    pub fn validate<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self> {
        let s = rows.len();
        if s == 0 || s > MAX_ORDER || rows.iter().any(|r| r.as_ref().len() != s) {
            return Err(Error::NotSquare);
        }
        for (row, r) in rows.iter().enumerate() {
            if let Some(col) = r.as_ref().iter().position(|&x| x >= s) {
                return Err(Error::EntryOutOfRange { row, col });
            }
        }
        let table: Vec<Symbol> = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&x| x as Symbol))
            .collect();
        Self::from_flat(s, table)
    }

    /// Builds a quasigroup from a row-major table of order `s`.
    pub fn from_flat(s: usize, table: Vec<Symbol>) -> Result<Self> {
        if s == 0 || s > MAX_ORDER || table.len() != s * s {
            return Err(Error::NotSquare);
        }
        if let Some(i) = table.iter().position(|&x| x as usize >= s) {
            return Err(Error::EntryOutOfRange {
                row: i / s,
                col: i % s,
            });
        }
        let mut seen = vec![false; s];
        for row in 0..s {
            seen.fill(false);
            for col in 0..s {
                let x = table[row * s + col] as usize;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::RowNotPermutation(row));
                }
            }
        }
        for col in 0..s {
            seen.fill(false);
            for row in 0..s {
                let x = table[row * s + col] as usize;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::ColNotPermutation(col));
                }
            }
        }

        let mut ldiv = vec![0; s * s];
        let mut rdiv = vec![0; s * s];
        for u in 0..s {
            for x in 0..s {
                let v = table[u * s + x] as usize;
                ldiv[u * s + v] = x as Symbol;
                // u * x = v, so u is the left factor solving y * x = v
                rdiv[x * s + v] = u as Symbol;
            }
        }
        Ok(Quasigroup {
            order: s,
            table,
            ldiv,
            rdiv,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[Symbol] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    fn check(&self, x: Symbol) -> Result<()> {
        if (x as usize) < self.order {
            Ok(())
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: x as usize,
                order: self.order,
            })
        }
    }

    /// `u * v`.
    pub fn mul(&self, u: Symbol, v: Symbol) -> Result<Symbol> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    /// The unique `x` with `u * x = v`.
    pub fn ldiv(&self, u: Symbol, v: Symbol) -> Result<Symbol> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.ldiv_unchecked(u, v))
    }

    /// The unique `y` with `y * u = v`.
    pub fn rdiv(&self, u: Symbol, v: Symbol) -> Result<Symbol> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.rdiv_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, u: Symbol, v: Symbol) -> Symbol {
        self.table[u as usize * self.order + v as usize]
    }

    #[inline]
    pub(crate) fn ldiv_unchecked(&self, u: Symbol, v: Symbol) -> Symbol {
        self.ldiv[u as usize * self.order + v as usize]
    }

    #[inline]
    pub(crate) fn rdiv_unchecked(&self, u: Symbol, v: Symbol) -> Symbol {
        self.rdiv[u as usize * self.order + v as usize]
    }

    /// Exhaustive commutativity and associativity check.
    pub fn algebraic_probe(&self) -> AlgebraicProfile {
        let s = self.order;
        let sym = |x: usize| x as Symbol;
        let mut commutative_witness = None;
        'comm: for u in 0..s {
            for v in u + 1..s {
                if self.mul_unchecked(sym(u), sym(v)) != self.mul_unchecked(sym(v), sym(u)) {
                    commutative_witness = Some((sym(u), sym(v)));
                    break 'comm;
                }
            }
        }
        let mut associative_witness = None;
        'assoc: for u in 0..self.order {
            for v in 0..self.order {
                let uv = self.mul_unchecked(sym(u), sym(v));
                for w in 0..self.order {
                    let left = self.mul_unchecked(uv, sym(w));
                    let right = self.mul_unchecked(sym(u), self.mul_unchecked(sym(v), sym(w)));
                    if left != right {
                        associative_witness = Some((sym(u), sym(v), sym(w)));
                        break 'assoc;
                    }
                }
            }
        }
        AlgebraicProfile {
            commutative: commutative_witness.is_none(),
            associative: associative_witness.is_none(),
            commutative_witness,
            associative_witness,
        }
    }
}

impl fmt::Debug for Quasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quasigroup")
            .field("order", &self.order)
            .field("rows", &self.rows())
            .finish()
    }
}

/// Result of [`Quasigroup::algebraic_probe`].
///
/// A witness is present exactly when the corresponding property fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicProfile {
    pub commutative: bool,
    pub associative: bool,
    /// `(u, v)` with `u*v != v*u`.
    pub commutative_witness: Option<(Symbol, Symbol)>,
    /// `(u, v, w)` with `(u*v)*w != u*(v*w)`.
    pub associative_witness: Option<(Symbol, Symbol, Symbol)>,
}

impl AlgebraicProfile {
    /// Both hypotheses of the lookup-table attack theorems hold.
    pub fn is_unstructured(&self) -> bool {
        !self.commutative && !self.associative
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub const Q355: [[usize; 4]; 4] = [[2, 1, 0, 3], [3, 0, 1, 2], [1, 2, 3, 0], [0, 3, 2, 1]];
    pub const Z4: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 2, 3, 0], [2, 3, 0, 1], [3, 0, 1, 2]];

    pub fn q355() -> Quasigroup {
        Quasigroup::validate(&Q355).unwrap()
    }

    pub fn z4() -> Quasigroup {
        Quasigroup::validate(&Z4).unwrap()
    }

    pub fn trivial() -> Quasigroup {
        Quasigroup::validate(&[[0usize]]).unwrap()
    }
}
