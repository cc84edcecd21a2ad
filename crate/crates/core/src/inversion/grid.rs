//! Table-filling inversion of E-transformations whose leaders come from the
//! unknown input.
//!
//! The grid has one row per intermediate string: row 0 is the unknown input
//! `A`, row `K` is the known output `B`, and row `i` is the result of the
//! i-th e-transformation. Every cell outside row 0 is tied to two others by
//! `left * right = result`, where `left` is the cell to its left (or the
//! step's leader for column 0) and `right` the cell above it. Any two known
//! members of such a triple force the third through `mul`, `ldiv` or `rdiv`.
//!
//! The search fills what the output alone forces, then guesses input
//! symbols `a_0, a_1, ..` in that order (symbols ascending), propagating to a
//! fixpoint after each guess and backtracking on contradictions. A branch
//! closes when row 0 is fully known; it is then checked by forward
//! evaluation.

use std::time::Instant;

use super::{AttackOptions, AttackTrace};
use crate::error::{Error, Result};
use crate::quasigroup::{Quasigroup, Symbol};
use crate::transform::{r1, r2, r_n, LeaderSymbol, OwfSpec, QString};

const UNKNOWN: u16 = u16::MAX;

/// Leader of one transformation step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepLeader {
    Const(Symbol),
    /// The input symbol at this position (a cell of row 0).
    Input(usize),
}

#[derive(Clone, Copy)]
enum Slot {
    Known(Symbol),
    Var(usize),
}

/// Partially filled computation scheme of an E-transformation.
#[derive(Debug, Clone)]
pub struct AttackGrid<'q> {
    q: &'q Quasigroup,
    n: usize,
    plan: Vec<StepLeader>,
    cells: Vec<u16>,
    // input column -> steps whose leader is that input symbol
    leader_uses: Vec<Vec<usize>>,
    trail: Vec<usize>,
    queue: Vec<(usize, usize)>,
    lookups: u64,
}

impl<'q> AttackGrid<'q> {
    /// Grid for the leader plan `plan` with the last row set to `b`.
    pub fn new(q: &'q Quasigroup, plan: Vec<StepLeader>, b: &QString) -> Result<Self> {
        let n = b.len();
        if b.order() != q.order() {
            return Err(Error::OrderMismatch {
                quasigroup: q.order(),
                string: b.order(),
            });
        }
        if n == 0 {
            return Err(Error::EmptyString);
        }
        let mut leader_uses = vec![Vec::new(); n];
        for (i, l) in plan.iter().enumerate() {
            match *l {
                StepLeader::Input(j) if j >= n => {
                    return Err(Error::IndexLeaderOutOfRange { index: j, len: n })
                }
                StepLeader::Input(j) => leader_uses[j].push(i + 1),
                StepLeader::Const(c) if c as usize >= q.order() => {
                    return Err(Error::SymbolOutOfRange {
                        symbol: c as usize,
                        order: q.order(),
                    })
                }
                StepLeader::Const(_) => {}
            }
        }
        let steps = plan.len();
        let mut grid = AttackGrid {
            q,
            n,
            plan,
            cells: vec![UNKNOWN; (steps + 1) * n],
            leader_uses,
            trail: Vec::new(),
            queue: Vec::new(),
            lookups: 0,
        };
        for (j, &x) in b.symbols().iter().enumerate() {
            grid.cells[steps * n + j] = x as u16;
        }
        Ok(grid)
    }

    /// Leaders `(a_{N-1}, .., a_0)`: the scheme of R1.
    pub fn r1_plan(n: usize) -> Vec<StepLeader> {
        (0..n).rev().map(StepLeader::Input).collect()
    }

    /// The reversed input twice: the scheme of R2.
    pub fn r2_plan(n: usize) -> Vec<StepLeader> {
        let mut plan = Self::r1_plan(n);
        plan.extend(Self::r1_plan(n));
        plan
    }

    pub fn rn_plan(spec: &OwfSpec) -> Vec<StepLeader> {
        let mut plan: Vec<StepLeader> = spec
            .leaders()
            .iter()
            .map(|l| match *l {
                LeaderSymbol::Const(c) => StepLeader::Const(c),
                LeaderSymbol::Index(j) => StepLeader::Input(j),
            })
            .collect();
        plan.extend(Self::r2_plan(spec.n()));
        plan
    }

    /// Number of transformation steps `K`; rows are `0..=K`.
    pub fn steps(&self) -> usize {
        self.plan.len()
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<Symbol> {
        match self.cells[row * self.n + col] {
            UNKNOWN => None,
            x => Some(x as Symbol),
        }
    }

    /// Leader of step `step` (1-based), if known.
    pub fn leader(&self, step: usize) -> Option<Symbol> {
        match self.plan[step - 1] {
            StepLeader::Const(c) => Some(c),
            StepLeader::Input(j) => self.cell(0, j),
        }
    }

    pub fn known_cells(&self) -> usize {
        self.cells.iter().filter(|&&c| c != UNKNOWN).count()
    }

    pub fn lookups(&self) -> u64 {
        self.lookups
    }

    /// The input row, once fully known.
    pub fn input(&self) -> Option<QString> {
        (0..self.n)
            .map(|j| self.cell(0, j))
            .collect::<Option<Vec<_>>>()
            .map(|v| QString::new(self.q.order(), v).expect("cells hold valid symbols"))
    }

    fn left_slot(&self, step: usize, col: usize) -> Slot {
        if col > 0 {
            Slot::Var(step * self.n + col - 1)
        } else {
            match self.plan[step - 1] {
                StepLeader::Const(c) => Slot::Known(c),
                StepLeader::Input(j) => Slot::Var(j),
            }
        }
    }

    fn value(&self, slot: Slot) -> Option<Symbol> {
        match slot {
            Slot::Known(x) => Some(x),
            Slot::Var(v) => match self.cells[v] {
                UNKNOWN => None,
                x => Some(x as Symbol),
            },
        }
    }

    fn assign(&mut self, var: usize, x: Symbol) {
        debug_assert_eq!(self.cells[var], UNKNOWN);
        self.cells[var] = x as u16;
        self.trail.push(var);
        let (row, col) = (var / self.n, var % self.n);
        let steps = self.steps();
        if row >= 1 {
            self.queue.push((row, col));
            if col + 1 < self.n {
                self.queue.push((row, col + 1));
            }
        } else {
            for k in 0..self.leader_uses[col].len() {
                let step = self.leader_uses[col][k];
                self.queue.push((step, 0));
            }
        }
        if row < steps {
            self.queue.push((row + 1, col));
        }
    }

    /// Fills every cell forced by the known ones. Returns `false` on a
    /// contradiction; the caller is expected to undo to a saved mark.
    pub fn propagate(&mut self) -> bool {
        while let Some((step, col)) = self.queue.pop() {
            let left = self.left_slot(step, col);
            let right = Slot::Var((step - 1) * self.n + col);
            let result = step * self.n + col;
            let l = self.value(left);
            let r = self.value(right);
            let z = self.value(Slot::Var(result));
            if [l, r, z].iter().filter(|x| x.is_some()).count() < 2 {
                continue;
            }
            self.lookups += 1;
            match (l, r, z) {
                (Some(l), Some(r), Some(z)) => {
                    if self.q.mul_unchecked(l, r) != z {
                        self.queue.clear();
                        return false;
                    }
                }
                (Some(l), Some(r), None) => self.assign(result, self.q.mul_unchecked(l, r)),
                (Some(l), None, Some(z)) => {
                    let Slot::Var(v) = right else { unreachable!() };
                    self.assign(v, self.q.ldiv_unchecked(l, z));
                }
                (None, Some(r), Some(z)) => {
                    let Slot::Var(v) = left else { unreachable!() };
                    self.assign(v, self.q.rdiv_unchecked(r, z));
                }
                _ => unreachable!(),
            }
        }
        true
    }

    /// Seeds propagation from the known output row.
    fn start(&mut self) -> bool {
        let steps = self.steps();
        for col in 0..self.n {
            self.queue.push((steps, col));
        }
        for (step, l) in self.plan.iter().enumerate() {
            if matches!(l, StepLeader::Const(_)) {
                self.queue.push((step + 1, 0));
            }
        }
        self.propagate()
    }

    fn mark(&self) -> usize {
        self.trail.len()
    }

    fn undo(&mut self, mark: usize) {
        for var in self.trail.drain(mark..) {
            self.cells[var] = UNKNOWN;
        }
        self.queue.clear();
    }

    /// Guesses `symbol` for input position `col` and propagates.
    pub fn guess(&mut self, col: usize, symbol: Symbol) -> bool {
        self.assign(col, symbol);
        self.propagate()
    }
}

struct Search<'q, F> {
    grid: AttackGrid<'q>,
    verify: F,
    opts: AttackOptions,
    guesses: u64,
    found: Vec<QString>,
}

impl<F: FnMut(&QString, &mut u64) -> bool> Search<'_, F> {
    fn first_unknown(&self) -> Option<usize> {
        (0..self.grid.n).find(|&j| self.grid.cell(0, j).is_none())
    }

    /// Returns `true` when the search should stop (first-hit mode).
    fn close(&mut self) -> bool {
        let candidate = self.grid.input().expect("row 0 complete");
        if (self.verify)(&candidate, &mut self.grid.lookups) {
            self.found.push(candidate);
            return self.opts.first_hit;
        }
        false
    }

    /// Explores every symbol for input position `col`. A guess tuple is
    /// counted once it terminates: by contradiction or by closing row 0.
    fn branch(&mut self, col: usize) -> Result<bool> {
        for x in 0..self.grid.q.order() {
            let mark = self.grid.mark();
            let stop = if !self.grid.guess(col, x as Symbol) {
                self.count()?;
                false
            } else if let Some(next) = self.first_unknown() {
                self.branch(next)?
            } else {
                self.count()?;
                self.close()
            };
            self.grid.undo(mark);
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn count(&mut self) -> Result<()> {
        self.guesses += 1;
        self.opts.budget.check(self.guesses)
    }

    fn run(&mut self) -> Result<()> {
        match self.first_unknown() {
            Some(col) => self.branch(col).map(|_| ()),
            None => {
                self.close();
                Ok(())
            }
        }
    }
}

fn run_attack<F>(
    q: &Quasigroup,
    plan: Vec<StepLeader>,
    b: &QString,
    opts: AttackOptions,
    verify: F,
) -> Result<AttackTrace>
where
    F: FnMut(&QString, &mut u64) -> bool,
{
    let start = Instant::now();
    let mut warnings = Vec::new();
    let profile = q.algebraic_probe();
    if profile.commutative {
        warnings.push("quasigroup is commutative".to_string());
    }
    if profile.associative {
        warnings.push("quasigroup is associative".to_string());
    }
    let mut grid = AttackGrid::new(q, plan, b)?;
    let mut found = Vec::new();
    let mut guesses = 0;
    let mut lookups = 0;
    if grid.start() {
        let mut search = Search {
            grid,
            verify,
            opts,
            guesses: 0,
            found: Vec::new(),
        };
        search.run()?;
        found = search.found;
        guesses = search.guesses;
        lookups = search.grid.lookups;
    } else {
        lookups += grid.lookups;
    }
    found.sort();
    Ok(AttackTrace {
        preimages: found,
        guesses,
        lookups,
        elapsed: start.elapsed(),
        warnings,
    })
}

/// All preimages of `b` under R1.
pub fn attack_r1(q: &Quasigroup, b: &QString, opts: AttackOptions) -> Result<AttackTrace> {
    let n = b.len();
    run_attack(q, AttackGrid::r1_plan(n), b, opts, |a, lookups| {
        *lookups += (n * n) as u64;
        r1(q, a).is_ok_and(|out| &out == b)
    })
}

/// All preimages of `b` under R2.
pub fn attack_r2(q: &Quasigroup, b: &QString, opts: AttackOptions) -> Result<AttackTrace> {
    let n = b.len();
    run_attack(q, AttackGrid::r2_plan(n), b, opts, |a, lookups| {
        *lookups += (2 * n * n) as u64;
        r2(q, a).is_ok_and(|out| &out == b)
    })
}

/// All preimages of `b` under an arbitrary member of R_N.
pub fn attack_rn(spec: &OwfSpec, b: &QString, opts: AttackOptions) -> Result<AttackTrace> {
    if b.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            actual: b.len(),
        });
    }
    let per_eval = (spec.steps() * spec.n()) as u64;
    run_attack(
        spec.quasigroup(),
        AttackGrid::rn_plan(spec),
        b,
        opts,
        |a, lookups| {
            *lookups += per_eval;
            r_n(spec, a).is_ok_and(|out| &out == b)
        },
    )
}
