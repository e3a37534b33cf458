//! Exact linear feasibility: does `Ax = b, x >= 0` have a solution?
//!
//! A floating-point phase-1 simplex proposes a final basis; the basis is then
//! solved exactly and its certificate checked. If the check fails the answer
//! comes from a phase-1 simplex over exact rationals using Bland's rule, so
//! every run terminates with an exact verdict. Both outcomes carry a
//! certificate that can be re-checked independently:
//! a nonnegative assignment, or a Farkas vector `y` with `yᵀA <= 0` and
//! `yᵀb > 0`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

mod float;
mod sparse;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRow {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

/// Equality constraints over nonnegative variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub rows: Vec<LinearRow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    Feasible(Vec<Rational>),
    /// Farkas multipliers, one per row.
    Infeasible(Vec<Rational>),
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        LinearSystem {
            num_vars,
            rows: Vec::new(),
        }
    }

    /// Appends a row given as sparse `(variable, coefficient)` terms; repeated
    /// variables accumulate.
    pub fn push_sparse(&mut self, terms: &[(usize, Rational)], rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for (var, c) in terms {
            coeffs[*var] += c;
        }
        self.rows.push(LinearRow { coeffs, rhs });
    }

    pub fn push_dense(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.rows.push(LinearRow { coeffs, rhs });
    }

    pub fn check_dimensions(&self) -> Result<(), LpError> {
        for row in &self.rows {
            if row.coeffs.len() != self.num_vars {
                return Err(LpError::DimensionMismatch {
                    expected: self.num_vars,
                    found: row.coeffs.len(),
                });
            }
        }
        Ok(())
    }
}

/// Decides feasibility and returns a checkable certificate either way.
pub fn solve_feasibility(system: &LinearSystem) -> Result<FeasibilityResult, LpError> {
    system.check_dimensions()?;
    if let Some(result) = float::guess_basis(system).and_then(|b| from_basis(system, &b)) {
        return Ok(result);
    }
    Ok(Tableau::phase_one(system).solve())
}

/// Exact primal solution or Farkas vector for a proposed phase-1 basis,
/// returned only if it verifies.
fn from_basis(system: &LinearSystem, basis: &[usize]) -> Option<FeasibilityResult> {
    let n = system.num_vars;
    let m = system.rows.len();
    let sign = |i: usize| {
        if system.rows[i].rhs.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        }
    };
    // Column k of B is the basic column `basis[k]` of the sign-adjusted [A | I].
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
    let mut transposed: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
    for (k, &col) in basis.iter().enumerate() {
        if col < n {
            for (i, row) in system.rows.iter().enumerate() {
                let c = &row.coeffs[col];
                if !c.is_zero() {
                    let v = c * sign(i);
                    rows[i].push((k, v.clone()));
                    transposed[k].push((i, v));
                }
            }
        } else {
            rows[col - n].push((k, Rational::one()));
            transposed[k].push((col - n, Rational::one()));
        }
    }

    let b: Vec<Rational> = (0..m).map(|i| &system.rows[i].rhs * sign(i)).collect();
    let values = sparse::solve_square(m, rows, b)?;
    let mut x = vec![Rational::zero(); n];
    for (k, &col) in basis.iter().enumerate() {
        if col < n {
            x[col] = values[k].clone();
        }
    }
    if verify_feasible(system, &x).ok()? {
        return Some(FeasibilityResult::Feasible(x));
    }

    let c_b: Vec<Rational> = basis
        .iter()
        .map(|&col| {
            if col < n {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect();
    let y = sparse::solve_square(m, transposed, c_b)?;
    let witness: Vec<Rational> = y
        .into_iter()
        .enumerate()
        .map(|(i, v)| v * sign(i))
        .collect();
    if verify_farkas(system, &witness).ok()? {
        return Some(FeasibilityResult::Infeasible(witness));
    }
    None
}

/// `true` iff `assignment` is nonnegative and satisfies every row exactly.
pub fn verify_feasible(system: &LinearSystem, assignment: &[Rational]) -> Result<bool, LpError> {
    system.check_dimensions()?;
    if assignment.len() != system.num_vars {
        return Err(LpError::DimensionMismatch {
            expected: system.num_vars,
            found: assignment.len(),
        });
    }
    if assignment.iter().any(Signed::is_negative) {
        return Ok(false);
    }
    Ok(system.rows.iter().all(|row| {
        let lhs: Rational = row
            .coeffs
            .iter()
            .zip(assignment)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| c * x)
            .sum();
        lhs == row.rhs
    }))
}

/// `true` iff `witness` proves infeasibility: `(yᵀA)_j <= 0` for all `j`
/// and `yᵀb > 0`.
pub fn verify_farkas(system: &LinearSystem, witness: &[Rational]) -> Result<bool, LpError> {
    system.check_dimensions()?;
    if witness.len() != system.rows.len() {
        return Err(LpError::DimensionMismatch {
            expected: system.rows.len(),
            found: witness.len(),
        });
    }
    let mut combined = vec![Rational::zero(); system.num_vars];
    let mut rhs = Rational::zero();
    for (y, row) in witness.iter().zip(&system.rows) {
        if y.is_zero() {
            continue;
        }
        for (acc, c) in combined.iter_mut().zip(&row.coeffs) {
            if !c.is_zero() {
                *acc += y * c;
            }
        }
        rhs += y * &row.rhs;
    }
    Ok(rhs.is_positive() && combined.iter().all(|c| !c.is_positive()))
}

/// Dense phase-1 tableau `[A | I | b]` with one artificial per row.
struct Tableau {
    num_vars: usize,
    rows: Vec<Vec<Rational>>,
    /// Reduced costs of all columns; last entry is minus the objective.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    /// Rows with a negative right-hand side are negated on entry.
    negated: Vec<bool>,
}

impl Tableau {
    fn phase_one(system: &LinearSystem) -> Self {
        let n = system.num_vars;
        let m = system.rows.len();
        let width = n + m + 1;
        let mut rows = Vec::with_capacity(m);
        let mut negated = Vec::with_capacity(m);
        let mut cost = vec![Rational::zero(); width];
        for (i, row) in system.rows.iter().enumerate() {
            let negate = row.rhs.is_negative();
            let entry = |q: &Rational| if negate { -q } else { q.clone() };
            let mut t = vec![Rational::zero(); width];
            for (j, c) in row.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    t[j] = entry(c);
                    cost[j] -= &t[j];
                }
            }
            t[n + i] = Rational::one();
            t[width - 1] = entry(&row.rhs);
            cost[width - 1] -= &t[width - 1];
            rows.push(t);
            negated.push(negate);
        }
        Tableau {
            num_vars: n,
            rows,
            cost,
            basis: (n..n + m).collect(),
            negated,
        }
    }

    fn solve(mut self) -> FeasibilityResult {
        while let Some(col) = self.entering() {
            let row = self
                .leaving(col)
                .expect("phase-1 objective is bounded below, so a pivot row exists");
            self.pivot(row, col);
        }
        self.certificate()
    }

    /// Bland: lowest-index original column with negative reduced cost.
    /// Artificial columns never re-enter.
    fn entering(&self) -> Option<usize> {
        (0..self.num_vars).find(|&j| self.cost[j].is_negative())
    }

    /// Minimum ratio test, ties broken by lowest basic variable index.
    fn leaving(&self, col: usize) -> Option<usize> {
        let rhs = self.cost.len() - 1;
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let ratio = &row[rhs] / &row[col];
            let better = match &best {
                None => true,
                Some((b, r)) => match ratio.cmp(r) {
                    Ordering::Less => true,
                    Ordering::Equal => self.basis[i] < self.basis[*b],
                    Ordering::Greater => false,
                },
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let support: Vec<usize> = pivot_row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, _)| j)
            .collect();

        let eliminate = |target: &mut Vec<Rational>| {
            if target[col].is_zero() {
                return;
            }
            let factor = target[col].clone();
            for &j in &support {
                target[j] -= &factor * &pivot_row[j];
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    fn certificate(self) -> FeasibilityResult {
        let rhs = self.cost.len() - 1;
        if self.cost[rhs].is_zero() {
            let mut x = vec![Rational::zero(); self.num_vars];
            for (row, &var) in self.rows.iter().zip(&self.basis) {
                if var < self.num_vars {
                    x[var] = row[rhs].clone();
                }
            }
            FeasibilityResult::Feasible(x)
        } else {
            // Simplex multipliers of the flipped system: y_i = c_art - reduced cost.
            let witness = self
                .negated
                .iter()
                .enumerate()
                .map(|(i, &negate)| {
                    let y = Rational::one() - &self.cost[self.num_vars + i];
                    if negate {
                        -y
                    } else {
                        y
                    }
                })
                .collect();
            FeasibilityResult::Infeasible(witness)
        }
    }
}
