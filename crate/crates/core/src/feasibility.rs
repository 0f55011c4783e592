//! Exact strict feasibility for homogeneous rational systems.
//!
//! A [`HomogeneousSystem`] asks for `x` with `E x = 0` and `S x > 0`
//! componentwise. By the Motzkin transposition theorem exactly one of the
//! following holds:
//!
//! * there is such an `x`, or
//! * there are `y_S >= 0`, `y_S != 0` and a free `y_E` with
//!   `S^T y_S + E^T y_E = 0`.
//!
//! [`solve_homogeneous`] always returns one of the two, so both positive and
//! negative answers can be re-checked by substitution.
//!
//! Because the system is homogeneous, `S x > 0` is feasible iff `S x >= 1`
//! is. The solver therefore runs a two-phase simplex (Bland's rule, exact
//! rationals) on `E x = 0, S x >= 1` and, among the feasible points, returns
//! a vertex minimising the sum of the strict-row values. When that vertex is
//! unique the answer does not depend on pivoting details at all. If the
//! primal side is infeasible, the alternative system with the normalisation
//! `sum(y_S) = 1` is solved the same way.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::lattice::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("a system needs at least one column")]
    NoColumns,
    #[error("a system needs at least one strict row")]
    NoStrictRows,
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
}

/// Equality rows `E` and strict-positivity rows `S` over a shared set of
/// columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousSystem {
    columns: usize,
    equalities: Vec<Vec<Rational>>,
    stricts: Vec<Vec<Rational>>,
}

impl HomogeneousSystem {
    pub fn new(
        columns: usize,
        equalities: Vec<Vec<Rational>>,
        stricts: Vec<Vec<Rational>>,
    ) -> Result<Self, SystemError> {
        if columns == 0 {
            return Err(SystemError::NoColumns);
        }
        if stricts.is_empty() {
            return Err(SystemError::NoStrictRows);
        }
        for (row, r) in equalities.iter().chain(stricts.iter()).enumerate() {
            if r.len() != columns {
                return Err(SystemError::RaggedRow {
                    row,
                    found: r.len(),
                    expected: columns,
                });
            }
        }
        Ok(Self {
            columns,
            equalities,
            stricts,
        })
    }

    /// Convenience constructor from integer rows.
    pub fn from_integers(
        columns: usize,
        equalities: &[Vec<i64>],
        stricts: &[Vec<i64>],
    ) -> Result<Self, SystemError> {
        let conv = |rows: &[Vec<i64>]| -> Vec<Vec<Rational>> {
            rows.iter()
                .map(|r| r.iter().map(|&e| Rational::from_integer(e.into())).collect())
                .collect()
        };
        Self::new(columns, conv(equalities), conv(stricts))
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn equalities(&self) -> &[Vec<Rational>] {
        &self.equalities
    }

    pub fn stricts(&self) -> &[Vec<Rational>] {
        &self.stricts
    }
}

/// Either a strict solution or a certificate that none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityAnswer {
    Solution(Vec<Rational>),
    /// Multipliers for the strict rows (non-negative, not all zero) and for
    /// the equality rows (free) whose combination of rows vanishes.
    Refutation {
        strict: Vec<Rational>,
        equality: Vec<Rational>,
    },
}

impl FeasibilityAnswer {
    pub fn is_solution(&self) -> bool {
        matches!(self, FeasibilityAnswer::Solution(_))
    }

    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityAnswer::Solution(x) => Some(x),
            FeasibilityAnswer::Refutation { .. } => None,
        }
    }

    /// Re-checks the answer against `sys` by exact substitution.
    pub fn verify(&self, sys: &HomogeneousSystem) -> bool {
        match self {
            FeasibilityAnswer::Solution(x) => {
                x.len() == sys.columns
                    && sys.equalities.iter().all(|r| dot(r, x).is_zero())
                    && sys.stricts.iter().all(|r| dot(r, x).is_positive())
            }
            FeasibilityAnswer::Refutation { strict, equality } => {
                if strict.len() != sys.stricts.len() || equality.len() != sys.equalities.len() {
                    return false;
                }
                if strict.iter().any(Signed::is_negative) || strict.iter().all(Zero::is_zero) {
                    return false;
                }
                (0..sys.columns).all(|k| {
                    let s: Rational = sys
                        .stricts
                        .iter()
                        .zip(strict)
                        .map(|(row, y)| &row[k] * y)
                        .sum();
                    let e: Rational = sys
                        .equalities
                        .iter()
                        .zip(equality)
                        .map(|(row, y)| &row[k] * y)
                        .sum();
                    (s + e).is_zero()
                })
            }
        }
    }
}

fn dot(row: &[Rational], x: &[Rational]) -> Rational {
    row.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Decides `E x = 0, S x > 0`.
pub fn solve_homogeneous(sys: &HomogeneousSystem) -> FeasibilityAnswer {
    let answer = match solve_primal(sys) {
        Some(x) => FeasibilityAnswer::Solution(x),
        None => {
            let (strict, equality) = solve_alternative(sys)
                .expect("transposition theorem: the alternative system must be feasible");
            FeasibilityAnswer::Refutation { strict, equality }
        }
    };
    debug_assert!(answer.verify(sys), "solver produced an invalid answer");
    answer
}

/// Columns: x+ (c), x- (c), surplus (r_S).
/// Rows: [E, -E, 0] = 0 and [S, -S, -I] = 1.
fn solve_primal(sys: &HomogeneousSystem) -> Option<Vec<Rational>> {
    let c = sys.columns;
    let rs = sys.stricts.len();
    let width = 2 * c + rs;
    let mut rows = Vec::with_capacity(sys.equalities.len() + rs);
    let mut rhs = Vec::with_capacity(rows.capacity());
    for r in &sys.equalities {
        let mut row = vec![Rational::zero(); width];
        for (k, e) in r.iter().enumerate() {
            row[k] = e.clone();
            row[c + k] = -e;
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    for (i, r) in sys.stricts.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        for (k, e) in r.iter().enumerate() {
            row[k] = e.clone();
            row[c + k] = -e;
        }
        row[2 * c + i] = -Rational::one();
        rows.push(row);
        rhs.push(Rational::one());
    }
    // minimising the total surplus minimises the sum of strict-row values
    let mut cost = vec![Rational::zero(); width];
    for entry in &mut cost[2 * c..] {
        *entry = Rational::one();
    }
    let z = Lp::new(rows, rhs).solve(&cost)?;
    Some((0..c).map(|k| &z[k] - &z[c + k]).collect())
}

/// Columns: y_S (r_S), y_E+ (r_E), y_E- (r_E).
/// Rows: one per system column, [S^T, E^T, -E^T] = 0, and sum(y_S) = 1.
fn solve_alternative(sys: &HomogeneousSystem) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let rs = sys.stricts.len();
    let re = sys.equalities.len();
    let width = rs + 2 * re;
    let mut rows = Vec::with_capacity(sys.columns + 1);
    let mut rhs = Vec::with_capacity(sys.columns + 1);
    for k in 0..sys.columns {
        let mut row = vec![Rational::zero(); width];
        for (i, r) in sys.stricts.iter().enumerate() {
            row[i] = r[k].clone();
        }
        for (e, r) in sys.equalities.iter().enumerate() {
            row[rs + e] = r[k].clone();
            row[rs + re + e] = -&r[k];
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let mut norm = vec![Rational::zero(); width];
    for entry in &mut norm[..rs] {
        *entry = Rational::one();
    }
    rows.push(norm);
    rhs.push(Rational::one());
    let cost = vec![Rational::zero(); width];
    let y = Lp::new(rows, rhs).solve(&cost)?;
    let strict = y[..rs].to_vec();
    let equality = (0..re).map(|e| &y[rs + e] - &y[rs + re + e]).collect();
    Some((strict, equality))
}

/// `A z = b, z >= 0` with `b >= 0`, as a dense simplex tableau.
struct Lp {
    /// Rows of `[A | I_artificial | b]`.
    tableau: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    structural: usize,
}

impl Lp {
    fn new(rows: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Self {
        let m = rows.len();
        let structural = rows.first().map_or(0, Vec::len);
        let tableau = rows
            .into_iter()
            .zip(rhs)
            .enumerate()
            .map(|(i, (mut row, b))| {
                debug_assert!(!b.is_negative());
                row.extend((0..m).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row.push(b);
                row
            })
            .collect();
        Self {
            tableau,
            basis: (structural..structural + m).collect(),
            structural,
        }
    }

    fn width(&self) -> usize {
        self.tableau.first().map_or(0, |r| r.len() - 1)
    }

    /// Minimises `cost . z` over the feasible set. `None` when infeasible.
    /// The cost must be bounded below on the feasible set.
    fn solve(mut self, cost: &[Rational]) -> Option<Vec<Rational>> {
        let n = self.structural;
        let width = self.width();
        let mut phase1 = vec![Rational::zero(); width];
        for entry in &mut phase1[n..] {
            *entry = Rational::one();
        }
        self.optimise(&phase1, width);
        if self.objective(&phase1).is_positive() {
            return None;
        }
        self.expel_artificials();
        let mut phase2 = cost.to_vec();
        phase2.resize(width, Rational::zero());
        self.optimise(&phase2, n);

        let rhs = width;
        let mut z = vec![Rational::zero(); n];
        for (row, &b) in self.tableau.iter().zip(&self.basis) {
            if b < n {
                z[b] = row[rhs].clone();
            }
        }
        Some(z)
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        let rhs = self.width();
        self.tableau
            .iter()
            .zip(&self.basis)
            .map(|(row, &b)| &cost[b] * &row[rhs])
            .sum()
    }

    /// Bland's rule: lowest-index improving column enters, ties in the ratio
    /// test go to the lowest basic index.
    fn optimise(&mut self, cost: &[Rational], allowed: usize) {
        let rhs = self.width();
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced: Rational = self
                    .tableau
                    .iter()
                    .zip(&self.basis)
                    .fold(cost[j].clone(), |acc, (row, &b)| acc - &cost[b] * &row[j]);
                reduced.is_negative()
            });
            let Some(col) = entering else { return };

            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.tableau.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &leaving {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let (row, _) = leaving.expect("objective unbounded below");
            self.pivot(row, col);
        }
    }

    fn expel_artificials(&mut self) {
        let n = self.structural;
        let mut i = 0;
        while i < self.tableau.len() {
            if self.basis[i] < n {
                i += 1;
                continue;
            }
            match (0..n).find(|&j| !self.tableau[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    // redundant row
                    self.tableau.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.tableau[row][col].clone();
        for e in self.tableau[row].iter_mut() {
            *e /= &p;
        }
        let pivot_row = self.tableau[row].clone();
        for (i, r) in self.tableau.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (e, pe) in r.iter_mut().zip(&pivot_row) {
                if !pe.is_zero() {
                    *e -= &f * pe;
                }
            }
        }
        self.basis[row] = col;
    }
}
