//! Integral invariants of intersection forms and a bounded search for
//! congruences `Q1 = P Q2 P^T` with `P` unimodular.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::lattice::Rational;
use crate::plumbing::IntersectionForm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormsError {
    #[error("forms have dimensions {left} and {right}")]
    DimensionMismatch { left: usize, right: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormInvariants {
    pub determinant: BigInt,
    pub rank: usize,
    pub signature: Signature,
    pub parity: Parity,
}

pub fn form_invariants(q: &IntersectionForm) -> FormInvariants {
    let signature = signature(q);
    let parity = if q.rows().iter().enumerate().all(|(i, r)| r[i].is_even()) {
        Parity::Even
    } else {
        Parity::Odd
    };
    FormInvariants {
        determinant: determinant(q.rows()),
        rank: signature.positive + signature.negative,
        signature,
        parity,
    }
}

/// Fraction-free Gaussian elimination with row swaps.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.to_vec();
    let mut sign = false;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester inertia by symmetric elimination over the rationals.
fn signature(q: &IntersectionForm) -> Signature {
    let mut a: Vec<Vec<Rational>> = q
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    let mut n = a.len();
    while n > 0 {
        // bring a nonzero diagonal entry to position 0
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, 0, p);
        } else if let Some((i, j)) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        {
            // e_i + e_j has square 2 a_ij != 0
            for k in 0..n {
                let v = a[j][k].clone();
                a[i][k] += v;
            }
            for k in 0..n {
                let v = a[k][j].clone();
                a[k][i] += v;
            }
            swap_sym(&mut a, 0, i);
        } else {
            sig.zero += n;
            break;
        }
        let pivot = a[0][0].clone();
        if pivot.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        let mut rest = vec![vec![Rational::zero(); n - 1]; n - 1];
        for i in 1..n {
            for j in 1..n {
                rest[i - 1][j - 1] = &a[i][j] - &a[i][0] * &a[0][j] / &pivot;
            }
        }
        a = rest;
        n -= 1;
    }
    sig
}

fn swap_sym(a: &mut [Vec<Rational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// A unimodular `P` with entries in `[-bound, bound]` and `Q1 = P Q2 P^T`,
/// or `None` if no such `P` exists.
///
/// Equal forms give the identity. Otherwise the search is exhaustive and
/// returns the first witness in row-major order, entries ordered
/// `0, 1, -1, 2, -2, ...`. It is exponential in the dimension.
pub fn congruent_within_bound(
    q1: &IntersectionForm,
    q2: &IntersectionForm,
    bound: u32,
) -> Result<Option<Vec<Vec<BigInt>>>, FormsError> {
    let n = q1.dim();
    if n != q2.dim() {
        return Err(FormsError::DimensionMismatch { left: n, right: q2.dim() });
    }
    if q1 == q2 {
        let id = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
            .collect();
        return Ok(Some(id));
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    // congruence preserves the determinant up to det(P)^2 = 1
    if determinant(q1.rows()) != determinant(q2.rows()) {
        return Ok(None);
    }
    let values: Vec<BigInt> = core::iter::once(0i64)
        .chain((1..=bound as i64).flat_map(|b| [b, -b]))
        .map(BigInt::from)
        .collect();
    let candidates = vectors(&values, n);
    // c Q2 for every candidate, so that c Q2 d^T is a dot product
    let images: Vec<Vec<BigInt>> = candidates
        .iter()
        .map(|c| {
            (0..n)
                .map(|j| (0..n).map(|k| &c[k] * q2.get(k, j)).sum())
                .collect()
        })
        .collect();
    let dot = |a: &[BigInt], b: &[BigInt]| -> BigInt { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    // rows usable at each position, by their square
    let by_row: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..candidates.len())
                .filter(|&c| dot(&images[c], &candidates[c]) == *q1.get(i, i))
                .collect()
        })
        .collect();

    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let mut cursor = vec![0usize; n];
    loop {
        let i = chosen.len();
        if i == n {
            let p: Vec<Vec<BigInt>> = chosen.iter().map(|&c| candidates[c].clone()).collect();
            if determinant(&p).abs() == BigInt::from(1) {
                return Ok(Some(p));
            }
            let Some(_) = chosen.pop() else { return Ok(None) };
            continue;
        }
        let mut advanced = false;
        while cursor[i] < by_row[i].len() {
            let c = by_row[i][cursor[i]];
            cursor[i] += 1;
            let fits = chosen
                .iter()
                .enumerate()
                .all(|(r, &d)| dot(&images[c], &candidates[d]) == *q1.get(i, r));
            if fits {
                chosen.push(c);
                advanced = true;
                break;
            }
        }
        if !advanced {
            cursor[i] = 0;
            if chosen.pop().is_none() {
                return Ok(None);
            }
        }
    }
}

/// All length-`n` vectors over `values`, lexicographic in that order.
fn vectors(values: &[BigInt], n: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plumbing::PlumbingGraph;

    fn form(ws: &[i64]) -> IntersectionForm {
        PlumbingGraph::linear(ws.iter().copied()).unwrap().intersection_form()
    }

    #[test]
    fn invariants_examples() {
        let inv = form_invariants(&form(&[0, 0, 0, 0, 0]));
        assert_eq!(inv.determinant, BigInt::from(0));
        assert_eq!(inv.signature, Signature { positive: 2, negative: 2, zero: 1 });
        assert_eq!(inv.parity, Parity::Even);
        let inv = form_invariants(&form(&[1, 0, -1]));
        assert_eq!(inv.determinant, BigInt::from(0));
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.parity, Parity::Odd);
        let inv = form_invariants(&form(&[-2, -2, -2]));
        assert_eq!(inv.determinant, BigInt::from(-4));
        assert_eq!(inv.signature, Signature { positive: 0, negative: 3, zero: 0 });
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = IntersectionForm::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(m.rows()), BigInt::from(-1));
        assert_eq!(form_invariants(&m).signature, Signature { positive: 1, negative: 1, zero: 0 });
    }

    #[test]
    fn congruence_examples() {
        let a = form(&[0, 0, 0, 0, 0]);
        let b = form(&[0, 0, 0]);
        assert_eq!(
            congruent_within_bound(&a, &b, 1),
            Err(FormsError::DimensionMismatch { left: 5, right: 3 })
        );
        let q = form(&[1, 0, -1]);
        let p = congruent_within_bound(&q, &q, 1).unwrap().unwrap();
        assert_eq!(p, IntersectionForm::from_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).rows());

        let q = form(&[-2, -2]);
        let shear: Vec<Vec<BigInt>> = vec![
            vec![BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        let q1 = q.congruent_by(&shear);
        let p = congruent_within_bound(&q1, &q, 1).unwrap().unwrap();
        assert_eq!(q.congruent_by(&p), q1);
        assert_eq!(determinant(&p).abs(), BigInt::from(1));
    }

    #[test]
    fn parity_obstructs() {
        // even and odd unimodular hyperbolic forms
        let h = IntersectionForm::from_i64(&[vec![0, 1], vec![1, 0]]);
        let d = IntersectionForm::from_i64(&[vec![1, 0], vec![0, -1]]);
        for b in 0..3 {
            assert_eq!(congruent_within_bound(&h, &d, b), Ok(None));
        }
    }

    #[test]
    fn bound_zero_only_identity() {
        let q = form(&[-2, -3]);
        let r = form(&[-3, -2]);
        assert_eq!(congruent_within_bound(&q, &r, 0), Ok(None));
        let p = congruent_within_bound(&q, &r, 1).unwrap().unwrap();
        assert_eq!(r.congruent_by(&p), q);
    }
}
