//! Linear and cyclic plumbings of disk bundles over spheres.
//!
//! A plumbing is recorded by its shape and the self-intersection numbers of
//! the base spheres. All plumbing edges are positive, so the intersection
//! form has `1` exactly on graph-adjacent pairs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::feasibility::{solve_homogeneous, FeasibilityAnswer, HomogeneousSystem};
use crate::lattice::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlumbingError {
    #[error("a {shape} plumbing needs at least {min} vertices, got {found}")]
    TooFewVertices {
        shape: Shape,
        min: usize,
        found: usize,
    },
    #[error("invalid blow-up site {site} for a {shape} plumbing with {vertices} vertices")]
    InvalidSite {
        site: BlowUpSite,
        shape: Shape,
        vertices: usize,
    },
    #[error("vertex {index} has weight {weight}, not -1")]
    NotMinusOne { index: usize, weight: BigInt },
    #[error("vertex index {index} out of range 1..={vertices}")]
    NoSuchVertex { index: usize, vertices: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    Linear,
    Cyclic,
}

impl Shape {
    pub fn min_vertices(self) -> usize {
        match self {
            Shape::Linear => 1,
            Shape::Cyclic => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Linear => "linear",
            Shape::Cyclic => "cyclic",
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A linear or cyclic plumbing graph over spheres, weights `s_1, ..., s_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlumbingGraph {
    shape: Shape,
    weights: Vec<BigInt>,
}

impl PlumbingGraph {
    pub fn new(shape: Shape, weights: Vec<BigInt>) -> Result<Self, PlumbingError> {
        if weights.len() < shape.min_vertices() {
            return Err(PlumbingError::TooFewVertices {
                shape,
                min: shape.min_vertices(),
                found: weights.len(),
            });
        }
        Ok(Self { shape, weights })
    }

    pub fn linear<I, T>(weights: I) -> Result<Self, PlumbingError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(Shape::Linear, weights.into_iter().map(Into::into).collect())
    }

    pub fn cyclic<I, T>(weights: I) -> Result<Self, PlumbingError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(Shape::Cyclic, weights.into_iter().map(Into::into).collect())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn into_weights(self) -> Vec<BigInt> {
        self.weights
    }

    pub fn has_nonnegative_weight(&self) -> bool {
        self.weights.iter().any(|w| !w.is_negative())
    }

    pub fn intersection_form(&self) -> IntersectionForm {
        intersection_form(self)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    pub fn is_toric_minimal(&self) -> bool {
        is_toric_minimal(self)
    }
}

impl fmt::Display for PlumbingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.shape)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

/// Symmetric integer matrix, stored densely by rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionForm {
    rows: Vec<Vec<BigInt>>,
}

impl IntersectionForm {
    /// Wraps a square symmetric matrix. Panics if it is not.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        for i in 0..n {
            for j in 0..i {
                assert_eq!(rows[i][j], rows[j][i], "matrix must be symmetric");
            }
        }
        Self { rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    /// `P * self * P^T` for a square `P` of matching size.
    pub fn congruent_by(&self, p: &[Vec<BigInt>]) -> Self {
        let n = self.dim();
        let mut pq = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    pq[i][j] += &p[i][k] * &self.rows[k][j];
                }
            }
        }
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = (0..n).map(|k| &pq[i][k] * &p[j][k]).sum();
            }
        }
        Self { rows: out }
    }
}

/// `z < 0`, `a > 0` with `-Q z = a`: the plumbing has a concave boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcavityCertificate {
    pub z: Vec<Rational>,
    pub a: Vec<Rational>,
}

impl ConcavityCertificate {
    pub fn verify(&self, q: &IntersectionForm) -> bool {
        let n = q.dim();
        if self.z.len() != n || self.a.len() != n {
            return false;
        }
        self.z.iter().all(Signed::is_negative)
            && self.a.iter().all(Signed::is_positive)
            && (0..n).all(|i| {
                let qz: Rational = (0..n)
                    .map(|j| Rational::from_integer(q.get(i, j).clone()) * &self.z[j])
                    .sum();
                -qz == self.a[i]
            })
    }
}

/// Outcome of the concavity search: a certificate, or the solver's proof
/// that none exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Concavity {
    Certified(ConcavityCertificate),
    Refuted {
        strict: Vec<Rational>,
        equality: Vec<Rational>,
    },
}

impl Concavity {
    pub fn certificate(&self) -> Option<&ConcavityCertificate> {
        match self {
            Concavity::Certified(c) => Some(c),
            Concavity::Refuted { .. } => None,
        }
    }
}

pub fn intersection_form(g: &PlumbingGraph) -> IntersectionForm {
    let n = g.len();
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    for (i, w) in g.weights.iter().enumerate() {
        rows[i][i] = w.clone();
        if i + 1 < n {
            rows[i][i + 1] = BigInt::one();
            rows[i + 1][i] = BigInt::one();
        }
    }
    if g.shape == Shape::Cyclic {
        rows[0][n - 1] = BigInt::one();
        rows[n - 1][0] = BigInt::one();
    }
    IntersectionForm { rows }
}

/// Sylvester's criterion: `(-1)^k * Δ_k > 0` for every leading principal
/// minor, the minors read off as fraction-free elimination pivots.
pub fn is_negative_definite(q: &IntersectionForm) -> bool {
    let n = q.dim();
    if n == 0 {
        return false;
    }
    let mut m: Vec<Vec<BigInt>> = q.rows.clone();
    let mut prev = BigInt::one();
    for k in 0..n {
        let minor = &m[k][k];
        let expected_negative = k % 2 == 0;
        if minor.is_zero() || minor.is_negative() != expected_negative {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    true
}

/// Searches for `z < 0` with `-Q z > 0`.
pub fn concavity_certificate(q: &IntersectionForm) -> Concavity {
    let n = q.dim();
    let neg = |e: &BigInt| Rational::from_integer(-e);
    let mut stricts: Vec<Vec<Rational>> = q.rows.iter().map(|r| r.iter().map(neg).collect()).collect();
    for i in 0..n {
        let mut row = vec![Rational::zero(); n];
        row[i] = -Rational::one();
        stricts.push(row);
    }
    let sys = HomogeneousSystem::new(n, Vec::new(), stricts).expect("well-formed by construction");
    match solve_homogeneous(&sys) {
        FeasibilityAnswer::Solution(z) => {
            let a = q
                .rows
                .iter()
                .map(|r| -r.iter().zip(&z).map(|(e, zj)| Rational::from_integer(e.clone()) * zj).sum::<Rational>())
                .collect();
            Concavity::Certified(ConcavityCertificate { z, a })
        }
        FeasibilityAnswer::Refutation { strict, equality } => Concavity::Refuted { strict, equality },
    }
}

/// Where to blow up: the corner between vertices `j` and `j + 1` (1-based,
/// cyclically for cyclic plumbings), or beyond an end of a linear plumbing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlowUpSite {
    Interior(usize),
    LeftEnd,
    RightEnd,
}

impl BlowUpSite {
    /// 1-based index of the new `-1` vertex after blowing up a graph with
    /// `n` vertices at this site.
    pub fn new_vertex_index(self, n: usize) -> usize {
        match self {
            BlowUpSite::Interior(j) => j + 1,
            BlowUpSite::LeftEnd => 1,
            BlowUpSite::RightEnd => n + 1,
        }
    }

    /// Every valid site of `g`.
    pub fn all(g: &PlumbingGraph) -> Vec<BlowUpSite> {
        let n = g.len();
        let mut out = Vec::new();
        match g.shape {
            Shape::Linear => {
                out.push(BlowUpSite::LeftEnd);
                out.extend((1..n).map(BlowUpSite::Interior));
                out.push(BlowUpSite::RightEnd);
            }
            Shape::Cyclic => out.extend((1..=n).map(BlowUpSite::Interior)),
        }
        out
    }
}

impl fmt::Display for BlowUpSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowUpSite::Interior(j) => write!(f, "interior:{j}"),
            BlowUpSite::LeftEnd => f.write_str("left"),
            BlowUpSite::RightEnd => f.write_str("right"),
        }
    }
}

/// Toric blow-up: chop a corner of the moment image. The new sphere has
/// weight `-1` and its neighbours each lose one.
pub fn blow_up(g: &PlumbingGraph, site: BlowUpSite) -> Result<PlumbingGraph, PlumbingError> {
    let n = g.len();
    let invalid = || PlumbingError::InvalidSite {
        site,
        shape: g.shape,
        vertices: n,
    };
    let minus_one = -BigInt::one();
    let mut w = g.weights.clone();
    match (g.shape, site) {
        (Shape::Linear, BlowUpSite::Interior(j)) if (1..n).contains(&j) => {
            w[j - 1] -= 1;
            w[j] -= 1;
            w.insert(j, minus_one);
        }
        (Shape::Cyclic, BlowUpSite::Interior(j)) if (1..n).contains(&j) => {
            w[j - 1] -= 1;
            w[j] -= 1;
            w.insert(j, minus_one);
        }
        (Shape::Cyclic, BlowUpSite::Interior(j)) if j == n => {
            w[n - 1] -= 1;
            w[0] -= 1;
            w.push(minus_one);
        }
        (Shape::Linear, BlowUpSite::LeftEnd) => {
            w[0] -= 1;
            w.insert(0, minus_one);
        }
        (Shape::Linear, BlowUpSite::RightEnd) => {
            w[n - 1] -= 1;
            w.push(minus_one);
        }
        _ => return Err(invalid()),
    }
    Ok(PlumbingGraph {
        shape: g.shape,
        weights: w,
    })
}

/// Inverse of [`blow_up`]: delete the `-1` vertex `j` (1-based), its
/// neighbours gain one.
pub fn blow_down(g: &PlumbingGraph, j: usize) -> Result<PlumbingGraph, PlumbingError> {
    let n = g.len();
    if j == 0 || j > n {
        return Err(PlumbingError::NoSuchVertex { index: j, vertices: n });
    }
    let weight = &g.weights[j - 1];
    if *weight != -BigInt::one() {
        return Err(PlumbingError::NotMinusOne {
            index: j,
            weight: weight.clone(),
        });
    }
    if n == g.shape.min_vertices() {
        return Err(PlumbingError::TooFewVertices {
            shape: g.shape,
            min: g.shape.min_vertices(),
            found: n - 1,
        });
    }
    let mut w = g.weights.clone();
    let i = j - 1;
    match g.shape {
        Shape::Linear => {
            if i > 0 {
                w[i - 1] += 1;
            }
            if i + 1 < n {
                w[i + 1] += 1;
            }
        }
        Shape::Cyclic => {
            w[(i + n - 1) % n] += 1;
            w[(i + 1) % n] += 1;
        }
    }
    w.remove(i);
    Ok(PlumbingGraph {
        shape: g.shape,
        weights: w,
    })
}

/// No vertex of weight `-1`, so no toric blow-down applies.
pub fn is_toric_minimal(g: &PlumbingGraph) -> bool {
    let minus_one = -BigInt::one();
    g.weights.iter().all(|w| *w != minus_one)
}

/// Representative of a plumbing up to the graph symmetries that may not
/// distinguish equivariant structures: reversal for linear graphs, the
/// dihedral group for cycles. The lexicographically smallest weight list
/// wins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub shape: Shape,
    pub weights: Vec<BigInt>,
}

pub fn canonical_form(g: &PlumbingGraph) -> CanonicalForm {
    let w = &g.weights;
    let best = match g.shape {
        Shape::Linear => {
            let rev: Vec<BigInt> = w.iter().rev().cloned().collect();
            if rev < *w {
                rev
            } else {
                w.clone()
            }
        }
        Shape::Cyclic => {
            let n = w.len();
            let rev: Vec<BigInt> = w.iter().rev().cloned().collect();
            let mut best: Option<Vec<BigInt>> = None;
            for seq in [w, &rev] {
                for r in 0..n {
                    let cand: Vec<BigInt> = seq[r..].iter().chain(&seq[..r]).cloned().collect();
                    if best.as_ref().is_none_or(|b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            best.expect("cyclic graphs are nonempty")
        }
    };
    CanonicalForm {
        shape: g.shape,
        weights: best,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(w: &[i64]) -> PlumbingGraph {
        PlumbingGraph::linear(w.iter().copied()).unwrap()
    }

    fn cyc(w: &[i64]) -> PlumbingGraph {
        PlumbingGraph::cyclic(w.iter().copied()).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn shape_minimums() {
        assert!(PlumbingGraph::linear(Vec::<i64>::new()).is_err());
        assert!(PlumbingGraph::cyclic([0, 0]).is_err());
        assert!(PlumbingGraph::cyclic([0, 0, 0]).is_ok());
    }

    #[test]
    fn intersection_form_examples() {
        for n in [0i64, 3, -7] {
            assert_eq!(
                intersection_form(&lin(&[n, 0, -n])),
                IntersectionForm::from_i64(&[vec![n, 1, 0], vec![1, 0, 1], vec![0, 1, -n]])
            );
        }
        assert_eq!(intersection_form(&lin(&[-2])), IntersectionForm::from_i64(&[vec![-2]]));
        assert_eq!(
            intersection_form(&cyc(&[0, 0, 0, 0])),
            IntersectionForm::from_i64(&[
                vec![0, 1, 0, 1],
                vec![1, 0, 1, 0],
                vec![0, 1, 0, 1],
                vec![1, 0, 1, 0],
            ])
        );
    }

    #[test]
    fn negative_definite_examples() {
        assert!(is_negative_definite(&IntersectionForm::from_i64(&[vec![-2, 1], vec![1, -2]])));
        assert!(!is_negative_definite(&lin(&[1, 0, -1]).intersection_form()));
        assert!(!is_negative_definite(&IntersectionForm::from_i64(&[vec![0]])));
        // -1,-1 chain: Δ2 = 0
        assert!(!is_negative_definite(&lin(&[-1, -1]).intersection_form()));
        assert!(is_negative_definite(&lin(&[-2, -2, -2, -2, -2]).intersection_form()));
    }

    #[test]
    fn concavity_examples() {
        let qf = lin(&[1, 0, -1]).intersection_form();
        let c = concavity_certificate(&qf);
        let cert = c.certificate().unwrap();
        assert_eq!(cert.z, vec![q(-1), q(-2), q(-1)]);
        assert_eq!(cert.a, vec![q(3), q(2), q(1)]);
        assert!(cert.verify(&qf));

        assert!(concavity_certificate(&lin(&[-2, -2]).intersection_form())
            .certificate()
            .is_none());

        let qf = lin(&[0, 0]).intersection_form();
        let cert = concavity_certificate(&qf).certificate().cloned().unwrap();
        assert_eq!(cert.z, vec![q(-1), q(-1)]);
        assert_eq!(cert.a, vec![q(1), q(1)]);
    }

    #[test]
    fn certificate_verifier_catches_tampering() {
        let qf = lin(&[0, 0]).intersection_form();
        let mut cert = concavity_certificate(&qf).certificate().cloned().unwrap();
        cert.a[0] = q(2);
        assert!(!cert.verify(&qf));
    }

    #[test]
    fn blow_up_examples() {
        assert_eq!(blow_up(&lin(&[0, 0]), BlowUpSite::Interior(1)).unwrap(), lin(&[-1, -1, -1]));
        assert_eq!(
            blow_up(&lin(&[1, 0, -1]), BlowUpSite::LeftEnd).unwrap(),
            lin(&[-1, 0, 0, -1])
        );
        assert_eq!(
            blow_up(&cyc(&[0, 0, 0, 0]), BlowUpSite::Interior(4)).unwrap(),
            cyc(&[-1, 0, 0, -1, -1])
        );
        assert!(matches!(
            blow_up(&lin(&[0, 0]), BlowUpSite::Interior(2)),
            Err(PlumbingError::InvalidSite { .. })
        ));
        assert!(blow_up(&cyc(&[0, 0, 0]), BlowUpSite::LeftEnd).is_err());
        assert!(blow_up(&cyc(&[0, 0, 0]), BlowUpSite::Interior(0)).is_err());
    }

    #[test]
    fn blow_down_examples() {
        assert_eq!(blow_down(&lin(&[-1, -1, -1]), 2).unwrap(), lin(&[0, 0]));
        assert_eq!(blow_down(&lin(&[-1, 0, 0, -1]), 1).unwrap(), lin(&[1, 0, -1]));
        assert!(matches!(blow_down(&lin(&[0, 0]), 1), Err(PlumbingError::NotMinusOne { .. })));
        assert!(matches!(blow_down(&lin(&[-1]), 1), Err(PlumbingError::TooFewVertices { .. })));
        assert!(matches!(blow_down(&lin(&[-1]), 2), Err(PlumbingError::NoSuchVertex { .. })));
        assert_eq!(blow_down(&cyc(&[-1, 0, 0, -1, -1]), 5).unwrap(), cyc(&[0, 0, 0, 0]));
    }

    #[test]
    fn toric_minimal_examples() {
        assert!(lin(&[5, 0, -5]).is_toric_minimal());
        assert!(!lin(&[-1, -1, -1]).is_toric_minimal());
        assert!(lin(&[0, -2, -2, -2]).is_toric_minimal());
    }

    #[test]
    fn canonical_form_examples() {
        let c = canonical_form(&lin(&[-1, 0, 2]));
        assert_eq!(c.weights, lin(&[-1, 0, 2]).into_weights());
        assert_eq!(canonical_form(&lin(&[3, 0, -3])), canonical_form(&lin(&[-3, 0, 3])));
        assert_eq!(canonical_form(&cyc(&[0, 1, 0, 2])), canonical_form(&cyc(&[0, 2, 0, 1])));
        assert_ne!(canonical_form(&lin(&[0, 0, 0])), canonical_form(&cyc(&[0, 0, 0])));
    }
}
