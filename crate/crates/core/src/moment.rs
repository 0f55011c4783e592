//! Moment-image combinatorics of linear plumbings.
//!
//! The moment image of a linear plumbing `(s_1, ..., s_n)` is a chain of
//! edges, one per sphere, running between the two rays of the boundary's
//! moment cone. It is encoded by its inward normals `ν_0, ..., ν_{n+1}`,
//! where `ν_0` and `ν_{n+1}` are normal to the rays and every consecutive
//! pair has determinant one. Normals are fixed up to `SL(2, Z)` by seeding
//! `ν_1 = (1, 0)`, `ν_2 = (0, 1)`; the remaining ones follow from
//!
//! ```text
//! ν_{j+1} = -ν_{j-1} - s_j ν_j
//! ```
//!
//! which is the statement that the weight of edge `j` is `det(ν_{j+1}, ν_{j-1})`.
//! Edges are walked with the region on the left, so the direction of edge
//! `j` is `ν_j` turned clockwise.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::feasibility::{solve_homogeneous, FeasibilityAnswer, HomogeneousSystem};
use crate::lattice::{det2, quarter_position, rotate90, LatticeMat, LatticeVec, Rational, Sense};
use crate::plumbing::PlumbingGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MomentError {
    #[error("a linear plumbing needs at least one vertex")]
    Empty,
    #[error("the ray formula needs at least 2 vertices, got {0}")]
    TooShort(usize),
    #[error("normal chain needs at least 3 normals, got {0}")]
    ChainTooShort(usize),
    #[error("normal {index} is not primitive")]
    NotPrimitive { index: usize },
    #[error("normals {index} and {} have determinant {det}, expected 1", index + 1)]
    BadDeterminant { index: usize, det: BigInt },
    #[error("total turning of {quarters} quarter turns does not exceed a half turn; the rays do not bound a cone")]
    DegenerateCone { quarters: u64 },
    #[error("no positive edge lengths close the moment image")]
    NoRealization {
        strict: Vec<Rational>,
        equality: Vec<Rational>,
    },
    #[error("expected {expected} edge lengths, got {found}")]
    LengthCount { expected: usize, found: usize },
    #[error("edge lengths and ray parameters must be positive")]
    NonPositiveLength,
    #[error("the walk does not close onto the second ray")]
    DoesNotClose,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosureError {
    #[error("cyclic closure needs at least 4 vertices, got {0}")]
    TooShort(usize),
    #[error("the last weight must be 0, got {0}")]
    LastWeightNotZero(BigInt),
    #[error("rays do not coincide (angle {angle})")]
    RaysDoNotCoincide { angle: AngleReport },
    #[error("end edges not parallel: first edge runs along {first}, last along {last}")]
    EndEdgesNotParallel { first: LatticeVec, last: LatticeVec },
    #[error("no positive edge lengths close the cycle")]
    NoClosedRealization {
        strict: Vec<Rational>,
        equality: Vec<Rational>,
    },
}

/// Angle information attached to a failed closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AngleReport {
    Angle(ConeAngle),
    Degenerate { quarters: u64 },
}

impl fmt::Display for AngleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleReport::Angle(a) => write!(f, "{a}"),
            AngleReport::Degenerate { quarters } => write!(f, "degenerate, {quarters} quarter turns"),
        }
    }
}

/// Inward normals `ν_0, ..., ν_{n+1}` of a linear moment image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalChain {
    normals: Vec<LatticeVec>,
}

impl NormalChain {
    /// Validates primitivity and unit consecutive determinants.
    pub fn from_normals(normals: Vec<LatticeVec>) -> Result<Self, MomentError> {
        if normals.len() < 3 {
            return Err(MomentError::ChainTooShort(normals.len()));
        }
        if let Some(index) = normals.iter().position(|v| !v.is_primitive()) {
            return Err(MomentError::NotPrimitive { index });
        }
        for (index, pair) in normals.windows(2).enumerate() {
            let det = det2(&pair[0], &pair[1]);
            if !det.is_one() {
                return Err(MomentError::BadDeterminant { index, det });
            }
        }
        Ok(Self { normals })
    }

    pub fn normals(&self) -> &[LatticeVec] {
        &self.normals
    }

    /// Number of edges `n`.
    pub fn edge_count(&self) -> usize {
        self.normals.len() - 2
    }

    /// `ν_0`, normal to the first ray.
    pub fn first_collapse(&self) -> &LatticeVec {
        &self.normals[0]
    }

    /// `ν_{n+1}`, normal to the second ray.
    pub fn last_collapse(&self) -> &LatticeVec {
        self.normals.last().expect("chains have at least 3 normals")
    }

    /// Inward normal of edge `j`, 1-based.
    pub fn edge_normal(&self, j: usize) -> &LatticeVec {
        assert!((1..=self.edge_count()).contains(&j), "edge index {j} out of range");
        &self.normals[j]
    }

    /// Direction of travel along edge `j`, 1-based.
    pub fn edge_direction(&self, j: usize) -> LatticeVec {
        rotate90(self.edge_normal(j), Sense::Cw)
    }
}

/// The difference `t_2 - t_1` of the boundary's cone angles, known exactly
/// up to which open interval `(hπ, (h+1)π)` it lies in, or exactly `hπ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConeAngle {
    pub half_turns: u64,
    pub exact: bool,
}

impl ConeAngle {
    pub fn exact(half_turns: u64) -> Self {
        Self {
            half_turns,
            exact: true,
        }
    }

    pub fn between(half_turns: u64) -> Self {
        Self {
            half_turns,
            exact: false,
        }
    }
}

impl fmt::Display for ConeAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "= {}π", self.half_turns)
        } else {
            write!(f, "in ({}π, {}π)", self.half_turns, self.half_turns + 1)
        }
    }
}

/// Rays of the boundary's moment cone together with the swept angle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentCone {
    pub r1: LatticeVec,
    pub r2: LatticeVec,
    pub angle: ConeAngle,
}

impl MomentCone {
    pub fn new(r1: LatticeVec, r2: LatticeVec, angle: ConeAngle) -> Self {
        Self { r1, r2, angle }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn origin() -> Self {
        Self {
            x: Rational::zero(),
            y: Rational::zero(),
        }
    }

    fn along(&self, t: &Rational, d: &LatticeVec) -> Self {
        let (dx, dy) = d.to_rational();
        Self {
            x: &self.x + t * dx,
            y: &self.y + t * dy,
        }
    }
}

/// A realised linear moment image: normals, positive edge lengths and the
/// positions of the end vertices on the two rays.
///
/// The walk starts at `ρ_1 R_1`, follows the edges and ends at `ρ_2 R_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentImage {
    chain: NormalChain,
    lengths: Vec<Rational>,
    rho1: Rational,
    rho2: Rational,
    vertices: Vec<Point>,
}

impl MomentImage {
    /// Builds an image from user-chosen lengths, re-validating closure.
    pub fn with_lengths(
        chain: NormalChain,
        lengths: Vec<Rational>,
        rho1: Rational,
        rho2: Rational,
    ) -> Result<Self, MomentError> {
        let n = chain.edge_count();
        if lengths.len() != n {
            return Err(MomentError::LengthCount {
                expected: n,
                found: lengths.len(),
            });
        }
        if !rho1.is_positive() || !rho2.is_positive() || lengths.iter().any(|l| !l.is_positive()) {
            return Err(MomentError::NonPositiveLength);
        }
        let (r1, r2) = rays_from_chain(&chain);
        let mut vertices = Vec::with_capacity(n + 1);
        let start = Point::origin().along(&rho1, &r1);
        vertices.push(start);
        for (j, l) in lengths.iter().enumerate() {
            let next = vertices[j].along(l, &chain.edge_direction(j + 1));
            vertices.push(next);
        }
        let end = Point::origin().along(&rho2, &r2);
        if vertices.last() != Some(&end) {
            return Err(MomentError::DoesNotClose);
        }
        Ok(Self {
            chain,
            lengths,
            rho1,
            rho2,
            vertices,
        })
    }

    pub fn chain(&self) -> &NormalChain {
        &self.chain
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    pub fn ray_params(&self) -> (&Rational, &Rational) {
        (&self.rho1, &self.rho2)
    }

    /// `V_0, ..., V_n`; edge `j` runs from `V_{j-1}` to `V_j`.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn rays(&self) -> (LatticeVec, LatticeVec) {
        rays_from_chain(&self.chain)
    }

    /// Re-checks `ρ_1 R_1 + Σ ℓ_j d_j = ρ_2 R_2` and positivity.
    pub fn verify(&self) -> bool {
        Self::with_lengths(
            self.chain.clone(),
            self.lengths.clone(),
            self.rho1.clone(),
            self.rho2.clone(),
        )
        .is_ok_and(|img| img == *self)
    }
}

/// A closed moment image of a cyclic plumbing whose boundary is `(T^3, ξ_N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicImage {
    graph: PlumbingGraph,
    winding: u64,
    normals: Vec<LatticeVec>,
    lengths: Vec<Rational>,
    vertices: Vec<Point>,
}

impl CyclicImage {
    /// The cyclic plumbing `(s_1, ..., s_n)`.
    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    /// `N` of the boundary `(T^3, ξ_N)`.
    pub fn winding(&self) -> u64 {
        self.winding
    }

    /// Inward normal of each of the `n` edges; edge `i` carries weight `s_i`.
    pub fn normals(&self) -> &[LatticeVec] {
        &self.normals
    }

    pub fn lengths(&self) -> &[Rational] {
        &self.lengths
    }

    /// `n` vertices; vertex `i` joins edge `i` to edge `i + 1` (cyclically),
    /// so edge `i` runs from vertex `i - 1` to vertex `i`. Centred on the
    /// vertex centroid.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Re-checks that the polygon closes, has positive lengths and
    /// reproduces the weights by the determinant rule.
    pub fn verify(&self) -> bool {
        let n = self.normals.len();
        if n != self.graph.len() || self.lengths.len() != n || self.vertices.len() != n {
            return false;
        }
        if self.lengths.iter().any(|l| !l.is_positive()) {
            return false;
        }
        let closes = (0..n).all(|i| {
            let from = &self.vertices[(i + n - 1) % n];
            let dir = rotate90(&self.normals[i], Sense::Cw);
            from.along(&self.lengths[i], &dir) == self.vertices[i]
        });
        let dets = (0..n).all(|i| det2(&self.normals[i], &self.normals[(i + 1) % n]).is_one());
        let weights = (0..n).all(|i| {
            let prev = &self.normals[(i + n - 1) % n];
            let next = &self.normals[(i + 1) % n];
            det2(next, prev) == self.graph.weights()[i]
        });
        closes && dets && weights
    }
}

/// `A_s = [[-s, -1], [1, 0]]`, the map gluing consecutive two-vertex pieces.
pub fn gluing_matrix(s: &BigInt) -> LatticeMat {
    LatticeMat {
        a: -s,
        b: -BigInt::one(),
        c: BigInt::one(),
        d: BigInt::zero(),
    }
}

/// Cone rays by the gluing-matrix product:
/// `R_1 = (-1, s_1)`, `R_2 = A_2 ⋯ A_{n-1} (s_n, -1)` (just `(s_2, -1)` for n = 2).
pub fn rays_eq1(weights: &[BigInt]) -> Result<(LatticeVec, LatticeVec), MomentError> {
    let n = weights.len();
    if n < 2 {
        return Err(MomentError::TooShort(n));
    }
    let r1 = LatticeVec {
        x: -BigInt::one(),
        y: weights[0].clone(),
    };
    let mut r2 = LatticeVec {
        x: weights[n - 1].clone(),
        y: -BigInt::one(),
    };
    for s in weights[1..n - 1].iter().rev() {
        r2 = gluing_matrix(s).apply(&r2);
    }
    Ok((r1, r2))
}

pub fn normal_chain(weights: &[BigInt]) -> Result<NormalChain, MomentError> {
    let n = weights.len();
    if n == 0 {
        return Err(MomentError::Empty);
    }
    let mut normals = Vec::with_capacity(n + 2);
    // ν_0 depends on ν_2, filled in below
    normals.push(LatticeVec::new(0, 0));
    normals.push(LatticeVec::e1());
    normals.push(LatticeVec::e2());
    for j in 2..=n {
        let next = &(-&normals[j - 1]) - &normals[j].scale(&weights[j - 1]);
        normals.push(next);
    }
    normals[0] = &(-&normals[2]) - &normals[1].scale(&weights[0]);
    debug_assert!(NormalChain::from_normals(normals.clone()).is_ok());
    Ok(NormalChain { normals })
}

pub fn normal_chain_of(g: &PlumbingGraph) -> NormalChain {
    normal_chain(g.weights()).expect("plumbing graphs are nonempty")
}

/// `R_1 = ν_0` turned clockwise, `R_2 = ν_{n+1}` turned counterclockwise.
pub fn rays_from_chain(c: &NormalChain) -> (LatticeVec, LatticeVec) {
    (
        rotate90(c.first_collapse(), Sense::Cw),
        rotate90(c.last_collapse(), Sense::Ccw),
    )
}

/// `s_j = det(ν_{j+1}, ν_{j-1})`.
pub fn recover_weights(c: &NormalChain) -> Vec<BigInt> {
    c.normals
        .windows(3)
        .map(|w| det2(&w[2], &w[0]))
        .collect()
}

/// Total counterclockwise turning from `ν_0` to `ν_{n+1}`, in quarter
/// marks: even values land exactly on `±ν_0` at `(q/2)π`, odd values lie
/// strictly inside `((q-1)/2 π, (q+1)/2 π)`.
///
/// Each step turns by an angle in `(0, π)`, so it can pass at most one of
/// the directions `±ν_0`, and the count is read off from sign changes of
/// determinants and dot products alone.
pub fn turning_quarters(c: &NormalChain) -> u64 {
    let u = c.first_collapse();
    let mut total = 0u64;
    let mut pos = 0u8;
    for v in &c.normals[1..] {
        let next = quarter_position(u, v);
        let step = (next + 4 - pos) % 4;
        debug_assert!(step <= 2, "a unit-determinant step turns by less than π");
        total += u64::from(step);
        pos = next;
    }
    total
}

/// `t_2 - t_1`, the total turning minus π.
pub fn cone_angle(c: &NormalChain) -> Result<ConeAngle, MomentError> {
    let quarters = turning_quarters(c);
    if quarters < 3 {
        return Err(MomentError::DegenerateCone { quarters });
    }
    Ok(if quarters.is_multiple_of(2) {
        ConeAngle::exact(quarters / 2 - 1)
    } else {
        ConeAngle::between((quarters - 3) / 2)
    })
}

pub fn moment_cone(c: &NormalChain) -> Result<MomentCone, MomentError> {
    let angle = cone_angle(c)?;
    let (r1, r2) = rays_from_chain(c);
    Ok(MomentCone { r1, r2, angle })
}

fn identity_rows(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            let mut row = vec![Rational::zero(); n];
            row[i] = Rational::one();
            row
        })
        .collect()
}

/// Positive lengths closing the walk between the rays, from the feasibility
/// solver. Unknowns are ordered `(ρ_1, ℓ_1, ..., ℓ_n, ρ_2)` and the solver
/// minimises their sum subject to each being at least one.
pub fn edge_lengths(c: &NormalChain) -> Result<MomentImage, MomentError> {
    let n = c.edge_count();
    let (r1, r2) = rays_from_chain(c);
    let mut dirs: Vec<LatticeVec> = Vec::with_capacity(n + 2);
    dirs.push(r1);
    dirs.extend((1..=n).map(|j| c.edge_direction(j)));
    dirs.push(-r2);
    let sys = HomogeneousSystem::new(n + 2, balance_rows(&dirs), identity_rows(n + 2))
        .expect("well-formed by construction");
    match solve_homogeneous(&sys) {
        FeasibilityAnswer::Solution(mut x) => {
            let rho2 = x.pop().expect("n + 2 unknowns");
            let rho1 = x.remove(0);
            Ok(MomentImage::with_lengths(c.clone(), x, rho1, rho2).expect("solver output closes"))
        }
        FeasibilityAnswer::Refutation { strict, equality } => {
            Err(MomentError::NoRealization { strict, equality })
        }
    }
}

/// The two rows `Σ x_j d_j = 0`.
fn balance_rows(dirs: &[LatticeVec]) -> Vec<Vec<Rational>> {
    let xs = dirs.iter().map(|d| Rational::from_integer(d.x.clone())).collect();
    let ys = dirs.iter().map(|d| Rational::from_integer(d.y.clone())).collect();
    vec![xs, ys]
}

/// Plumbs the first and last sphere of `(s_1, ..., s_n, 0)` together.
///
/// Requires the boundary rays to coincide after a whole number `N >= 1` of
/// full turns, the first and last edges to be parallel, and positive
/// lengths closing the edge walk into a polygon. The first and last edges
/// then merge into one edge carrying `s_1`, leaving the cyclic plumbing
/// `(s_1, ..., s_n)` with boundary `(T^3, ξ_N)`.
pub fn cyclic_closure(weights: &[BigInt]) -> Result<CyclicImage, ClosureError> {
    let total = weights.len();
    if total < 4 {
        return Err(ClosureError::TooShort(total));
    }
    let last = &weights[total - 1];
    if !last.is_zero() {
        return Err(ClosureError::LastWeightNotZero(last.clone()));
    }
    let chain = normal_chain(weights).expect("nonempty");
    let angle = match cone_angle(&chain) {
        Ok(a) => a,
        Err(_) => {
            return Err(ClosureError::RaysDoNotCoincide {
                angle: AngleReport::Degenerate {
                    quarters: turning_quarters(&chain),
                },
            })
        }
    };
    let (r1, r2) = rays_from_chain(&chain);
    if !(angle.exact && angle.half_turns % 2 == 0 && r1 == r2) {
        return Err(ClosureError::RaysDoNotCoincide {
            angle: AngleReport::Angle(angle),
        });
    }
    let winding = angle.half_turns / 2;

    let first = chain.edge_direction(1);
    let last_dir = chain.edge_direction(total);
    if !det2(&first, &last_dir).is_zero() {
        return Err(ClosureError::EndEdgesNotParallel {
            first,
            last: last_dir,
        });
    }
    // with coinciding rays, a parallel last edge is the first edge again
    debug_assert_eq!(first, last_dir);

    let dirs: Vec<LatticeVec> = (1..=total).map(|j| chain.edge_direction(j)).collect();
    let sys = HomogeneousSystem::new(total, balance_rows(&dirs), identity_rows(total))
        .expect("well-formed by construction");
    let lengths = match solve_homogeneous(&sys) {
        FeasibilityAnswer::Solution(x) => x,
        FeasibilityAnswer::Refutation { strict, equality } => {
            return Err(ClosureError::NoClosedRealization { strict, equality })
        }
    };

    let n = total - 1;
    let mut fused = lengths[..n].to_vec();
    fused[0] += &lengths[n];
    // walk from the start of the merged edge; W_j ends edge j
    let mut walk = Vec::with_capacity(n);
    let mut at = Point::origin();
    for j in 0..n {
        at = at.along(&lengths[j], &dirs[j]);
        walk.push(at.clone());
    }
    let count = Rational::from_integer(BigInt::from(n));
    let cx = walk.iter().map(|p| p.x.clone()).sum::<Rational>() / &count;
    let cy = walk.iter().map(|p| p.y.clone()).sum::<Rational>() / &count;
    let vertices = walk
        .into_iter()
        .map(|p| Point {
            x: p.x - &cx,
            y: p.y - &cy,
        })
        .collect();
    let image = CyclicImage {
        graph: PlumbingGraph::cyclic(weights[..n].iter().cloned()).expect("n >= 3"),
        winding,
        normals: chain.normals[1..=n].to_vec(),
        lengths: fused,
        vertices,
    };
    debug_assert!(image.verify());
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ws: &[i64]) -> Vec<BigInt> {
        ws.iter().map(|&s| BigInt::from(s)).collect()
    }

    fn v(x: i64, y: i64) -> LatticeVec {
        LatticeVec::new(x, y)
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn gluing_matrix_examples() {
        assert_eq!(gluing_matrix(&0.into()), LatticeMat::new(0, -1, 1, 0));
        assert_eq!(gluing_matrix(&(-2).into()), LatticeMat::new(2, -1, 1, 0));
        assert_eq!(gluing_matrix(&3.into()), LatticeMat::new(-3, -1, 1, 0));
    }

    #[test]
    fn rays_eq1_examples() {
        assert_eq!(rays_eq1(&w(&[2, -2])).unwrap(), (v(-1, 2), v(-2, -1)));
        assert_eq!(rays_eq1(&w(&[1, 0, -1])).unwrap(), (v(-1, 1), v(1, -1)));
        assert_eq!(rays_eq1(&w(&[1, 1, 0, 0])).unwrap(), (v(-1, 1), v(-1, 1)));
        assert_eq!(rays_eq1(&w(&[4])), Err(MomentError::TooShort(1)));
    }

    #[test]
    fn normal_chain_examples() {
        assert_eq!(
            normal_chain(&w(&[1, 0, -1])).unwrap().normals(),
            &[v(-1, -1), v(1, 0), v(0, 1), v(-1, 0), v(-1, -1)]
        );
        assert_eq!(
            normal_chain(&w(&[0, 0, 0, 0, 0])).unwrap().normals(),
            &[v(0, -1), v(1, 0), v(0, 1), v(-1, 0), v(0, -1), v(1, 0), v(0, 1)]
        );
        assert_eq!(
            normal_chain(&w(&[0, -2, -2, -2])).unwrap().normals(),
            &[v(0, -1), v(1, 0), v(0, 1), v(-1, 2), v(-2, 3), v(-3, 4)]
        );
        assert_eq!(normal_chain(&[]), Err(MomentError::Empty));
    }

    #[test]
    fn chain_validation() {
        assert!(matches!(
            NormalChain::from_normals(vec![v(1, 0), v(0, 1), v(1, 0)]),
            Err(MomentError::BadDeterminant { index: 1, .. })
        ));
        assert!(matches!(
            NormalChain::from_normals(vec![v(2, 0), v(0, 1), v(-1, 0)]),
            Err(MomentError::NotPrimitive { index: 0 })
        ));
        assert!(NormalChain::from_normals(vec![v(1, 0), v(0, 1)]).is_err());
    }

    #[test]
    fn rays_from_chain_examples() {
        let c = normal_chain(&w(&[1, 0, -1])).unwrap();
        assert_eq!(rays_from_chain(&c), (v(-1, 1), v(1, -1)));
        let c = normal_chain(&w(&[0, -2, -2, -2])).unwrap();
        assert_eq!(rays_from_chain(&c), (v(-1, 0), v(-4, -3)));
        for s in -6..=6 {
            let c = normal_chain(&w(&[s, 3, -2])).unwrap();
            assert_eq!(rays_from_chain(&c).0, v(-1, s));
        }
    }

    #[test]
    fn recover_weights_examples() {
        for ws in [&[1, 0, -1][..], &[0, 0, 0, 0, 0], &[7]] {
            assert_eq!(recover_weights(&normal_chain(&w(ws)).unwrap()), w(ws));
        }
    }

    #[test]
    fn cone_angle_examples() {
        let angle = |ws: &[i64]| cone_angle(&normal_chain(&w(ws)).unwrap());
        assert_eq!(angle(&[1, 0, -1]), Ok(ConeAngle::exact(1)));
        assert_eq!(angle(&[0, 0, 0, 0, 0]), Ok(ConeAngle::exact(2)));
        assert_eq!(angle(&[0, -2, -2, -2]), Ok(ConeAngle::between(0)));
        // (0) turns exactly π, (-2, -2) less than π
        assert_eq!(angle(&[0]), Err(MomentError::DegenerateCone { quarters: 2 }));
        assert_eq!(angle(&[-2, -2]), Err(MomentError::DegenerateCone { quarters: 1 }));
        assert_eq!(angle(&[3]), Ok(ConeAngle::between(0)));
    }

    #[test]
    fn edge_lengths_of_five_zeros() {
        let img = edge_lengths(&normal_chain(&w(&[0, 0, 0, 0, 0])).unwrap()).unwrap();
        assert_eq!(img.lengths(), &[q(1), q(1), q(2), q(1), q(1)]);
        assert_eq!(img.ray_params(), (&q(1), &q(1)));
        assert!(img.verify());
    }

    #[test]
    fn edge_lengths_of_one_zero_minus_one() {
        let img = edge_lengths(&normal_chain(&w(&[1, 0, -1])).unwrap()).unwrap();
        assert!(img.verify());
        assert!(img.lengths().iter().all(Signed::is_positive));
    }

    #[test]
    fn edge_lengths_of_negative_definite_pair() {
        // ℓ_2 = ρ_1 - 2ρ_2 and ℓ_1 = ρ_2 - 2ρ_1 cannot both be positive
        let err = edge_lengths(&normal_chain(&w(&[-2, -2])).unwrap()).unwrap_err();
        assert!(matches!(err, MomentError::NoRealization { .. }));
    }

    #[test]
    fn user_lengths_are_revalidated() {
        let c = normal_chain(&w(&[0, 0, 0, 0, 0])).unwrap();
        let ok = MomentImage::with_lengths(
            c.clone(),
            vec![q(2), q(3), q(4), q(3), q(2)],
            q(5),
            q(5),
        );
        assert!(ok.is_ok());
        let bad = MomentImage::with_lengths(c.clone(), vec![q(1), q(1), q(1), q(1), q(1)], q(1), q(1));
        assert_eq!(bad, Err(MomentError::DoesNotClose));
        let neg = MomentImage::with_lengths(c, vec![q(1), q(1), q(2), q(1), q(1)], q(-1), q(1));
        assert_eq!(neg, Err(MomentError::NonPositiveLength));
    }

    #[test]
    fn closure_of_five_zeros() {
        let img = cyclic_closure(&w(&[0, 0, 0, 0, 0])).unwrap();
        assert_eq!(img.graph(), &PlumbingGraph::cyclic([0, 0, 0, 0]).unwrap());
        assert_eq!(img.winding(), 1);
        assert!(img.verify());
        // merged edge: 1 + 1
        assert_eq!(img.lengths(), &[q(2), q(1), q(2), q(1)]);
    }

    #[test]
    fn closure_counterexample() {
        let err = cyclic_closure(&w(&[1, 1, 0, 0])).unwrap_err();
        assert_eq!(
            err,
            ClosureError::EndEdgesNotParallel {
                first: v(0, -1),
                last: v(-1, 0)
            }
        );
        let c = normal_chain(&w(&[1, 1, 0, 0])).unwrap();
        assert_eq!(cone_angle(&c), Ok(ConeAngle::exact(2)));
    }

    #[test]
    fn closure_of_padded_case_one() {
        let img = cyclic_closure(&w(&[1, 0, -1, 0, 0])).unwrap();
        assert_eq!(img.graph(), &PlumbingGraph::cyclic([1, 0, -1, 0]).unwrap());
        assert_eq!(img.winding(), 1);
    }

    #[test]
    fn closure_preconditions() {
        assert_eq!(cyclic_closure(&w(&[0, 0, 0])), Err(ClosureError::TooShort(3)));
        assert_eq!(
            cyclic_closure(&w(&[0, 0, 0, 1])),
            Err(ClosureError::LastWeightNotZero(1.into()))
        );
        assert!(matches!(
            cyclic_closure(&w(&[1, 0, -1, 0])),
            Err(ClosureError::RaysDoNotCoincide { .. })
        ));
    }
}
