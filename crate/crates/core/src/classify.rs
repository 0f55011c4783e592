//! Classification of the contact toric boundary read off from moment data.
//!
//! Non-free boundaries are determined by their cone angle `t_2 - t_1` and
//! the two collapse slopes; free boundaries are `(T^3, ξ_N)`.
//!
//! | angle                    | underlying   | half-Lutz twists |
//! |--------------------------|--------------|------------------|
//! | exactly `hπ`, `h >= 1`   | `S^1 × S^2`  | `h - 1`          |
//! | in `(hπ, (h+1)π)`        | `L(k, l)`    | `h`              |
//!
//! For lens spaces `k = |det(ν_0, ν_{n+1})|`. The residue `l` comes from the
//! ordered pair of unoriented collapse lines: orient `ν_{n+1}` so that the
//! determinant is positive, move `ν_0` to `(1, 0)` by an `SL(2, Z)` map `U`;
//! then `U ν_{n+1} = (a, k)` with `a` well defined modulo `k`, and `l = a mod k`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{det2, rotate90, sl2_sending_to_e1, LatticeVec, Sense};
use crate::moment::{cone_angle, cyclic_closure, normal_chain, ClosureError, MomentCone, MomentError};
use crate::plumbing::{PlumbingGraph, Shape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("a linear plumbing needs at least one vertex")]
    Empty,
    #[error("the moment image does not bound a cone ({quarters} quarter turns); no concave toric boundary")]
    DegenerateCone { quarters: u64 },
    #[error("no rotation of the cyclic plumbing closes up")]
    NotToric { failures: Vec<(usize, ClosureError)> },
    #[error("expected a {expected} plumbing")]
    WrongShape { expected: Shape },
    #[error("invalid lens space L({k}, {l})")]
    InvalidLens { k: BigInt, l: BigInt },
}

/// Underlying manifold of a boundary with a non-free toric action.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Underlying {
    /// `L(k, l)` with `k >= 1`, `0 <= l < k`; `L(1, 0)` is the 3-sphere.
    Lens { k: BigInt, l: BigInt },
    S1xS2,
}

impl fmt::Display for Underlying {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Underlying::Lens { k, l } => write!(f, "L({k}, {l})"),
            Underlying::S1xS2 => f.write_str("S1xS2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ContactToricClass {
    NonFree { underlying: Underlying, half_lutz: u64 },
    /// `(T^3, ξ_N)`.
    Free { n: u64 },
}

impl ContactToricClass {
    /// `L(k, l)` with `l` reduced mod `k`, after `half_lutz` half-Lutz twists.
    pub fn lens(k: impl Into<BigInt>, l: impl Into<BigInt>, half_lutz: u64) -> Result<Self, ClassifyError> {
        let (k, l) = (k.into(), l.into());
        if !k.is_positive() {
            return Err(ClassifyError::InvalidLens { k, l });
        }
        let l = l.mod_floor(&k);
        if !k.is_one() && !l.gcd(&k).is_one() {
            return Err(ClassifyError::InvalidLens { k, l });
        }
        Ok(ContactToricClass::NonFree {
            underlying: Underlying::Lens { k, l },
            half_lutz,
        })
    }

    pub fn s1xs2(half_lutz: u64) -> Self {
        ContactToricClass::NonFree {
            underlying: Underlying::S1xS2,
            half_lutz,
        }
    }

    pub fn torus(n: u64) -> Self {
        ContactToricClass::Free { n }
    }

    pub fn is_tight(&self) -> bool {
        match self {
            ContactToricClass::NonFree { half_lutz, .. } => *half_lutz == 0,
            ContactToricClass::Free { .. } => true,
        }
    }
}

impl fmt::Display for ContactToricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContactToricClass::NonFree { underlying, half_lutz: 0 } => write!(f, "{underlying}, tight"),
            ContactToricClass::NonFree { underlying, half_lutz } => {
                write!(f, "{underlying}, {half_lutz} half-Lutz twist(s)")
            }
            ContactToricClass::Free { n } => write!(f, "T3, xi_{n}"),
        }
    }
}

/// `(k, l)` of the ordered pair of collapse lines through `u1` and `u2`, or
/// `None` when they are parallel.
pub fn lens_invariant(u1: &LatticeVec, u2: &LatticeVec) -> Option<(BigInt, BigInt)> {
    let (u1, u2) = (primitive_part(u1)?, primitive_part(u2)?);
    let d = det2(&u1, &u2);
    if d.is_zero() {
        return None;
    }
    let u2 = if d.is_negative() { -u2 } else { u2 };
    let k = d.abs();
    let u = sl2_sending_to_e1(&u1).expect("primitive by construction");
    let image = u.apply(&u2);
    debug_assert_eq!(image.y, k);
    Some((k.clone(), image.x.mod_floor(&k)))
}

fn primitive_part(v: &LatticeVec) -> Option<LatticeVec> {
    if v.is_zero() {
        return None;
    }
    let g = v.x.gcd(&v.y);
    Some(LatticeVec::new(&v.x / &g, &v.y / &g))
}

pub fn classify_linear_boundary(weights: &[BigInt]) -> Result<ContactToricClass, ClassifyError> {
    let chain = normal_chain(weights).map_err(|_| ClassifyError::Empty)?;
    let angle = cone_angle(&chain).map_err(|e| match e {
        MomentError::DegenerateCone { quarters } => ClassifyError::DegenerateCone { quarters },
        _ => unreachable!("cone_angle only reports degenerate cones"),
    })?;
    if angle.exact {
        debug_assert!(det2(chain.first_collapse(), chain.last_collapse()).is_zero());
        return Ok(ContactToricClass::s1xs2(angle.half_turns - 1));
    }
    let (k, l) = lens_invariant(chain.first_collapse(), chain.last_collapse())
        .expect("a non-exact angle means the rays are not parallel");
    Ok(ContactToricClass::NonFree {
        underlying: Underlying::Lens { k, l },
        half_lutz: angle.half_turns,
    })
}

/// Free boundary of a cyclic plumbing: some rotation of its weights, with a
/// zero appended, must pass [`cyclic_closure`].
pub fn classify_cyclic_boundary(g: &PlumbingGraph) -> Result<ContactToricClass, ClassifyError> {
    if g.shape() != Shape::Cyclic {
        return Err(ClassifyError::WrongShape { expected: Shape::Cyclic });
    }
    let w = g.weights();
    let n = w.len();
    let mut failures = Vec::new();
    for r in 0..n {
        let mut rotated: Vec<BigInt> = w[r..].iter().chain(&w[..r]).cloned().collect();
        rotated.push(BigInt::zero());
        match cyclic_closure(&rotated) {
            Ok(img) => return Ok(ContactToricClass::Free { n: img.winding() }),
            Err(e) => failures.push((r, e)),
        }
    }
    Err(ClassifyError::NotToric { failures })
}

/// Dispatches on the plumbing's shape.
pub fn classify_plumbing(g: &PlumbingGraph) -> Result<ContactToricClass, ClassifyError> {
    match g.shape() {
        Shape::Linear => classify_linear_boundary(g.weights()),
        Shape::Cyclic => classify_cyclic_boundary(g),
    }
}

/// Same angle, and an `SL(2, Z)` map taking the ray lines of `c1` to those
/// of `c2` in order. Compared through the collapse normals, so it agrees
/// with the `(k, l)` of [`classify_linear_boundary`].
pub fn cones_equivalent(c1: &MomentCone, c2: &MomentCone) -> bool {
    if c1.angle != c2.angle {
        return false;
    }
    let invariant = |c: &MomentCone| {
        lens_invariant(&rotate90(&c.r1, Sense::Ccw), &rotate90(&c.r2, Sense::Cw))
    };
    invariant(c1) == invariant(c2)
}

/// `L(k, l)` and `L(k, mk + l)` are related by the shear `[[1, m], [0, 1]]`.
pub fn shear_equivalence(k: &BigInt, l: &BigInt, m: &BigInt) -> (BigInt, BigInt) {
    (k.clone(), m * k + l)
}
