//! Planar lattice arithmetic over arbitrary-precision integers.
//!
//! Everything downstream (normal chains, rays, cone normalisation) is built
//! from the handful of primitives here: 2×2 determinants, quarter turns and
//! a unimodular map taking a primitive vector to `(1, 0)`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number. Always reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("vector {0} is not primitive")]
    NotPrimitive(LatticeVec),
}

/// A vector of the integer lattice `Z^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticeVec {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn e1() -> Self {
        Self::new(1, 0)
    }

    pub fn e2() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Nonzero with coprime coordinates.
    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.x.gcd(&self.y).is_one()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    pub fn dot(&self, other: &Self) -> BigInt {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn to_rational(&self) -> (Rational, Rational) {
        (
            Rational::from_integer(self.x.clone()),
            Rational::from_integer(self.y.clone()),
        )
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &LatticeVec {
    type Output = LatticeVec;
    fn add(self, rhs: Self) -> LatticeVec {
        LatticeVec {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Sub for &LatticeVec {
    type Output = LatticeVec;
    fn sub(self, rhs: Self) -> LatticeVec {
        LatticeVec {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Neg for &LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl Neg for LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec {
            x: -self.x,
            y: -self.y,
        }
    }
}

/// Row-major 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeMat {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl LatticeMat {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// The shear `[[1, m], [0, 1]]`.
    pub fn shear(m: impl Into<BigInt>) -> Self {
        Self::new(1, m, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn is_special(&self) -> bool {
        self.det().is_one()
    }

    pub fn transpose(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn apply(&self, v: &LatticeVec) -> LatticeVec {
        LatticeVec {
            x: &self.a * &v.x + &self.b * &v.y,
            y: &self.c * &v.x + &self.d * &v.y,
        }
    }

    /// Inverse of a unimodular matrix, `None` otherwise.
    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if !det.abs().is_one() {
            return None;
        }
        // det is ±1, so dividing by it is multiplying by it
        Some(Self {
            a: &self.d * &det,
            b: -&self.b * &det,
            c: -&self.c * &det,
            d: &self.a * &det,
        })
    }
}

impl Mul for &LatticeMat {
    type Output = LatticeMat;
    fn mul(self, rhs: Self) -> LatticeMat {
        LatticeMat {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl fmt::Display for LatticeMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Direction of a quarter turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Ccw,
    Cw,
}

/// `u.x * v.y - u.y * v.x`.
pub fn det2(u: &LatticeVec, v: &LatticeVec) -> BigInt {
    &u.x * &v.y - &u.y * &v.x
}

pub fn rotate90(v: &LatticeVec, sense: Sense) -> LatticeVec {
    match sense {
        Sense::Ccw => LatticeVec {
            x: -&v.y,
            y: v.x.clone(),
        },
        Sense::Cw => LatticeVec {
            x: v.y.clone(),
            y: -&v.x,
        },
    }
}

/// A determinant-one matrix `U` with `U * v = (1, 0)`.
///
/// Built from a Bézout pair `p*x + q*y = 1` as `[[p, q], [-y, x]]`. The
/// answer is only unique up to left multiplication by shears fixing `(1, 0)`.
pub fn sl2_sending_to_e1(v: &LatticeVec) -> Result<LatticeMat, LatticeError> {
    if !v.is_primitive() {
        return Err(LatticeError::NotPrimitive(v.clone()));
    }
    let egcd = v.x.extended_gcd(&v.y);
    let (mut p, mut q) = (egcd.x, egcd.y);
    if egcd.gcd.is_negative() {
        p = -p;
        q = -q;
    }
    debug_assert!((&p * &v.x + &q * &v.y).is_one());
    Ok(LatticeMat {
        a: p,
        b: q,
        c: -&v.y,
        d: v.x.clone(),
    })
}

/// Position of `v` relative to the reference direction `u`, in quarter steps
/// around the circle: 0 on `+u`, 1 strictly left of `u`, 2 on `-u`, 3 strictly
/// right of `u`. `v` must be nonzero.
pub(crate) fn quarter_position(u: &LatticeVec, v: &LatticeVec) -> u8 {
    let side = det2(u, v);
    if side.is_positive() {
        1
    } else if side.is_negative() {
        3
    } else if u.dot(v).is_positive() {
        0
    } else {
        2
    }
}
