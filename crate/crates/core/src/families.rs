//! Infinite families of concave toric fillings with a prescribed boundary.
//!
//! * `S^1 × S^2`, tight: `(n, 0, -n)` for `n >= 0`.
//! * `L(k, l)`, tight: `(s_1, ..., s_r)`, the continued fraction of
//!   `k / (mk + l)`, for every `m` with `mk + l > 0`.
//! * `H` half-Lutz twists: any of the above with `2H` zeros appended.
//! * `(T^3, ξ_N)`: the cyclic closure of `(n, 0, -n, 0, ..., 0)` with
//!   `4N - 2` trailing zeros.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::classify::{classify_plumbing, ClassifyError, ContactToricClass, Underlying};
use crate::lattice::Rational;
use crate::moment::{cyclic_closure, ClosureError, CyclicImage};
use crate::plumbing::{
    canonical_form, concavity_certificate, is_toric_minimal, CanonicalForm, Concavity,
    ConcavityCertificate, PlumbingGraph,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("continued fraction of {k}/{l} needs coprime k, l > 0")]
    NotCoprime { k: BigInt, l: BigInt },
    #[error("continued fraction has no coefficients")]
    EmptyFraction,
    #[error("continued fraction divides by zero")]
    DivisionByZero,
    #[error("invalid lens space L({k}, {l})")]
    InvalidLens { k: BigInt, l: BigInt },
    #[error("the number of half-Lutz twists must be positive")]
    NoTwists,
    #[error("T3 boundaries need N >= 1")]
    ZeroWinding,
    #[error("a family needs at least one member")]
    ZeroCount,
    #[error("no family is known for this boundary: {0}")]
    UnsupportedTarget(ContactToricClass),
    #[error("cyclic closure failed: {0}")]
    Closure(#[from] ClosureError),
    #[error("member {index} failed verification: {reason}")]
    VerificationFailed { index: usize, reason: &'static str },
}

/// `k / l = s_1 - 1 / (s_2 - 1 / (... - 1 / s_r))` with `s_1 >= 0` and
/// `s_i <= -2` for `i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub coefficients: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn value(&self) -> Rational {
        eval_cf(&self.coefficients).expect("well-formed fractions never divide by zero")
    }
}

/// Greedy expansion taking the floor at every step.
pub fn continued_fraction(k: &BigInt, l: &BigInt) -> Result<ContinuedFraction, FamilyError> {
    if !k.is_positive() || !l.is_positive() || !k.gcd(l).is_one() {
        return Err(FamilyError::NotCoprime { k: k.clone(), l: l.clone() });
    }
    let mut coefficients = Vec::new();
    let mut x = Rational::new(k.clone(), l.clone());
    loop {
        let s = x.floor();
        let rem = &x - &s;
        coefficients.push(s.to_integer());
        if rem.is_zero() {
            break;
        }
        x = -rem.recip();
    }
    Ok(ContinuedFraction { coefficients })
}

/// Value of `s_1 - 1 / (s_2 - 1 / (... - 1 / s_r))`.
pub fn eval_cf(coefficients: &[BigInt]) -> Result<Rational, FamilyError> {
    let (last, rest) = coefficients.split_last().ok_or(FamilyError::EmptyFraction)?;
    let mut v = Rational::from_integer(last.clone());
    for s in rest.iter().rev() {
        if v.is_zero() {
            return Err(FamilyError::DivisionByZero);
        }
        v = Rational::from_integer(s.clone()) - v.recip();
    }
    Ok(v)
}

/// `count` members `(n, 0, -n)` for `n = n0, n0 + 1, ...`.
pub fn family_case1(count: usize, n0: &BigInt) -> Vec<PlumbingGraph> {
    (0..count)
        .map(|i| {
            let n = n0 + BigInt::from(i);
            PlumbingGraph::linear([n.clone(), BigInt::zero(), -n]).expect("three vertices")
        })
        .collect()
}

/// `count` members for `L(k, l)`, one per `m >= m0` with `mk + l > 0`.
///
/// `l` is first reduced to `[1, k)`, or to `1` when `k = 1`.
pub fn family_case2(
    k: &BigInt,
    l: &BigInt,
    count: usize,
    m0: &BigInt,
) -> Result<Vec<PlumbingGraph>, FamilyError> {
    let l = lens_residue(k, l)?;
    let start = first_parameter(k, &l, m0);
    (0..count)
        .map(|i| {
            let p = (&start + BigInt::from(i)) * k + &l;
            let cf = continued_fraction(k, &p)?;
            Ok(PlumbingGraph::linear(cf.coefficients).expect("nonempty"))
        })
        .collect()
}

fn lens_residue(k: &BigInt, l: &BigInt) -> Result<BigInt, FamilyError> {
    if !k.is_positive() {
        return Err(FamilyError::InvalidLens { k: k.clone(), l: l.clone() });
    }
    if k.is_one() {
        return Ok(BigInt::one());
    }
    let r = l.mod_floor(k);
    if !r.gcd(k).is_one() {
        return Err(FamilyError::InvalidLens { k: k.clone(), l: l.clone() });
    }
    Ok(r)
}

/// Smallest `m >= m0` with `mk + l > 0`.
fn first_parameter(k: &BigInt, l: &BigInt, m0: &BigInt) -> BigInt {
    let first = (-l).div_floor(k) + 1;
    if m0 > &first {
        m0.clone()
    } else {
        first
    }
}

/// Appends `2 * twists` zero-weight vertices to every member.
pub fn family_case3(base: &[PlumbingGraph], twists: u64) -> Result<Vec<PlumbingGraph>, FamilyError> {
    if twists == 0 {
        return Err(FamilyError::NoTwists);
    }
    let pad = 2 * twists as usize;
    Ok(base
        .iter()
        .map(|g| {
            let mut w = g.weights().to_vec();
            w.extend(core::iter::repeat_n(BigInt::zero(), pad));
            PlumbingGraph::linear(w).expect("nonempty")
        })
        .collect())
}

/// `count` cyclic closures of `(n, 0, -n, 0^{4N-2})` for `n = n0, ...`.
pub fn family_free(winding: u64, count: usize, n0: &BigInt) -> Result<Vec<CyclicImage>, FamilyError> {
    if winding == 0 {
        return Err(FamilyError::ZeroWinding);
    }
    let zeros = 4 * winding as usize - 2;
    (0..count)
        .map(|i| {
            let n = n0 + BigInt::from(i);
            let mut w = vec![n.clone(), BigInt::zero(), -n];
            w.extend(core::iter::repeat_n(BigInt::zero(), zeros));
            Ok(cyclic_closure(&w)?)
        })
        .collect()
}

/// A request for `count` fillings of `target`. `start` is the first `n`
/// (`S^1 × S^2`, `T^3`) or `m` (`L(k, l)`) of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRequest {
    pub target: ContactToricClass,
    pub count: usize,
    pub start: BigInt,
}

impl FamilyRequest {
    pub fn new(target: ContactToricClass, count: usize) -> Self {
        Self {
            target,
            count,
            start: BigInt::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedMember {
    /// The family parameter `n` or `m` this member was built from.
    pub parameter: BigInt,
    pub graph: PlumbingGraph,
    pub certificate: ConcavityCertificate,
    pub class: ContactToricClass,
    /// Informational: `(1, 0, -1)` is a member but is a toric blow-up of `(1, 1)`.
    pub toric_minimal: bool,
    pub canonical: CanonicalForm,
}

/// Builds the family for `req.target` and checks every member: a verified
/// concavity certificate, classification equal to the target, and
/// pairwise distinct canonical forms.
pub fn generate_fillings(req: &FamilyRequest) -> Result<Vec<VerifiedMember>, FamilyError> {
    if req.count == 0 {
        return Err(FamilyError::ZeroCount);
    }
    let graphs = match &req.target {
        ContactToricClass::NonFree { underlying, half_lutz } => {
            let base = match underlying {
                Underlying::S1xS2 => family_case1(req.count, &req.start),
                Underlying::Lens { k, l } => family_case2(k, l, req.count, &req.start)
                    .map_err(|_| FamilyError::UnsupportedTarget(req.target.clone()))?,
            };
            if *half_lutz == 0 {
                base
            } else {
                family_case3(&base, *half_lutz)?
            }
        }
        ContactToricClass::Free { n } => family_free(*n, req.count, &req.start)?
            .into_iter()
            .map(|img| img.graph().clone())
            .collect(),
    };
    let parameters = parameters(req);
    let mut members: Vec<VerifiedMember> = Vec::with_capacity(graphs.len());
    for (index, (graph, parameter)) in graphs.into_iter().zip(parameters).enumerate() {
        let fail = |reason| FamilyError::VerificationFailed { index, reason };
        let q = graph.intersection_form();
        let certificate = match concavity_certificate(&q) {
            Concavity::Certified(c) if c.verify(&q) => c,
            _ => return Err(fail("no verified concavity certificate")),
        };
        let class = match classify_plumbing(&graph) {
            Ok(c) => c,
            Err(ClassifyError::DegenerateCone { .. }) => return Err(fail("degenerate moment cone")),
            Err(_) => return Err(fail("boundary could not be classified")),
        };
        if class != req.target {
            return Err(fail("boundary differs from the target"));
        }
        let canonical = canonical_form(&graph);
        if members.iter().any(|m| m.canonical == canonical) {
            return Err(fail("duplicate canonical form"));
        }
        members.push(VerifiedMember {
            parameter,
            toric_minimal: is_toric_minimal(&graph),
            graph,
            certificate,
            class,
            canonical,
        });
    }
    Ok(members)
}

fn parameters(req: &FamilyRequest) -> Vec<BigInt> {
    let start = match &req.target {
        ContactToricClass::NonFree { underlying: Underlying::Lens { k, l }, .. } => {
            match lens_residue(k, l) {
                Ok(l) => first_parameter(k, &l, &req.start),
                Err(_) => req.start.clone(),
            }
        }
        _ => req.start.clone(),
    };
    (0..req.count).map(|i| &start + BigInt::from(i)).collect()
}
