//! JSON documents. Integers of any size are written as JSON numbers,
//! rationals as `{"num": .., "den": ..}`. Field order is declaration order.

use serde::ser::Serializer;
use serde::Serialize;
use serde_json::Number;

use toric_core::classify::{ContactToricClass, Underlying};
use toric_core::families::VerifiedMember;
use toric_core::forms::{FormInvariants, Parity};
use toric_core::lattice::{LatticeVec, Rational};
use toric_core::moment::{ConeAngle, CyclicImage, MomentImage, Point};
use toric_core::plumbing::{Concavity, IntersectionForm, PlumbingGraph};
use toric_core::BigInt;

use crate::spec::unparse;

/// An exact integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n: Number = self.0.to_string().parse().expect("integers are JSON numbers");
        n.serialize(s)
    }
}

impl From<&BigInt> for Int {
    fn from(b: &BigInt) -> Self {
        Int(b.clone())
    }
}

impl From<u64> for Int {
    fn from(n: u64) -> Self {
        Int(n.into())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Frac {
    pub num: Int,
    pub den: Int,
}

impl From<&Rational> for Frac {
    fn from(r: &Rational) -> Self {
        Frac {
            num: r.numer().into(),
            den: r.denom().into(),
        }
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().map(Int::from).collect()
}

pub fn fracs(v: &[Rational]) -> Vec<Frac> {
    v.iter().map(Frac::from).collect()
}

pub fn vector(v: &LatticeVec) -> [Int; 2] {
    [(&v.x).into(), (&v.y).into()]
}

pub fn point(p: &Point) -> [Frac; 2] {
    [(&p.x).into(), (&p.y).into()]
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphDoc {
    pub spec: String,
    pub shape: &'static str,
    pub weights: Vec<Int>,
}

impl From<&PlumbingGraph> for GraphDoc {
    fn from(g: &PlumbingGraph) -> Self {
        GraphDoc {
            spec: unparse(g),
            shape: g.shape().name(),
            weights: ints(g.weights()),
        }
    }
}

pub fn form(q: &IntersectionForm) -> Vec<Vec<Int>> {
    q.rows().iter().map(|r| ints(r)).collect()
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConcavityDoc {
    Certified { z: Vec<Frac>, a: Vec<Frac> },
    Refuted { strict: Vec<Frac>, equality: Vec<Frac> },
}

impl From<&Concavity> for ConcavityDoc {
    fn from(c: &Concavity) -> Self {
        match c {
            Concavity::Certified(cert) => ConcavityDoc::Certified {
                z: fracs(&cert.z),
                a: fracs(&cert.a),
            },
            Concavity::Refuted { strict, equality } => ConcavityDoc::Refuted {
                strict: fracs(strict),
                equality: fracs(equality),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AngleDoc {
    pub half_turns: u64,
    pub exact: bool,
    pub text: String,
}

impl From<&ConeAngle> for AngleDoc {
    fn from(a: &ConeAngle) -> Self {
        AngleDoc {
            half_turns: a.half_turns,
            exact: a.exact,
            text: a.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum UnderlyingDoc {
    Lens { k: Int, l: Int },
    S1xs2,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassDoc {
    NonFree {
        underlying: UnderlyingDoc,
        half_lutz: u64,
        tight: bool,
        text: String,
    },
    Free {
        n: u64,
        text: String,
    },
}

impl From<&ContactToricClass> for ClassDoc {
    fn from(c: &ContactToricClass) -> Self {
        match c {
            ContactToricClass::NonFree { underlying, half_lutz } => ClassDoc::NonFree {
                underlying: match underlying {
                    Underlying::Lens { k, l } => UnderlyingDoc::Lens { k: k.into(), l: l.into() },
                    Underlying::S1xS2 => UnderlyingDoc::S1xs2,
                },
                half_lutz: *half_lutz,
                tight: c.is_tight(),
                text: c.to_string(),
            },
            ContactToricClass::Free { n } => ClassDoc::Free {
                n: *n,
                text: c.to_string(),
            },
        }
    }
}

/// Either a value or the reason it is unavailable.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Outcome<T> {
    Ok(T),
    Err { error: String },
}

impl<T> Outcome<T> {
    pub fn from_result<U, E: std::fmt::Display>(r: Result<U, E>, f: impl FnOnce(U) -> T) -> Self {
        match r {
            Ok(u) => Outcome::Ok(f(u)),
            Err(e) => Outcome::Err { error: e.to_string() },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RayPair {
    pub r1: [Int; 2],
    pub r2: [Int; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct RaysDoc {
    pub from_chain: RayPair,
    pub gluing_product: Outcome<RayPair>,
    pub angle: Outcome<AngleDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImageDoc {
    pub normals: Vec<[Int; 2]>,
    pub lengths: Vec<Frac>,
    pub ray_params: [Frac; 2],
    pub vertices: Vec<[Frac; 2]>,
}

impl From<&MomentImage> for ImageDoc {
    fn from(img: &MomentImage) -> Self {
        let (r1, r2) = img.ray_params();
        ImageDoc {
            normals: img.chain().normals().iter().map(vector).collect(),
            lengths: fracs(img.lengths()),
            ray_params: [r1.into(), r2.into()],
            vertices: img.vertices().iter().map(point).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CyclicImageDoc {
    pub cyclic: GraphDoc,
    pub winding: u64,
    pub normals: Vec<[Int; 2]>,
    pub lengths: Vec<Frac>,
    pub vertices: Vec<[Frac; 2]>,
}

impl From<&CyclicImage> for CyclicImageDoc {
    fn from(img: &CyclicImage) -> Self {
        CyclicImageDoc {
            cyclic: img.graph().into(),
            winding: img.winding(),
            normals: img.normals().iter().map(vector).collect(),
            lengths: fracs(img.lengths()),
            vertices: img.vertices().iter().map(point).collect(),
        }
    }
}

/// Output of `info`.
#[derive(Debug, Clone, Serialize)]
pub struct ResultDocument {
    pub input: GraphDoc,
    pub intersection_form: Vec<Vec<Int>>,
    pub negative_definite: bool,
    pub concavity: ConcavityDoc,
    pub rays: Option<RaysDoc>,
    pub moment_image: Option<Outcome<ImageDoc>>,
    pub classification: Outcome<ClassDoc>,
    pub toric_minimal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberDoc {
    pub parameter: Int,
    pub plumbing: GraphDoc,
    pub canonical_weights: Vec<Int>,
    pub certificate: ConcavityDoc,
    pub certificate_verified: bool,
    pub classification: ClassDoc,
    pub matches_target: bool,
    pub toric_minimal: bool,
}

impl MemberDoc {
    pub fn new(m: &VerifiedMember, target: &ContactToricClass) -> Self {
        let q = m.graph.intersection_form();
        MemberDoc {
            parameter: (&m.parameter).into(),
            plumbing: (&m.graph).into(),
            canonical_weights: ints(&m.canonical.weights),
            certificate: ConcavityDoc::Certified {
                z: fracs(&m.certificate.z),
                a: fracs(&m.certificate.a),
            },
            certificate_verified: m.certificate.verify(&q),
            classification: (&m.class).into(),
            matches_target: m.class == *target,
            toric_minimal: m.toric_minimal,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyDoc {
    pub target: ClassDoc,
    pub count: usize,
    pub members: Vec<MemberDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsDoc {
    pub determinant: Int,
    pub rank: usize,
    pub signature: [usize; 3],
    pub parity: &'static str,
}

impl From<&FormInvariants> for InvariantsDoc {
    fn from(f: &FormInvariants) -> Self {
        InvariantsDoc {
            determinant: (&f.determinant).into(),
            rank: f.rank,
            signature: [f.signature.positive, f.signature.negative, f.signature.zero],
            parity: match f.parity {
                Parity::Even => "even",
                Parity::Odd => "odd",
            },
        }
    }
}

/// Serialises with two-space indentation and a trailing newline.
pub fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialise");
    s.push('\n');
    s
}
