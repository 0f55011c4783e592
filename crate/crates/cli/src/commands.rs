//! Subcommands. [`run`] does all the work and returns the streams, so the
//! binary only prints them.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::Serialize;

use toric_core::classify::{classify_cyclic_boundary, classify_plumbing, ContactToricClass};
use toric_core::families::{continued_fraction, generate_fillings, FamilyRequest};
use toric_core::forms::{congruent_within_bound, form_invariants};
use toric_core::moment::{
    cone_angle, cyclic_closure, edge_lengths, normal_chain_of, rays_eq1, rays_from_chain,
    ClosureError, CyclicImage,
};
use toric_core::plumbing::{
    blow_down, blow_up, concavity_certificate, is_negative_definite, BlowUpSite, Shape,
};
use toric_core::{BigInt, PlumbingGraph};

use crate::json::{
    fracs, ints, to_text, vector, AngleDoc, ClassDoc, CyclicImageDoc, FamilyDoc,
    Frac, GraphDoc, ImageDoc, Int, InvariantsDoc, MemberDoc, Outcome, RayPair, RaysDoc,
    ResultDocument,
};
use crate::spec::Spec;
use crate::svg;

#[derive(Debug, Parser)]
#[command(name = "toricfill", version, about = "Concave toric fillings of contact toric 3-manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Everything known about one plumbing
    Info {
        #[arg(long)]
        spec: Spec,
    },
    /// Rays and cone angle of a linear plumbing
    Rays {
        #[arg(long)]
        spec: Spec,
    },
    /// Contact toric boundary of a plumbing
    Classify {
        #[arg(long)]
        spec: Spec,
    },
    /// A verified family of fillings of a boundary
    Fill {
        /// lens:K,L | s1xs2 | t3:N
        #[arg(long)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Number of half-Lutz twists (lens and s1xs2 targets)
        #[arg(long, default_value_t = 0)]
        lutz: u64,
        /// First family index n or m
        #[arg(long, default_value = "0", allow_negative_numbers = true, value_parser = big_int)]
        start: BigInt,
    },
    /// Continued fraction of K/L
    Cf {
        #[arg(allow_negative_numbers = true, value_parser = big_int)]
        k: BigInt,
        #[arg(allow_negative_numbers = true, value_parser = big_int)]
        l: BigInt,
    },
    /// Plumb the first and last vertex of (s_1, ..., s_n, 0)
    CyclicClose {
        #[arg(long)]
        spec: Spec,
    },
    /// Search for P with entries in [-B, B] and Q_left = P Q_right P^T
    Congruent {
        #[arg(long)]
        left: Spec,
        #[arg(long)]
        right: Spec,
        #[arg(long, default_value_t = 1)]
        bound: u32,
    },
    /// Toric blow-up at a corner
    Blowup {
        #[arg(long)]
        spec: Spec,
        /// left | right | interior:J
        #[arg(long)]
        site: Site,
    },
    /// Toric blow-down of a -1 vertex (1-based)
    Blowdown {
        #[arg(long)]
        spec: Spec,
        #[arg(long)]
        vertex: usize,
    },
    /// Write the moment image as SVG
    Render {
        #[arg(long)]
        spec: Spec,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn big_int(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("{s:?} is not an integer"))
}

/// A boundary named on the command line, before half-Lutz twists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Lens(BigInt, BigInt),
    S1xS2,
    T3(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected lens:K,L, s1xs2 or t3:N, got {0:?}")]
pub struct TargetError(String);

impl FromStr for Target {
    type Err = TargetError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || TargetError(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "s1xs2" {
            return Ok(Target::S1xS2);
        }
        if let Some(rest) = compact.strip_prefix("lens:") {
            let (k, l) = rest.split_once(',').ok_or_else(err)?;
            return Ok(Target::Lens(k.parse().map_err(|_| err())?, l.parse().map_err(|_| err())?));
        }
        if let Some(n) = compact.strip_prefix("t3:") {
            return Ok(Target::T3(n.parse().map_err(|_| err())?));
        }
        Err(err())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Site(pub BlowUpSite);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected left, right or interior:J, got {0:?}")]
pub struct SiteError(String);

impl FromStr for Site {
    type Err = SiteError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "left" => Ok(Site(BlowUpSite::LeftEnd)),
            "right" => Ok(Site(BlowUpSite::RightEnd)),
            other => other
                .strip_prefix("interior:")
                .and_then(|j| j.trim().parse().ok())
                .map(|j| Site(BlowUpSite::Interior(j)))
                .ok_or_else(|| SiteError(s.to_string())),
        }
    }
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok<T: Serialize>(doc: &T) -> Self {
        Output {
            code: 0,
            stdout: to_text(doc),
            stderr: String::new(),
        }
    }

    fn domain(err: impl fmt::Display) -> Self {
        Output {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }

    fn usage(msg: impl fmt::Display) -> Self {
        Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

pub fn run(cli: Cli) -> Output {
    match cli.command {
        Command::Info { spec } => Output::ok(&info(&spec.0)),
        Command::Rays { spec } => rays(&spec.0),
        Command::Classify { spec } => classify(&spec.0),
        Command::Fill {
            target,
            count,
            lutz,
            start,
        } => fill(target, count, lutz, start),
        Command::Cf { k, l } => cf(&k, &l),
        Command::CyclicClose { spec } => close(&spec.0),
        Command::Congruent { left, right, bound } => congruent(&left.0, &right.0, bound),
        Command::Blowup { spec, site } => match blow_up(&spec.0, site.0) {
            Ok(g) => Output::ok(&SurgeryDoc {
                input: (&spec.0).into(),
                operation: format!("blowup {}", site.0),
                result: (&g).into(),
            }),
            Err(e) => Output::domain(e),
        },
        Command::Blowdown { spec, vertex } => match blow_down(&spec.0, vertex) {
            Ok(g) => Output::ok(&SurgeryDoc {
                input: (&spec.0).into(),
                operation: format!("blowdown {vertex}"),
                result: (&g).into(),
            }),
            Err(e) => Output::domain(e),
        },
        Command::Render { spec, output } => render(&spec.0, &output),
    }
}

pub fn info(g: &PlumbingGraph) -> ResultDocument {
    let q = g.intersection_form();
    let (rays, moment_image, classification) = match g.shape() {
        Shape::Linear => {
            let chain = normal_chain_of(g);
            (
                Some(rays_doc(g)),
                Some(Outcome::from_result(edge_lengths(&chain), |img| ImageDoc::from(&img))),
                Outcome::from_result(classify_plumbing(g), |c| ClassDoc::from(&c)),
            )
        }
        Shape::Cyclic => (
            None,
            None,
            Outcome::from_result(classify_cyclic_boundary(g), |c| ClassDoc::from(&c)),
        ),
    };
    ResultDocument {
        input: g.into(),
        intersection_form: crate::json::form(&q),
        negative_definite: is_negative_definite(&q),
        concavity: (&concavity_certificate(&q)).into(),
        rays,
        moment_image,
        classification,
        toric_minimal: g.is_toric_minimal(),
    }
}

fn rays_doc(g: &PlumbingGraph) -> RaysDoc {
    let chain = normal_chain_of(g);
    let (r1, r2) = rays_from_chain(&chain);
    RaysDoc {
        from_chain: RayPair {
            r1: vector(&r1),
            r2: vector(&r2),
        },
        gluing_product: Outcome::from_result(rays_eq1(g.weights()), |(a, b)| RayPair {
            r1: vector(&a),
            r2: vector(&b),
        }),
        angle: Outcome::from_result(cone_angle(&chain), |a| AngleDoc::from(&a)),
    }
}

#[derive(Serialize)]
struct RaysOutput {
    input: GraphDoc,
    rays: RaysDoc,
}

fn rays(g: &PlumbingGraph) -> Output {
    if g.shape() != Shape::Linear {
        return Output::domain("rays are defined for linear plumbings");
    }
    Output::ok(&RaysOutput {
        input: g.into(),
        rays: rays_doc(g),
    })
}

#[derive(Serialize)]
struct ClassifyOutput {
    input: GraphDoc,
    classification: ClassDoc,
}

fn classify(g: &PlumbingGraph) -> Output {
    match classify_plumbing(g) {
        Ok(c) => Output::ok(&ClassifyOutput {
            input: g.into(),
            classification: (&c).into(),
        }),
        Err(e) => Output::domain(e),
    }
}

fn fill(target: Target, count: usize, lutz: u64, start: BigInt) -> Output {
    let class = match target {
        Target::S1xS2 => ContactToricClass::s1xs2(lutz),
        Target::Lens(k, l) => match ContactToricClass::lens(k, l, lutz) {
            Ok(c) => c,
            Err(e) => return Output::domain(e),
        },
        Target::T3(_) if lutz > 0 => return Output::usage("--lutz does not apply to t3 targets"),
        Target::T3(n) => ContactToricClass::torus(n),
    };
    let req = FamilyRequest {
        target: class.clone(),
        count,
        start,
    };
    match generate_fillings(&req) {
        Ok(members) => Output::ok(&FamilyDoc {
            target: (&class).into(),
            count,
            members: members.iter().map(|m| MemberDoc::new(m, &class)).collect(),
        }),
        Err(e) => Output::domain(e),
    }
}

#[derive(Serialize)]
struct CfOutput {
    k: Int,
    l: Int,
    coefficients: Vec<Int>,
    value: Frac,
}

fn cf(k: &BigInt, l: &BigInt) -> Output {
    match continued_fraction(k, l) {
        Ok(cf) => Output::ok(&CfOutput {
            k: k.into(),
            l: l.into(),
            coefficients: ints(&cf.coefficients),
            value: (&cf.value()).into(),
        }),
        Err(e) => Output::domain(e),
    }
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum CloseOutput {
    Closed {
        input: GraphDoc,
        image: CyclicImageDoc,
        classification: ClassDoc,
    },
    Failed {
        input: GraphDoc,
        error: CloseFailure,
    },
}

#[derive(Serialize)]
struct CloseFailure {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_edge: Option<[Int; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    last_edge: Option<[Int; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alternative: Option<[Vec<Frac>; 2]>,
}

impl From<&ClosureError> for CloseFailure {
    fn from(e: &ClosureError) -> Self {
        let mut f = CloseFailure {
            kind: "",
            message: e.to_string(),
            first_edge: None,
            last_edge: None,
            alternative: None,
        };
        f.kind = match e {
            ClosureError::TooShort(_) => "too_short",
            ClosureError::LastWeightNotZero(_) => "last_weight_not_zero",
            ClosureError::RaysDoNotCoincide { .. } => "rays_do_not_coincide",
            ClosureError::EndEdgesNotParallel { first, last } => {
                f.first_edge = Some(vector(first));
                f.last_edge = Some(vector(last));
                "end_edges_not_parallel"
            }
            ClosureError::NoClosedRealization { strict, equality } => {
                f.alternative = Some([fracs(strict), fracs(equality)]);
                "no_closed_realization"
            }
        };
        f
    }
}

fn close(g: &PlumbingGraph) -> Output {
    if g.shape() != Shape::Linear {
        return Output::domain("cyclic-close takes a linear plumbing");
    }
    match cyclic_closure(g.weights()) {
        Ok(img) => Output::ok(&CloseOutput::Closed {
            input: g.into(),
            classification: (&ContactToricClass::torus(img.winding())).into(),
            image: (&img).into(),
        }),
        Err(e) => {
            let doc = CloseOutput::Failed {
                input: g.into(),
                error: (&e).into(),
            };
            Output {
                code: 1,
                stdout: to_text(&doc),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

#[derive(Serialize)]
struct FormSide {
    input: GraphDoc,
    intersection_form: Vec<Vec<Int>>,
    invariants: InvariantsDoc,
}

#[derive(Serialize)]
struct CongruentOutput {
    left: FormSide,
    right: FormSide,
    bound: u32,
    /// Invariants that differ; nonempty means no `P` exists at any bound.
    separated_by: Vec<&'static str>,
    witness: Option<Vec<Vec<Int>>>,
}

fn congruent(a: &PlumbingGraph, b: &PlumbingGraph, bound: u32) -> Output {
    let (qa, qb) = (a.intersection_form(), b.intersection_form());
    let witness = match congruent_within_bound(&qa, &qb, bound) {
        Ok(w) => w,
        Err(e) => return Output::domain(e),
    };
    let (ia, ib) = (form_invariants(&qa), form_invariants(&qb));
    let mut separated_by = Vec::new();
    if ia.determinant != ib.determinant {
        separated_by.push("determinant");
    }
    if ia.rank != ib.rank {
        separated_by.push("rank");
    }
    if ia.signature != ib.signature {
        separated_by.push("signature");
    }
    if ia.parity != ib.parity {
        separated_by.push("parity");
    }
    Output::ok(&CongruentOutput {
        left: FormSide {
            input: a.into(),
            intersection_form: crate::json::form(&qa),
            invariants: (&ia).into(),
        },
        right: FormSide {
            input: b.into(),
            intersection_form: crate::json::form(&qb),
            invariants: (&ib).into(),
        },
        bound,
        separated_by,
        witness: witness.map(|p| p.iter().map(|r| ints(r)).collect()),
    })
}

#[derive(Serialize)]
struct SurgeryDoc {
    input: GraphDoc,
    operation: String,
    result: GraphDoc,
}

/// First rotation of a cyclic plumbing whose closure succeeds.
pub fn cyclic_image(g: &PlumbingGraph) -> Result<CyclicImage, String> {
    let w = g.weights();
    for r in 0..w.len() {
        let mut rotated: Vec<BigInt> = w[r..].iter().chain(&w[..r]).cloned().collect();
        rotated.push(BigInt::from(0));
        if let Ok(img) = cyclic_closure(&rotated) {
            return Ok(img);
        }
    }
    Err(format!("no rotation of {g} closes up"))
}

#[derive(Serialize)]
struct RenderOutput {
    input: GraphDoc,
    output: String,
}

fn render(g: &PlumbingGraph, path: &std::path::Path) -> Output {
    let picture = match g.shape() {
        Shape::Linear => edge_lengths(&normal_chain_of(g))
            .map(|img| svg::linear_svg(&img))
            .map_err(|e| e.to_string()),
        Shape::Cyclic => cyclic_image(g).map(|img| svg::cyclic_svg(&img)),
    };
    let picture = match picture {
        Ok(p) => p,
        Err(e) => return Output::domain(e),
    };
    match svg::write_svg(path, &picture) {
        Ok(()) => Output::ok(&RenderOutput {
            input: g.into(),
            output: path.display().to_string(),
        }),
        Err(e) => Output::domain(format!("cannot write {}: {e}", path.display())),
    }
}
