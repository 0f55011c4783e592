//! Exact combinatorics of concave toric plumbings and their contact boundaries.
//!
//! A plumbing of spheres along a path (linear) or a cycle (cyclic), with
//! integer weights, is studied through its moment image: a chain of lattice
//! edges whose normals are determined by the weights. From it we read off
//!
//! * whether the plumbing is concave, via a strictly feasible homogeneous
//!   system built from its intersection form,
//! * the contact toric boundary: a lens space or `S^1 × S^2` with some
//!   number of half-Lutz twists, or `(T^3, ξ_N)` for cyclic plumbings,
//! * infinite families of fillings of a prescribed boundary.
//!
//! All arithmetic is exact.

#![no_std]
#![allow(clippy::result_large_err, clippy::needless_range_loop)]

extern crate alloc;

pub mod classify;
pub mod families;
pub mod feasibility;
pub mod forms;
pub mod lattice;
pub mod moment;
pub mod plumbing;

pub use num_bigint::BigInt;

pub use classify::{
    classify_cyclic_boundary, classify_linear_boundary, classify_plumbing, cones_equivalent,
    shear_equivalence, ClassifyError, ContactToricClass, Underlying,
};
pub use families::{continued_fraction, eval_cf, generate_fillings, FamilyError, FamilyRequest};
pub use feasibility::{solve_homogeneous, FeasibilityAnswer, HomogeneousSystem};
pub use forms::{congruent_within_bound, form_invariants, FormInvariants};
pub use lattice::{LatticeMat, LatticeVec, Rational};
pub use moment::{cyclic_closure, edge_lengths, normal_chain, ClosureError, MomentError};
pub use plumbing::{blow_down, blow_up, BlowUpSite, PlumbingError, PlumbingGraph, Shape};
