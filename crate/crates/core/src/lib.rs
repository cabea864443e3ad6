//! Exact arithmetic for Bridgeland stability conditions on ruled surfaces.
//!
//! A ruled surface `p: S -> C` over a curve of genus `g` has numerical
//! Néron-Severi lattice `Z C0 + Z f` with `C0^2 = e`, `C0.f = 1`, `f^2 = 0`.
//! The crate computes central charges of divisorial (geometric) and glued
//! stability conditions, lifted phases under the universal cover of
//! `GL+(2, R)`, the perversity of a gluing, and the behaviour of skyscraper
//! sheaves `O_x` across the wall where geometric and glued conditions meet.
//!
//! Everything is generic over a [`Scalar`]; [`Q`] (arbitrary precision
//! rationals) is the exact default and `f64` is available as an oracle.

pub mod catalog;
pub mod conditions;
pub mod error;
pub mod lattice;
pub mod liftedphase;
pub mod scalar;
pub mod serial;
pub mod verify;
pub mod walls;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

pub use catalog::{ch_object, parse_object, CatalogEntry, GluingComponent, ObjectSpec, ParseError};
pub use conditions::{
    DivisorialDescriptor, GluedDescriptor, PerversityComparison, PerversityVerdict, StabilityDescriptor,
};
pub use error::{BoundaryPrecondition, Result, StabError};
pub use lattice::{mukai_pair, ChernVector, ComplexClass, CurveClass, DivisorClass, NumClass, SurfaceData};
pub use liftedphase::{LiftedGL, Mat2, PhasePoint};
pub use scalar::{Gaussian, Scalar};
pub use walls::{
    boundary_solve, classify_skyscraper, deform_side, neighborhood_check, BoundaryOutcome, BoundaryWitness,
    Side, SkyscraperKind, SkyscraperVerdict,
};

/// Exact rationals: the default scalar.
pub type Q = BigRational;
/// Machine-word rationals; fast but may overflow on long compositions.
pub type Q64 = Ratio<i64>;
pub type Int = BigInt;

pub type NumClassQ = NumClass<Q>;
pub type ComplexClassQ = ComplexClass<Q>;
pub type DivisorClassQ = DivisorClass<Q>;
pub type PhasePointQ = PhasePoint<Q>;
pub type LiftedGLQ = LiftedGL<Q>;
pub type GluedDescriptorQ = GluedDescriptor<Q>;
pub type DivisorialDescriptorQ = DivisorialDescriptor<Q>;
pub type StabilityDescriptorQ = StabilityDescriptor<Q>;
