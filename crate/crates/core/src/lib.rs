//! Reachability and convex inequalities for sliding beads on a line.
//!
//! A configuration is a finite set of beads at nondecreasing distances from
//! a base point: positions `mu <= A_1 <= ... <= A_n` whose consecutive gaps
//! never shrink. The one primitive move slides a single bead to the right
//! without breaking that shape. Three questions drive the crate:
//!
//! * **Order.** When is one configuration componentwise below another, and
//!   when does that order guarantee a chain of admissible slides between
//!   them? [`planner::plan`] answers constructively, emitting a certificate
//!   of moves that [`planner::verify_plan`] replays step by step.
//! * **Ground truth.** [`oracle`] re-answers reachability by brute-force
//!   search on a rational lattice, so the analytic route and the exhaustive
//!   route can be checked against each other.
//! * **Inequalities.** Sliding beads apart spreads their positions in a
//!   way concave sums detect: [`majorization`] verifies Schur-type sum
//!   inequalities between dominated configurations, exactly on rationals
//!   where possible and in floating point otherwise.
//!
//! Core types are generic over the scalar (exact rationals or floats via
//! [`scalar::Scalar`]); the crate-root aliases fix the exact-arithmetic
//! instantiations that the planner and oracle work in. [`json`] gives every
//! public result a canonical, byte-deterministic encoding.

pub mod bead;
pub mod json;
pub mod majorization;
pub mod oracle;
pub mod planner;
pub mod scalar;

pub use bead::{Beads, ConfigError, Gaps, OrderError, Plan, Slide, SlideError};

/// Exact scalar used by the planner, the oracle, and the JSON layer.
pub type Rational = num_rational::BigRational;

/// Bead positions over exact rationals.
pub type BeadConfig = Beads<Rational>;

/// Gap form of a configuration over exact rationals.
pub type GapVector = Gaps<Rational>;

/// A single admissible slide over exact rationals.
pub type SlideMove = Slide<Rational>;

/// An ordered list of slides over exact rationals.
pub type SlidePlan = Plan<Rational>;
