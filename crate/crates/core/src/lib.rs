//! Solvers and witness generators for low power towers.
//!
//! The crate covers three related areas:
//!
//! * [`tower`]: the equations `x^x = y` and `x^(x^x) = y`, held in log space
//!   so that astronomically large targets stay representable. Each solve
//!   starts from a bracket built from logarithmic bounds on the root and
//!   refines it with a safeguarded Newton/bisection hybrid. [`lambert`]
//!   provides the closed form `x = exp(W(ln y))` as an independent check.
//! * [`lab`]: signed margin functions for the inequalities behind those
//!   bounds, and seeded sweeps that report the smallest observed margin.
//! * [`witness`]: exact constructions of irrational `a`, `b` with `a^b`
//!   rational, the `((sqrt n)^(sqrt n))^(sqrt n)` evaluator, and a classifier
//!   deciding whether a rational `y` has a rational solution of `x^x = y`.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled; floating-point functions then come from `libm`.

#![cfg_attr(not(any(test, feature = "std")), no_std)]
#![deny(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![warn(missing_docs)]

extern crate alloc;

mod error;
pub mod lab;
pub mod lambert;
pub mod tower;
pub mod witness;

pub use error::{Error, LordCondition, Result};
pub use lab::{sweep, InequalityId, MarginReport};
pub use lambert::lambert_w0;
pub use tower::{
    bracket_tower, solve_tower, solve_via_lambert, tower_residual, Bracket, Height, Provenance,
    SolveResult, TowerEquation,
};
pub use witness::{
    classify_xx_target, log_construction_pair, lord_pair, thin_set_member, triple_sqrt_power,
    verify_pair, BaseKind, Classification, ClassificationKind, ExactPower, NamedConstant,
    PowerPair, Rational, TriplePower,
};
