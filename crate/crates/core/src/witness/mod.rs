//! Exact witnesses of irrational powers of irrationals that are rational,
//! and the rational/irrational split of solutions of `x^x = y`.
//!
//! Everything that must be exact (targets, `n^n`, `n^(n/2)`) is computed with
//! arbitrary-size integers; floating point only appears in the numeric values
//! attached for display and verification.

mod pairs;
mod powers;
mod primes;
mod rational;

pub use pairs::{
    log_construction_pair, lord_pair, verify_pair, BaseKind, NamedConstant, PowerPair,
};
pub use powers::{
    classify_xx_target, thin_set_member, triple_sqrt_power, Classification, ClassificationKind,
    ExactPower, TriplePower, INTERVAL_LOWER_BOUND, INTERVAL_UPPER_BOUND,
};
pub use primes::{is_prime, PRIME_LIMIT};
pub use rational::Rational;

use num_bigint::BigUint;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_traits::ToPrimitive;

/// Natural log of a positive big integer without overflowing `f64`.
pub(crate) fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::NAN);
    top.ln() + shift as f64 * core::f64::consts::LN_2
}
