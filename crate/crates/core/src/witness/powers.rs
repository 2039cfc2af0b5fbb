use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_traits::One;

use super::primes::is_perfect_square;
use super::{ln_biguint, Rational};
use crate::lambert::lambert_w0;
use crate::{Error, Result};

/// Largest `n` accepted by [`triple_sqrt_power`]; `n^(n/2)` already has
/// about ten million bits there.
pub const TRIPLE_POWER_MAX_N: u64 = 1_000_000;

/// Rational bracket around `(1/e)^(1/e) = e^(-1/e)`, as `(num, den)`.
///
/// From a 40-digit evaluation, `e^(-1/e) = 0.6922006275553463538654219971...`;
/// the bounds below are its truncation to 22 decimals and that plus `10^-22`.
pub const INTERVAL_LOWER_BOUND: (u128, u128) = (6_922_006_275_553_463_538_654, 10u128.pow(22));
/// Upper end of the bracket; see [`INTERVAL_LOWER_BOUND`].
pub const INTERVAL_UPPER_BOUND: (u128, u128) = (6_922_006_275_553_463_538_655, 10u128.pow(22));

/// Exact value of `((sqrt n)^(sqrt n))^(sqrt n) = n^(n/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactPower {
    /// An integer.
    Integer(BigUint),
    /// `coefficient * sqrt(radicand)` with a non-square radicand.
    Surd {
        /// Integer factor.
        coefficient: BigUint,
        /// Value under the root.
        radicand: u64,
    },
}

impl fmt::Display for ExactPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactPower::Integer(v) => write!(f, "{v}"),
            ExactPower::Surd {
                coefficient,
                radicand,
            } => write!(f, "{coefficient}*sqrt({radicand})"),
        }
    }
}

/// Result of [`triple_sqrt_power`].
#[derive(Debug, Clone, PartialEq)]
pub struct TriplePower {
    /// Input.
    pub n: u64,
    /// Exact form.
    pub exact: ExactPower,
    /// `n^(n/2)` as a double (infinite once it overflows).
    pub approx: f64,
    /// Whether the value is rational.
    pub is_rational: bool,
}

/// Evaluates `((sqrt n)^(sqrt n))^(sqrt n) = n^(n/2)` exactly.
///
/// Even `n` gives the integer `n^(n/2)`. Odd `n` gives `n^((n-1)/2) sqrt n`,
/// which is irrational unless `n` is itself a perfect square (then the
/// product collapses to an integer).
pub fn triple_sqrt_power(n: u64) -> Result<TriplePower> {
    if n < 1 {
        return Err(Error::domain("n must be at least 1"));
    }
    if n > TRIPLE_POWER_MAX_N {
        return Err(Error::domain("n is too large for exact evaluation"));
    }
    let base = BigUint::from(n);
    let half = (n / 2) as u32;
    let exact = if n.is_multiple_of(2) {
        ExactPower::Integer(base.pow(half))
    } else if is_perfect_square(n) {
        ExactPower::Integer(base.pow(half) * n.sqrt())
    } else {
        ExactPower::Surd {
            coefficient: base.pow(half),
            radicand: n,
        }
    };
    let nf = n as f64;
    Ok(TriplePower {
        n,
        is_rational: matches!(exact, ExactPower::Integer(_)),
        exact,
        approx: nf.powf(nf / 2.0),
    })
}

/// Returns `n` with `n^n = k`, if any.
///
/// The candidate comes from `x = exp(W0(ln k))`, the real solution of
/// `x^x = k`; its floor and ceiling are confirmed with exact arithmetic.
pub fn thin_set_member(k: &BigUint) -> Result<Option<u64>> {
    if k.bits() == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if k.is_one() {
        return Ok(Some(1));
    }
    let estimate = lambert_w0(ln_biguint(k))?.exp();
    let floor = estimate.floor();
    if !(floor < u32::MAX as f64) {
        return Ok(None);
    }
    let floor = floor as u64;
    for n in [floor, floor + 1] {
        if n >= 1 && self_power_matches(n, k) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

fn self_power_matches(n: u64, k: &BigUint) -> bool {
    // n^n has bit length floor(n log2 n) + 1; skip the power when far off
    let bits = n as f64 * (n as f64).log2();
    if (bits - k.bits() as f64).abs() > 2.0 {
        return false;
    }
    let Ok(exp) = u32::try_from(n) else {
        return false;
    };
    BigUint::from(n).pow(exp) == *k
}

/// Whether the real solution of `x^x = y` is rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassificationKind {
    /// `y = n^n`, so `x = n`.
    RationalSolution(u64),
    /// `y` is not of the form `n^n`; `x` is irrational.
    IrrationalSolution,
}

/// Classification of a rational target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Outcome.
    pub kind: ClassificationKind,
    /// The target.
    pub y: Rational,
}

/// Classifies a rational `y > (1/e)^(1/e)`.
///
/// On that interval every rational `y` is either `n^n` for a positive integer
/// `n` or has only irrational solutions of `x^x = y`. Values not certified to
/// exceed the bound (anything at or below [`INTERVAL_UPPER_BOUND`]) are
/// rejected with [`Error::OutOfInterval`].
pub fn classify_xx_target(y: &Rational) -> Result<Classification> {
    let (num, den) = INTERVAL_UPPER_BOUND;
    let upper = Rational::new(BigInt::from(num), BigInt::from(den))?;
    if y.as_big_rational() <= upper.as_big_rational() {
        return Err(Error::OutOfInterval(alloc::string::ToString::to_string(y)));
    }
    let kind = if y.is_integer() {
        match thin_set_member(y.numer().magnitude())? {
            Some(n) => ClassificationKind::RationalSolution(n),
            None => ClassificationKind::IrrationalSolution,
        }
    } else {
        ClassificationKind::IrrationalSolution
    };
    Ok(Classification { kind, y: y.clone() })
}
