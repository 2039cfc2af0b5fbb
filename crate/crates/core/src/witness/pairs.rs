use core::f64::consts::{E, PI};
use core::fmt;

use num_bigint::{BigInt, BigUint};
#[cfg(not(feature = "std"))]
use num_traits::Float;
use num_traits::Zero;

use super::primes::{is_perfect_square, is_prime, prime_factors, PRIME_LIMIT};
use super::Rational;
use crate::{Error, LordCondition, Result};

/// Transcendental constants usable as bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedConstant {
    /// Euler's number.
    E,
    /// π.
    Pi,
}

/// An irrational base `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseKind {
    /// `sqrt(p)` for a prime `p`.
    SqrtPrime(u64),
    /// `sqrt(k)` for a non-square `k >= 2`.
    SqrtNonsquare(u64),
    /// `e` or `π`.
    Constant(NamedConstant),
}

impl BaseKind {
    /// Floating-point value of the base.
    pub fn value(self) -> f64 {
        match self {
            BaseKind::SqrtPrime(k) | BaseKind::SqrtNonsquare(k) => (k as f64).sqrt(),
            BaseKind::Constant(NamedConstant::E) => E,
            BaseKind::Constant(NamedConstant::Pi) => PI,
        }
    }

    fn ln(self) -> f64 {
        match self {
            BaseKind::SqrtPrime(k) | BaseKind::SqrtNonsquare(k) => 0.5 * (k as f64).ln(),
            BaseKind::Constant(NamedConstant::E) => 1.0,
            BaseKind::Constant(NamedConstant::Pi) => PI.ln(),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            BaseKind::SqrtPrime(p) => {
                if !is_prime(p)? {
                    return Err(Error::domain("sqrt base parameter is not prime"));
                }
            }
            BaseKind::SqrtNonsquare(k) => {
                if k >= PRIME_LIMIT {
                    return Err(Error::domain("sqrt base parameter must be below 2^32"));
                }
                if k < 2 || is_perfect_square(k) {
                    return Err(Error::domain("sqrt base parameter is a perfect square"));
                }
            }
            BaseKind::Constant(_) => {}
        }
        Ok(())
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::SqrtPrime(k) | BaseKind::SqrtNonsquare(k) => write!(f, "sqrt:{k}"),
            BaseKind::Constant(NamedConstant::E) => f.write_str("e"),
            BaseKind::Constant(NamedConstant::Pi) => f.write_str("pi"),
        }
    }
}

/// A base `a`, exponent `b = log_a c` and rational target `c = a^b`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerPair {
    /// The irrational base.
    pub base: BaseKind,
    /// `c`, reduced and positive.
    pub target: Rational,
    /// `a` as a double.
    pub base_value: f64,
    /// `log_a c` as a double.
    pub exponent_value: f64,
    /// Whether irrationality of the exponent is proven for this `(a, c)`.
    pub certified: bool,
}

impl PowerPair {
    fn build(base: BaseKind, target: Rational, certified: bool) -> Result<Self> {
        let exponent_value = target.ln()? / base.ln();
        Ok(PowerPair {
            base,
            base_value: base.value(),
            exponent_value,
            target,
            certified,
        })
    }
}

/// `a = sqrt(p)`, `b = log_a(m/n)`, `a^b = m/n`.
///
/// For a prime `p` dividing neither `m` nor `n` and `m != n`, both `a` and
/// `b` are irrational: a rational `b = r/s` would give
/// `m^(2s) = p^r n^(2s)`, forcing `p` into `m` or `n`. Each failed hypothesis
/// is reported as the matching [`LordCondition`].
pub fn lord_pair(p: u64, m: u64, n: u64) -> Result<PowerPair> {
    if m == 0 || n == 0 {
        return Err(Error::domain("m and n must be positive"));
    }
    if !is_prime(p)? {
        return Err(Error::ConditionViolated(LordCondition::NotPrime));
    }
    if m == n {
        return Err(Error::ConditionViolated(LordCondition::EqualTerms));
    }
    if m.is_multiple_of(p) {
        return Err(Error::ConditionViolated(LordCondition::PrimeDividesM));
    }
    if n.is_multiple_of(p) {
        return Err(Error::ConditionViolated(LordCondition::PrimeDividesN));
    }
    let target = Rational::new(BigInt::from(m), BigInt::from(n))?;
    PowerPair::build(BaseKind::SqrtPrime(p), target, true)
}

/// `a` from the base catalog, `b = log_a c`.
///
/// For `e` and `π` the exponent is irrational whenever `c != 1`, since a
/// rational `b = r/s` would make `a` a root of `X^r - c^s`. For square-root
/// bases it is certified when `c != 1` and some prime factor of the radicand
/// divides neither the numerator nor the denominator of `c`; otherwise the
/// pair is still returned with `certified = false`.
pub fn log_construction_pair(base: BaseKind, c: &Rational) -> Result<PowerPair> {
    if !c.is_positive() {
        return Err(Error::domain("target c must be positive"));
    }
    base.validate()?;
    let certified = !c.is_one()
        && match base {
            BaseKind::Constant(_) => true,
            BaseKind::SqrtPrime(k) | BaseKind::SqrtNonsquare(k) => {
                let (num, den) = c.parts();
                prime_factors(k)
                    .into_iter()
                    .any(|q| !divides(q, num) && !divides(q, den))
            }
        };
    PowerPair::build(base, c.clone(), certified)
}

fn divides(q: u64, n: &BigUint) -> bool {
    (n % q).is_zero()
}

/// Relative residual `|a^b / c - 1|`, evaluated in log space.
pub fn verify_pair(pair: &PowerPair) -> f64 {
    let log_target = pair.target.ln().unwrap_or(f64::NAN);
    pair.exponent_value
        .mul_add(pair.base_value.ln(), -log_target)
        .exp_m1()
        .abs()
}
