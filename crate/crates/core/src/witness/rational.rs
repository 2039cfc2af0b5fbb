use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ln_biguint;
use crate::{Error, Result};

/// Exact fraction, always reduced with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// `num / den`, reduced. Errors on a zero denominator.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::domain("denominator must be nonzero"));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    /// The integer `n` as `n/1`.
    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Reduced numerator.
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Reduced denominator, always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Strictly positive.
    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Equal to 1.
    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Denominator is 1.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Natural log, valid for huge numerators and denominators. Requires a
    /// positive value.
    pub fn ln(&self) -> Result<f64> {
        if !self.is_positive() {
            return Err(Error::domain("logarithm of a nonpositive rational"));
        }
        Ok(ln_biguint(self.numer().magnitude()) - ln_biguint(self.denom().magnitude()))
    }

    /// Numerator magnitude and denominator as unsigned integers.
    pub(crate) fn parts(&self) -> (&BigUint, &BigUint) {
        (self.numer().magnitude(), self.denom().magnitude())
    }

    pub(crate) fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rational {
    /// `num` when the denominator is 1, otherwise `num/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b` or a plain integer; decimals are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| -> Result<BigInt> {
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Domain(invalid(s)));
            }
            t.parse::<BigInt>().map_err(|_| Error::Domain(invalid(s)))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

fn invalid(s: &str) -> String {
    let mut msg = "not an integer or a/b rational: ".to_string();
    msg.push_str(s);
    msg
}
