//! Signed margins for the inequalities behind the tower bounds, and seeded
//! sweeps over them.
//!
//! A margin is `lhs - rhs` of a strict inequality, so it is positive exactly
//! where the inequality holds.

use core::f64::consts::E;

#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Largest argument accepted where `e^z` is evaluated.
pub const EXP_ARG_CAP: f64 = 700.0;

/// `e^z - z - ln z`, positive for every `z > 0`.
pub fn lemma3_margin(z: f64) -> Result<f64> {
    if !(z > 0.0) || z > EXP_ARG_CAP {
        return Err(Error::domain("exp-vs-log margin requires 0 < z <= 700"));
    }
    Ok(z.exp() - z - z.ln())
}

/// `z e^z - z - 1`, positive and increasing for `z > 1`.
pub fn witness_g(z: f64) -> Result<f64> {
    if z.is_nan() || z == f64::NEG_INFINITY || z > EXP_ARG_CAP {
        return Err(Error::domain("witness requires finite z <= 700"));
    }
    Ok(z * z.exp_m1() - 1.0)
}

fn check_above_e(x: f64) -> Result<()> {
    // f64 E sits just below e, so this also rejects the rounded constant
    if !(x > E) || !x.is_finite() {
        return Err(Error::domain(
            "tower inequality margins require finite x > e",
        ));
    }
    Ok(())
}

/// `x ln x + ln ln x - x`, positive for `x > e`.
pub fn lemma4a_margin(x: f64) -> Result<f64> {
    check_above_e(x)?;
    let lx = x.ln();
    Ok(x.mul_add(lx - 1.0, lx.ln()))
}

/// `x - ln(x ln x + ln ln x)`, positive for `x > e`.
pub fn lemma4b_margin(x: f64) -> Result<f64> {
    check_above_e(x)?;
    let lx = x.ln();
    Ok(x - x.mul_add(lx, lx.ln()).ln())
}

/// `e^z - ln(z (e^z + 1))`, the stronger form behind the lower tower bound,
/// with `x = e^z`. Positive for `z >= 1`; `e - ln(e + 1) ~ 1.4050` at `z = 1`.
pub fn strengthened_lower_margin(z: f64) -> Result<f64> {
    if !(z > 0.0) || z > EXP_ARG_CAP {
        return Err(Error::domain("strengthened margin requires 0 < z <= 700"));
    }
    let ez = z.exp();
    Ok(ez - z.ln() - ez.ln_1p())
}

/// Inequalities the lab can sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequalityId {
    /// `e^z > z + ln z` for `z > 0`.
    ExpExceedsSumLog,
    /// `x < x ln x + ln ln x` for `x > e`.
    TowerUpper,
    /// `x > ln(x ln x + ln ln x)` for `x > e`.
    TowerLower,
    /// `z e^z - z - 1 > 0` for `z > 1`.
    ConvexWitness,
}

impl InequalityId {
    /// All sweepable inequalities.
    pub const ALL: [InequalityId; 4] = [
        InequalityId::ExpExceedsSumLog,
        InequalityId::TowerUpper,
        InequalityId::TowerLower,
        InequalityId::ConvexWitness,
    ];

    /// Wire name used in CLI input and output.
    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::ExpExceedsSumLog => "lemma3",
            InequalityId::TowerUpper => "lemma4a",
            InequalityId::TowerLower => "lemma4b",
            InequalityId::ConvexWitness => "witness-g",
        }
    }

    /// Inverse of [`InequalityId::as_str`].
    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.as_str() == name)
    }

    /// Evaluates the margin at `t`.
    pub fn margin(self, t: f64) -> Result<f64> {
        match self {
            InequalityId::ExpExceedsSumLog => lemma3_margin(t),
            InequalityId::TowerUpper => lemma4a_margin(t),
            InequalityId::TowerLower => lemma4b_margin(t),
            InequalityId::ConvexWitness => witness_g(t),
        }
    }

    /// Excluded lower boundary of the domain, if any.
    fn open_lower_bound(self) -> Option<f64> {
        match self {
            InequalityId::ExpExceedsSumLog => Some(0.0),
            InequalityId::TowerUpper | InequalityId::TowerLower => Some(E),
            InequalityId::ConvexWitness => None,
        }
    }
}

/// Summary of a margin sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginReport {
    /// Inequality swept.
    pub inequality: InequalityId,
    /// Number of random sample points (the two endpoints are extra).
    pub samples: u64,
    /// Lower end of the swept domain, after clamping.
    pub domain_lo: f64,
    /// Upper end of the swept domain.
    pub domain_hi: f64,
    /// Smallest margin observed.
    pub min_margin: f64,
    /// Where the smallest margin occurred; lowest argument on ties.
    pub argmin: f64,
    /// `min_margin > 0`.
    pub all_positive: bool,
    /// Generator seed.
    pub seed: u64,
}

/// Evaluates the margin at both endpoints and at `samples` points drawn
/// uniformly from `(lo, hi)` with a seeded ChaCha8 generator.
///
/// An endpoint equal to an excluded boundary (`0` or `e`) is moved one
/// representable step inward; anything further outside is a domain error.
pub fn sweep(id: InequalityId, lo: f64, hi: f64, samples: u64, seed: u64) -> Result<MarginReport> {
    if samples == 0 {
        return Err(Error::domain("sweep needs at least one sample"));
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain("sweep bounds must be finite"));
    }
    let mut lo = lo;
    if let Some(bound) = id.open_lower_bound() {
        if lo == bound {
            lo = next_up(lo);
        }
    }
    if !(lo < hi) {
        return Err(Error::domain("sweep requires lo < hi"));
    }
    // endpoints validate the whole range
    let mut min_margin = id.margin(lo)?;
    let mut argmin = lo;
    let mut consider = |t: f64, m: f64| {
        if m < min_margin || (m == min_margin && t < argmin) {
            min_margin = m;
            argmin = t;
        }
    };
    consider(hi, id.margin(hi)?);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Uniform::new(lo, hi);
    for _ in 0..samples {
        let t = dist.sample(&mut rng);
        consider(t, id.margin(t)?);
    }

    Ok(MarginReport {
        inequality: id,
        samples,
        domain_lo: lo,
        domain_hi: hi,
        min_margin,
        argmin,
        all_positive: min_margin > 0.0,
        seed,
    })
}

fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits + 1)
    } else {
        f64::from_bits(bits - 1)
    }
}
