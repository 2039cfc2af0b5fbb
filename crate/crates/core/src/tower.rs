//! Log-space power tower equations and their safeguarded solver.
//!
//! A target `y` is always carried as `L = ln y`. Height 1 solves
//! `x * ln x = L`; height 2 uses `ln ln y = x * ln x + ln ln x` (valid for
//! `x > 1`) so that neither `x^x` nor `y` is ever formed.

use core::f64::consts::E;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::lambert::lambert_w0;
use crate::{Error, Result};

/// Relative nudge applied to bracket endpoints whose residual sign is not
/// strict in floating point.
pub const ENDPOINT_NUDGE: f64 = 1.0 / (1u64 << 40) as f64;

const MAX_HALVINGS: usize = 64;
const MAX_NUDGES: usize = 64;

/// Height of the tower: 1 for `x^x`, 2 for `x^(x^x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Height {
    /// `x^x = y`
    One,
    /// `x^(x^x) = y`
    Two,
}

impl Height {
    /// Numeric height.
    pub fn get(self) -> u8 {
        match self {
            Height::One => 1,
            Height::Two => 2,
        }
    }
}

impl TryFrom<u8> for Height {
    type Error = Error;

    fn try_from(h: u8) -> Result<Self> {
        match h {
            1 => Ok(Height::One),
            2 => Ok(Height::Two),
            _ => Err(Error::domain("tower height must be 1 or 2")),
        }
    }
}

/// A tower equation with its target held as `ln y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TowerEquation {
    height: Height,
    log_y: f64,
}

impl TowerEquation {
    /// Builds the equation from `L = ln y`. Requires finite `L > 0`.
    pub fn new(height: Height, log_y: f64) -> Result<Self> {
        check_log_y(log_y)?;
        Ok(TowerEquation { height, log_y })
    }

    /// Builds the equation from `y` directly. Requires `1 < y < inf`.
    pub fn from_y(height: Height, y: f64) -> Result<Self> {
        if y.is_nan() || y <= 1.0 {
            return Err(Error::domain("y must exceed 1"));
        }
        if y.is_infinite() {
            return Err(Error::domain("y is not finite; pass ln y instead"));
        }
        Self::new(height, y.ln())
    }

    /// Tower height.
    pub fn height(&self) -> Height {
        self.height
    }

    /// `ln y`.
    pub fn log_y(&self) -> f64 {
        self.log_y
    }
}

fn check_log_y(log_y: f64) -> Result<()> {
    if !log_y.is_finite() {
        return Err(Error::domain("ln y must be finite"));
    }
    if log_y <= 0.0 {
        return Err(Error::domain("y must exceed 1"));
    }
    Ok(())
}

/// Which bound produced a bracket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// `ln ln y < x < ln y` for `x^x = y`, `y > e^e`.
    LogBound,
    /// `ln ln ln y < x < ln ln y` for `x^(x^x) = y`, `y > e^(e^e)`.
    IteratedLogBound,
    /// Below the thresholds: the root is at most `e` by monotonicity.
    Fallback,
}

impl Provenance {
    /// Wire name used in CLI output.
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::LogBound => "theorem2",
            Provenance::IteratedLogBound => "theorem3",
            Provenance::Fallback => "fallback",
        }
    }
}

/// Open interval `(lo, hi)` with `residual(lo) < 0 < residual(hi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    /// Lower endpoint.
    pub lo: f64,
    /// Upper endpoint.
    pub hi: f64,
    /// Bound that produced the interval.
    pub provenance: Provenance,
}

impl Bracket {
    /// Strict containment.
    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

/// Outcome of [`solve_tower`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveResult {
    /// Best iterate found.
    pub x: f64,
    /// Log-space residual at `x`.
    pub residual: f64,
    /// Number of refinement steps taken.
    pub iterations: u32,
    /// Whether the residual met the tolerance.
    pub converged: bool,
    /// The initial bracket the iteration stayed inside.
    pub bracket: Bracket,
}

/// Log-space residual of the tower equation at `x`.
///
/// Height 1: `x ln x - L`. Height 2: `x ln x + ln ln x - ln L`. Both are
/// zero exactly at the root and increasing in `x` for `x > 1`.
pub fn tower_residual(x: f64, height: Height, log_y: f64) -> Result<f64> {
    if !log_y.is_finite() {
        return Err(Error::domain("ln y must be finite"));
    }
    match height {
        Height::One => {
            if !(x > 0.0) {
                return Err(Error::domain("height-1 residual requires x > 0"));
            }
            Ok(residual_one(x, log_y))
        }
        Height::Two => {
            if !(x > 1.0) {
                return Err(Error::domain("height-2 residual requires x > 1"));
            }
            if log_y <= 0.0 {
                return Err(Error::domain("height-2 residual requires ln y > 0"));
            }
            Ok(residual_two(x, log_y.ln()))
        }
    }
}

#[inline]
fn residual_one(x: f64, log_y: f64) -> f64 {
    x.mul_add(x.ln(), -log_y)
}

#[inline]
fn residual_two(x: f64, log_log_y: f64) -> f64 {
    let lx = x.ln();
    x.mul_add(lx, lx.ln() - log_log_y)
}

/// Residual and derivative closed over a fixed target.
#[derive(Clone, Copy)]
struct Residual {
    height: Height,
    /// `L` for height 1, `ln L` for height 2.
    rhs: f64,
}

impl Residual {
    fn new(height: Height, log_y: f64) -> Self {
        let rhs = match height {
            Height::One => log_y,
            Height::Two => log_y.ln(),
        };
        Residual { height, rhs }
    }

    fn value(&self, x: f64) -> f64 {
        match self.height {
            Height::One => residual_one(x, self.rhs),
            Height::Two => residual_two(x, self.rhs),
        }
    }

    fn slope(&self, x: f64) -> f64 {
        let lx = x.ln();
        match self.height {
            Height::One => lx + 1.0,
            Height::Two => lx + 1.0 + 1.0 / (x * lx),
        }
    }
}

/// Builds a bracket around the unique root `x > 1` (or `x` in `(0, e]` for
/// small height-1 targets).
///
/// Height 1 uses `(ln L, L)` once `L > e`, height 2 uses `(ln ln L, ln L)`
/// once `ln L > e`; both lower ends are floored at 1. Below those thresholds
/// the root is at most `e` and the bracket ends just above `e`. Every
/// endpoint is sign-checked; an endpoint whose sign is not strict in floating
/// point is nudged outward by a relative [`ENDPOINT_NUDGE`].
pub fn bracket_tower(height: Height, log_y: f64) -> Result<Bracket> {
    check_log_y(log_y)?;
    let f = Residual::new(height, log_y);
    let e_plus = E * (1.0 + ENDPOINT_NUDGE);

    let bracket = match height {
        Height::One if log_y > E => Bracket {
            lo: log_y.ln().max(1.0),
            hi: log_y,
            provenance: Provenance::LogBound,
        },
        Height::One => {
            let mut lo = log_y.min(1.0) / 2.0;
            let mut halvings = 0;
            while f.value(lo) >= 0.0 {
                halvings += 1;
                if halvings > MAX_HALVINGS {
                    return Err(Error::domain("no lower bracket endpoint found"));
                }
                lo /= 2.0;
            }
            Bracket {
                lo,
                hi: e_plus,
                provenance: Provenance::Fallback,
            }
        }
        Height::Two if f.rhs > E => Bracket {
            lo: f.rhs.ln().max(1.0),
            hi: f.rhs,
            provenance: Provenance::IteratedLogBound,
        },
        Height::Two => {
            // residual(1 + d) ~ d + ln d - ln L, so d must fall below ~L
            let mut offset = ENDPOINT_NUDGE;
            let mut halvings = 0;
            loop {
                let lo = 1.0 + offset;
                if lo == 1.0 || halvings > MAX_HALVINGS {
                    return Err(Error::domain(
                        "y is too close to 1 to resolve a height-2 root in double precision",
                    ));
                }
                if f.value(lo) < 0.0 {
                    break Bracket {
                        lo,
                        hi: e_plus,
                        provenance: Provenance::Fallback,
                    };
                }
                offset /= 2.0;
                halvings += 1;
            }
        }
    };
    enforce_signs(&f, bracket)
}

fn enforce_signs(f: &Residual, mut b: Bracket) -> Result<Bracket> {
    let floor = match f.height {
        Height::One => 0.0,
        Height::Two => 1.0,
    };
    let mut nudges = 0;
    while f.value(b.hi) <= 0.0 {
        nudges += 1;
        if nudges > MAX_NUDGES {
            return Err(Error::domain(
                "upper bracket endpoint has no positive residual",
            ));
        }
        b.hi *= 1.0 + ENDPOINT_NUDGE;
    }
    nudges = 0;
    while f.value(b.lo) >= 0.0 {
        nudges += 1;
        let next = b.lo * (1.0 - ENDPOINT_NUDGE);
        if nudges > MAX_NUDGES || next <= floor {
            return Err(Error::domain(
                "lower bracket endpoint has no negative residual",
            ));
        }
        b.lo = next;
    }
    Ok(b)
}

/// Solves the tower equation inside its certified bracket.
///
/// Newton steps on the log-space residual are accepted only when they land
/// strictly inside the current bracket and reduce `|residual|`; otherwise
/// the bracket is bisected. Convergence means
/// `|residual| <= tol * max(1, |rhs|)` where `rhs` is `L` (height 1) or
/// `ln L` (height 2): the residual is a difference of terms of size `rhs`,
/// so an absolute tolerance finer than its rounding cannot be met. Stops
/// early if the bracket can no longer be split in double precision.
///
/// Exhausting `max_iter` is not an error; the best iterate is returned with
/// `converged = false`.
pub fn solve_tower(eq: &TowerEquation, tol: f64, max_iter: u32) -> Result<SolveResult> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::domain("tolerance must be positive and finite"));
    }
    if max_iter == 0 {
        return Err(Error::domain("max_iter must be at least 1"));
    }
    let bracket = bracket_tower(eq.height, eq.log_y)?;
    let f = Residual::new(eq.height, eq.log_y);
    let threshold = tol * f.rhs.abs().max(1.0);

    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let mut x = 0.5 * (lo + hi);
    let mut r = f.value(x);
    let (mut best_x, mut best_r) = (x, r);
    let mut iterations = 0;

    while best_r.abs() > threshold && iterations < max_iter {
        if r < 0.0 {
            lo = x;
        } else {
            hi = x;
        }

        let newton = x - r / f.slope(x);
        let mut step = None;
        if newton > lo && newton < hi {
            let rn = f.value(newton);
            if rn.abs() < r.abs() {
                step = Some((newton, rn));
            } else if rn < 0.0 {
                lo = newton;
            } else {
                hi = newton;
            }
        }
        let (nx, nr) = match step {
            Some(s) => s,
            None => {
                let mid = 0.5 * (lo + hi);
                if !(mid > lo && mid < hi) {
                    break;
                }
                (mid, f.value(mid))
            }
        };
        x = nx;
        r = nr;
        iterations += 1;
        if r.abs() < best_r.abs() {
            best_x = x;
            best_r = r;
        }
    }

    Ok(SolveResult {
        x: best_x,
        residual: best_r,
        iterations,
        converged: best_r.abs() <= threshold,
        bracket,
    })
}

/// Closed form for height 1: `x = exp(W0(ln y))`.
pub fn solve_via_lambert(log_y: f64) -> Result<f64> {
    check_log_y(log_y)?;
    Ok(lambert_w0(log_y)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln3() -> f64 {
        3.0f64.ln()
    }

    #[test]
    fn residual_anchors() {
        assert!(tower_residual(2.0, Height::One, 4.0f64.ln()).unwrap().abs() < 1e-15);
        let r = tower_residual(3.0, Height::Two, 27.0 * ln3()).unwrap();
        assert!(r.abs() < 1e-14, "{r}");
        let r = tower_residual(E, Height::One, 3.0).unwrap();
        assert!((r - -0.281_718_171_540_954_76).abs() < 1e-15);
    }

    #[test]
    fn residual_domain() {
        assert!(tower_residual(0.0, Height::One, 1.0).is_err());
        assert!(tower_residual(1.0, Height::Two, 1.0).is_err());
        assert!(tower_residual(2.0, Height::Two, -1.0).is_err());
        assert!(tower_residual(2.0, Height::One, f64::NAN).is_err());
    }

    #[test]
    fn height_conversion() {
        assert_eq!(Height::try_from(1).unwrap(), Height::One);
        assert_eq!(Height::try_from(2).unwrap().get(), 2);
        assert!(Height::try_from(3).is_err());
        assert!(Height::try_from(0).is_err());
    }

    #[test]
    fn equation_validation() {
        assert!(TowerEquation::new(Height::One, 0.0).is_err());
        assert!(TowerEquation::new(Height::One, f64::INFINITY).is_err());
        assert!(TowerEquation::from_y(Height::One, 0.5).is_err());
        assert!(TowerEquation::from_y(Height::One, 1.0).is_err());
        assert!(TowerEquation::from_y(Height::Two, f64::INFINITY).is_err());
        let eq = TowerEquation::from_y(Height::Two, 16.0).unwrap();
        assert_eq!(eq.log_y(), 16.0f64.ln());
    }

    #[test]
    fn bracket_examples() {
        let b = bracket_tower(Height::One, 27.0f64.ln()).unwrap();
        assert_eq!(b.provenance, Provenance::LogBound);
        assert!((b.lo - 1.192_660_116_284_808_7).abs() < 1e-14);
        assert!((b.hi - 3.295_836_866_004_329).abs() < 1e-14);
        assert!(b.contains(3.0));

        let b = bracket_tower(Height::One, 4.0f64.ln()).unwrap();
        assert_eq!(b.provenance, Provenance::Fallback);
        assert!(b.hi > E && b.contains(2.0));
        assert_eq!(b.lo, 4.0f64.ln().min(1.0) / 2.0);

        let b = bracket_tower(Height::Two, 27.0 * ln3()).unwrap();
        assert_eq!(b.provenance, Provenance::IteratedLogBound);
        assert!((b.lo - 1.220_795_907_132_767_9).abs() < 1e-14);
        assert!((b.hi - 3.389_884_693_621_028).abs() < 1e-14);
        assert!(b.contains(3.0));

        let b = bracket_tower(Height::Two, 16.0f64.ln()).unwrap();
        assert_eq!(b.provenance, Provenance::Fallback);
        assert!(b.contains(2.0));
        assert!(bracket_tower(Height::One, 0.0).is_err());
        assert!(bracket_tower(Height::Two, -2.0).is_err());
    }

    #[test]
    fn bracket_threshold_edges() {
        // right at and just above the switch-over points
        for &l in &[E, E * (1.0 + 1e-15), E * (1.0 + 1e-9)] {
            let b = bracket_tower(Height::One, l).unwrap();
            let f = Residual::new(Height::One, l);
            assert!(f.value(b.lo) < 0.0 && f.value(b.hi) > 0.0, "L={l}: {b:?}");
        }
        for &ll in &[E, E * (1.0 + 1e-15), E * (1.0 + 1e-9)] {
            let l = ll.exp();
            let b = bracket_tower(Height::Two, l).unwrap();
            let f = Residual::new(Height::Two, l);
            assert!(
                f.value(b.lo) < 0.0 && f.value(b.hi) > 0.0,
                "lnL={ll}: {b:?}"
            );
        }
    }

    #[test]
    fn tiny_targets() {
        let b = bracket_tower(Height::One, 1e-300).unwrap();
        assert!(b.lo > 0.0 && b.lo < 1.0);
        let b = bracket_tower(Height::Two, 1e-6).unwrap();
        assert!(b.lo > 1.0);
        let s = solve_tower(&TowerEquation::new(Height::Two, 1e-3).unwrap(), 1e-12, 200).unwrap();
        assert!(s.converged);
        // near x = 1 the residual moves ~1/(x - 1) per ulp of x, so only the
        // bracket collapse stops the iteration
        let s = solve_tower(&TowerEquation::new(Height::Two, 1e-6).unwrap(), 1e-12, 200).unwrap();
        assert!(s.residual.abs() < 1e-9 && s.iterations < 200);
        assert!(bracket_tower(Height::Two, 1e-30).is_err());
    }

    #[test]
    fn solve_examples() {
        let solve = |h, l| solve_tower(&TowerEquation::new(h, l).unwrap(), 1e-12, 200).unwrap();
        let s = solve(Height::One, 27.0f64.ln());
        assert!(s.converged && (s.x - 3.0).abs() < 1e-10);
        let s = solve(Height::One, 4.0f64.ln());
        assert!(s.converged && (s.x - 2.0).abs() < 1e-10);
        // bisection oracle on x ln x = 3
        let s = solve(Height::One, 3.0);
        assert!(s.converged && (s.x - 2.857_390_783_514_365_7).abs() < 1e-11);
        let s = solve(Height::Two, 16.0f64.ln());
        assert!(s.converged && (s.x - 2.0).abs() < 1e-10);
        assert!(s.bracket.contains(s.x));
    }

    #[test]
    fn solve_rejects_bad_parameters() {
        let eq = TowerEquation::new(Height::One, 2.0).unwrap();
        assert!(solve_tower(&eq, 0.0, 10).is_err());
        assert!(solve_tower(&eq, f64::NAN, 10).is_err());
        assert!(solve_tower(&eq, 1e-12, 0).is_err());
    }

    #[test]
    fn iteration_cap_reports_best_iterate() {
        let eq = TowerEquation::new(Height::One, 1e5).unwrap();
        let s = solve_tower(&eq, 1e-15, 1).unwrap();
        assert!(!s.converged);
        assert_eq!(s.iterations, 1);
        assert!(s.bracket.contains(s.x));
    }

    #[test]
    fn huge_targets_stay_finite() {
        // y = 10^(10^6)
        let l = 1e6 * core::f64::consts::LN_10;
        let s = solve_tower(&TowerEquation::new(Height::One, l).unwrap(), 1e-12, 200).unwrap();
        assert!(s.converged);
        let s = solve_tower(&TowerEquation::new(Height::Two, 1e300).unwrap(), 1e-12, 200).unwrap();
        assert!(s.converged && s.x.is_finite());
    }

    #[test]
    fn lambert_route() {
        assert!((solve_via_lambert(4.0f64.ln()).unwrap() - 2.0).abs() < 1e-12);
        assert!((solve_via_lambert(27.0f64.ln()).unwrap() - 3.0).abs() < 1e-12);
        assert!((solve_via_lambert(3.0).unwrap() - 2.857_390_783_514_365_7).abs() < 1e-12);
        assert!(solve_via_lambert(0.0).is_err());
    }
}
