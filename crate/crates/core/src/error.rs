use alloc::string::String;
use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the solvers and witness generators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{0}")]
    Domain(String),
    /// One of the hypotheses of the square-root-of-prime construction fails.
    #[error("condition violated: {0}")]
    ConditionViolated(LordCondition),
    /// The rational target is not inside `((1/e)^(1/e), inf)`.
    #[error("{0} is not certified to exceed (1/e)^(1/e)")]
    OutOfInterval(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Stable machine-readable code for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DOMAIN",
            Error::ConditionViolated(_) => "CONDITION_VIOLATED",
            Error::OutOfInterval(_) => "OUT_OF_INTERVAL",
        }
    }
}

/// The specific hypothesis that rejected a `(p, m, n)` triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LordCondition {
    /// `p` is not prime.
    NotPrime,
    /// `m = n`, so the target is 1 and the exponent is 0.
    EqualTerms,
    /// `p` divides `m`.
    PrimeDividesM,
    /// `p` divides `n`.
    PrimeDividesN,
}

impl LordCondition {
    /// Short identifier used in machine-readable output.
    pub fn as_str(self) -> &'static str {
        match self {
            LordCondition::NotPrime => "not_prime",
            LordCondition::EqualTerms => "m_equals_n",
            LordCondition::PrimeDividesM => "p_divides_m",
            LordCondition::PrimeDividesN => "p_divides_n",
        }
    }
}

impl fmt::Display for LordCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            LordCondition::NotPrime => "p is not prime",
            LordCondition::EqualTerms => "m equals n",
            LordCondition::PrimeDividesM => "p divides m",
            LordCondition::PrimeDividesN => "p divides n",
        };
        f.write_str(msg)
    }
}
