use num_integer::Roots;

use crate::{Error, Result};

/// Exclusive upper limit of the trial-division primality test.
pub const PRIME_LIMIT: u64 = 1 << 32;

/// Deterministic trial division. Errors for `p >= 2^32`.
pub fn is_prime(p: u64) -> Result<bool> {
    if p >= PRIME_LIMIT {
        return Err(Error::domain("primality is only decided below 2^32"));
    }
    if p < 2 {
        return Ok(false);
    }
    if p.is_multiple_of(2) {
        return Ok(p == 2);
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return Ok(false);
        }
        d += 2;
    }
    Ok(true)
}

/// Distinct prime factors of `k`, ascending.
pub(crate) fn prime_factors(mut k: u64) -> alloc::vec::Vec<u64> {
    let mut out = alloc::vec::Vec::new();
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            out.push(d);
            while k.is_multiple_of(d) {
                k /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if k > 1 {
        out.push(k);
    }
    out
}

pub(crate) fn is_perfect_square(k: u64) -> bool {
    let r = k.sqrt();
    r * r == k
}
