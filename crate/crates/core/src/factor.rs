//! Trial-division factorisation for desk-scale discriminants.

use alloc::vec::Vec;

use crate::arith::modp::is_prime;
use crate::error::{Error, Result};

/// Trial division stops here; a cofactor left over must then be prime.
pub const TRIAL_DIVISION_CAP: u64 = 10_000_000;

/// Factors `|n|` into `(prime, exponent)` pairs in increasing order.
pub fn factor(n: i128) -> Result<Vec<(u64, u32)>> {
    let mut m = n.unsigned_abs();
    if m == 0 {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut out = Vec::new();
    let mut push = |p: u64, m: &mut u128| {
        let mut e = 0;
        while m.is_multiple_of(p as u128) {
            *m /= p as u128;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut m);
    push(3, &mut m);
    let mut d = 5u64;
    while d <= TRIAL_DIVISION_CAP && (d as u128) * (d as u128) <= m {
        push(d, &mut m);
        push(d + 2, &mut m);
        d += 6;
    }
    if m > 1 {
        if m > u64::MAX as u128 || !is_prime(m as u64) {
            return Err(Error::CapExceeded {
                what: "trial division",
                value: TRIAL_DIVISION_CAP,
                cap: TRIAL_DIVISION_CAP,
            });
        }
        out.push((m as u64, 1));
    }
    Ok(out)
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: i128) -> Result<Vec<u64>> {
    Ok(factor(n)?.into_iter().map(|(p, _)| p).collect())
}

/// Exponent of `p` in `n` (`u32::MAX` for `n = 0`).
pub fn valuation(n: i128, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}
