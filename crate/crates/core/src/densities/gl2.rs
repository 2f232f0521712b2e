//! The set `S ⊂ GL₂(F_p)` of matrices with trace 2 and determinant 1, the
//! image of Frobenius at the primes `q ≡ 1 (mod p)` with `p | #Ẽ(F_q)`.

use crate::arith::modp::is_prime;
use crate::error::{Error, Result};

/// Brute force enumerates `p⁴` matrices; kept to `p ≤ 13`.
pub const BRUTE_FORCE_CAP: u64 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    Formula,
    BruteForce,
}

/// `#GL₂(F_p) = (p² − 1)(p² − p)`.
pub fn gl2_order(p: u64) -> u64 {
    (p * p - 1) * (p * p - p)
}

/// `#S`; equal to `p²`.
pub fn chebotarev_set_size(p: u64, mode: CountMode) -> Result<u64> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    match mode {
        CountMode::Formula => Ok(p * p),
        CountMode::BruteForce => {
            if p > BRUTE_FORCE_CAP {
                return Err(Error::CapExceeded {
                    what: "brute-force GL2 count",
                    value: p,
                    cap: BRUTE_FORCE_CAP,
                });
            }
            let mut n = 0;
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        for d in 0..p {
                            let trace = (a + d) % p;
                            let det = (a * d + p * p - b * c) % p;
                            if trace == 2 % p && det == 1 {
                                n += 1;
                            }
                        }
                    }
                }
            }
            Ok(n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_formula() {
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(chebotarev_set_size(p, CountMode::BruteForce), Ok(p * p));
        }
        assert_eq!(chebotarev_set_size(7, CountMode::Formula), Ok(49));
        assert!(matches!(
            chebotarev_set_size(17, CountMode::BruteForce),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(gl2_order(5), 480);
    }
}
