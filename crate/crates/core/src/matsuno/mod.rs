//! Growth of the 2-rank of Ш in quadratic extensions.
//!
//! Ramifying `k ≥ n + rank E(Q) + 6` primes that split completely in
//! `Q(E[2])` in a quadratic field `K` whose twist has rank 0 gives
//! `rank_2 Ш(E/K)[2] ≥ n`. The conductor of the smallest such `K` behaves
//! like `(log n)^{n+c} / exp(li(n))`.

pub mod li;

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;

use crate::arith::points::cubic_splits_completely;
use crate::arith::sieve::PrimeEngine;
use crate::curve::EllipticCurve;
use crate::error::{Error, Result};

pub use li::logarithmic_integral;

/// Primes examined by [`pick_split_primes`] before giving up.
pub const PRIME_SEARCH_CAP: u64 = 10_000_000;

/// `rank_p Sel_p(E/F) = rank E(F) + rank_p E(F)[p] + rank_p Ш(E/F)[p]`.
pub fn p_rank_equation(rank: u32, torsion_p_rank: u32, sha_p_rank: u32) -> Result<u32> {
    if torsion_p_rank > 2 {
        return Err(Error::InvalidTorsionRank { rank: torsion_p_rank });
    }
    Ok(rank + torsion_p_rank + sha_p_rank)
}

/// `rank_p Sel_p(E/K) ≥ #T − 4`, clamped at 0.
pub fn selmer_rank_lower_bound(t_set_size: u32) -> u32 {
    t_set_size.saturating_sub(4)
}

/// `rank_2 Ш(E/K)[2] ≥ k − 6 − rank E(Q)`, clamped at 0.
pub fn sha_two_rank_lower_bound(k: u32, rank_q: u32) -> u32 {
    k.saturating_sub(6).saturating_sub(rank_q)
}

/// The `k` smallest odd primes not dividing the discriminant of the model
/// at which `x³ + Ax + B` splits into linear factors.
pub fn pick_split_primes(curve: &EllipticCurve, k: usize) -> Result<Vec<u64>> {
    if k == 0 {
        return Err(Error::InvalidInput("need at least one prime".into()));
    }
    let disc = curve.discriminant();
    let mut out = Vec::with_capacity(k);
    for q in PrimeEngine::new(PRIME_SEARCH_CAP) {
        if q == 2 || disc % q as i128 == 0 {
            continue;
        }
        if cubic_splits_completely(curve, q)? {
            out.push(q);
            if out.len() == k {
                return Ok(out);
            }
        }
    }
    Err(Error::CapExceeded {
        what: "split prime search",
        value: PRIME_SEARCH_CAP,
        cap: PRIME_SEARCH_CAP,
    })
}

/// Real roots of `x³ + ax + b`.
fn real_roots(a: f64, b: f64) -> Vec<f64> {
    let disc = -(4.0 * a * a * a + 27.0 * b * b);
    if disc > 0.0 {
        let m = 2.0 * libm::sqrt(-a / 3.0);
        let theta = libm::acos((3.0 * b / (a * m)).clamp(-1.0, 1.0)) / 3.0;
        (0..3)
            .map(|k| m * libm::cos(theta - 2.0 * core::f64::consts::PI * k as f64 / 3.0))
            .collect()
    } else {
        let s = libm::sqrt(b * b / 4.0 + a * a * a / 27.0);
        alloc::vec![libm::cbrt(-b / 2.0 + s) + libm::cbrt(-b / 2.0 - s)]
    }
}

/// Number of rational roots of the monic integer cubic `x³ + ax + b`.
fn rational_root_count(a: i128, b: i128) -> usize {
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    let eval = |r: &BigInt| r * r * r + &ab * r + &bb;
    let mut roots: Vec<BigInt> = Vec::new();
    for r in real_roots(a as f64, b as f64) {
        let r0 = libm::round(r) as i128;
        for d in -2..=2 {
            let c = BigInt::from(r0 + d);
            if eval(&c) == BigInt::from(0) && !roots.contains(&c) {
                roots.push(c);
            }
        }
    }
    roots.len()
}

/// `[Q(E[2]) : Q] ∈ {1, 2, 3, 6}`.
pub fn two_division_degree(curve: &EllipticCurve) -> u32 {
    let (a, b) = curve.short_coefficients();
    match rational_root_count(a, b) {
        3 => 1,
        1 => 2,
        _ => {
            let d = curve.discriminant();
            // the cubic's discriminant is Δ times a square
            if d > 0 && d.sqrt() * d.sqrt() == d {
                3
            } else {
                6
            }
        }
    }
}

/// The existence of a rank-0 quadratic twist ramified at the chosen primes
/// is taken from the literature and not checked.
pub const TWIST_ASSUMPTION: &str =
    "a quadratic twist of rank 0 ramified at the picked primes exists (not checked)";

#[derive(Debug, Clone, PartialEq)]
pub struct ShaGrowthPlan {
    pub n: u32,
    pub rank_q: u32,
    pub k: u32,
    pub picked_primes: Vec<u64>,
    pub conductor_product: BigUint,
    /// `(log n)^{n+c} / exp(li(n))`; undefined for `n < 2`.
    pub asymptotic_estimate: Option<f64>,
    pub galois_degree: u32,
    pub c: u32,
}

/// `(log n)^{n+c} / exp(li(n))`, for `n ≥ 2`.
pub fn asymptotic_conductor(n: u32, c: u32) -> Option<f64> {
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let li = logarithmic_integral(nf).ok()?;
    Some(libm::exp((nf + c as f64) * libm::log(libm::log(nf)) - li))
}

/// Primes and conductor estimate for forcing `rank_2 Ш ≥ n`.
pub fn matsuno_plan(curve: &EllipticCurve, n: u32, rank_q: u32) -> Result<ShaGrowthPlan> {
    if n == 0 {
        return Err(Error::InvalidInput("target 2-rank must be at least 1".into()));
    }
    let k = n + rank_q + 6;
    let picked_primes = pick_split_primes(curve, k as usize)?;
    let conductor_product = picked_primes.iter().map(|&q| BigUint::from(q)).product();
    let galois_degree = two_division_degree(curve);
    let c = galois_degree.max(2);
    Ok(ShaGrowthPlan {
        n,
        rank_q,
        k,
        picked_primes,
        conductor_product,
        asymptotic_estimate: asymptotic_conductor(n, c),
        galois_degree,
        c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn curve(a: [i64; 5]) -> EllipticCurve {
        EllipticCurve::new(a[0], a[1], a[2], a[3], a[4]).unwrap()
    }

    #[test]
    fn rank_identities() {
        assert_eq!(p_rank_equation(0, 0, 0), Ok(0));
        assert_eq!(p_rank_equation(1, 2, 3), Ok(6));
        assert_eq!(p_rank_equation(0, 3, 0), Err(Error::InvalidTorsionRank { rank: 3 }));
        assert_eq!(selmer_rank_lower_bound(7), 3);
        assert_eq!(selmer_rank_lower_bound(4), 0);
        assert_eq!(selmer_rank_lower_bound(0), 0);
        assert_eq!(sha_two_rank_lower_bound(10, 0), 4);
        assert_eq!(sha_two_rank_lower_bound(6, 0), 0);
        assert_eq!(sha_two_rank_lower_bound(16, 2), 8);
    }

    #[test]
    fn split_primes() {
        let cm = curve([0, 0, 0, -1, 0]);
        assert_eq!(pick_split_primes(&cm, 3).unwrap(), vec![3, 5, 7]);
        assert!(pick_split_primes(&cm, 0).is_err());
    }

    #[test]
    fn galois_degrees() {
        assert_eq!(two_division_degree(&curve([0, 0, 0, -1, 0])), 1);
        // y² = x³ + x: one rational 2-torsion point
        assert_eq!(two_division_degree(&curve([0, 0, 0, 1, 0])), 2);
        // y² = x³ + 42: x³ + 42 irreducible, Δ < 0
        assert_eq!(two_division_degree(&curve([0, 0, 0, 0, 42])), 6);
        // y² = x³ − 3x + 1: cyclic cubic, Δ = 16·81
        assert_eq!(two_division_degree(&curve([0, 0, 0, -3, 1])), 3);
        // 11a3 has no rational 2-torsion and non-square Δ = −11
        assert_eq!(two_division_degree(&curve([0, -1, 1, 0, 0])), 6);
    }

    #[test]
    fn plan_for_full_two_torsion() {
        let cm = curve([0, 0, 0, -1, 0]);
        let plan = matsuno_plan(&cm, 1, 0).unwrap();
        assert_eq!(plan.k, 7);
        assert_eq!(plan.picked_primes, vec![3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(plan.conductor_product, BigUint::from(4_849_845u32));
        assert_eq!(plan.c, 2);
        assert_eq!(plan.asymptotic_estimate, None);
        assert_eq!(matsuno_plan(&cm, 2, 0).unwrap().k, 8);
        let a10 = asymptotic_conductor(10, 2).unwrap();
        let a11 = asymptotic_conductor(11, 2).unwrap();
        assert!(a11 > a10);
    }
}
