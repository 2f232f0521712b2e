//! Densities: the rank-zero expression over `q ≡ 1 (mod p)`, the tame lower
//! bound, the Chebotarev set in `GL₂(F_p)`, and empirical proportions of
//! primes `q` with `p | #Ẽ(F_q)`.

pub mod dd;
pub mod gl2;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::modp::is_prime;
use crate::arith::points::{count_by_enumeration, count_points};
use crate::arith::sieve::PrimeEngine;
use crate::classify::check_scan_bound;
use crate::curve::EllipticCurve;
use crate::error::{Error, Result};
use crate::local::{bad_primes, minimal_model_at, tate_algorithm, ReductionType};

pub use dd::DoubleDouble;
pub use gl2::{chebotarev_set_size, gl2_order, CountMode};

/// `(1 − 1/p)(1 − ∏_{q ≤ x, q ≡ 1 (p)} (1 − (q+1)/(2q²)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityResult {
    pub p: u64,
    pub x: u64,
    pub value: f64,
    /// The inner product over `q`.
    pub product: DoubleDouble,
    pub term_count: u64,
}

/// Running inner products for several `p` at once, fed one prime at a
/// time. Partial accumulators over consecutive ranges are merged in range
/// order, which keeps the rounding independent of how ranges are scheduled.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpressionAccumulator {
    primes: Vec<u64>,
    products: Vec<DoubleDouble>,
    terms: Vec<u64>,
}

/// `1 − (q+1)/(2q²) = 1 − (1/(2q))(1 + 1/q)` in double-double.
fn factor(q: u64) -> DoubleDouble {
    let inv = DoubleDouble::recip(q);
    let t = (inv * (DoubleDouble::ONE + inv)).scale(0.5);
    DoubleDouble::ONE - t
}

impl ExpressionAccumulator {
    pub fn new(primes: &[u64]) -> Result<Self> {
        for &p in primes {
            if !is_prime(p) {
                return Err(Error::NotPrime { value: p });
            }
        }
        Ok(Self {
            primes: primes.to_vec(),
            products: alloc::vec![DoubleDouble::ONE; primes.len()],
            terms: alloc::vec![0; primes.len()],
        })
    }

    #[inline]
    pub fn absorb(&mut self, q: u64) {
        for i in 0..self.primes.len() {
            if q % self.primes[i] == 1 {
                self.products[i] = self.products[i] * factor(q);
                self.terms[i] += 1;
            }
        }
    }

    /// All primes in `[lo, hi]`.
    pub fn absorb_range(&mut self, lo: u64, hi: u64) {
        for q in PrimeEngine::range(lo, hi, None) {
            self.absorb(q);
        }
    }

    /// Appends the factors of a later range.
    pub fn merge(&mut self, later: &Self) {
        debug_assert_eq!(self.primes, later.primes);
        for i in 0..self.primes.len() {
            self.products[i] = self.products[i] * later.products[i];
            self.terms[i] += later.terms[i];
        }
    }

    pub fn finish(&self, x: u64) -> Vec<DensityResult> {
        (0..self.primes.len())
            .map(|i| {
                let p = self.primes[i];
                let outer = DoubleDouble::ONE - DoubleDouble::recip(p);
                let value = (outer * (DoubleDouble::ONE - self.products[i])).to_f64();
                DensityResult {
                    p,
                    x,
                    value,
                    product: self.products[i],
                    term_count: self.terms[i],
                }
            })
            .collect()
    }
}

/// The rank-zero expression for one `p`.
pub fn rank_zero_expression(p: u64, x: u64) -> Result<DensityResult> {
    Ok(rank_zero_expressions(&[p], x)?.remove(0))
}

/// The rank-zero expression for several `p` in one sieve pass.
pub fn rank_zero_expressions(primes: &[u64], x: u64) -> Result<Vec<DensityResult>> {
    let mut acc = ExpressionAccumulator::new(primes)?;
    acc.absorb_range(1, x);
    Ok(acc.finish(x))
}

/// The same expression with the product taken in plain `f64`; a reference
/// for the compensated evaluation.
pub fn rank_zero_expression_naive(p: u64, x: u64) -> f64 {
    let mut prod = 1.0f64;
    for q in PrimeEngine::filtered(x, p) {
        let qf = q as f64;
        prod *= 1.0 - (qf + 1.0) / (2.0 * qf * qf);
    }
    (1.0 - 1.0 / p as f64) * (1.0 - prod)
}

/// `%.6g`: six significant digits, trailing zeros dropped, exponent form
/// below `1e-4` or from `1e6`.
pub fn format_sig6(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp) as usize;
    trim_zeros(&format!("{v:.decimals$}")).into()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `∏ (qᵢ + 1)/(2qᵢ²)` over distinct primes.
pub fn tame_lower_bound(primes: &[u64]) -> Result<BigRational> {
    let mut seen: Vec<u64> = Vec::new();
    let mut out = BigRational::from_integer(1.into());
    for &q in primes {
        if !is_prime(q) {
            return Err(Error::NotPrime { value: q });
        }
        if seen.contains(&q) {
            return Err(Error::DuplicatePrime { q });
        }
        seen.push(q);
        let qb = BigInt::from(q);
        out *= BigRational::new(&qb + 1, 2 * &qb * &qb);
    }
    Ok(out)
}

/// `Frob_q ∈ S`: `q ≡ 1 (mod p)` and `a_q ≡ 2 (mod p)`, for `q ∤ Np`.
pub fn frobenius_in_s(curve: &EllipticCurve, p: u64, q: u64) -> Result<bool> {
    if q == p || tate_algorithm(curve, q)?.reduction != ReductionType::Good {
        return Err(Error::RamifiedOrBadPrime { q });
    }
    if q % p != 1 {
        return Ok(false);
    }
    let aq = q as i64 + 1 - count_points(curve, q)? as i64;
    Ok((aq - 2).rem_euclid(p as i64) == 0)
}

/// `p / ((p − 1)²(p + 1))`, which equals `#S / #GL₂(F_p)`.
pub fn density_lower_bound(p: u64) -> Result<BigRational> {
    if p < 5 {
        return Err(Error::SmallPrime { q: p });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    let pb = BigInt::from(p);
    let den = (&pb - 1) * (&pb - 1) * (&pb + 1);
    Ok(BigRational::new(pb, den))
}

/// `1/(p(p−1))` without CM, `1/(2p(p−1))` with CM.
pub fn enemy_proportion_prediction(p: u64, has_cm: bool) -> BigRational {
    let den = BigInt::from(p) * BigInt::from(p - 1) * if has_cm { 2 } else { 1 };
    BigRational::new(1.into(), den)
}

/// The thirteen rational j-invariants of CM curves.
pub const CM_J_INVARIANTS: [i64; 13] = [
    0,
    1728,
    -3375,
    8000,
    -32768,
    54000,
    287496,
    -884736,
    -12288000,
    16581375,
    -884736000,
    -147197952000,
    -262537412640768000,
];

/// Whether `j(E)` is one of the CM j-invariants.
pub fn has_cm(curve: &EllipticCurve) -> bool {
    let c4 = BigInt::from(curve.c4());
    let num = &c4 * &c4 * &c4;
    let disc = BigInt::from(curve.discriminant());
    CM_J_INVARIANTS.iter().any(|&j| num == BigInt::from(j) * &disc)
}

/// Primes `q ≤ x` with `q ∤ pN` and `p | #Ẽ(F_q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CojocaruReport {
    pub p: u64,
    pub x: u64,
    pub hits: u64,
    pub pi_x: u64,
}

impl CojocaruReport {
    pub fn proportion(&self) -> f64 {
        if self.pi_x == 0 {
            0.0
        } else {
            self.hits as f64 / self.pi_x as f64
        }
    }

    /// Adds counts of a disjoint range.
    pub fn merge(&mut self, o: &Self) {
        self.x = self.x.max(o.x);
        self.hits += o.hits;
        self.pi_x += o.pi_x;
    }
}

/// Range scanner for [`cojocaru_scan`] with the bad primes precomputed.
#[derive(Debug, Clone)]
pub struct CojocaruScanner<'a> {
    curve: &'a EllipticCurve,
    p: u64,
    bad: Vec<u64>,
    /// `#Ẽ(F_2)` when the reduction at 2 is good.
    at_two: Option<u64>,
}

impl<'a> CojocaruScanner<'a> {
    pub fn new(curve: &'a EllipticCurve, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { value: p });
        }
        let bad: Vec<u64> = bad_primes(curve)?.iter().map(|d| d.prime).collect();
        let at_two = if bad.contains(&2) {
            None
        } else {
            Some(count_by_enumeration(&minimal_model_at(curve, 2)?, 2))
        };
        Ok(Self { curve, p, bad, at_two })
    }

    pub fn scan_range(&self, lo: u64, hi: u64) -> Result<CojocaruReport> {
        let mut r = CojocaruReport { p: self.p, x: hi, ..Default::default() };
        for q in PrimeEngine::range(lo, hi, None) {
            r.pi_x += 1;
            if q == self.p || self.bad.contains(&q) {
                continue;
            }
            let n = if q == 2 {
                self.at_two.expect("good at 2")
            } else {
                count_points(self.curve, q)?
            };
            if n % self.p == 0 {
                r.hits += 1;
            }
        }
        Ok(r)
    }
}

/// Proportion of `q ≤ x`, `q ∤ pN`, with `p | #Ẽ(F_q)`; expected near `1/p`.
pub fn cojocaru_scan(curve: &EllipticCurve, p: u64, x: u64) -> Result<CojocaruReport> {
    check_scan_bound(x)?;
    CojocaruScanner::new(curve, p)?.scan_range(1, x)
}
