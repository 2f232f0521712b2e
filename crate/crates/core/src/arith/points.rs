//! Counting points on the reduction of a curve modulo a good odd prime.
//!
//! Small fields use the character sum `q + 1 + Σ_x χ(x³ + Ax + B)` over the
//! short model. Larger fields pin `#Ẽ(F_q)` inside the Hasse interval with
//! baby-step giant-step on points of the curve and of its quadratic twist.

use alloc::borrow::Cow;
use alloc::vec::Vec;

use super::modp::{self, add, jacobi, mul, neg, reduce, sub};
use super::poly::count_distinct_roots;
use crate::curve::EllipticCurve;
use crate::error::{Error, Result};
use crate::local::minimal::minimal_model_at;

/// Largest prime for which point counting is offered.
pub const POINT_COUNT_CAP: u64 = modp::FIELD_CAP;

/// Below this bound the O(q) character sum is used directly.
pub const CHARACTER_SUM_LIMIT: u64 = 4096;

/// Twist/curve points tried before falling back to the character sum.
const BSGS_ATTEMPTS: usize = 64;

/// Short Weierstrass model `y² = x³ + a·x + b` over F_q, `q ≥ 5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShortCurve {
    pub a: u64,
    pub b: u64,
    pub q: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Point {
    Infinity,
    Affine(u64, u64),
}

impl ShortCurve {
    /// Reduction of `y² = x³ − 27c4·x − 54c6` modulo `q`.
    pub fn from_curve(curve: &EllipticCurve, q: u64) -> Self {
        let (a, b) = curve.short_coefficients();
        Self {
            a: reduce(a, q),
            b: reduce(b, q),
            q,
        }
    }

    #[inline]
    fn rhs(&self, x: u64) -> u64 {
        let q = self.q;
        add(mul(add(mul(x, x, q), self.a, q), x, q), self.b, q)
    }

    /// `#E(F_q)` by the character sum.
    pub fn count_character_sum(&self) -> u64 {
        let q = self.q;
        // Σ χ(f(x)) via finite differences: f(x+1) − f(x) = 3x² + 3x + 1 + a
        let mut fx = self.b;
        let mut d1 = add(1 % q, self.a, q); // f(1) − f(0)
        let mut d2 = 6 % q; // second difference at x = 0
        let six = 6 % q;
        let mut sum: i64 = 0;
        for _ in 0..q {
            sum += jacobi(fx, q) as i64;
            fx = add(fx, d1, q);
            d1 = add(d1, d2, q);
            d2 = add(d2, six, q);
        }
        (q as i64 + 1 + sum) as u64
    }

    fn add_points(&self, p: Point, r: Point) -> Point {
        let q = self.q;
        match (p, r) {
            (Point::Infinity, x) | (x, Point::Infinity) => x,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => {
                let lambda = if x1 == x2 {
                    if add(y1, y2, q) == 0 {
                        return Point::Infinity;
                    }
                    let num = add(mul(3, mul(x1, x1, q), q), self.a, q);
                    mul(num, modp::inv(add(y1, y1, q), q).unwrap(), q)
                } else {
                    mul(sub(y2, y1, q), modp::inv(sub(x2, x1, q), q).unwrap(), q)
                };
                let x3 = sub(sub(mul(lambda, lambda, q), x1, q), x2, q);
                let y3 = sub(mul(lambda, sub(x1, x3, q), q), y1, q);
                Point::Affine(x3, y3)
            }
        }
    }

    fn negate(&self, p: Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x, neg(y, self.q)),
        }
    }

    fn scalar(&self, p: Point, mut k: u64) -> Point {
        let mut acc = Point::Infinity;
        let mut base = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(acc, base);
            }
            base = self.add_points(base, base);
            k >>= 1;
        }
        acc
    }

    /// All `m ∈ [lo, hi]` with `m·P = O`, ascending.
    fn annihilators_in(&self, p: Point, lo: u64, hi: u64) -> Vec<u64> {
        let width = hi - lo;
        let s = isqrt(width) + 1;
        let mut baby: Vec<(u64, u64, u64)> = Vec::with_capacity(s as usize);
        let mut cur = Point::Infinity;
        for j in 1..s {
            cur = self.add_points(cur, p);
            match cur {
                Point::Infinity => {
                    // ord(P) = j is small: every multiple of j qualifies
                    let first = lo.div_ceil(j) * j;
                    return (first..=hi).step_by(j as usize).collect();
                }
                Point::Affine(x, y) => baby.push((x, y, j)),
            }
        }
        baby.sort_unstable();
        let step = self.negate(self.add_points(cur, p)); // −s·P
        let mut giant = self.negate(self.scalar(p, lo));
        let mut out = Vec::new();
        let mut k = lo;
        while k <= hi {
            match giant {
                Point::Infinity => out.push(k),
                Point::Affine(x, y) => {
                    if let Ok(i) = baby.binary_search_by(|e| (e.0, e.1).cmp(&(x, y))) {
                        let m = k + baby[i].2;
                        if m <= hi {
                            out.push(m);
                        }
                    }
                }
            }
            k += s;
            giant = self.add_points(giant, step);
        }
        out
    }

    /// `#E(F_q)` by baby-step giant-step; `None` if it stays ambiguous.
    pub fn count_bsgs(&self) -> Option<u64> {
        let q = self.q;
        let spread = isqrt(4 * q);
        let (lo, hi) = (q + 1 - spread, q + 1 + spread);
        let mut candidates: Option<Vec<u64>> = None;
        let mut attempts = 0;
        for x0 in 0..q {
            let v = self.rhs(x0);
            if v == 0 {
                continue;
            }
            // (x0·v, v²) lies on y² = x³ + a v² x + b v³, which is E when v is
            // a square and the quadratic twist otherwise.
            let v2 = mul(v, v, q);
            let model = ShortCurve {
                a: mul(self.a, v2, q),
                b: mul(self.b, mul(v2, v, q), q),
                q,
            };
            let hits = model.annihilators_in(Point::Affine(mul(x0, v, q), v2), lo, hi);
            let mut orders: Vec<u64> = if jacobi(v, q) == 1 {
                hits
            } else {
                hits.into_iter().rev().map(|m| 2 * q + 2 - m).collect()
            };
            orders.sort_unstable();
            let next = match candidates.take() {
                None => orders,
                Some(prev) => intersect_sorted(&prev, &orders),
            };
            if next.len() == 1 {
                return Some(next[0]);
            }
            candidates = Some(next);
            attempts += 1;
            if attempts >= BSGS_ATTEMPTS {
                break;
            }
        }
        None
    }

    pub fn count(&self) -> u64 {
        if self.q < CHARACTER_SUM_LIMIT {
            return self.count_character_sum();
        }
        self.count_bsgs()
            .unwrap_or_else(|| self.count_character_sum())
    }
}

fn intersect_sorted(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Checks `q` and returns a model with good reduction at `q` (the curve
/// itself, or its minimal model when the given one is not minimal at `q`).
pub(crate) fn good_model_at(curve: &EllipticCurve, q: u64) -> Result<Cow<'_, EllipticCurve>> {
    if q == 2 {
        return Err(Error::EvenPrime);
    }
    if !modp::is_prime(q) {
        return Err(Error::NotPrime { value: q });
    }
    if q > POINT_COUNT_CAP {
        return Err(Error::CapExceeded {
            what: "point counting prime",
            value: q,
            cap: POINT_COUNT_CAP,
        });
    }
    if curve.discriminant() % q as i128 != 0 {
        return Ok(Cow::Borrowed(curve));
    }
    let minimal = minimal_model_at(curve, q)?;
    if minimal.discriminant() % q as i128 == 0 {
        return Err(Error::BadReductionPrime { q });
    }
    Ok(Cow::Owned(minimal))
}

/// Affine solutions of the full Weierstrass equation over F_q, plus
/// infinity; used for `q ∈ {2, 3}` and as a test oracle.
pub(crate) fn count_by_enumeration(curve: &EllipticCurve, q: u64) -> u64 {
    let q = q as i128;
    let [a1, a2, a3, a4, a6] = curve.ainvs();
    let mut n = 1;
    for x in 0..q {
        for y in 0..q {
            let lhs = y * y + a1 * x * y + a3 * y;
            let rhs = x * x * x + a2 * x * x + a4 * x + a6;
            if (lhs - rhs).rem_euclid(q) == 0 {
                n += 1;
            }
        }
    }
    n
}

/// `#Ẽ(F_q)` for an odd prime `q` of good reduction.
pub fn count_points(curve: &EllipticCurve, q: u64) -> Result<u64> {
    let model = good_model_at(curve, q)?;
    if q == 3 {
        return Ok(count_by_enumeration(&model, 3));
    }
    Ok(ShortCurve::from_curve(&model, q).count())
}

/// `#Ẽ(F_q)` by the character sum only; the reference path for small `q`.
pub fn count_points_character_sum(curve: &EllipticCurve, q: u64) -> Result<u64> {
    let model = good_model_at(curve, q)?;
    if q == 3 {
        return Ok(count_by_enumeration(&model, 3));
    }
    if q > 10_000_000 {
        return Err(Error::CapExceeded {
            what: "character-sum prime",
            value: q,
            cap: 10_000_000,
        });
    }
    Ok(ShortCurve::from_curve(&model, q).count_character_sum())
}

/// `a_q = q + 1 − #Ẽ(F_q)`.
pub fn trace_of_frobenius(curve: &EllipticCurve, q: u64) -> Result<i64> {
    Ok(q as i64 + 1 - count_points(curve, q)? as i64)
}

/// `a_q = 0`; only meaningful for `q ≥ 5`.
pub fn is_supersingular(curve: &EllipticCurve, q: u64) -> Result<bool> {
    if q < 5 {
        return Err(Error::SmallPrime { q });
    }
    Ok(trace_of_frobenius(curve, q)? == 0)
}

/// Frobenius at `q` acts trivially on `E[2]`: the 2-division polynomial
/// `4x³ + b2·x² + 2b4·x + b6` has three roots in F_q.
pub fn cubic_splits_completely(curve: &EllipticCurve, q: u64) -> Result<bool> {
    let model = good_model_at(curve, q)?;
    let f = [model.b6(), 2 * model.b4(), model.b2(), 4];
    Ok(count_distinct_roots(&f, q) == 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> EllipticCurve {
        EllipticCurve::new(a[0], a[1], a[2], a[3], a[4]).unwrap()
    }

    #[test]
    fn cm_curve_supersingular_at_3_mod_4() {
        let e = curve([0, 0, 0, -1, 0]);
        assert_eq!(count_points(&e, 7).unwrap(), 8);
        assert_eq!(count_points(&e, 31).unwrap(), 32);
        assert_eq!(trace_of_frobenius(&e, 7).unwrap(), 0);
        assert!(is_supersingular(&e, 11).unwrap());
        assert!(!is_supersingular(&e, 13).unwrap());
    }

    #[test]
    fn error_paths() {
        let e = curve([0, 0, 0, -1, 0]);
        assert_eq!(count_points(&e, 2), Err(Error::EvenPrime));
        assert_eq!(is_supersingular(&e, 3), Err(Error::SmallPrime { q: 3 }));
        assert_eq!(count_points(&e, 9), Err(Error::NotPrime { value: 9 }));
        let f = curve([0, 0, 0, 0, 42]);
        assert_eq!(count_points(&f, 7), Err(Error::BadReductionPrime { q: 7 }));
        assert_eq!(cubic_splits_completely(&e, 2), Err(Error::EvenPrime));
    }

    #[test]
    fn non_minimal_model_is_minimised() {
        // y² = x³ − 3⁴x: 3-adically non-minimal twin of y² = x³ − x
        let big = curve([0, 0, 0, -81, 0]);
        let small = curve([0, 0, 0, -1, 0]);
        assert_eq!(count_points(&big, 3).unwrap(), count_points(&small, 3).unwrap());
    }

    #[test]
    fn bsgs_matches_character_sum() {
        let curves = [
            curve([0, -1, 1, 0, 0]),
            curve([0, 0, 0, -1, 0]),
            curve([0, 0, 0, 0, 42]),
            curve([1, -1, 1, -2, 3]),
            curve([0, 0, 1, -7, 6]),
        ];
        let primes = crate::arith::sieve::PrimeEngine::range(4097, 40_000, None);
        for q in primes.step_by(7) {
            for e in &curves {
                if e.discriminant() % q as i128 == 0 {
                    continue;
                }
                let s = ShortCurve::from_curve(e, q);
                assert_eq!(s.count_bsgs(), Some(s.count_character_sum()), "{e} mod {q}");
            }
        }
    }

    #[test]
    fn rational_two_torsion_splits() {
        let e = curve([0, 0, 0, -1, 0]);
        for q in [3u64, 5, 7, 11, 13, 101] {
            assert!(cubic_splits_completely(&e, q).unwrap());
        }
    }
}
