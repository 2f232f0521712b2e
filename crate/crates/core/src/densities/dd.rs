//! Double-double floats (about 106 bits of mantissa) from error-free
//! transformations with Dekker's splitting.

use core::ops::{Add, Mul, Neg, Sub};

/// `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = SPLITTER * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

/// `a·b = p + e` exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl DoubleDouble {
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// `1/n` for `n < 2^53`.
    pub fn recip(n: u64) -> Self {
        let d = n as f64;
        let hi = 1.0 / d;
        // 1 − hi·d is exact in two parts
        let (p, e) = two_prod(hi, d);
        let r = (1.0 - p) - e;
        let (hi, lo) = quick_two_sum(hi, r / d);
        Self { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Multiplication by a power of two is exact.
    pub fn scale(self, s: f64) -> Self {
        Self { hi: self.hi * s, lo: self.lo * s }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_is_exact_to_double_double() {
        for n in [3u64, 7, 10, 179_424_673, (1 << 40) + 15] {
            let r = DoubleDouble::recip(n);
            // n · (hi + lo) − 1, evaluated exactly in pieces
            let back = r * DoubleDouble::from_f64(n as f64) - DoubleDouble::ONE;
            assert!(back.to_f64().abs() < 1e-30, "{n}: {back:?}");
        }
    }

    #[test]
    fn two_prod_is_error_free() {
        let (p, e) = two_prod(0.1, 0.3);
        // 0.1 and 0.3 have 53-bit mantissas; the exact product needs 106
        assert_ne!(e, 0.0);
        assert_eq!(p, 0.1 * 0.3);
    }

    #[test]
    fn cancellation_keeps_low_part() {
        let a = DoubleDouble::ONE - DoubleDouble::recip(3).scale(1e-20);
        let b = DoubleDouble::ONE - a;
        assert!((b.to_f64() - 1e-20 / 3.0).abs() < 1e-35);
    }
}
