//! Integral Weierstrass models over Q.

use alloc::string::String;
use core::fmt;

use crate::error::{Error, Result};

/// `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    a: [i128; 5],
    b2: i128,
    b4: i128,
    b6: i128,
    b8: i128,
    c4: i128,
    c6: i128,
    disc: i128,
    pub label: Option<String>,
}

/// b- and c-invariants of a model; `None` on overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Invariants {
    pub b2: i128,
    pub b4: i128,
    pub b6: i128,
    pub b8: i128,
    pub c4: i128,
    pub c6: i128,
    pub disc: i128,
}

pub(crate) fn invariants(a: &[i128; 5]) -> Option<Invariants> {
    let [a1, a2, a3, a4, a6] = *a;
    let m = |x: i128, y: i128| x.checked_mul(y);
    let b2 = m(a1, a1)?.checked_add(m(4, a2)?)?;
    let b4 = m(2, a4)?.checked_add(m(a1, a3)?)?;
    let b6 = m(a3, a3)?.checked_add(m(4, a6)?)?;
    // b8 = a1²a6 + 4a2a6 − a1a3a4 + a2a3² − a4²
    let b8 = m(m(a1, a1)?, a6)?
        .checked_add(m(m(4, a2)?, a6)?)?
        .checked_sub(m(m(a1, a3)?, a4)?)?
        .checked_add(m(a2, m(a3, a3)?)?)?
        .checked_sub(m(a4, a4)?)?;
    let c4 = m(b2, b2)?.checked_sub(m(24, b4)?)?;
    let c6 = m(m(b2, b2)?, b2)?
        .checked_neg()?
        .checked_add(m(m(36, b2)?, b4)?)?
        .checked_sub(m(216, b6)?)?;
    // Δ = −b2²b8 − 8b4³ − 27b6² + 9b2b4b6
    let disc = m(m(b2, b2)?, b8)?
        .checked_neg()?
        .checked_sub(m(8, m(m(b4, b4)?, b4)?)?)?
        .checked_sub(m(27, m(b6, b6)?)?)?
        .checked_add(m(m(9, b2)?, m(b4, b6)?)?)?;
    Some(Invariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        c6,
        disc,
    })
}

impl EllipticCurve {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<Self> {
        Self::from_ainvs([a1 as i128, a2 as i128, a3 as i128, a4 as i128, a6 as i128])
    }

    /// Builds a curve from `[a1, a2, a3, a4, a6]`, rejecting singular models.
    pub fn from_ainvs(a: [i128; 5]) -> Result<Self> {
        let inv = invariants(&a).ok_or(Error::Overflow)?;
        if inv.disc == 0 {
            return Err(Error::SingularCurve);
        }
        // 1728Δ = c4³ − c6²; only checkable when it fits
        if let (Some(lhs), Some(rhs)) = (
            inv.disc.checked_mul(1728),
            inv.c4
                .checked_mul(inv.c4)
                .and_then(|x| x.checked_mul(inv.c4))
                .and_then(|x| inv.c6.checked_mul(inv.c6).and_then(|y| x.checked_sub(y))),
        ) {
            assert_eq!(lhs, rhs, "c-invariant identity failed");
        }
        Ok(Self {
            a,
            b2: inv.b2,
            b4: inv.b4,
            b6: inv.b6,
            b8: inv.b8,
            c4: inv.c4,
            c6: inv.c6,
            disc: inv.disc,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn ainvs(&self) -> [i128; 5] {
        self.a
    }
    pub fn a1(&self) -> i128 {
        self.a[0]
    }
    pub fn a2(&self) -> i128 {
        self.a[1]
    }
    pub fn a3(&self) -> i128 {
        self.a[2]
    }
    pub fn a4(&self) -> i128 {
        self.a[3]
    }
    pub fn a6(&self) -> i128 {
        self.a[4]
    }
    pub fn b2(&self) -> i128 {
        self.b2
    }
    pub fn b4(&self) -> i128 {
        self.b4
    }
    pub fn b6(&self) -> i128 {
        self.b6
    }
    pub fn b8(&self) -> i128 {
        self.b8
    }
    pub fn c4(&self) -> i128 {
        self.c4
    }
    pub fn c6(&self) -> i128 {
        self.c6
    }
    pub fn discriminant(&self) -> i128 {
        self.disc
    }

    /// Applies `x = u²x' + r`, `y = u³y' + su²x' + t`.
    ///
    /// Fails with [`Error::InvalidInput`] if the new model is not integral.
    pub fn transform(&self, u: i128, r: i128, s: i128, t: i128) -> Result<Self> {
        let a = transform_ainvs(&self.a, u, r, s, t)?;
        let mut out = Self::from_ainvs(a)?;
        out.label = self.label.clone();
        Ok(out)
    }

    /// Short model `y² = x³ − 27c4·x − 54c6`, isomorphic away from 2 and 3.
    pub fn short_coefficients(&self) -> (i128, i128) {
        (-27 * self.c4, -54 * self.c6)
    }

    /// j-invariant as a reduced fraction `c4³ / Δ`, when it fits.
    pub fn j_invariant(&self) -> Option<(i128, i128)> {
        let num = self.c4.checked_mul(self.c4)?.checked_mul(self.c4)?;
        let g = num_integer::gcd(num, self.disc);
        let (mut n, mut d) = (num / g, self.disc / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Some((n, d))
    }
}

pub(crate) fn rst(a: &[i128; 5], r: i128, s: i128, t: i128) -> [i128; 5] {
    let [a1, a2, a3, a4, a6] = *a;
    [
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
    ]
}

pub(crate) fn transform_ainvs(a: &[i128; 5], u: i128, r: i128, s: i128, t: i128) -> Result<[i128; 5]> {
    if u == 0 {
        return Err(Error::InvalidInput("scaling u must be nonzero".into()));
    }
    let b = rst(a, r, s, t);
    let mut out = [0i128; 5];
    let weights = [1u32, 2, 3, 4, 6];
    for i in 0..5 {
        let d = u.checked_pow(weights[i]).ok_or(Error::Overflow)?;
        if b[i] % d != 0 {
            return Err(Error::InvalidInput("transformed model is not integral".into()));
        }
        out[i] = b[i] / d;
    }
    Ok(out)
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.a;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_11a3() {
        let e = EllipticCurve::new(0, -1, 1, 0, 0).unwrap();
        assert_eq!((e.b2(), e.b4(), e.b6()), (-4, 0, 1));
        assert_eq!((e.c4(), e.c6()), (16, -152));
        assert_eq!(e.discriminant(), -11);
    }

    #[test]
    fn discriminants_of_examples() {
        assert_eq!(EllipticCurve::new(0, 0, 0, -1, 0).unwrap().discriminant(), 64);
        // −2⁶·3⁵·7²
        assert_eq!(
            EllipticCurve::new(0, 0, 0, 0, 42).unwrap().discriminant(),
            -(64 * 243 * 49)
        );
    }

    #[test]
    fn singular_is_rejected() {
        assert_eq!(EllipticCurve::new(0, 0, 0, 0, 0), Err(Error::SingularCurve));
        // y² = x³ − 3x + 2 = (x−1)²(x+2)
        assert_eq!(EllipticCurve::new(0, 0, 0, -3, 2), Err(Error::SingularCurve));
    }

    #[test]
    fn transform_scales_discriminant() {
        let e = EllipticCurve::new(0, -1, 1, 0, 0).unwrap();
        let moved = e.transform(1, 3, -2, 5).unwrap();
        assert_eq!(moved.discriminant(), e.discriminant());
        let back = moved.transform(1, -3, 2, -11).unwrap();
        assert_eq!(back.ainvs(), e.ainvs());
    }
}
