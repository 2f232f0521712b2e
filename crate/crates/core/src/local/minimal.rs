//! Minimal models: locally through Tate's loop, globally by the
//! Laska–Kraus–Connell reduction of `(c4, c6)`.

use crate::curve::EllipticCurve;
use crate::error::{Error, Result};
use crate::factor::{factor, valuation};

/// A model minimal at `l` and isomorphic to `curve` over Q.
pub fn minimal_model_at(curve: &EllipticCurve, l: u64) -> Result<EllipticCurve> {
    let out = super::tate::run(curve, l)?;
    let mut e = EllipticCurve::from_ainvs(out.minimal)?;
    e.label = curve.label.clone();
    Ok(e)
}

/// Reduced global minimal model (`a1, a3 ∈ {0,1}`, `a2 ∈ {−1,0,1}`).
pub fn global_minimal_model(curve: &EllipticCurve) -> Result<EllipticCurve> {
    let (c4, c6, disc) = (curve.c4(), curve.c6(), curve.discriminant());
    let g = num_integer::gcd(c6.checked_mul(c6).ok_or(Error::Overflow)?, disc);
    let mut u: i128 = 1;
    for (p, e) in factor(g)? {
        let mut d = e / 12;
        if d == 0 {
            continue;
        }
        if p == 2 {
            let a = c4 / 2i128.pow(4 * d);
            let b = c6 / 2i128.pow(6 * d);
            let ok = b.rem_euclid(4) == 3
                || (a.rem_euclid(16) == 0 && matches!(b.rem_euclid(32), 0 | 8));
            if !ok {
                d -= 1;
            }
        }
        if p == 3 && valuation(c6, 3) == 6 * d + 2 {
            d -= 1;
        }
        u = u.checked_mul((p as i128).pow(d)).ok_or(Error::Overflow)?;
    }
    let c4 = c4 / u.pow(4);
    let c6 = c6 / u.pow(6);
    // b2 ≡ −c6 (mod 12), centred in [−5, 6]
    let mut b2 = (-c6).rem_euclid(12);
    if b2 > 6 {
        b2 -= 12;
    }
    let b4 = (b2 * b2 - c4) / 24;
    let b6 = (-b2 * b2 * b2 + 36 * b2 * b4 - c6) / 216;
    let a1 = b2.rem_euclid(2);
    let a3 = b6.rem_euclid(2);
    let a2 = (b2 - a1) / 4;
    let a4 = (b4 - a1 * a3) / 2;
    let a6 = (b6 - a3) / 4;
    let mut e = EllipticCurve::from_ainvs([a1, a2, a3, a4, a6])?;
    debug_assert_eq!((e.c4(), e.c6()), (c4, c6));
    e.label = curve.label.clone();
    Ok(e)
}
