//! Tate's algorithm over Q_ℓ, uniform in ℓ (including 2 and 3).
//!
//! Follows the loop formulation in Cremona's *Algorithms for Modular
//! Elliptic Curves*: translate the singular point to the origin, read off
//! the type from valuations of the coefficients, and rescale by ℓ whenever
//! the model turns out not to be minimal.

use crate::arith::modp::{self, reduce};
use crate::arith::poly::{count_distinct_roots, quadratic_has_root};
use crate::curve::{invariants, rst, EllipticCurve};
use crate::error::{Error, Result};
use crate::factor::valuation;

use super::{Kodaira, LocalReductionData, ReductionType};

/// `a⁻¹ mod p` as a small nonnegative integer.
fn pinv(a: i128, p: u64) -> i128 {
    modp::inv(reduce(a, p), p).expect("invertible mod p") as i128
}

fn pmod(a: i128, p: u64) -> i128 {
    reduce(a, p) as i128
}

fn divides(p: i128, a: i128) -> bool {
    a % p == 0
}

pub(crate) struct TateOutcome {
    pub data: LocalReductionData,
    pub minimal: [i128; 5],
}

pub(crate) fn run(curve: &EllipticCurve, l: u64) -> Result<TateOutcome> {
    if !modp::is_prime(l) {
        return Err(Error::NotPrime { value: l });
    }
    let pi = l as i128;
    let pi2 = pi * pi;
    let pi3 = pi2 * pi;
    let pi4 = pi3 * pi;
    let mut a = curve.ainvs();
    let half = if l == 2 { 0 } else { pinv(2, l) };

    loop {
        let inv = invariants(&a).ok_or(Error::Overflow)?;
        let vd = valuation(inv.disc, l);
        let done = |kodaira, reduction, tamagawa, f, a: [i128; 5]| {
            Ok(TateOutcome {
                data: LocalReductionData {
                    prime: l,
                    reduction,
                    kodaira,
                    tamagawa,
                    conductor_exponent: f,
                    disc_valuation: vd,
                },
                minimal: a,
            })
        };
        if vd == 0 {
            return done(Kodaira::I0, ReductionType::Good, 1, 0, a);
        }

        // move the singular point of the reduction to (0, 0)
        let (b2, b4, b6) = (inv.b2, inv.b4, inv.b6);
        let (r, t) = match l {
            2 => {
                if divides(2, b2) {
                    let r = pmod(a[3], 2);
                    (r, pmod(r * (1 + a[1] + a[3]) + a[4], 2))
                } else {
                    let r = pmod(a[2], 2);
                    (r, pmod(r + a[3], 2))
                }
            }
            3 => {
                let r = if divides(3, b2) {
                    pmod(-b6, 3)
                } else {
                    pmod(-b2 * b4, 3)
                };
                (r, pmod(a[0] * r + a[2], 3))
            }
            _ => {
                let c4 = pmod(inv.c4, l);
                let r = if c4 == 0 {
                    pmod(-pinv(12, l) * pmod(b2, l), l)
                } else {
                    let num = pmod(inv.c6, l) + pmod(b2, l) * c4;
                    pmod(-pinv(12 * c4, l) * pmod(num, l), l)
                };
                let t = pmod(-half * pmod(a[0] * r + a[2], l), l);
                (r, t)
            }
        };
        a = rst(&a, r, 0, t);
        let inv = invariants(&a).ok_or(Error::Overflow)?;

        if !divides(pi, inv.b2) {
            let split = quadratic_has_root(1, a[0], -a[1], l);
            let (reduction, c) = if split {
                (ReductionType::SplitMultiplicative, vd as u64)
            } else {
                (
                    ReductionType::NonsplitMultiplicative,
                    if vd.is_multiple_of(2) { 2 } else { 1 },
                )
            };
            return done(Kodaira::I(vd), reduction, c, 1, a);
        }

        let additive = ReductionType::Additive;
        if valuation(a[4], l) < 2 {
            return done(Kodaira::II, additive, 1, vd, a);
        }
        if valuation(inv.b8, l) < 3 {
            return done(Kodaira::III, additive, 2, vd - 1, a);
        }
        if valuation(inv.b6, l) < 3 {
            let c = if quadratic_has_root(1, a[2] / pi, -a[4] / pi2, l) { 3 } else { 1 };
            return done(Kodaira::IV, additive, c, vd - 2, a);
        }

        // make p | a1, a2; p² | a3, a4; p³ | a6
        let (s, t) = if l == 2 {
            (pmod(a[1], 2), 2 * pmod(a[4] / 4, 2))
        } else {
            // unreduced: a1 + 2s = a1(1 − 2·half) gains a factor of ℓ
            (-a[0] * half, -a[2] * half)
        };
        a = rst(&a, 0, s, t);

        // cubic T³ + bT² + cT + d
        let b = pmod(a[1] / pi, l);
        let c = pmod(a[3] / pi2, l);
        let d = pmod(a[4] / pi3, l);
        let w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
        let x = 3 * c - b * b;

        if !divides(pi, w) {
            let roots = count_distinct_roots(&[d, c, b, 1], l) as u64;
            return done(Kodaira::IStar(0), additive, 1 + roots, vd - 4, a);
        }

        if !divides(pi, x) {
            // double root: translate it to zero
            let r = match l {
                2 => c,
                3 => b * c,
                _ => (b * c - 9 * d) * pinv(2 * x, l),
            };
            a = rst(&a, pi * pmod(r, l), 0, 0);
            let (mut ix, mut iy) = (3u32, 3u32);
            let (mut mx, mut my) = (pi2, pi2);
            let tamagawa = loop {
                let a3t = a[2] / my;
                let a6t = (a[4] / mx) / my;
                if !divides(pi, a3t * a3t + 4 * a6t) {
                    break if quadratic_has_root(1, a3t, -a6t, l) { 4 } else { 2 };
                }
                let t = if l == 2 {
                    my * pmod(a6t, 2)
                } else {
                    my * pmod(-a3t * half, l)
                };
                a = rst(&a, 0, 0, t);
                my *= pi;
                iy += 1;
                let a2t = a[1] / pi;
                let a4t = (a[3] / pi) / mx;
                let a6t = (a[4] / mx) / my;
                if !divides(pi, a4t * a4t - 4 * a6t * a2t) {
                    break if quadratic_has_root(a2t, a4t, a6t, l) { 4 } else { 2 };
                }
                let r = if l == 2 {
                    mx * pmod(a6t * a2t, 2)
                } else {
                    mx * pmod(-a4t * pinv(2 * a2t, l), l)
                };
                a = rst(&a, r, 0, 0);
                mx *= pi;
                ix += 1;
            };
            let m = ix + iy - 5;
            return done(Kodaira::IStar(m), additive, tamagawa, vd - m - 4, a);
        }

        // triple root: move it to zero
        let rp = if l == 3 { -d } else { -b * pinv(3, l) };
        a = rst(&a, pi * pmod(rp, l), 0, 0);
        let x3t = pmod(a[2] / pi2, l);
        let x6t = pmod(a[4] / pi4, l);
        if !divides(pi, x3t * x3t + 4 * x6t) {
            let c = if quadratic_has_root(1, x3t, -x6t, l) { 3 } else { 1 };
            return done(Kodaira::IVStar, additive, c, vd - 6, a);
        }
        let t = if l == 2 { x6t } else { x3t * half };
        a = rst(&a, 0, 0, -pi2 * pmod(t, l));
        if valuation(a[3], l) < 4 {
            return done(Kodaira::IIIStar, additive, 2, vd - 7, a);
        }
        if valuation(a[4], l) < 6 {
            return done(Kodaira::IIStar, additive, 1, vd - 8, a);
        }

        // not minimal: scale by u = ℓ
        a = [a[0] / pi, a[1] / pi2, a[2] / pi3, a[3] / pi4, a[4] / (pi3 * pi3)];
    }
}
