//! Library results against independent, slower computations.

use iwasawa_core::arith::{count_points, count_points_character_sum, primes_up_to};
use iwasawa_core::local::{conductor, tate_algorithm, Kodaira, ReductionType};
use iwasawa_core::matsuno::logarithmic_integral;
use iwasawa_core::EllipticCurve;
use proptest::prelude::*;

const CREMONA: [(&str, [i64; 5]); 18] = [
    ("11a1", [0, -1, 1, -10, -20]),
    ("14a1", [1, 0, 1, 4, -6]),
    ("15a1", [1, 1, 1, -10, -10]),
    ("17a1", [1, -1, 1, -1, -14]),
    ("19a1", [0, 1, 1, -9, -15]),
    ("20a1", [0, 1, 0, 4, 4]),
    ("21a1", [1, 0, 0, -4, -1]),
    ("24a1", [0, -1, 0, -4, 4]),
    ("26a1", [1, 0, 1, -5, -8]),
    ("27a1", [0, 0, 1, 0, -7]),
    ("30a1", [1, 0, 1, 1, 2]),
    ("32a1", [0, 0, 0, 4, 0]),
    ("36a1", [0, 0, 0, 0, 1]),
    ("37a1", [0, 0, 1, -1, 0]),
    ("43a1", [0, 1, 1, 0, 0]),
    ("49a1", [1, -1, 0, -2, -1]),
    ("389a1", [0, 1, 1, -2, 0]),
    ("5077a1", [0, 0, 1, -7, 6]),
];

fn curve(a: [i64; 5]) -> EllipticCurve {
    EllipticCurve::new(a[0], a[1], a[2], a[3], a[4]).unwrap()
}

/// Affine solutions of the long Weierstrass equation plus the point at
/// infinity.
fn naive_count(a: [i64; 5], q: u64) -> u64 {
    let q = q as i64;
    let [a1, a2, a3, a4, a6] = a.map(|c| c.rem_euclid(q));
    let mut n = 1;
    for x in 0..q {
        let rhs = (((x * x % q) * x) + a2 * (x * x % q) + a4 * x + a6).rem_euclid(q);
        for y in 0..q {
            if ((y * y) + a1 * x * y + a3 * y - rhs).rem_euclid(q) == 0 {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn point_counts_match_enumeration() {
    let mut corpus: Vec<[i64; 5]> = CREMONA.iter().map(|c| c.1).collect();
    corpus.extend([[0, 0, 0, 0, 42], [0, -1, 1, 0, 0]]);
    assert_eq!(corpus.len(), 20);
    for a in corpus {
        let e = curve(a);
        for q in primes_up_to(499, None).filter(|&q| q > 2) {
            if e.discriminant() % q as i128 == 0 {
                continue;
            }
            let expect = naive_count(a, q);
            assert_eq!(count_points_character_sum(&e, q).unwrap(), expect, "{a:?} at {q}");
            assert_eq!(count_points(&e, q).unwrap(), expect, "{a:?} at {q}");
        }
    }
}

#[test]
fn bsgs_agrees_with_character_sum_above_the_switch() {
    let e = curve([0, 0, 1, -7, 6]);
    for q in primes_up_to(60_000, None).filter(|&q| q > 4096).step_by(97) {
        assert_eq!(count_points(&e, q).unwrap(), count_points_character_sum(&e, q).unwrap(), "q = {q}");
    }
}

#[test]
fn cremona_conductors() {
    for (label, a) in CREMONA {
        let n: u128 = label.split(char::is_alphabetic).next().unwrap().parse().unwrap();
        assert_eq!(conductor(&curve(a)).unwrap(), n, "{label}");
    }
}

/// `li(x) = γ + ln ln x + ∫₀^{ln x} (eᵘ − 1)/u du`, by composite Simpson.
fn li_quadrature(x: f64) -> f64 {
    const GAMMA: f64 = 0.577_215_664_901_532_9;
    let b = x.ln();
    let n = 200_000;
    let h = b / n as f64;
    let f = |u: f64| if u == 0.0 { 1.0 } else { u.exp_m1() / u };
    let mut s = f(0.0) + f(b);
    for i in 1..n {
        s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    GAMMA + b.ln() + s * h / 3.0
}

#[test]
fn li_matches_quadrature() {
    for x in [1.5, 2.0, 3.0, 5.0, 10.0, 37.5, 100.0, 1000.0, 1e5, 1e8] {
        let (got, want) = (logarithmic_integral(x).unwrap(), li_quadrature(x));
        assert!(((got - want) / want).abs() < 1e-9, "li({x}) = {got}, quadrature {want}");
    }
}

fn val(mut n: i128, l: i128) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n % l == 0 {
        n /= l;
        v += 1;
    }
    v
}

fn legendre(a: i128, l: i128) -> i128 {
    let mut r = 1i128;
    let (mut b, mut e) = (a.rem_euclid(l), (l - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % l;
        }
        b = b * b % l;
        e >>= 1;
    }
    r
}

/// Kodaira type, conductor exponent and minimal discriminant valuation of
/// `y² = x³ + Ax + B` at `ℓ ≥ 5`, read off the valuations alone.
fn neron_table(mut a: i128, mut b: i128, l: i128) -> (Kodaira, u32, u32, bool) {
    while val(a, l) >= 4 && val(b, l) >= 6 {
        a /= l.pow(4);
        b /= l.pow(6);
    }
    let vd = val(4 * a * a * a + 27 * b * b, l);
    let va = val(a, l);
    if vd == 0 {
        return (Kodaira::I0, 0, 0, false);
    }
    if va == 0 {
        return (Kodaira::I(vd), 1, vd, legendre(6 * b, l) == 1);
    }
    let k = if a != 0 && 3 * va < vd {
        Kodaira::IStar(vd - 6)
    } else {
        match vd {
            2 => Kodaira::II,
            3 => Kodaira::III,
            4 => Kodaira::IV,
            6 => Kodaira::IStar(0),
            8 => Kodaira::IVStar,
            9 => Kodaira::IIIStar,
            10 => Kodaira::IIStar,
            _ => unreachable!("v(Δ) = {vd}"),
        }
    };
    (k, 2, vd, false)
}

proptest! {
    #[test]
    fn tate_matches_neron_table(
        a in -60i128..60, b in -60i128..60,
        li in 0usize..3, i in 0u32..6, j in 0u32..8,
    ) {
        let l = [5i128, 7, 11][li];
        let (a, b) = (a * l.pow(i), b * l.pow(j));
        prop_assume!(4 * a * a * a + 27 * b * b != 0);
        let e = EllipticCurve::from_ainvs([0, 0, 0, a, b]).unwrap();
        let d = tate_algorithm(&e, l as u64).unwrap();
        let (k, f, vd, split) = neron_table(a, b, l);
        prop_assert_eq!(d.kodaira, k);
        prop_assert_eq!(d.conductor_exponent, f);
        prop_assert_eq!(d.disc_valuation, vd);
        match k {
            Kodaira::I0 => prop_assert_eq!(d.reduction, ReductionType::Good),
            Kodaira::I(m) => {
                let c = if split { m } else if m % 2 == 0 { 2 } else { 1 };
                prop_assert_eq!(d.tamagawa, c as u64);
                let r = if split { ReductionType::SplitMultiplicative } else { ReductionType::NonsplitMultiplicative };
                prop_assert_eq!(d.reduction, r);
            }
            Kodaira::II | Kodaira::IIStar => prop_assert_eq!(d.tamagawa, 1),
            Kodaira::III | Kodaira::IIIStar => prop_assert_eq!(d.tamagawa, 2),
            Kodaira::IV | Kodaira::IVStar => prop_assert!([1, 3].contains(&d.tamagawa)),
            Kodaira::IStar(0) => prop_assert!([1, 2, 4].contains(&d.tamagawa)),
            Kodaira::IStar(_) => prop_assert!([2, 4].contains(&d.tamagawa)),
        }
    }

    #[test]
    fn conductor_is_a_model_invariant(
        idx in 0usize..18,
        r in -6i128..6, s in -3i128..3, t in -6i128..6, u in 1i128..4,
    ) {
        let e = curve(CREMONA[idx].1);
        let moved = e.transform(1, r, s, t).unwrap();
        let [a1, a2, a3, a4, a6] = moved.ainvs();
        let scaled = EllipticCurve::from_ainvs(
            [a1 * u, a2 * u.pow(2), a3 * u.pow(3), a4 * u.pow(4), a6 * u.pow(6)],
        ).unwrap();
        let n = conductor(&e).unwrap();
        prop_assert_eq!(conductor(&moved).unwrap(), n);
        prop_assert_eq!(conductor(&scaled).unwrap(), n);
    }
}
