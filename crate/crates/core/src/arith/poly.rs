//! Dense polynomials over F_q, just enough to count roots of low-degree
//! polynomials through `gcd(f, x^q − x)`.

use alloc::vec;
use alloc::vec::Vec;

use super::modp::{add, inv, mul, reduce, sub};

/// Coefficients in increasing degree; no trailing zeros.
type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn rem(mut f: Poly, g: &[u64], q: u64) -> Poly {
    let dg = g.len() - 1;
    let lead_inv = inv(g[dg], q).expect("nonzero leading coefficient");
    while f.len() > dg {
        let df = f.len() - 1;
        let c = mul(f[df], lead_inv, q);
        if c != 0 {
            for (i, &gi) in g.iter().enumerate() {
                let k = df - dg + i;
                f[k] = sub(f[k], mul(c, gi, q), q);
            }
        }
        f.pop();
        f = trim(f);
    }
    trim(f)
}

fn mulmod(f: &[u64], g: &[u64], m: &[u64], q: u64) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = add(out[i + j], mul(a, b, q), q);
        }
    }
    rem(trim(out), m, q)
}

fn gcd(mut a: Poly, mut b: Poly, q: u64) -> Poly {
    while !b.is_empty() {
        let r = rem(a, &b, q);
        a = b;
        b = r;
    }
    a
}

/// Number of distinct roots in F_q of the integer polynomial `coeffs`
/// (increasing degree). The polynomial must not vanish identically mod q.
pub fn count_distinct_roots(coeffs: &[i128], q: u64) -> usize {
    let f = trim(coeffs.iter().map(|&c| reduce(c, q)).collect());
    assert!(!f.is_empty(), "polynomial vanishes mod {q}");
    if f.len() == 1 {
        return 0;
    }
    if q <= 64 {
        return (0..q)
            .filter(|&x| {
                f.iter()
                    .rev()
                    .fold(0u64, |acc, &c| add(mul(acc, x, q), c, q))
                    == 0
            })
            .count();
    }
    // x^q mod f by square-and-multiply
    let x: Poly = rem(vec![0, 1], &f, q);
    let mut acc: Poly = vec![1];
    let mut base = x.clone();
    let mut e = q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, &f, q);
        }
        base = mulmod(&base, &base, &f, q);
        e >>= 1;
    }
    // x^q − x
    let mut h = acc;
    if h.len() < 2 {
        h.resize(2, 0);
    }
    h[1] = sub(h[1], 1, q);
    let h = trim(h);
    gcd(f, h, q).len() - 1
}

/// Whether `a·x² + b·x + c` has a root mod `p` (any prime, including 2).
pub fn quadratic_has_root(a: i128, b: i128, c: i128, p: u64) -> bool {
    let (a, b, c) = (reduce(a, p), reduce(b, p), reduce(c, p));
    if p == 2 {
        return c == 0 || add(add(a, b, p), c, p) == 0;
    }
    if a == 0 {
        return b != 0 || c == 0;
    }
    let disc = sub(mul(b, b, p), mul(4 % p, mul(a, c, p), p), p);
    disc == 0 || super::modp::jacobi(disc, p) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(coeffs: &[i128], q: u64) -> usize {
        (0..q as i128)
            .filter(|&x| {
                coeffs
                    .iter()
                    .rev()
                    .fold(0i128, |acc, &c| (acc * x + c).rem_euclid(q as i128))
                    == 0
            })
            .count()
    }

    #[test]
    fn matches_enumeration() {
        let polys: [&[i128]; 5] = [
            &[0, -1, 0, 1],
            &[42, 0, 0, 1],
            &[1, 0, 0, 1],
            &[-2, 5, -3, 4],
            &[7, 1, 1],
        ];
        for f in polys {
            for q in [67u64, 71, 101, 103, 1009, 7919] {
                assert_eq!(count_distinct_roots(f, q), brute(f, q), "{f:?} mod {q}");
            }
        }
    }

    #[test]
    fn quadratic_roots() {
        assert!(quadratic_has_root(1, 0, -2, 7)); // 3² = 2
        assert!(!quadratic_has_root(1, 0, -3, 7));
        assert!(quadratic_has_root(1, 1, 0, 2));
        assert!(!quadratic_has_root(1, 1, 1, 2));
        assert!(quadratic_has_root(0, 3, 1, 5));
    }
}
