//! Word-sized arithmetic modulo an odd prime.
//!
//! Moduli are capped at 2^32 so that every product of two reduced residues
//! fits in a `u64`.

/// Largest modulus accepted by the field helpers.
pub const FIELD_CAP: u64 = u32::MAX as u64;

#[inline]
pub fn mul(a: u64, b: u64, q: u64) -> u64 {
    debug_assert!(a < q && b < q && q <= FIELD_CAP);
    a * b % q
}

#[inline]
pub fn add(a: u64, b: u64, q: u64) -> u64 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, q: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[inline]
pub fn neg(a: u64, q: u64) -> u64 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

/// Reduces an arbitrary signed integer into `[0, q)`.
#[inline]
pub fn reduce(a: i128, q: u64) -> u64 {
    a.rem_euclid(q as i128) as u64
}

pub fn pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, q);
        }
        base = mul(base, base, q);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `q`; `None` when `a ≡ 0`.
pub fn inv(a: u64, q: u64) -> Option<u64> {
    let a = a % q;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (q as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(q as i64) as u64)
}

/// Jacobi symbol (a/n) for odd positive `n`.
pub fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n & 1 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz & 1 == 1 && matches!(n & 7, 3 | 5) {
            sign = -sign;
        }
        if a & 3 == 3 && n & 3 == 3 {
            sign = -sign;
        }
        core::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Quadratic residue symbol of an arbitrary integer modulo the odd prime `q`.
pub fn legendre_symbol(a: i128, q: u64) -> i8 {
    jacobi(reduce(a, q), q)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulw = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let poww = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulw(acc, b);
            }
            b = mulw(b, b);
            e >>= 1;
        }
        acc
    };
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = poww(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulw(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_mod_7() {
        assert_eq!(legendre_symbol(0, 7), 0);
        assert_eq!(legendre_symbol(2, 7), 1);
        assert_eq!(legendre_symbol(3, 7), -1);
        assert_eq!(legendre_symbol(-1, 7), -1);
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        for q in [3u64, 5, 7, 11, 13, 101, 65537] {
            for a in 0..q.min(500) {
                let e = pow(a, (q - 1) / 2, q);
                let expected = match e {
                    0 => 0,
                    1 => 1,
                    _ => -1,
                };
                assert_eq!(jacobi(a, q), expected, "a={a} q={q}");
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let q = 1_000_003;
        for a in 1..2000 {
            assert_eq!(mul(a, inv(a, q).unwrap(), q), 1);
        }
        assert_eq!(inv(0, q), None);
    }

    #[test]
    fn miller_rabin_small() {
        let naive = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime(n), naive(n), "{n}");
        }
        assert!(is_prime(179_424_673));
        assert!(!is_prime(3_215_031_751));
    }
}
