//! Cyclic degree-p extensions of Q described only by ramification data.
//!
//! A prime `q ≠ p` can ramify in a `Z/pZ`-extension only when `q ≡ 1 (mod p)`;
//! such an extension ramified at `q` alone is the degree-p subfield of
//! `Q(μ_q)`. When nothing but `p` ramifies the field is the first layer of
//! the cyclotomic `Z_p`-extension.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arith::modp::is_prime;
use crate::arith::sieve::primes_up_to;
use crate::arith::ResidueFilter;
use crate::error::{Error, Result};

/// How a prime of Q behaves in the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decomposition {
    Split,
    Inert,
    Ramified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionProfile {
    p: u64,
    ramified: BTreeSet<u64>,
    p_ramified: bool,
    /// Known behaviour of unramified primes.
    unramified: BTreeMap<u64, Decomposition>,
}

impl ExtensionProfile {
    /// Profile of a degree-`p` cyclic extension ramified at `ramified` (and at
    /// `p` when `p_ramified`). For `p = 2` every odd prime may ramify.
    pub fn new(p: u64, ramified: impl IntoIterator<Item = u64>, p_ramified: bool) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { value: p });
        }
        let mut set = BTreeSet::new();
        for q in ramified {
            if !is_prime(q) {
                return Err(Error::NotPrime { value: q });
            }
            if q == p {
                return Err(Error::SamePrime { p });
            }
            if q % p != 1 {
                return Err(Error::NoSuchExtension { p, q });
            }
            if !set.insert(q) {
                return Err(Error::DuplicatePrime { q });
            }
        }
        Ok(Self {
            p,
            ramified: set,
            p_ramified,
            unramified: BTreeMap::new(),
        })
    }

    /// Records whether an unramified prime splits or stays inert.
    pub fn with_decomposition(mut self, l: u64, d: Decomposition) -> Result<Self> {
        let ramified_here = self.ramified.contains(&l) || (l == self.p && self.p_ramified);
        if ramified_here != (d == Decomposition::Ramified) {
            return Err(Error::InvalidInput(alloc::format!(
                "decomposition of {l} contradicts the ramification data"
            )));
        }
        if d != Decomposition::Ramified {
            self.unramified.insert(l, d);
        }
        Ok(self)
    }

    pub fn degree(&self) -> u64 {
        self.p
    }

    /// Ramified primes other than `p`.
    pub fn ramified_primes(&self) -> &BTreeSet<u64> {
        &self.ramified
    }

    pub fn p_ramified(&self) -> bool {
        self.p_ramified
    }

    /// `e` at `l`: `p` if `l` ramifies, else 1.
    pub fn ramification_index(&self, l: u64) -> u64 {
        if self.ramified.contains(&l) || (l == self.p && self.p_ramified) {
            self.p
        } else {
            1
        }
    }

    /// Behaviour of `l`, or `None` for an unramified prime not recorded.
    pub fn decomposition(&self, l: u64) -> Option<Decomposition> {
        if self.ramification_index(l) > 1 {
            Some(Decomposition::Ramified)
        } else {
            self.unramified.get(&l).copied()
        }
    }

    /// Some prime other than `p` ramifies, so the field is not the first
    /// cyclotomic layer.
    pub fn disjoint_from_cyclotomic(&self) -> bool {
        !self.ramified.is_empty()
    }

    /// Conductor `∏ q · p²` (the `p²` only when `p` ramifies).
    pub fn conductor(&self) -> BigUint {
        let mut f: BigUint = self.ramified.iter().map(|&q| BigUint::from(q)).product();
        if self.p_ramified {
            f *= BigUint::from(self.p * self.p);
        }
        f
    }
}

/// The degree-`p` subfield of `Q(μ_q)`, the only `Z/pZ`-extension of
/// conductor `q`.
pub fn unique_extension_of_conductor_q(p: u64, q: u64) -> Result<ExtensionProfile> {
    if !is_prime(q) {
        return Err(Error::NotPrime { value: q });
    }
    if q == p || q % p != 1 {
        return Err(Error::NoSuchExtension { p, q });
    }
    ExtensionProfile::new(p, [q], false)
}

/// `d(L/Q) = ∏ q^{p−1}`, times `p^{2(p−1)}` when `p` ramifies.
pub fn discriminant(profile: &ExtensionProfile) -> Result<BigUint> {
    if profile.ramified.is_empty() {
        return Err(Error::EmptyRamification);
    }
    let p = profile.p;
    let e = (p - 1) as u32;
    let mut d = BigUint::from(1u32);
    for &q in &profile.ramified {
        d *= BigUint::from(q).pow(e);
    }
    if profile.p_ramified {
        d *= BigUint::from(p).pow(2 * e);
    }
    Ok(d)
}

/// Conductors `≤ x` of `Z/pZ`-extensions ramified at some prime other than
/// `p`: squarefree products of primes `≡ 1 (mod p)`, optionally times `p²`.
pub fn enumerate_conductors(p: u64, x: u64) -> Vec<u64> {
    let primes: Vec<u64> = primes_up_to(x, Some(ResidueFilter::one_mod(p)))
        .filter(|&q| q != p)
        .collect();
    let mut out = Vec::new();
    // depth-first over increasing prime indices
    let mut stack: Vec<(usize, u64)> = primes.iter().copied().enumerate().collect();
    while let Some((i, n)) = stack.pop() {
        out.push(n);
        for (j, &q) in primes.iter().enumerate().skip(i + 1) {
            match n.checked_mul(q) {
                Some(m) if m <= x => stack.push((j, m)),
                _ => break,
            }
        }
    }
    let p2 = p * p;
    let with_p: Vec<u64> = out
        .iter()
        .filter_map(|&n| n.checked_mul(p2).filter(|&m| m <= x))
        .collect();
    out.extend(with_p);
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn conductor_q_extensions() {
        let l = unique_extension_of_conductor_q(5, 31).unwrap();
        assert_eq!(l.ramified_primes().iter().copied().collect::<Vec<_>>(), vec![31]);
        assert!(!l.p_ramified());
        assert!(l.disjoint_from_cyclotomic());
        assert_eq!(l.ramification_index(31), 5);
        assert_eq!(l.ramification_index(11), 1);
        assert_eq!(unique_extension_of_conductor_q(5, 7), Err(Error::NoSuchExtension { p: 5, q: 7 }));
        assert!(unique_extension_of_conductor_q(7, 29).is_ok());
    }

    #[test]
    fn discriminants() {
        let l = ExtensionProfile::new(5, [11], false).unwrap();
        assert_eq!(discriminant(&l).unwrap(), BigUint::from(14641u32));
        let l = ExtensionProfile::new(5, [11], true).unwrap();
        assert_eq!(discriminant(&l).unwrap(), BigUint::from(14641u64 * 390625));
        let l = ExtensionProfile::new(3, [7, 13], false).unwrap();
        assert_eq!(discriminant(&l).unwrap(), BigUint::from(8281u32));
        let cyc = ExtensionProfile::new(5, [], true).unwrap();
        assert!(!cyc.disjoint_from_cyclotomic());
        assert_eq!(discriminant(&cyc), Err(Error::EmptyRamification));
    }

    #[test]
    fn profile_validation() {
        assert_eq!(ExtensionProfile::new(5, [7], false), Err(Error::NoSuchExtension { p: 5, q: 7 }));
        assert_eq!(ExtensionProfile::new(5, [11, 11], false), Err(Error::DuplicatePrime { q: 11 }));
        assert!(ExtensionProfile::new(2, [5, 7], false).is_ok());
        let l = ExtensionProfile::new(5, [11], false)
            .unwrap()
            .with_decomposition(31, Decomposition::Inert)
            .unwrap();
        assert_eq!(l.decomposition(31), Some(Decomposition::Inert));
        assert_eq!(l.decomposition(11), Some(Decomposition::Ramified));
        assert_eq!(l.decomposition(41), None);
        assert!(l.with_decomposition(11, Decomposition::Split).is_err());
    }

    #[test]
    fn conductor_enumeration() {
        assert_eq!(enumerate_conductors(5, 50), vec![11, 31, 41]);
        assert!(enumerate_conductors(7, 28).is_empty());
        let c = enumerate_conductors(5, 11 * 31);
        assert!(c.contains(&341));
        assert!(c.contains(&275)); // 11 · 25
        assert!(!c.contains(&25));
        assert!(c.windows(2).all(|w| w[0] < w[1]));
    }
}
