//! Local data at a prime: reduction type, Kodaira symbol, Tamagawa number,
//! conductor exponent, and the tame base-change rule for these.

pub mod minimal;
mod tate;

use alloc::vec::Vec;
use core::fmt;

use crate::curve::EllipticCurve;
use crate::error::{Error, Result};
use crate::factor::prime_divisors;

pub use minimal::{global_minimal_model, minimal_model_at};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionType {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I0,
    /// `I_m`, `m ≥ 1`.
    I(u32),
    II,
    III,
    IV,
    /// `I_m*`, `m ≥ 0` (`IStar(0)` is `I0*`).
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => f.write_str("I0"),
            Kodaira::I(m) => write!(f, "I{m}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::IStar(m) => write!(f, "I{m}*"),
            Kodaira::IVStar => f.write_str("IV*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IIStar => f.write_str("II*"),
        }
    }
}

impl fmt::Display for ReductionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionType::Good => "good",
            ReductionType::SplitMultiplicative => "split multiplicative",
            ReductionType::NonsplitMultiplicative => "nonsplit multiplicative",
            ReductionType::Additive => "additive",
        })
    }
}

/// Local invariants of a minimal model at one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalReductionData {
    pub prime: u64,
    pub reduction: ReductionType,
    pub kodaira: Kodaira,
    pub tamagawa: u64,
    pub conductor_exponent: u32,
    /// Valuation of the minimal discriminant.
    pub disc_valuation: u32,
}

impl LocalReductionData {
    pub fn is_multiplicative(&self) -> bool {
        matches!(
            self.reduction,
            ReductionType::SplitMultiplicative | ReductionType::NonsplitMultiplicative
        )
    }
}

/// Runs Tate's algorithm at `l`.
pub fn tate_algorithm(curve: &EllipticCurve, l: u64) -> Result<LocalReductionData> {
    Ok(tate::run(curve, l)?.data)
}

/// Local data at every prime dividing the discriminant of `curve`.
pub fn bad_primes(curve: &EllipticCurve) -> Result<Vec<LocalReductionData>> {
    let mut out = Vec::new();
    for l in prime_divisors(curve.discriminant())? {
        let data = tate_algorithm(curve, l)?;
        if data.reduction != ReductionType::Good {
            out.push(data);
        }
    }
    Ok(out)
}

/// `N = ∏ ℓ^{f_ℓ}`.
pub fn conductor(curve: &EllipticCurve) -> Result<u128> {
    bad_primes(curve)?.iter().try_fold(1u128, |acc, d| {
        (d.prime as u128)
            .checked_pow(d.conductor_exponent)
            .and_then(|f| acc.checked_mul(f))
            .ok_or(Error::Overflow)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Nonsplit,
}

/// Whether the tangents at the node of the reduction are defined over F_ℓ.
pub fn split_vs_nonsplit(curve: &EllipticCurve, l: u64) -> Result<Splitting> {
    match tate_algorithm(curve, l)?.reduction {
        ReductionType::SplitMultiplicative => Ok(Splitting::Split),
        ReductionType::NonsplitMultiplicative => Ok(Splitting::Nonsplit),
        _ => Err(Error::NotMultiplicative { l }),
    }
}

/// Local data after base change to a tamely ramified extension of
/// ramification index `e` (totally ramified, so the residue field is kept).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseChange {
    pub prime: u64,
    pub ramification_index: u64,
    /// `None` where the new type depends on more than the old one (additive
    /// reduction at 2 or 3).
    pub reduction: Option<ReductionType>,
    pub kodaira: Option<Kodaira>,
    /// `None` for additive types whose component group is not determined.
    pub tamagawa: Option<u64>,
    /// `p`-part `|c|_p^{-1}` of the new Tamagawa number.
    pub tamagawa_p_part: u64,
}

fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// Kodaira type of potentially good reduction with `v(Δ_min) ≡ v (mod 12)`,
/// valid for residue characteristic ≥ 5.
fn potentially_good_type(v: u32) -> Kodaira {
    match v % 12 {
        0 => Kodaira::I0,
        2 => Kodaira::II,
        3 => Kodaira::III,
        4 => Kodaira::IV,
        6 => Kodaira::IStar(0),
        8 => Kodaira::IVStar,
        9 => Kodaira::IIIStar,
        10 => Kodaira::IIStar,
        _ => unreachable!("v(Δ) = {v} is not a potentially good valuation"),
    }
}

/// Base change of local data along a `Z/pZ`-extension with index `e ∈ {1, p}`
/// at a prime `ℓ ≠ p`.
pub fn base_change_kodaira(data: &LocalReductionData, e: u64, p: u64) -> Result<BaseChange> {
    if p < 5 {
        return Err(Error::SmallPrime { q: p });
    }
    if data.prime == p {
        return Err(Error::WildRamification { l: p });
    }
    if e != 1 && e != p {
        return Err(Error::InvalidIndex { e, p });
    }
    let keep = |kodaira, reduction, c: u64| BaseChange {
        prime: data.prime,
        ramification_index: e,
        reduction: Some(reduction),
        kodaira: Some(kodaira),
        tamagawa: Some(c),
        tamagawa_p_part: p_part(c, p),
    };
    if e == 1 {
        return Ok(keep(data.kodaira, data.reduction, data.tamagawa));
    }
    Ok(match (data.reduction, data.kodaira) {
        (ReductionType::Good, _) => keep(Kodaira::I0, ReductionType::Good, 1),
        (ReductionType::SplitMultiplicative, Kodaira::I(m)) => {
            let n = m as u64 * e;
            keep(Kodaira::I(n as u32), ReductionType::SplitMultiplicative, n)
        }
        (ReductionType::NonsplitMultiplicative, Kodaira::I(m)) => {
            // odd degree keeps the node nonsplit
            let n = m as u64 * e;
            let c = if n.is_multiple_of(2) { 2 } else { 1 };
            keep(Kodaira::I(n as u32), ReductionType::NonsplitMultiplicative, c)
        }
        (ReductionType::Additive, kodaira) => {
            let new_type = if data.prime < 5 {
                None
            } else {
                Some(match kodaira {
                    Kodaira::IStar(m) if m > 0 => Kodaira::IStar(m * e as u32),
                    _ => potentially_good_type(data.disc_valuation * e as u32),
                })
            };
            BaseChange {
                prime: data.prime,
                ramification_index: e,
                reduction: new_type.map(|k| {
                    if k == Kodaira::I0 {
                        ReductionType::Good
                    } else {
                        ReductionType::Additive
                    }
                }),
                kodaira: new_type,
                tamagawa: None,
                // additive component groups have order ≤ 4 < p
                tamagawa_p_part: 1,
            }
        }
        (r, k) => unreachable!("inconsistent local data {r:?} / {k:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> EllipticCurve {
        EllipticCurve::new(a[0], a[1], a[2], a[3], a[4]).unwrap()
    }

    #[test]
    fn curve_11a3() {
        let e = curve([0, -1, 1, 0, 0]);
        let d = tate_algorithm(&e, 11).unwrap();
        assert!(d.is_multiplicative());
        assert_eq!(d.conductor_exponent, 1);
        assert_eq!(d.kodaira, Kodaira::I(1));
        assert_eq!(conductor(&e).unwrap(), 11);
    }

    #[test]
    fn good_primes() {
        let e = curve([0, 0, 0, 0, 42]);
        assert_eq!(tate_algorithm(&e, 31).unwrap().reduction, ReductionType::Good);
        let f = curve([0, 0, 0, -1, 0]);
        let d = tate_algorithm(&f, 5).unwrap();
        assert_eq!((d.kodaira, d.tamagawa, d.conductor_exponent), (Kodaira::I0, 1, 0));
    }

    #[test]
    fn split_test_errors_off_multiplicative() {
        let f = curve([0, 0, 0, -1, 0]);
        assert_eq!(split_vs_nonsplit(&f, 5), Err(Error::NotMultiplicative { l: 5 }));
        assert_eq!(split_vs_nonsplit(&f, 2), Err(Error::NotMultiplicative { l: 2 }));
    }

    #[test]
    fn base_change_rules() {
        let i1 = LocalReductionData {
            prime: 11,
            reduction: ReductionType::SplitMultiplicative,
            kodaira: Kodaira::I(1),
            tamagawa: 1,
            conductor_exponent: 1,
            disc_valuation: 1,
        };
        let bc = base_change_kodaira(&i1, 5, 5).unwrap();
        assert_eq!((bc.kodaira, bc.tamagawa, bc.tamagawa_p_part), (Some(Kodaira::I(5)), Some(5), 5));

        let i2 = LocalReductionData {
            reduction: ReductionType::NonsplitMultiplicative,
            kodaira: Kodaira::I(2),
            tamagawa: 2,
            disc_valuation: 2,
            ..i1
        };
        let same = base_change_kodaira(&i2, 1, 7).unwrap();
        assert_eq!((same.kodaira, same.tamagawa), (Some(Kodaira::I(2)), Some(2)));

        let wild = LocalReductionData { prime: 5, ..i1 };
        assert_eq!(base_change_kodaira(&wild, 5, 5), Err(Error::WildRamification { l: 5 }));
        assert_eq!(base_change_kodaira(&i1, 3, 5), Err(Error::InvalidIndex { e: 3, p: 5 }));
    }
}
