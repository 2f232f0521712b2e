//! Kida's formula, λ-stability, the Euler characteristic, and the Selmer
//! growth criterion for `Z/pZ`-extensions.
//!
//! Ranks, μ, λ, torsion and finiteness of Ш are hypotheses supplied by the
//! caller through [`IwasawaAssumptions`]; only the local conditions are
//! computed here.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::arith::modp::is_prime;
use crate::arith::points::count_points;
use crate::classify::{build_p1_p2, Classifier};
use crate::curve::EllipticCurve;
use crate::error::{Error, Result};
use crate::extensions::ExtensionProfile;
use crate::local::{bad_primes, tate_algorithm, Kodaira, ReductionType};

/// A hypothesis that the caller has not granted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Assumption {
    RankZero,
    TorsionPTrivial,
    MuZero,
    LambdaZero,
    ShaFiniteOverL,
    GoodOrdinaryAtP,
    ResidualSurjective,
}

impl fmt::Display for Assumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Assumption::RankZero => "rank E(Q) = 0",
            Assumption::TorsionPTrivial => "E(Q)[p^inf] = 0",
            Assumption::MuZero => "mu(E/Q) = 0",
            Assumption::LambdaZero => "lambda(E/Q) = 0",
            Assumption::ShaFiniteOverL => "Sha(E/L)[p^inf] finite",
            Assumption::GoodOrdinaryAtP => "good ordinary reduction at p",
            Assumption::ResidualSurjective => "surjective residual representation",
        })
    }
}

/// Hypotheses the criteria consume; none of them is verified here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IwasawaAssumptions {
    pub rank_zero: bool,
    pub torsion_p_trivial: bool,
    pub mu_zero: bool,
    pub lambda_q: u64,
    pub sha_finite_over_l: bool,
    pub good_ordinary_at_p: bool,
    pub residual_surjective: bool,
}

impl IwasawaAssumptions {
    /// Every hypothesis granted, `λ(E/Q) = 0`.
    pub fn all() -> Self {
        Self {
            rank_zero: true,
            torsion_p_trivial: true,
            mu_zero: true,
            lambda_q: 0,
            sha_finite_over_l: true,
            good_ordinary_at_p: true,
            residual_surjective: true,
        }
    }

    /// Nothing granted.
    pub fn none() -> Self {
        Self {
            rank_zero: false,
            torsion_p_trivial: false,
            mu_zero: false,
            lambda_q: 0,
            sha_finite_over_l: false,
            good_ordinary_at_p: false,
            residual_surjective: false,
        }
    }

    fn require(&self, needed: &[Assumption]) -> Result<()> {
        for &a in needed {
            let ok = match a {
                Assumption::RankZero => self.rank_zero,
                Assumption::TorsionPTrivial => self.torsion_p_trivial,
                Assumption::MuZero => self.mu_zero,
                Assumption::LambdaZero => self.lambda_q == 0,
                Assumption::ShaFiniteOverL => self.sha_finite_over_l,
                Assumption::GoodOrdinaryAtP => self.good_ordinary_at_p,
                Assumption::ResidualSurjective => self.residual_surjective,
            };
            if !ok {
                return Err(Error::AssumptionViolated(a));
            }
        }
        Ok(())
    }
}

/// `λ(E/L) = p·λ(E/Q) + Σ_{P1}(e − 1) + 2·Σ_{P2}(e − 1)`, given the
/// ramification indices of the primes in `P1` and `P2`.
pub fn kida_lambda(lambda_q: u64, p: u64, p1: &[u64], p2: &[u64]) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    if p < 5 {
        return Err(Error::SmallPrime { q: p });
    }
    for &e in p1.iter().chain(p2) {
        if e != 1 && e != p {
            return Err(Error::InvalidIndex { e, p });
        }
    }
    let s1: u64 = p1.iter().map(|e| e - 1).sum();
    let s2: u64 = p2.iter().map(|e| e - 1).sum();
    Ok(p * lambda_q + s1 + 2 * s2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    /// No ramified prime is an enemy, so `μ(E/L) = λ(E/L) = 0` and
    /// `rank E(L) = 0`.
    Stable,
    /// The ramified enemy primes and `λ(E/L)` from Kida's formula.
    Jump { split_mult: BTreeSet<u64>, good: BTreeSet<u64>, lambda_l: u64 },
}

impl Stability {
    pub fn enemy_primes(&self) -> BTreeSet<u64> {
        match self {
            Stability::Stable => BTreeSet::new(),
            Stability::Jump { split_mult, good, .. } => split_mult.union(good).copied().collect(),
        }
    }
}

fn check_profile(p: u64, profile: &ExtensionProfile) -> Result<()> {
    if profile.degree() != p {
        return Err(Error::InvalidInput(alloc::format!(
            "extension has degree {}, expected {p}",
            profile.degree()
        )));
    }
    if !profile.disjoint_from_cyclotomic() {
        return Err(Error::EmptyRamification);
    }
    Ok(())
}

/// Whether `λ` stays zero in the extension: true exactly when no ramified
/// prime is an enemy prime.
pub fn lambda_stable(
    curve: &EllipticCurve,
    p: u64,
    profile: &ExtensionProfile,
    assumptions: &IwasawaAssumptions,
) -> Result<Stability> {
    if p < 5 {
        return Err(Error::SmallPrime { q: p });
    }
    assumptions.require(&[
        Assumption::RankZero,
        Assumption::MuZero,
        Assumption::LambdaZero,
        Assumption::GoodOrdinaryAtP,
    ])?;
    check_profile(p, profile)?;
    let (split_mult, good) = build_p1_p2(curve, p, profile)?;
    if split_mult.is_empty() && good.is_empty() {
        return Ok(Stability::Stable);
    }
    let e1: Vec<u64> = split_mult.iter().map(|&q| profile.ramification_index(q)).collect();
    let e2: Vec<u64> = good.iter().map(|&q| profile.ramification_index(q)).collect();
    let lambda_l = kida_lambda(0, p, &e1, &e2)?;
    Ok(Stability::Jump { split_mult, good, lambda_l })
}

/// p-parts of the factors in the Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EulerComponents {
    pub sha_order_p_part: u64,
    pub tamagawa_p_parts: Vec<u64>,
    /// `#Ẽ(k_v)[p^∞]` for each `v | p`.
    pub reduction_torsion_p_parts: Vec<u64>,
    pub torsion_p_part: u64,
}

fn p_adic_exponent(value: u64, p: u64) -> Result<i64> {
    if value == 0 {
        return Err(Error::NotPowerOfP { value, p });
    }
    let (mut v, mut e) = (value, 0);
    while v % p == 0 {
        v /= p;
        e += 1;
    }
    if v != 1 {
        return Err(Error::NotPowerOfP { value, p });
    }
    Ok(e)
}

/// `χ = #Ш[p^∞] · ∏ c_v^{(p)} · ∏_{v|p} (#Ẽ(k_v)[p^∞])² / (#E(L)[p^∞])²`.
pub fn euler_characteristic(components: &EulerComponents, p: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    let mut exponent = p_adic_exponent(components.sha_order_p_part, p)?;
    for &c in &components.tamagawa_p_parts {
        exponent += p_adic_exponent(c, p)?;
    }
    for &r in &components.reduction_torsion_p_parts {
        exponent += 2 * p_adic_exponent(r, p)?;
    }
    exponent -= 2 * p_adic_exponent(components.torsion_p_part, p)?;
    if exponent < 0 {
        return Err(Error::NonIntegral { exponent });
    }
    Ok(BigUint::from(p).pow(exponent as u32))
}

/// `χ = 1` holds exactly when `μ(E/L) = λ(E/L) = 0`.
pub fn chi_one_equivalence(mu_zero: bool, lambda_zero: bool) -> bool {
    mu_zero && lambda_zero
}

/// Why the Selmer growth criterion does not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotMetReason {
    /// No ramified `ℓ ≠ p` of good reduction with `p | #Ẽ(F_ℓ)`.
    NoQualifyingPrime,
    /// A ramified prime of bad reduction has Kodaira type `I_m`.
    MultiplicativeAt { l: u64, kodaira: Kodaira },
}

impl fmt::Display for NotMetReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotMetReason::NoQualifyingPrime => {
                f.write_str("no ramified prime of good reduction with p | #E(F_l)")
            }
            NotMetReason::MultiplicativeAt { l, kodaira } => {
                write!(f, "ramified prime {l} has Kodaira type {kodaira}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LkrVerdict {
    /// `Sel_{p^∞}(E/Q) = Ш(E/Q)[p^∞] = 0`, while `Sel_{p^∞}(E/L) ≠ 0`:
    /// `rank E(L) > 0` or `Ш(E/L)[p^∞] ≠ 0`. `witnesses` are the ramified
    /// primes satisfying the local point condition.
    SelmerBecomesNonzero { witnesses: BTreeSet<u64> },
    CriterionNotMet(Vec<NotMetReason>),
}

/// Caveats attached to an otherwise valid run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Warning {
    /// `p = 3`: Kida's formula, used elsewhere, needs `p ≥ 5`.
    DegreeThree,
    /// The curve does not have good ordinary reduction at `p`, which the
    /// criterion presupposes.
    NotGoodOrdinaryAtP { ap: Option<i64> },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::DegreeThree => f.write_str("p = 3: Kida's formula requires p >= 5"),
            Warning::NotGoodOrdinaryAtP { ap: Some(a) } => {
                write!(f, "reduction at p is supersingular (a_p = {a}), not good ordinary")
            }
            Warning::NotGoodOrdinaryAtP { ap: None } => {
                f.write_str("bad reduction at p, not good ordinary")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LkrReport {
    pub verdict: LkrVerdict,
    pub warnings: Vec<Warning>,
}

/// Reduction at `p` is good and `p ∤ a_p`. Returns `a_p` when good.
pub fn good_ordinary_at(curve: &EllipticCurve, p: u64) -> Result<(bool, Option<i64>)> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if tate_algorithm(curve, p)?.reduction != ReductionType::Good {
        return Ok((false, None));
    }
    let ap = p as i64 + 1 - count_points(curve, p)? as i64;
    Ok((ap % p as i64 != 0, Some(ap)))
}

/// The Selmer growth criterion for an odd prime `p` and a `Z/pZ`-extension
/// disjoint from the cyclotomic `Z_p`-extension.
///
/// Conditions on rank, torsion, μ, λ and Ш come from `assumptions`; the
/// local point condition and the Kodaira condition at ramified primes are
/// computed.
pub fn lkr_check(
    curve: &EllipticCurve,
    p: u64,
    profile: &ExtensionProfile,
    assumptions: &IwasawaAssumptions,
) -> Result<LkrReport> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime { value: p });
    }
    check_profile(p, profile)?;
    assumptions.require(&[
        Assumption::RankZero,
        Assumption::TorsionPTrivial,
        Assumption::MuZero,
        Assumption::LambdaZero,
        Assumption::ShaFiniteOverL,
    ])?;

    let mut warnings = Vec::new();
    if p == 3 {
        warnings.push(Warning::DegreeThree);
    }
    let (ordinary, ap) = good_ordinary_at(curve, p)?;
    if !ordinary {
        warnings.push(Warning::NotGoodOrdinaryAtP { ap });
    }

    let bad = bad_primes(curve)?;
    let mut witnesses = BTreeSet::new();
    let mut reasons = Vec::new();
    for &l in profile.ramified_primes() {
        match bad.iter().find(|d| d.prime == l) {
            None => {
                if l != 2 && count_points(curve, l)? % p == 0 {
                    witnesses.insert(l);
                }
            }
            Some(d) => {
                if let Kodaira::I(_) = d.kodaira {
                    reasons.push(NotMetReason::MultiplicativeAt { l, kodaira: d.kodaira });
                }
            }
        }
    }
    if witnesses.is_empty() {
        reasons.insert(0, NotMetReason::NoQualifyingPrime);
    }
    let verdict = if reasons.is_empty() {
        LkrVerdict::SelmerBecomesNonzero { witnesses }
    } else {
        LkrVerdict::CriterionNotMet(reasons)
    };
    Ok(LkrReport { verdict, warnings })
}

/// Whether some ramified prime is an enemy prime for `p`.
pub fn has_ramified_enemy(curve: &EllipticCurve, p: u64, profile: &ExtensionProfile) -> Result<bool> {
    let c = Classifier::new(curve, p)?;
    for &q in profile.ramified_primes() {
        if c.classify(q)?.verdict.is_enemy() {
            return Ok(true);
        }
    }
    Ok(false)
}
