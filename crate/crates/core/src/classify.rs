//! Enemy, friendly and neutral primes.
//!
//! Fix a prime `p ≥ 5`. A prime `q ≡ 1 (mod p)` is an *enemy* if `E` has
//! split multiplicative reduction at `q`, or good reduction with
//! `p | #Ẽ(F_q)`; it is *friendly* if `E` has good reduction and
//! `p ∤ #Ẽ(F_q)`; the remaining bad primes are *neutral*. Ramifying an enemy
//! prime in a `Z/pZ`-extension forces the λ-invariant to grow.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::AddAssign;

use crate::arith::modp::is_prime;
use crate::arith::points::{count_points, POINT_COUNT_CAP};
use crate::arith::sieve::PrimeEngine;
use crate::curve::EllipticCurve;
use crate::error::{Error, Result};
use crate::extensions::{Decomposition, ExtensionProfile};
use crate::local::{bad_primes, LocalReductionData, ReductionType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    EnemySplitMult,
    EnemyOrdinary,
    FriendlyOrdinary,
    FriendlySupersingular,
    NeutralBad,
    NotCongruent,
}

impl Verdict {
    pub fn is_enemy(self) -> bool {
        matches!(self, Verdict::EnemySplitMult | Verdict::EnemyOrdinary)
    }

    pub fn is_friendly(self) -> bool {
        matches!(self, Verdict::FriendlyOrdinary | Verdict::FriendlySupersingular)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::EnemySplitMult => "enemy_split",
            Verdict::EnemyOrdinary => "enemy_ord",
            Verdict::FriendlyOrdinary => "friendly_ord",
            Verdict::FriendlySupersingular => "friendly_ss",
            Verdict::NeutralBad => "neutral",
            Verdict::NotCongruent => "not_congruent",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeClassification {
    pub q: u64,
    pub verdict: Verdict,
    /// `a_q` at primes of good reduction that were counted.
    pub aq: Option<i64>,
}

/// Classifies primes for a fixed curve and `p`, with the bad primes of the
/// curve computed once.
#[derive(Debug, Clone)]
pub struct Classifier<'a> {
    curve: &'a EllipticCurve,
    p: u64,
    bad: Vec<LocalReductionData>,
}

impl<'a> Classifier<'a> {
    pub fn new(curve: &'a EllipticCurve, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime { value: p });
        }
        if p < 5 {
            return Err(Error::SmallPrime { q: p });
        }
        Ok(Self {
            curve,
            p,
            bad: bad_primes(curve)?,
        })
    }

    pub fn curve(&self) -> &EllipticCurve {
        self.curve
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn bad_primes(&self) -> &[LocalReductionData] {
        &self.bad
    }

    pub fn local_data(&self, q: u64) -> Option<&LocalReductionData> {
        self.bad.iter().find(|d| d.prime == q)
    }

    /// Verdict for a prime `q ≠ p`.
    pub fn classify(&self, q: u64) -> Result<PrimeClassification> {
        let p = self.p;
        if q == p {
            return Err(Error::SamePrime { p });
        }
        if !is_prime(q) {
            return Err(Error::NotPrime { value: q });
        }
        if q % p != 1 {
            return Ok(PrimeClassification { q, verdict: Verdict::NotCongruent, aq: None });
        }
        if let Some(d) = self.local_data(q) {
            let verdict = if d.reduction == ReductionType::SplitMultiplicative {
                Verdict::EnemySplitMult
            } else {
                Verdict::NeutralBad
            };
            return Ok(PrimeClassification { q, verdict, aq: None });
        }
        let n = count_points(self.curve, q)?;
        let aq = q as i64 + 1 - n as i64;
        // q ≡ 1 (mod p) forces q ≥ 11, where a_q = 0 is supersingularity
        let verdict = match (n % p == 0, aq == 0) {
            (true, _) => Verdict::EnemyOrdinary,
            (false, false) => Verdict::FriendlyOrdinary,
            (false, true) => Verdict::FriendlySupersingular,
        };
        Ok(PrimeClassification { q, verdict, aq: Some(aq) })
    }

    /// Counts over the primes of `[lo, hi]` that are `≡ 1 (mod p)`.
    pub fn scan_range(&self, lo: u64, hi: u64) -> Result<ScanReport> {
        let mut report = ScanReport::empty(self.p, hi);
        report.pi_x = PrimeEngine::range(lo, hi, None).count() as u64;
        for q in PrimeEngine::range(lo, hi, Some(crate::arith::ResidueFilter::one_mod(self.p))) {
            report.record(self.classify(q)?.verdict);
        }
        Ok(report)
    }
}

/// Verdict for one prime.
pub fn classify_prime(curve: &EllipticCurve, p: u64, q: u64) -> Result<PrimeClassification> {
    Classifier::new(curve, p)?.classify(q)
}

/// Verdict counts over `q ≤ x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanReport {
    pub p: u64,
    pub x: u64,
    pub enemy_split: u64,
    pub enemy_ord: u64,
    pub friendly_ord: u64,
    pub friendly_ss: u64,
    pub neutral: u64,
    /// π(x).
    pub pi_x: u64,
}

impl ScanReport {
    pub fn empty(p: u64, x: u64) -> Self {
        Self { p, x, ..Self::default() }
    }

    fn record(&mut self, v: Verdict) {
        match v {
            Verdict::EnemySplitMult => self.enemy_split += 1,
            Verdict::EnemyOrdinary => self.enemy_ord += 1,
            Verdict::FriendlyOrdinary => self.friendly_ord += 1,
            Verdict::FriendlySupersingular => self.friendly_ss += 1,
            Verdict::NeutralBad => self.neutral += 1,
            Verdict::NotCongruent => {}
        }
    }

    pub fn enemies(&self) -> u64 {
        self.enemy_split + self.enemy_ord
    }

    pub fn friends(&self) -> u64 {
        self.friendly_ord + self.friendly_ss
    }

    /// Number of primes `q ≤ x` with `q ≡ 1 (mod p)`.
    pub fn congruent(&self) -> u64 {
        self.enemies() + self.friends() + self.neutral
    }

    fn fraction(&self, n: u64) -> f64 {
        if self.pi_x == 0 {
            0.0
        } else {
            n as f64 / self.pi_x as f64
        }
    }

    /// `#𝓔(x) / π(x)`.
    pub fn enemy_fraction(&self) -> f64 {
        self.fraction(self.enemies())
    }

    /// `#𝓕(x) / π(x)`.
    pub fn friendly_fraction(&self) -> f64 {
        self.fraction(self.friends())
    }

    pub fn neutral_fraction(&self) -> f64 {
        self.fraction(self.neutral)
    }
}

impl AddAssign for ScanReport {
    /// Adds counts of a disjoint range; keeps the larger bound.
    fn add_assign(&mut self, o: Self) {
        self.x = self.x.max(o.x);
        self.enemy_split += o.enemy_split;
        self.enemy_ord += o.enemy_ord;
        self.friendly_ord += o.friendly_ord;
        self.friendly_ss += o.friendly_ss;
        self.neutral += o.neutral;
        self.pi_x += o.pi_x;
    }
}

/// Scans above the point-counting cap are refused.
pub fn check_scan_bound(x: u64) -> Result<()> {
    if x > POINT_COUNT_CAP {
        return Err(Error::CapExceeded {
            what: "scan bound",
            value: x,
            cap: POINT_COUNT_CAP,
        });
    }
    Ok(())
}

/// Sequential scan of all `q ≤ x`.
pub fn scan_proportions(curve: &EllipticCurve, p: u64, x: u64) -> Result<ScanReport> {
    check_scan_bound(x)?;
    Classifier::new(curve, p)?.scan_range(1, x)
}

/// Ramified primes that are enemies: `P1` (split multiplicative) and `P2`
/// (good reduction with `p | #Ẽ(F_q)`). The prime `p` is ignored.
pub fn build_p1_p2(
    curve: &EllipticCurve,
    p: u64,
    profile: &ExtensionProfile,
) -> Result<(BTreeSet<u64>, BTreeSet<u64>)> {
    let c = Classifier::new(curve, p)?;
    let (mut p1, mut p2) = (BTreeSet::new(), BTreeSet::new());
    for &q in profile.ramified_primes() {
        match c.classify(q)?.verdict {
            Verdict::EnemySplitMult => {
                p1.insert(q);
            }
            Verdict::EnemyOrdinary => {
                p2.insert(q);
            }
            _ => {}
        }
    }
    Ok((p1, p2))
}

/// Primes `ℓ ≠ p` that are either ramified of good reduction with a local
/// point of order `p` (tested as `p | #Ẽ(F_ℓ)`), or inert of split
/// multiplicative reduction with `p | c_ℓ`.
pub fn build_t_set(curve: &EllipticCurve, p: u64, profile: &ExtensionProfile) -> Result<BTreeSet<u64>> {
    let bad = bad_primes(curve)?;
    let mut t = BTreeSet::new();
    for &l in profile.ramified_primes() {
        if l == p || bad.iter().any(|d| d.prime == l) {
            continue;
        }
        if count_points(curve, l)? % p == 0 {
            t.insert(l);
        }
    }
    for d in &bad {
        if d.prime != p
            && d.reduction == ReductionType::SplitMultiplicative
            && profile.decomposition(d.prime) == Some(Decomposition::Inert)
            && d.tamagawa % p == 0
        {
            t.insert(d.prime);
        }
    }
    Ok(t)
}
