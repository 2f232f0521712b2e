use alloc::string::String;

use crate::iwasawa::Assumption;

/// Errors raised by the arithmetic and criteria layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("curve is singular (discriminant is zero)")]
    SingularCurve,
    #[error("invariant computation overflowed 128-bit integers")]
    Overflow,
    #[error("{q} is a prime of bad reduction")]
    BadReductionPrime { q: u64 },
    #[error("the prime 2 is not supported here")]
    EvenPrime,
    #[error("{q} is too small for this operation")]
    SmallPrime { q: u64 },
    #[error("{value} is not prime")]
    NotPrime { value: u64 },
    #[error("{what}: {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("reduction at {l} is not multiplicative")]
    NotMultiplicative { l: u64 },
    #[error("{l} equals the degree prime; base change would be wildly ramified")]
    WildRamification { l: u64 },
    #[error("q must differ from p (both are {p})")]
    SamePrime { p: u64 },
    #[error("no Z/{p}Z-extension of Q has conductor {q}")]
    NoSuchExtension { p: u64, q: u64 },
    #[error("extension profile has no ramified primes")]
    EmptyRamification,
    #[error("ramification index {e} is neither 1 nor {p}")]
    InvalidIndex { e: u64, p: u64 },
    #[error("assumption violated: {0}")]
    AssumptionViolated(Assumption),
    #[error("Euler characteristic is not a power-of-p integer (p-adic exponent {exponent})")]
    NonIntegral { exponent: i64 },
    #[error("component {value} is not a power of {p}")]
    NotPowerOfP { value: u64, p: u64 },
    #[error("prime {q} listed twice")]
    DuplicatePrime { q: u64 },
    #[error("{q} divides N*p")]
    RamifiedOrBadPrime { q: u64 },
    #[error("E(F)[p] has F_p-rank at most 2, got {rank}")]
    InvalidTorsionRank { rank: u32 },
    #[error("argument outside the domain: {0}")]
    DomainError(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
