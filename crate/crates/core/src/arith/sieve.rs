//! Segmented sieve of Eratosthenes over odd integers.
//!
//! Each segment covers [`SEGMENT_ODDS`] odd integers, so memory use does not
//! depend on the bound. A residue filter `q ≡ 1 (mod p)` is applied after
//! sieving. Disjoint ranges can be handed to independent engines.

use alloc::vec;
use alloc::vec::Vec;

/// Odd integers covered by one sieve segment.
pub const SEGMENT_ODDS: u64 = 1 << 20;

/// Width (in integers) of one segment.
pub const SEGMENT_SPAN: u64 = 2 * SEGMENT_ODDS;

/// Keeps only primes `q` with `q ≡ 1 (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueFilter {
    pub modulus: u64,
}

impl ResidueFilter {
    pub fn one_mod(modulus: u64) -> Self {
        Self { modulus }
    }

    #[inline]
    pub fn accepts(&self, q: u64) -> bool {
        q % self.modulus == 1
    }
}

/// Streams the primes in `[lo, hi]` in increasing order.
#[derive(Debug, Clone)]
pub struct PrimeEngine {
    hi: u64,
    filter: Option<ResidueFilter>,
    base: Vec<u64>,
    emit_two: bool,
    /// First odd integer of the current segment.
    seg_start: u64,
    /// Bit i set means `seg_start + 2i` is composite.
    marks: Vec<u64>,
    seg_len: u64,
    cursor: u64,
    exhausted: bool,
}

/// Odd primes up to `limit` by a plain sieve; used as sieving primes.
pub fn small_odd_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = (limit as usize - 1) / 2; // index i ↔ 2i + 1, i in 1..=n
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    let mut i = 1;
    while i <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            out.push(p as u64);
            let mut j = (p * p - 1) / 2;
            while j <= n {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl PrimeEngine {
    /// All primes `≤ bound`.
    pub fn new(bound: u64) -> Self {
        Self::range(0, bound, None)
    }

    /// Primes `≤ bound` that are `≡ 1 (mod modulus)`.
    pub fn filtered(bound: u64, modulus: u64) -> Self {
        Self::range(0, bound, Some(ResidueFilter::one_mod(modulus)))
    }

    /// Primes in the closed interval `[lo, hi]`.
    pub fn range(lo: u64, hi: u64, filter: Option<ResidueFilter>) -> Self {
        let emit_two = lo <= 2 && hi >= 2 && filter.is_none_or(|f| f.accepts(2));
        let first_odd = if lo <= 3 { 3 } else { lo | 1 };
        let base = if hi >= 9 {
            small_odd_primes(isqrt(hi))
        } else {
            Vec::new()
        };
        let mut engine = Self {
            hi,
            filter,
            base,
            emit_two,
            seg_start: first_odd,
            marks: Vec::new(),
            seg_len: 0,
            cursor: 0,
            exhausted: first_odd > hi,
        };
        if !engine.exhausted {
            engine.fill_segment();
        }
        engine
    }

    fn fill_segment(&mut self) {
        let start = self.seg_start;
        let last = core::cmp::min(self.hi, start + 2 * (SEGMENT_ODDS - 1));
        let len = (last - start) / 2 + 1;
        let words = len.div_ceil(64) as usize;
        self.marks.clear();
        self.marks.resize(words, 0);
        for &p in &self.base {
            let p2 = p * p;
            if p2 > last {
                break;
            }
            // first odd multiple of p that is ≥ max(start, p²)
            let mut m = if p2 >= start {
                p2
            } else {
                let r = start.div_ceil(p) * p;
                if r & 1 == 0 {
                    r + p
                } else {
                    r
                }
            };
            while m <= last {
                let idx = (m - start) / 2;
                self.marks[(idx / 64) as usize] |= 1 << (idx % 64);
                m += 2 * p;
            }
        }
        self.seg_len = len;
        self.cursor = 0;
    }
}

impl Iterator for PrimeEngine {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.emit_two {
            self.emit_two = false;
            return Some(2);
        }
        loop {
            if self.exhausted {
                return None;
            }
            while self.cursor < self.seg_len {
                let word = (self.cursor / 64) as usize;
                let bits = !self.marks[word] >> (self.cursor % 64);
                if bits == 0 {
                    self.cursor = (self.cursor / 64 + 1) * 64;
                    continue;
                }
                let idx = self.cursor + bits.trailing_zeros() as u64;
                if idx >= self.seg_len {
                    self.cursor = self.seg_len;
                    break;
                }
                self.cursor = idx + 1;
                let q = self.seg_start + 2 * idx;
                if self.filter.is_none_or(|f| f.accepts(q)) {
                    return Some(q);
                }
            }
            let next_start = self.seg_start + SEGMENT_SPAN;
            if next_start > self.hi || next_start < self.seg_start {
                self.exhausted = true;
                return None;
            }
            self.seg_start = next_start;
            self.fill_segment();
        }
    }
}

/// Primes `≤ bound`, optionally restricted to `q ≡ 1 (mod p)`.
pub fn primes_up_to(bound: u64, filter: Option<ResidueFilter>) -> PrimeEngine {
    PrimeEngine::range(0, bound, filter)
}

/// π(x).
pub fn prime_count(bound: u64) -> u64 {
    PrimeEngine::new(bound).count() as u64
}

/// Splits `[1, bound]` into consecutive closed ranges of one segment each.
/// The partition depends only on `bound`.
pub fn segment_ranges(bound: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = 1;
    while lo <= bound {
        let hi = core::cmp::min(bound, lo + SEGMENT_SPAN - 1);
        out.push((lo, hi));
        if hi == bound {
            break;
        }
        lo = hi + 1;
    }
    out
}
