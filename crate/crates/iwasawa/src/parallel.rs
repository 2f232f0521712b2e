//! Scans over `q ≤ X` split into the fixed segments of the prime engine and
//! run on a rayon pool. Partial results are combined in segment order, so
//! the output does not depend on the number of workers.

use rayon::prelude::*;

use iwasawa_core::arith::sieve::segment_ranges;
use iwasawa_core::classify::{check_scan_bound, Classifier, ScanReport};
use iwasawa_core::densities::{CojocaruReport, CojocaruScanner, DensityResult, ExpressionAccumulator};
use iwasawa_core::{EllipticCurve, Result};

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
}

/// Verdict counts for all `q ≤ x`.
pub fn scan_proportions(curve: &EllipticCurve, p: u64, x: u64, workers: usize) -> Result<ScanReport> {
    check_scan_bound(x)?;
    let c = Classifier::new(curve, p)?;
    let parts: Vec<ScanReport> = pool(workers).install(|| {
        segment_ranges(x)
            .par_iter()
            .map(|&(lo, hi)| c.scan_range(lo, hi))
            .collect::<Result<_>>()
    })?;
    let mut total = ScanReport::empty(p, x);
    for part in parts {
        total += part;
    }
    total.x = x;
    Ok(total)
}

/// Proportion of `q ≤ x`, `q ∤ pN`, with `p | #Ẽ(F_q)`.
pub fn cojocaru_scan(curve: &EllipticCurve, p: u64, x: u64, workers: usize) -> Result<CojocaruReport> {
    check_scan_bound(x)?;
    let s = CojocaruScanner::new(curve, p)?;
    let parts: Vec<CojocaruReport> = pool(workers).install(|| {
        segment_ranges(x)
            .par_iter()
            .map(|&(lo, hi)| s.scan_range(lo, hi))
            .collect::<Result<_>>()
    })?;
    let mut total = CojocaruReport { p, x, ..Default::default() };
    for part in &parts {
        total.merge(part);
    }
    total.x = x;
    Ok(total)
}

/// The rank-zero expression for each of `primes`, one sieve pass over
/// `[1, x]`.
pub fn rank_zero_expressions(primes: &[u64], x: u64, workers: usize) -> Result<Vec<DensityResult>> {
    let empty = ExpressionAccumulator::new(primes)?;
    let parts: Vec<ExpressionAccumulator> = pool(workers).install(|| {
        segment_ranges(x)
            .par_iter()
            .map(|&(lo, hi)| {
                let mut acc = empty.clone();
                acc.absorb_range(lo, hi);
                acc
            })
            .collect()
    });
    let mut total = empty;
    for part in &parts {
        total.merge(part);
    }
    Ok(total.finish(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let e = EllipticCurve::new(0, 0, 0, 0, 42).unwrap();
        let x = 5_000_000;
        let seq = iwasawa_core::classify::scan_proportions(&e, 5, x).unwrap();
        assert_eq!(scan_proportions(&e, 5, x, 3).unwrap(), seq);
        let seq = iwasawa_core::densities::cojocaru_scan(&e, 5, x).unwrap();
        assert_eq!(cojocaru_scan(&e, 5, x, 2).unwrap(), seq);
    }

    #[test]
    fn expression_is_independent_of_workers() {
        let ps = [3, 5, 7];
        let a = rank_zero_expressions(&ps, 9_000_000, 1).unwrap();
        let b = rank_zero_expressions(&ps, 9_000_000, 4).unwrap();
        assert_eq!(a, b);
    }
}
