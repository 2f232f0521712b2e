//! Prime-field arithmetic, point counting, and the prime engine.

pub mod modp;
pub mod points;
pub mod poly;
pub mod sieve;

pub use modp::legendre_symbol;
pub use points::{
    count_points, count_points_character_sum, cubic_splits_completely, is_supersingular,
    trace_of_frobenius, ShortCurve, POINT_COUNT_CAP,
};
pub use sieve::{prime_count, primes_up_to, PrimeEngine, ResidueFilter};
