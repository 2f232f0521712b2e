//! The logarithmic integral `li(x) = Ei(ln x)` for `x > 1`.

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Beyond this `t` the asymptotic series of `Ei(t)` is used.
const ASYMPTOTIC_FROM: f64 = 40.0;

/// `Ei(t) = γ + ln t + Σ tⁿ/(n·n!)` for `t > 0`.
fn ei_series(t: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut n = 1.0;
    loop {
        term *= t / n;
        let add = term / n;
        sum += add;
        if add <= sum.abs() * 1e-17 {
            break;
        }
        n += 1.0;
    }
    EULER_GAMMA + libm::log(t) + sum
}

/// `Ei(t) ~ (eᵗ/t) Σ k!/tᵏ`, truncated at the smallest term.
fn ei_asymptotic(t: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        let next = term * k / t;
        if next >= term || next < 1e-17 {
            break;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
    libm::exp(t) / t * sum
}

/// `Ei(t)` for real `t ≠ 0`; negative `t` is not needed here.
fn ei(t: f64) -> f64 {
    if t > ASYMPTOTIC_FROM {
        ei_asymptotic(t)
    } else {
        ei_series(t)
    }
}

/// Principal-value `li(x) = ∫₀ˣ dt/ln t` for `x > 1`.
pub fn logarithmic_integral(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 1.0 {
        return Err(Error::DomainError("li(x) needs x > 1"));
    }
    Ok(ei(libm::log(x)))
}
