use crate::error::{Error, Result};
use crate::math;

/// Largest polynomial degree / oscillator index the recurrences are used for.
pub const INDEX_CEILING: usize = 512;

/// Associated Laguerre polynomial `L_n^k(x)`.
///
/// Evaluated with the upward three-term recurrence
/// `j L_j = (2j - 1 + k - x) L_{j-1} - (j - 1 + k) L_{j-2}`, which stays
/// accurate for `x > n` where the alternating power sum cancels badly.
pub fn laguerre_assoc(n: usize, k: usize, x: f64) -> Result<f64> {
    let (mantissa, log_scale) = laguerre_scaled(n, k, x)?;
    Ok(mantissa * math::exp(log_scale))
}

/// `L_n^k(x)` as `mantissa * exp(log_scale)`.
///
/// The recurrence is rescaled whenever it grows past `1e100` so that large
/// orders (`k` up to the index ceiling) never overflow.
pub(crate) fn laguerre_scaled(n: usize, k: usize, x: f64) -> Result<(f64, f64)> {
    if n > INDEX_CEILING {
        return Err(Error::IndexCeiling {
            index: n,
            ceiling: INDEX_CEILING,
        });
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain {
            what: "Laguerre argument must be finite and >= 0",
            value: x,
        });
    }
    const BIG: f64 = 1e100;
    let kf = k as f64;
    let mut prev = 1.0;
    if n == 0 {
        return Ok((prev, 0.0));
    }
    let mut cur = 1.0 + kf - x;
    let mut log_scale = 0.0;
    for j in 2..=n {
        let jf = j as f64;
        let next = ((2.0 * jf - 1.0 + kf - x) * cur - (jf - 1.0 + kf) * prev) / jf;
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            log_scale += math::ln(BIG);
        }
    }
    Ok((cur, log_scale))
}

/// `ln(n!)` with relative error well below `1e-12`.
///
/// Direct summation for `n < 256`, Stirling series with three correction
/// terms above (truncation error `< 1e-20` there).
pub fn log_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n < 256 {
        return (2..=n).map(|i| math::ln(i as f64)).sum();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * math::ln(x) - x
        + 0.5 * math::ln(2.0 * core::f64::consts::PI * x)
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0))
}
