//! Composite Simpson quadrature on uniform grids.
//!
//! Sums are accumulated pairwise so the result does not depend on how the
//! work is split, and the rounding error grows like `log n` rather than `n`.

use crate::error::{Error, Result};

/// Pairwise (cascade) summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Quadrature weights for `n` uniform samples with spacing `h`.
///
/// Composite Simpson when the number of intervals is even. For an odd
/// interval count the last three intervals use Simpson's 3/8 rule, so the
/// rule stays fourth order. Two samples fall back to the trapezoid rule.
pub fn simpson_weights(n: usize, h: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "quadrature needs at least 2 samples, got {n}"
        )));
    }
    let intervals = n - 1;
    let mut w = vec![0.0; n];
    if intervals == 1 {
        w[0] = h / 2.0;
        w[1] = h / 2.0;
        return Ok(w);
    }
    let simpson_intervals = if intervals.is_multiple_of(2) {
        intervals
    } else {
        intervals - 3
    };
    for i in (0..simpson_intervals).step_by(2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if simpson_intervals < intervals {
        let s = simpson_intervals;
        w[s] += 3.0 * h / 8.0;
        w[s + 1] += 9.0 * h / 8.0;
        w[s + 2] += 9.0 * h / 8.0;
        w[s + 3] += 3.0 * h / 8.0;
    }
    Ok(w)
}

/// Integrates uniformly spaced samples.
pub fn simpson(values: &[f64], h: f64) -> Result<f64> {
    let w = simpson_weights(values.len(), h)?;
    let terms: Vec<f64> = values.iter().zip(&w).map(|(v, w)| v * w).collect();
    Ok(pairwise_sum(&terms))
}

/// Integrates `f` over `[lo, hi]` with `panels` uniform intervals.
pub fn simpson_fn(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> Result<f64> {
    if panels == 0 {
        return Err(Error::Domain("quadrature needs at least one panel".into()));
    }
    let h = (hi - lo) / panels as f64;
    let values: Vec<f64> = (0..=panels).map(|i| f(lo + i as f64 * h)).collect();
    simpson(&values, h)
}
