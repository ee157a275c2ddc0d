use crate::error::{Error, Result};
use crate::quadrature::simpson;

/// `||estimate - truth||_2 / ||truth||_2` over a uniform grid with spacing
/// `step`, both norms by Simpson quadrature.
pub fn relative_l2(estimate: &[f64], truth: &[f64], step: f64) -> Result<f64> {
    check_lengths(estimate, truth)?;
    let diff: Vec<f64> = estimate
        .iter()
        .zip(truth)
        .map(|(e, t)| (e - t) * (e - t))
        .collect();
    let sq: Vec<f64> = truth.iter().map(|t| t * t).collect();
    let denom = simpson(&sq, step)?;
    if denom <= 0.0 {
        return Err(Error::Domain("reference profile has zero norm".into()));
    }
    Ok((simpson(&diff, step)? / denom).max(0.0).sqrt())
}

pub fn max_abs_error(estimate: &[f64], truth: &[f64]) -> Result<f64> {
    check_lengths(estimate, truth)?;
    Ok(estimate
        .iter()
        .zip(truth)
        .fold(0.0_f64, |m, (e, t)| m.max((e - t).abs())))
}

fn check_lengths(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Domain(format!(
            "length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}
