//! Which coefficients the boundary data cannot see, and why the partial
//! series still determines the profile.
//!
//! cargo run --example degenerate_modes

use pa1d::harness::reference_coefficients;
use pa1d::inverse::identities::{degenerate_coefficient, series_coefficient, unpadded_basis};
use pa1d::inverse::{correction_factor, denominator, is_skipped};
use pa1d::profile::{sample_extended, Profile};
use pa1d::spectral::PaddingConfig;

fn main() -> pa1d::Result<()> {
    let profile = Profile::smooth();
    let local = unpadded_basis().analyze(&sample_extended(profile.pressure(), 1.0, 4096)?, 200)?;

    for t in [1, 2, 3, 4] {
        let cfg = PaddingConfig::new(t)?;
        let skipped: Vec<usize> = (1..=20).filter(|&k| is_skipped(k, &cfg)).collect();
        println!(
            "T = {t}: skipped up to 20 {skipped:?}, correction factor {}",
            correction_factor(&cfg)
        );
    }

    let cfg = PaddingConfig::new(2)?;
    println!("\nT = 2, sine denominators:");
    for k in 1..=9 {
        println!("  k = {k}  {:+.6}", denominator(k, &cfg));
    }

    let padded = reference_coefficients(&profile, &cfg, 9)?;
    println!("\nskipped coefficients from the unpadded expansion:");
    for n0 in 1..=3 {
        println!(
            "  k = {}  quadrature {:+.10}  identity {:+.10}",
            3 * n0,
            padded.get(3 * n0).unwrap_or(f64::NAN),
            degenerate_coefficient(&local, n0, &cfg).unwrap_or(f64::NAN),
        );
    }
    println!("\nremaining coefficients from the unpadded expansion (200 terms):");
    for k in [1, 2, 4, 5] {
        println!(
            "  k = {k}  quadrature {:+.10}  series {:+.10}",
            padded.get(k).unwrap_or(f64::NAN),
            series_coefficient(&local, k, &cfg)?,
        );
    }
    Ok(())
}
