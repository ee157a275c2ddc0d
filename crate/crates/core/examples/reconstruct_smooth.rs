//! Noiseless round trip for the smooth bump at several truncation levels,
//! next to the best error any K-term expansion can reach.
//!
//! cargo run --example reconstruct_smooth

use pa1d::forward::{boundary_traces, DalembertSolution};
use pa1d::grid::unit_interval_points;
use pa1d::harness::reference_coefficients;
use pa1d::inverse::reconstruct;
use pa1d::metrics::{max_abs_error, relative_l2};
use pa1d::profile::Profile;
use pa1d::spectral::PaddingConfig;

fn main() -> pa1d::Result<()> {
    let cfg = PaddingConfig::new(2)?;
    let profile = Profile::smooth();
    let trace = boundary_traces(&DalembertSolution::new(&profile, &cfg), 100, 3, &cfg)?;
    let points = unit_interval_points(401);
    let truth: Vec<f64> = points
        .iter()
        .map(|&x| profile.initial_pressure(x))
        .collect();

    println!("   K    rel L2      max err     best K-term");
    for k in [10, 20, 40, 50, 80] {
        let rec = reconstruct(&trace, k, &cfg, &points)?;
        let best = cfg
            .basis()
            .synthesize_many(&reference_coefficients(&profile, &cfg, k)?, &points)?;
        println!(
            "{k:4}  {:.3e}   {:.3e}   {:.3e}",
            relative_l2(&rec.estimate, &truth, 0.005)?,
            max_abs_error(&rec.estimate, &truth)?,
            relative_l2(&best, &truth, 0.005)?,
        );
    }
    Ok(())
}
