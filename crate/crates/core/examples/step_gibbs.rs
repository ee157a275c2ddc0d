//! A discontinuous profile: the truncated series rings at the jumps, time
//! reversal smears them.
//!
//! cargo run --example step_gibbs

use pa1d::baselines::{backward_fd, FdConfig};
use pa1d::forward::{boundary_traces, DalembertSolution};
use pa1d::grid::unit_interval_points;
use pa1d::inverse::reconstruct;
use pa1d::profile::Profile;
use pa1d::spectral::PaddingConfig;

fn range(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

fn main() -> pa1d::Result<()> {
    let cfg = PaddingConfig::new(2)?;
    let trace = boundary_traces(
        &DalembertSolution::new(&Profile::step(), &cfg),
        100,
        3,
        &cfg,
    )?;
    let points = unit_interval_points(401);

    let fd = backward_fd(&trace, &FdConfig::default_for(&cfg), &cfg)?;
    let fd_values: Vec<f64> = points.iter().map(|&x| fd.interpolate(x)).collect();
    let (lo, hi) = range(&fd_values);
    println!("backward FD   range [{lo:+.4}, {hi:+.4}]");
    for k in [20, 50, 100] {
        let (lo, hi) = range(&reconstruct(&trace, k, &cfg, &points)?.estimate);
        println!(
            "spectral K={k:<3} range [{lo:+.4}, {hi:+.4}], overshoot {:.1}%",
            100.0 * (hi - 1.0)
        );
    }
    println!("\n    x     spectral K=50   backward FD");
    let rec = reconstruct(&trace, 50, &cfg, &points)?;
    for i in (280..=320).step_by(2) {
        println!(
            "{:+.3}   {:+.5}        {:+.5}",
            points[i], rec.estimate[i], fd_values[i]
        );
    }
    Ok(())
}
