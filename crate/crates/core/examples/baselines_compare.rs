//! The spectral method against least-squares fitting and backward finite
//! differences on the same data.
//!
//! cargo run --release --example baselines_compare

use pa1d::baselines::{backward_fd, lsq_fit, FdConfig};
use pa1d::forward::{boundary_traces, DalembertSolution};
use pa1d::grid::unit_interval_points;
use pa1d::inverse::reconstruct;
use pa1d::metrics::relative_l2;
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

    let spectral = reconstruct(&trace, 50, &cfg, &points)?;
    println!(
        "spectral      rel L2 {:.3e}",
        relative_l2(&spectral.estimate, &truth, 0.005)?
    );

    let fit = lsq_fit(&trace, 50, &cfg)?;
    println!(
        "least squares rel L2 {:.3e}  (rank {}/50, condition {:.1e}, residual {:.2e})",
        relative_l2(&fit.evaluate(&cfg, &points)?, &truth, 0.005)?,
        fit.rank,
        fit.condition_estimate,
        fit.residual_norm,
    );

    let fd = FdConfig::default_for(&cfg);
    let field = backward_fd(&trace, &fd, &cfg)?;
    let fd_values: Vec<f64> = points.iter().map(|&x| field.interpolate(x)).collect();
    println!(
        "backward FD   rel L2 {:.3e}  (h {}, tau {}, from t = {})",
        relative_l2(&fd_values, &truth, 0.005)?,
        fd.h,
        fd.tau,
        fd.t_final
    );
    Ok(())
}
