//! Boundary traces of the smooth bump from the mode series and from the
//! method of images, and the largest gap between them.
//!
//! cargo run --example forward_traces [-- out.csv]

use pa1d::forward::{boundary_traces, DalembertSolution, SpectralSolution};
use pa1d::observation::{write_trace, TraceMeta};
use pa1d::profile::{Profile, ProfileKind};
use pa1d::spectral::PaddingConfig;

fn main() -> pa1d::Result<()> {
    let cfg = PaddingConfig::new(2)?;
    let profile = Profile::smooth();
    let horizon = cfg.padding() + 1;

    let series = boundary_traces(
        &SpectralSolution::new(&profile, &cfg, 400)?,
        100,
        horizon,
        &cfg,
    )?;
    let images = boundary_traces(&DalembertSolution::new(&profile, &cfg), 100, horizon, &cfg)?;

    let gap = series
        .plus()
        .iter()
        .chain(series.minus())
        .zip(images.plus().iter().chain(images.minus()))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("samples per side: {}", series.len());
    println!("series vs images, max gap: {gap:.3e}");
    for j in (0..series.len()).step_by(25) {
        let (t, p, m) = (images.time(j), images.plus()[j], images.minus()[j]);
        println!("t = {t:4.2}   F+ = {p:+.6}   F- = {m:+.6}");
    }

    if let Some(path) = std::env::args().nth(1) {
        let trace = images.with_meta(TraceMeta {
            padding: Some(cfg.padding()),
            profile: Some(ProfileKind::Smooth),
            noise: None,
        });
        std::fs::write(&path, write_trace(&trace))?;
        println!("wrote {path}");
    }
    Ok(())
}
