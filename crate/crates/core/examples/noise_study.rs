//! Reconstruction error under additive noise, averaged over seeds.
//!
//! cargo run --release --example noise_study

use pa1d::forward::{boundary_traces, DalembertSolution};
use pa1d::grid::unit_interval_points;
use pa1d::inverse::reconstruct;
use pa1d::metrics::relative_l2;
use pa1d::observation::{add_noise, NoiseSpec};
use pa1d::profile::Profile;
use pa1d::spectral::PaddingConfig;

const SEEDS: u64 = 20;

fn main() -> pa1d::Result<()> {
    let cfg = PaddingConfig::new(2)?;
    let profile = Profile::smooth();
    let clean = boundary_traces(&DalembertSolution::new(&profile, &cfg), 100, 3, &cfg)?;
    let points = unit_interval_points(401);
    let truth: Vec<f64> = points
        .iter()
        .map(|&x| profile.initial_pressure(x))
        .collect();

    println!(" eps     K=20 uniform  K=50 uniform  K=50 gaussian");
    for eps in [0.0, 0.005, 0.01, 0.02, 0.05] {
        let mut row = Vec::new();
        for (k, gaussian) in [(20, false), (50, false), (50, true)] {
            let mut total = 0.0;
            for seed in 0..SEEDS {
                let spec = if gaussian {
                    NoiseSpec::gaussian(eps, seed)
                } else {
                    NoiseSpec::uniform(eps, seed)
                };
                let rec = reconstruct(&add_noise(&clean, &spec)?, k, &cfg, &points)?;
                total += relative_l2(&rec.estimate, &truth, 0.005)?;
            }
            row.push(total / SEEDS as f64);
        }
        println!(
            "{eps:5.3}   {:.3e}     {:.3e}     {:.3e}",
            row[0], row[1], row[2]
        );
    }
    Ok(())
}
