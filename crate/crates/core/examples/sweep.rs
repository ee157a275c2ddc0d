//! Parameter sweeps through the experiment driver, printed as CSV.
//!
//! cargo run --release --example sweep

use pa1d::harness::{run_sweep, sweep_csv, ExperimentConfig, SweepParam};

fn main() -> pa1d::Result<()> {
    let base = ExperimentConfig {
        workers: 4,
        ..Default::default()
    };
    for (param, values) in [
        (SweepParam::Modes, vec![10.0, 20.0, 40.0, 50.0, 80.0, 120.0]),
        (SweepParam::Samples, vec![50.0, 100.0, 200.0, 400.0]),
        (SweepParam::Noise, vec![0.0, 0.005, 0.01, 0.02, 0.05]),
    ] {
        println!("# {}", param.name());
        print!("{}", sweep_csv(&run_sweep(&base, param, &values)?, false));
    }
    Ok(())
}
