//! One full experiment written to disk: trace, reconstructions by every
//! method, and the JSON report.
//!
//! cargo run --example pipeline -- [config.json] [output-dir]

use std::path::PathBuf;

use pa1d::harness::{run_pipeline, ExperimentConfig, Method};
use pa1d::observation::NoiseSpec;

fn main() {
    let mut args = std::env::args().skip(1);
    let mut cfg = match args.next() {
        Some(path) => {
            let text = std::fs::read_to_string(&path).expect("readable config");
            ExperimentConfig::from_json(&text).unwrap_or_else(|e| {
                eprintln!("{e}");
                std::process::exit(e.exit_code());
            })
        }
        None => ExperimentConfig {
            noise: NoiseSpec::uniform(0.01, 2018),
            methods: vec![Method::Spectral, Method::Lsq, Method::BackwardFd],
            ..Default::default()
        },
    };
    cfg.output_dir = Some(
        args.next()
            .map(PathBuf::from)
            .unwrap_or_else(|| "pipeline-out".into()),
    );

    match run_pipeline(&cfg) {
        Ok(out) => {
            for r in &out.report.reports {
                println!(
                    "{:<12} rel L2 {:.3e}  max {:.3e}",
                    r.method.name(),
                    r.rel_l2,
                    r.l_inf
                );
            }
            println!("outputs in {}", cfg.output_dir.unwrap().display());
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
