use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use pa1d::baselines::FdConfig;
use pa1d::grid::unit_interval_points;
use pa1d::harness::{
    estimate, generate_trace, parse_values, reconstruction_csv, reference_coefficients,
    report_json, run_sweep, score, sweep_csv, DataSource, ErrorReport, ExperimentConfig, Method,
    SweepParam, DEFAULT_OUTPUT_POINTS,
};
use pa1d::inverse::{is_skipped, ExtensionSign};
use pa1d::observation::{add_noise, read_trace, write_trace, NoiseModel, NoiseSpec};
use pa1d::profile::{Profile, ProfileKind};
use pa1d::spectral::PaddingConfig;
use pa1d::{Error, Result};

/// One-dimensional photoacoustic forward and inverse problem.
#[derive(Parser)]
#[command(name = "pa1d", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary traces of the forward problem on [0, T + 1].
    Forward {
        #[arg(long, default_value = "smooth")]
        profile: ProfileKind,
        #[arg(long = "T", default_value_t = 2)]
        padding: u32,
        /// Series length when `--source spectral`.
        #[arg(long, default_value_t = 400)]
        modes: usize,
        #[arg(long = "N", default_value_t = 100)]
        samples: u32,
        #[arg(long, default_value = "oracle")]
        source: DataSource,
        #[arg(long)]
        out: PathBuf,
    },
    /// Add seeded noise to a trace file.
    Observe {
        #[arg(long = "in")]
        input: PathBuf,
        /// Amplitude relative to the trace's sup norm.
        #[arg(long)]
        noise: f64,
        #[arg(long, default_value = "uniform")]
        model: NoiseModel,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover the initial pressure from a trace file.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to the value recorded in the trace file.
        #[arg(long = "T")]
        padding: Option<u32>,
        #[arg(long = "K", default_value_t = 50)]
        modes: usize,
        /// Repeat or comma-separate to compare methods.
        #[arg(long, value_delimiter = ',', default_value = "spectral")]
        method: Vec<Method>,
        #[arg(long, default_value = "minus")]
        extended_trace_sign: ExtensionSign,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
    /// Run one pipeline per parameter value and tabulate the errors.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        param: SweepParam,
        #[arg(long)]
        values: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Serialize)]
struct ReconstructReport {
    input: PathBuf,
    #[serde(rename = "T")]
    padding: u32,
    #[serde(rename = "K")]
    modes: usize,
    #[serde(rename = "N")]
    samples_per_unit: u32,
    profile: Option<ProfileKind>,
    noise: Option<NoiseSpec>,
    extended_trace_sign: ExtensionSign,
    methods: Vec<Method>,
    skipped_modes: Vec<usize>,
    /// Absent when the trace does not name a built-in profile.
    metric: Option<&'static str>,
    reports: Vec<ErrorReport>,
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InsufficientData(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Forward {
            profile,
            padding,
            modes,
            samples,
            source,
            out,
        } => {
            let cfg = ExperimentConfig {
                profile,
                padding,
                forward_modes: modes,
                samples_per_unit: samples,
                source,
                ..Default::default()
            };
            cfg.padding_config()
                .map_err(|e| Error::Config(e.to_string()))?;
            write_text(&out, &write_trace(&generate_trace(&cfg)?))
        }
        Command::Observe {
            input,
            noise,
            model,
            seed,
            out,
        } => {
            let spec = NoiseSpec {
                model,
                eps: noise,
                seed,
            };
            spec.validate()?;
            let trace = read_trace(&read_text(&input)?)?;
            let mut noisy = add_noise(&trace, &spec)?;
            noisy.meta_mut().noise = Some(spec);
            write_text(&out, &write_trace(&noisy))
        }
        Command::Reconstruct {
            input,
            padding,
            modes,
            method,
            extended_trace_sign,
            out,
            report,
        } => {
            let trace = read_trace(&read_text(&input)?)?;
            let padding = match (padding, trace.meta().padding) {
                (Some(p), Some(q)) if p != q => {
                    return Err(Error::Config(format!(
                        "--T {p} contradicts T={q} recorded in {}",
                        input.display()
                    )))
                }
                (Some(p), _) | (None, Some(p)) => p,
                (None, None) => {
                    return Err(Error::Config(format!(
                        "{} records no T; pass --T",
                        input.display()
                    )))
                }
            };
            let pad = PaddingConfig::new(padding).map_err(|e| Error::Config(e.to_string()))?;
            let fd = FdConfig::default_for(&pad);
            let points = unit_interval_points(DEFAULT_OUTPUT_POINTS);
            let step = 2.0 / (DEFAULT_OUTPUT_POINTS - 1) as f64;
            let profile = trace.meta().profile.map(Profile::builtin).transpose()?;
            let truth: Option<Vec<f64>> = profile
                .as_ref()
                .map(|p| points.iter().map(|&x| p.initial_pressure(x)).collect());
            let reference = profile
                .as_ref()
                .map(|p| reference_coefficients(p, &pad, modes))
                .transpose()?;

            let mut estimates = Vec::new();
            let mut reports = Vec::new();
            for &m in &method {
                let (values, coeffs) =
                    estimate(&trace, m, &pad, modes, &points, extended_trace_sign, &fd)?;
                if let (Some(truth), Some(reference)) = (&truth, &reference) {
                    reports.push(score(m, &values, coeffs, truth, reference, &pad, step)?);
                }
                estimates.push((m, values));
            }
            let summary = ReconstructReport {
                input,
                padding,
                modes,
                samples_per_unit: trace.samples_per_unit(),
                profile: trace.meta().profile,
                noise: trace.meta().noise,
                extended_trace_sign,
                methods: method,
                skipped_modes: (1..=modes).filter(|&k| is_skipped(k, &pad)).collect(),
                metric: truth
                    .is_some()
                    .then_some("relative L2 on [-1, 1], Simpson on the uniform output grid"),
                reports,
            };
            write_text(
                &out,
                &reconstruction_csv(&points, truth.as_deref(), &estimates),
            )?;
            write_text(&report, &report_json(&summary)?)
        }
        Command::Sweep {
            config,
            param,
            values,
            out,
        } => {
            let text = fs::read_to_string(&config)
                .map_err(|e| Error::Config(format!("{}: {e}", config.display())))?;
            let cfg = ExperimentConfig::from_json(&text)?;
            let values = parse_values(&values)?;
            let rows = run_sweep(&cfg, param, &values)?;
            write_text(&out, &sweep_csv(&rows, cfg.record_timings))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
