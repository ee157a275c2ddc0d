//! Experiment driver: forward data generation, noise, reconstruction by one
//! or more methods, error metrics, sweeps and the on-disk outputs.
//!
//! Output files of a pipeline run, all inside `output_dir`:
//!
//! * `trace.csv` in the trace format of [`crate::observation`];
//! * `recon.csv` with header `x,a_true,a_rec_<method>...`;
//! * `report.json`, a serialized [`ExperimentReport`].
//!
//! Timings are wall-clock and therefore excluded from files unless
//! `record_timings` is set; everything else is a pure function of the
//! configuration.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{backward_fd, lsq_fit, FdConfig};
use crate::error::{Error, Result};
use crate::forward::{
    analysis_points_per_unit, boundary_traces, DalembertSolution, SpectralSolution,
    DEFAULT_FORWARD_MODES,
};
use crate::grid::unit_interval_points;
use crate::inverse::{is_skipped, reconstruct_with_sign, ExtensionSign};
use crate::metrics::{max_abs_error, relative_l2};
use crate::observation::{add_noise, write_trace, BoundaryTrace, NoiseModel, NoiseSpec, TraceMeta};
use crate::profile::{sample_extended, Profile, ProfileKind};
use crate::spectral::{CoefficientVector, PaddingConfig};

pub const DEFAULT_OUTPUT_POINTS: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Spectral,
    Lsq,
    BackwardFd,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Spectral => "spectral",
            Method::Lsq => "lsq",
            Method::BackwardFd => "backward-fd",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Method::Spectral),
            "lsq" => Ok(Method::Lsq),
            "backward-fd" => Ok(Method::BackwardFd),
            other => Err(Error::Config(format!("unknown method `{other}`"))),
        }
    }
}

/// Where the boundary traces come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DataSource {
    /// The truncated eigenfunction series with `M` modes.
    Spectral,
    /// The series-free d'Alembert solution.
    #[default]
    Oracle,
}

impl FromStr for DataSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(DataSource::Spectral),
            "oracle" => Ok(DataSource::Oracle),
            other => Err(Error::Config(format!("unknown data source `{other}`"))),
        }
    }
}

fn default_padding() -> u32 {
    2
}
fn default_forward_modes() -> usize {
    DEFAULT_FORWARD_MODES
}
fn default_inverse_modes() -> usize {
    50
}
fn default_samples() -> u32 {
    100
}
fn default_methods() -> Vec<Method> {
    vec![Method::Spectral]
}
fn default_output_points() -> usize {
    DEFAULT_OUTPUT_POINTS
}
fn default_workers() -> usize {
    1
}

/// Full description of one experiment. Serialized field names are the JSON
/// config keys; unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub profile: ProfileKind,
    #[serde(rename = "T", default = "default_padding")]
    pub padding: u32,
    #[serde(rename = "M", default = "default_forward_modes")]
    pub forward_modes: usize,
    #[serde(rename = "K", default = "default_inverse_modes")]
    pub inverse_modes: usize,
    #[serde(rename = "N", default = "default_samples")]
    pub samples_per_unit: u32,
    #[serde(default)]
    pub noise: NoiseSpec,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub source: DataSource,
    #[serde(default)]
    pub extended_trace_sign: ExtensionSign,
    /// Backward FD parameters; defaults to [`FdConfig::default_for`].
    #[serde(default)]
    pub fd: Option<FdConfig>,
    #[serde(default = "default_output_points")]
    pub output_points: usize,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default)]
    pub record_timings: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            profile: ProfileKind::Smooth,
            padding: default_padding(),
            forward_modes: default_forward_modes(),
            inverse_modes: default_inverse_modes(),
            samples_per_unit: default_samples(),
            noise: NoiseSpec::none(),
            methods: default_methods(),
            output_dir: None,
            source: DataSource::Oracle,
            extended_trace_sign: ExtensionSign::Minus,
            fd: None,
            output_points: default_output_points(),
            workers: default_workers(),
            record_timings: false,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }

    pub fn padding_config(&self) -> Result<PaddingConfig> {
        PaddingConfig::new(self.padding)
    }

    pub fn fd_config(&self) -> Result<FdConfig> {
        match self.fd {
            Some(fd) => Ok(fd),
            None => Ok(FdConfig::default_for(&self.padding_config()?)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = self
            .padding_config()
            .map_err(|e| Error::Config(e.to_string()))?;
        if self.methods.is_empty() {
            return Err(Error::Config("method list is empty".into()));
        }
        Profile::builtin(self.profile)?;
        if self.inverse_modes < 1 || self.forward_modes < 1 {
            return Err(Error::Config("mode counts must be at least 1".into()));
        }
        if self.samples_per_unit < 1 {
            return Err(Error::Config("N must be at least 1".into()));
        }
        if self.output_points < 3 {
            return Err(Error::Config("output grid needs at least 3 points".into()));
        }
        if self.workers < 1 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        self.noise
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        if self.methods.contains(&Method::BackwardFd) {
            self.fd_config()?.validate(&cfg)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientError {
    pub k: usize,
    pub abs_error: f64,
}

/// Wall-clock milliseconds per stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct StageTimings {
    pub forward_ms: f64,
    pub observe_ms: f64,
    pub reconstruct_ms: f64,
}

impl StageTimings {
    pub fn total_ms(&self) -> f64 {
        self.forward_ms + self.observe_ms + self.reconstruct_ms
    }
}

/// Errors of one method against the true profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub method: Method,
    /// Relative L2 error on `[-1, 1]`, Simpson on the output grid, with the
    /// true profile's norm as denominator.
    pub rel_l2: f64,
    pub l_inf: f64,
    /// `|c_k - a_k|` against the coefficients of the zero-extended profile,
    /// for the indices the method recovers. Empty for backward FD.
    pub coefficient_errors: Vec<CoefficientError>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime: Option<StageTimings>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub metric: String,
    pub reports: Vec<ErrorReport>,
}

/// In-memory result of [`run_pipeline`].
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub trace: BoundaryTrace,
    pub points: Vec<f64>,
    pub truth: Vec<f64>,
    /// One estimate per configured method, in order.
    pub estimates: Vec<(Method, Vec<f64>)>,
    pub report: ExperimentReport,
    /// Always measured, whether or not written to disk.
    pub timings: Vec<StageTimings>,
}

fn stage<T>(name: &'static str, cfg: &ExperimentConfig, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage: name,
        config: cfg.to_json(),
        source: Box::new(e),
    })
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Forward traces on `[0, R]` for the configured profile and source.
pub fn generate_trace(cfg: &ExperimentConfig) -> Result<BoundaryTrace> {
    let pad = cfg.padding_config()?;
    let profile = Profile::builtin(cfg.profile)?;
    let horizon = cfg.padding + 1;
    let trace = match cfg.source {
        DataSource::Oracle => boundary_traces(
            &DalembertSolution::new(&profile, &pad),
            cfg.samples_per_unit,
            horizon,
            &pad,
        )?,
        DataSource::Spectral => boundary_traces(
            &SpectralSolution::new(&profile, &pad, cfg.forward_modes)?,
            cfg.samples_per_unit,
            horizon,
            &pad,
        )?,
    };
    Ok(trace.with_meta(TraceMeta {
        padding: Some(cfg.padding),
        profile: Some(cfg.profile),
        noise: None,
    }))
}

/// Values on the output points and, for series methods, `(k, c_k)` pairs.
pub type Estimate = (Vec<f64>, Option<Vec<(usize, f64)>>);

/// Estimate of `a` on `points` by one method, plus the coefficients it
/// recovered (`None` for backward FD).
pub fn estimate(
    trace: &BoundaryTrace,
    method: Method,
    pad: &PaddingConfig,
    modes: usize,
    points: &[f64],
    sign: ExtensionSign,
    fd: &FdConfig,
) -> Result<Estimate> {
    match method {
        Method::Spectral => {
            let rec = reconstruct_with_sign(trace, modes, pad, points, sign)?;
            Ok((rec.estimate, Some(rec.modes.entries().to_vec())))
        }
        Method::Lsq => {
            let rep = lsq_fit(trace, modes, pad)?;
            let values = rep.evaluate(pad, points)?;
            Ok((values, Some(rep.coefficients.iter().collect())))
        }
        Method::BackwardFd => {
            let g = backward_fd(trace, fd, pad)?;
            Ok((points.iter().map(|&x| g.interpolate(x)).collect(), None))
        }
    }
}

/// Coefficients of the zero-extended true profile, the reference for
/// per-coefficient errors.
pub fn reference_coefficients(
    profile: &Profile,
    pad: &PaddingConfig,
    modes: usize,
) -> Result<CoefficientVector> {
    let basis = pad.basis();
    let ppu = analysis_points_per_unit(modes, basis.radius());
    basis.analyze(
        &sample_extended(profile.pressure(), basis.radius(), ppu)?,
        modes,
    )
}

/// Error report of one estimate sampled on a uniform grid with spacing
/// `step`. `coeffs` are compared against `reference`; the LSQ baseline's
/// values at skipped indices are left out since they carry no information.
pub fn score(
    method: Method,
    values: &[f64],
    coeffs: Option<Vec<(usize, f64)>>,
    truth: &[f64],
    reference: &CoefficientVector,
    pad: &PaddingConfig,
    step: f64,
) -> Result<ErrorReport> {
    let coefficient_errors = coeffs
        .unwrap_or_default()
        .into_iter()
        .filter(|&(k, _)| method != Method::Lsq || !is_skipped(k, pad))
        .map(|(k, c)| CoefficientError {
            k,
            abs_error: (c - reference.get(k).unwrap_or(0.0)).abs(),
        })
        .collect();
    Ok(ErrorReport {
        method,
        rel_l2: relative_l2(values, truth, step)?,
        l_inf: max_abs_error(values, truth)?,
        coefficient_errors,
        runtime: None,
    })
}

pub fn run_pipeline(cfg: &ExperimentConfig) -> Result<PipelineOutput> {
    stage("config", cfg, cfg.validate())?;
    let pad = stage("config", cfg, cfg.padding_config())?;
    let profile = stage("config", cfg, Profile::builtin(cfg.profile))?;
    let fd = stage("config", cfg, cfg.fd_config())?;

    let t0 = Instant::now();
    let clean = stage("forward", cfg, generate_trace(cfg))?;
    let forward_ms = millis(t0);

    let t0 = Instant::now();
    let trace = if cfg.noise.model == NoiseModel::None {
        clean
    } else {
        stage("observe", cfg, add_noise(&clean, &cfg.noise))?
    };
    let observe_ms = millis(t0);

    let points = unit_interval_points(cfg.output_points);
    let step = 2.0 / (cfg.output_points - 1) as f64;
    let truth: Vec<f64> = points
        .iter()
        .map(|&x| profile.initial_pressure(x))
        .collect();
    let reference = stage(
        "reference",
        cfg,
        reference_coefficients(&profile, &pad, cfg.inverse_modes),
    )?;

    let mut estimates = Vec::new();
    let mut reports = Vec::new();
    let mut timings = Vec::new();
    for &method in &cfg.methods {
        let t0 = Instant::now();
        let (values, coeffs) = stage(
            "reconstruct",
            cfg,
            estimate(
                &trace,
                method,
                &pad,
                cfg.inverse_modes,
                &points,
                cfg.extended_trace_sign,
                &fd,
            ),
        )?;
        let reconstruct_ms = millis(t0);
        let mut report = stage(
            "metrics",
            cfg,
            score(method, &values, coeffs, &truth, &reference, &pad, step),
        )?;
        let t = StageTimings {
            forward_ms,
            observe_ms,
            reconstruct_ms,
        };
        timings.push(t);
        report.runtime = cfg.record_timings.then_some(t);
        reports.push(report);
        estimates.push((method, values));
    }

    let out = PipelineOutput {
        trace,
        points,
        truth,
        estimates,
        report: ExperimentReport {
            config: cfg.clone(),
            metric: "relative L2 on [-1, 1], Simpson on the uniform output grid".into(),
            reports,
        },
        timings,
    };
    if let Some(dir) = &cfg.output_dir {
        stage("write", cfg, write_outputs(&out, dir))?;
    }
    Ok(out)
}

/// `x,a_true,a_rec_<method>...`; `truth` may be absent when the profile is
/// unknown, in which case the `a_true` column is omitted.
pub fn reconstruction_csv(
    points: &[f64],
    truth: Option<&[f64]>,
    estimates: &[(Method, Vec<f64>)],
) -> String {
    let mut s = String::from("x");
    if truth.is_some() {
        s.push_str(",a_true");
    }
    for (m, _) in estimates {
        let _ = write!(s, ",a_rec_{m}");
    }
    s.push('\n');
    for (i, x) in points.iter().enumerate() {
        let _ = write!(s, "{x}");
        if let Some(t) = truth {
            let _ = write!(s, ",{}", t[i]);
        }
        for (_, v) in estimates {
            let _ = write!(s, ",{}", v[i]);
        }
        s.push('\n');
    }
    s
}

pub fn report_json<T: Serialize>(report: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)
        .map_err(|e| Error::Config(format!("cannot serialize report: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn write_outputs(out: &PipelineOutput, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("trace.csv"), write_trace(&out.trace))?;
    fs::write(
        dir.join("recon.csv"),
        reconstruction_csv(&out.points, Some(&out.truth), &out.estimates),
    )?;
    fs::write(dir.join("report.json"), report_json(&out.report)?)?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepParam {
    #[serde(rename = "K")]
    Modes,
    #[serde(rename = "noise")]
    Noise,
    #[serde(rename = "N")]
    Samples,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Modes => "K",
            SweepParam::Noise => "noise",
            SweepParam::Samples => "N",
        }
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K" => Ok(SweepParam::Modes),
            "noise" => Ok(SweepParam::Noise),
            "N" => Ok(SweepParam::Samples),
            other => Err(Error::Config(format!("unknown sweep parameter `{other}`"))),
        }
    }
}

pub const SWEEP_HEADER: &str = "param_value,rel_l2,l_inf,runtime_ms,status";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub rel_l2: Option<f64>,
    pub l_inf: Option<f64>,
    pub runtime_ms: Option<f64>,
    /// `ok`, or the error message of the failed pipeline.
    pub status: String,
}

/// Parses a comma-separated value list.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let values: Vec<f64> = text
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("invalid sweep value `{v}`")))
        })
        .collect::<Result<_>>()?;
    if values.is_empty() {
        return Err(Error::Config("sweep value list is empty".into()));
    }
    Ok(values)
}

fn apply_sweep_value(
    base: &ExperimentConfig,
    param: SweepParam,
    value: f64,
) -> Result<ExperimentConfig> {
    let mut cfg = base.clone();
    let as_count = |v: f64| -> Result<u64> {
        if v >= 1.0 && v.fract() == 0.0 && v < 1e9 {
            Ok(v as u64)
        } else {
            Err(Error::Config(format!(
                "{} must be a positive integer, got {v}",
                param.name()
            )))
        }
    };
    match param {
        SweepParam::Modes => cfg.inverse_modes = as_count(value)? as usize,
        SweepParam::Samples => cfg.samples_per_unit = as_count(value)? as u32,
        SweepParam::Noise => {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::Config(format!(
                    "noise level must be >= 0, got {value}"
                )));
            }
            if cfg.noise.model == NoiseModel::None {
                cfg.noise.model = NoiseModel::Uniform;
            }
            cfg.noise.eps = value;
        }
    }
    cfg.output_dir = base
        .output_dir
        .as_ref()
        .map(|d| d.join(format!("{}_{}", param.name(), value)));
    Ok(cfg)
}

/// One pipeline per value; rows sorted by parameter value. Only the first
/// configured method is tabulated. Failing values become rows with an error
/// status.
pub fn run_sweep(
    base: &ExperimentConfig,
    param: SweepParam,
    values: &[f64],
) -> Result<Vec<SweepRow>> {
    if values.is_empty() {
        return Err(Error::Config("sweep value list is empty".into()));
    }
    base.methods
        .first()
        .ok_or_else(|| Error::Config("method list is empty".into()))?;
    let configs: Vec<Result<ExperimentConfig>> = values
        .iter()
        .map(|&v| apply_sweep_value(base, param, v))
        .collect();
    if let Some(Err(e)) = configs.iter().find(|c| c.is_err()) {
        return Err(Error::Config(e.to_string()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(base.workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let mut rows: Vec<SweepRow> = pool.install(|| {
        configs
            .into_par_iter()
            .zip(values.par_iter())
            .map(|(cfg, &value)| {
                let cfg = cfg.expect("checked above");
                match run_pipeline(&cfg) {
                    Ok(out) => SweepRow {
                        value,
                        rel_l2: Some(out.report.reports[0].rel_l2),
                        l_inf: Some(out.report.reports[0].l_inf),
                        runtime_ms: Some(out.timings[0].total_ms()),
                        status: "ok".into(),
                    },
                    Err(e) => SweepRow {
                        value,
                        rel_l2: None,
                        l_inf: None,
                        runtime_ms: None,
                        status: format!("error: {e}"),
                    },
                }
            })
            .collect()
    });
    rows.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(rows)
}

/// Sweep table; `runtime_ms` is left empty unless `with_timings`.
pub fn sweep_csv(rows: &[SweepRow], with_timings: bool) -> String {
    let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
    let mut s = String::from(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        let runtime = if with_timings {
            opt(r.runtime_ms)
        } else {
            String::new()
        };
        let status = r.status.replace([',', '\n'], ";");
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.value,
            opt(r.rel_l2),
            opt(r.l_inf),
            runtime,
            status
        );
    }
    s
}
