//! Sampled boundary observations, noise injection and the trace CSV format.
//!
//! A trace file looks like
//!
//! ```text
//! # T=2
//! # N=100
//! # profile=smooth
//! # noise=uniform
//! # eps=0.01
//! # seed=7
//! t,F_plus,F_minus
//! 0,0,0
//! 0.01,0,0
//! ```
//!
//! Metadata lines are optional `# key=value` comments before the header.
//! Values are written with the shortest representation that parses back to
//! the same `f64`, so a write/read cycle is exact.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::ProfileKind;

pub const TRACE_HEADER: &str = "t,F_plus,F_minus";

/// Provenance carried in the metadata comments of a trace file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TraceMeta {
    pub padding: Option<u32>,
    pub profile: Option<ProfileKind>,
    pub noise: Option<NoiseSpec>,
}

/// `F(+1, j/N)` and `F(-1, j/N)` for `j = 0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrace {
    samples_per_unit: u32,
    plus: Vec<f64>,
    minus: Vec<f64>,
    meta: TraceMeta,
}

impl BoundaryTrace {
    pub fn new(samples_per_unit: u32, plus: Vec<f64>, minus: Vec<f64>) -> Result<Self> {
        if samples_per_unit == 0 {
            return Err(Error::Domain(
                "samples per unit time must be positive".into(),
            ));
        }
        if plus.len() != minus.len() {
            return Err(Error::InsufficientData(format!(
                "trace lengths differ: {} vs {}",
                plus.len(),
                minus.len()
            )));
        }
        if plus.len() < 2 {
            return Err(Error::InsufficientData(
                "trace needs at least two samples".into(),
            ));
        }
        Ok(BoundaryTrace {
            samples_per_unit,
            plus,
            minus,
            meta: TraceMeta::default(),
        })
    }

    pub fn with_meta(mut self, meta: TraceMeta) -> Self {
        self.meta = meta;
        self
    }

    pub fn meta(&self) -> &TraceMeta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut TraceMeta {
        &mut self.meta
    }

    /// Sampling rate `N`.
    pub fn samples_per_unit(&self) -> u32 {
        self.samples_per_unit
    }

    pub fn step(&self) -> f64 {
        1.0 / f64::from(self.samples_per_unit)
    }

    pub fn len(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    /// Last sample time `(len - 1) / N`.
    pub fn horizon(&self) -> f64 {
        (self.len() - 1) as f64 / f64::from(self.samples_per_unit)
    }

    pub fn time(&self, j: usize) -> f64 {
        j as f64 / f64::from(self.samples_per_unit)
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.time(j)).collect()
    }

    pub fn plus(&self) -> &[f64] {
        &self.plus
    }

    pub fn minus(&self) -> &[f64] {
        &self.minus
    }

    /// `max(|F_plus|_inf, |F_minus|_inf)`.
    pub fn sup_norm(&self) -> f64 {
        self.plus
            .iter()
            .chain(&self.minus)
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Multiplies every sample by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        BoundaryTrace {
            samples_per_unit: self.samples_per_unit,
            plus: self.plus.iter().map(|v| v * factor).collect(),
            minus: self.minus.iter().map(|v| v * factor).collect(),
            meta: self.meta.clone(),
        }
    }

    /// Linear interpolation of `(F_plus, F_minus)` at time `t`, clamped to
    /// the sampled window.
    pub fn interpolate(&self, t: f64) -> (f64, f64) {
        let s = (t * f64::from(self.samples_per_unit)).clamp(0.0, (self.len() - 1) as f64);
        let j = (s.floor() as usize).min(self.len() - 2);
        let frac = s - j as f64;
        if frac == 0.0 {
            return (self.plus[j], self.minus[j]);
        }
        let lerp = |v: &[f64]| v[j] * (1.0 - frac) + v[j + 1] * frac;
        (lerp(&self.plus), lerp(&self.minus))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NoiseModel {
    #[default]
    None,
    Uniform,
    Gaussian,
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoiseModel::None => "none",
            NoiseModel::Uniform => "uniform",
            NoiseModel::Gaussian => "gaussian",
        })
    }
}

impl FromStr for NoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(NoiseModel::None),
            "uniform" => Ok(NoiseModel::Uniform),
            "gaussian" => Ok(NoiseModel::Gaussian),
            other => Err(Error::Config(format!("unknown noise model `{other}`"))),
        }
    }
}

/// Additive noise relative to the trace sup-norm.
///
/// Draws come from ChaCha8 seeded with `seed` through
/// `SeedableRng::seed_from_u64`. Each uniform variate is
/// `(next_u64() >> 11) * 2^-53` in `[0, 1)`. The uniform model adds
/// `eps * A * (2u - 1)`; the gaussian model adds `eps * A * z` with `z` from
/// Box-Muller on two consecutive uniforms, `z = sqrt(-2 ln(1 - u1)) cos(2 pi u2)`.
/// All `F_plus` draws precede all `F_minus` draws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSpec {
    #[serde(default)]
    pub model: NoiseModel,
    #[serde(default)]
    pub eps: f64,
    #[serde(default)]
    pub seed: u64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        NoiseSpec::none()
    }
}

impl NoiseSpec {
    pub fn none() -> Self {
        NoiseSpec {
            model: NoiseModel::None,
            eps: 0.0,
            seed: 0,
        }
    }

    pub fn uniform(eps: f64, seed: u64) -> Self {
        NoiseSpec {
            model: NoiseModel::Uniform,
            eps,
            seed,
        }
    }

    pub fn gaussian(eps: f64, seed: u64) -> Self {
        NoiseSpec {
            model: NoiseModel::Gaussian,
            eps,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps >= 0.0 && self.eps.is_finite()) {
            return Err(Error::Domain(format!(
                "noise amplitude must be finite and non-negative, got {}",
                self.eps
            )));
        }
        Ok(())
    }

    fn is_identity(&self) -> bool {
        self.model == NoiseModel::None || self.eps == 0.0
    }
}

fn unit_uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `count` unscaled draws of the given model.
fn draws(model: NoiseModel, seed: u64, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| match model {
            NoiseModel::None => 0.0,
            NoiseModel::Uniform => 2.0 * unit_uniform(&mut rng) - 1.0,
            NoiseModel::Gaussian => {
                let u1 = unit_uniform(&mut rng);
                let u2 = unit_uniform(&mut rng);
                (-2.0 * (1.0 - u1).ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            }
        })
        .collect()
}

/// The additive perturbations `add_noise` would apply, as
/// `(plus, minus)`.
pub fn noise_perturbations(tr: &BoundaryTrace, spec: &NoiseSpec) -> Result<(Vec<f64>, Vec<f64>)> {
    spec.validate()?;
    let n = tr.len();
    let scale = spec.eps * tr.sup_norm();
    let mut d = draws(spec.model, spec.seed, 2 * n);
    for v in &mut d {
        *v *= scale;
    }
    let minus = d.split_off(n);
    Ok((d, minus))
}

/// Adds i.i.d. noise scaled by `eps * max(|F_plus|, |F_minus|)`.
pub fn add_noise(tr: &BoundaryTrace, spec: &NoiseSpec) -> Result<BoundaryTrace> {
    spec.validate()?;
    let mut out = tr.clone();
    out.meta.noise = Some(*spec);
    if spec.is_identity() {
        return Ok(out);
    }
    let (dp, dm) = noise_perturbations(tr, spec)?;
    for (v, d) in out.plus.iter_mut().zip(dp) {
        *v += d;
    }
    for (v, d) in out.minus.iter_mut().zip(dm) {
        *v += d;
    }
    Ok(out)
}

pub fn write_trace(tr: &BoundaryTrace) -> String {
    let mut s = String::with_capacity(tr.len() * 48);
    let meta = &tr.meta;
    if let Some(t) = meta.padding {
        let _ = writeln!(s, "# T={t}");
    }
    let _ = writeln!(s, "# N={}", tr.samples_per_unit);
    if let Some(p) = meta.profile {
        let _ = writeln!(s, "# profile={p}");
    }
    if let Some(n) = &meta.noise {
        let _ = writeln!(s, "# noise={}", n.model);
        let _ = writeln!(s, "# eps={}", n.eps);
        let _ = writeln!(s, "# seed={}", n.seed);
    }
    s.push_str(TRACE_HEADER);
    s.push('\n');
    for j in 0..tr.len() {
        let _ = writeln!(s, "{},{},{}", tr.time(j), tr.plus[j], tr.minus[j]);
    }
    s
}

fn parse_value<T: FromStr>(line: usize, what: &str, text: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{text}`")))
}

pub fn read_trace(text: &str) -> Result<BoundaryTrace> {
    let mut meta = TraceMeta::default();
    let mut declared_n: Option<u32> = None;
    let mut noise_model: Option<NoiseModel> = None;
    let mut eps: Option<f64> = None;
    let mut seed: Option<u64> = None;
    let mut header_seen = false;
    let mut rows: Vec<(usize, f64, f64, f64)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if !header_seen {
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((key, value)) = comment.split_once('=') {
                    match key.trim() {
                        "T" => meta.padding = Some(parse_value(line_no, "T", value)?),
                        "N" => declared_n = Some(parse_value(line_no, "N", value)?),
                        "profile" => {
                            meta.profile = Some(value.trim().parse().map_err(|_| {
                                Error::parse(line_no, format!("unknown profile `{}`", value.trim()))
                            })?)
                        }
                        "noise" => {
                            noise_model = Some(value.trim().parse().map_err(|_| {
                                Error::parse(
                                    line_no,
                                    format!("unknown noise model `{}`", value.trim()),
                                )
                            })?)
                        }
                        "eps" => eps = Some(parse_value(line_no, "eps", value)?),
                        "seed" => seed = Some(parse_value(line_no, "seed", value)?),
                        _ => {}
                    }
                }
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields != ["t", "F_plus", "F_minus"] {
                return Err(Error::parse(
                    line_no,
                    format!("expected header `{TRACE_HEADER}`, found `{line}`"),
                ));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!("expected 3 columns, found {}", fields.len()),
            ));
        }
        let t = parse_value(line_no, "time", fields[0])?;
        let p = parse_value(line_no, "F_plus", fields[1])?;
        let m = parse_value(line_no, "F_minus", fields[2])?;
        rows.push((line_no, t, p, m));
    }

    if !header_seen {
        return Err(Error::parse(text.lines().count().max(1), "missing header"));
    }
    if rows.len() < 2 {
        return Err(Error::parse(
            rows.last().map_or(text.lines().count(), |r| r.0),
            "trace needs at least two samples",
        ));
    }
    let inferred = 1.0 / (rows[1].1 - rows[0].1);
    let n = match declared_n {
        Some(n) => n,
        None => {
            let rounded = inferred.round();
            if !(rounded >= 1.0 && (inferred - rounded).abs() <= 1e-6 * rounded) {
                return Err(Error::parse(
                    rows[1].0,
                    format!(
                        "time step {} is not 1/N for an integer N",
                        rows[1].1 - rows[0].1
                    ),
                ));
            }
            rounded as u32
        }
    };
    if n == 0 {
        return Err(Error::parse(1, "N must be positive"));
    }
    let nf = f64::from(n);
    for (j, &(line_no, t, _, _)) in rows.iter().enumerate() {
        let expect = j as f64 / nf;
        if (t - expect).abs() > 1e-12 * expect.max(1.0) {
            return Err(Error::parse(
                line_no,
                format!("non-uniform time grid: t = {t}, expected {expect}"),
            ));
        }
    }
    if let Some(model) = noise_model {
        meta.noise = Some(NoiseSpec {
            model,
            eps: eps.unwrap_or(0.0),
            seed: seed.unwrap_or(0),
        });
    }
    let (plus, minus) = rows.iter().map(|r| (r.2, r.3)).unzip();
    Ok(BoundaryTrace::new(n, plus, minus)?.with_meta(meta))
}
