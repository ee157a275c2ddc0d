//! Spectral recovery of the initial pressure from the two boundary traces.
//!
//! With `b = 0` the trace at `x = 1` is `u1(t) = sum_k a_k s_k cos(w_k t)`,
//! where `s_k = X_k(1) = sin((2 + T) k pi / (2R))` and `w_k = k pi / (2R)`,
//! and the trace at `x = -1` satisfies `F(-1, t) = -u1(2R - t)`. Gluing
//! `F(1, .)` on `[0, R]` to `-F(-1, 2R - .)` on `[R, 2R]` therefore gives
//! `u1` on a full cosine period, whose cosine coefficients are `a_k s_k`.
//!
//! `s_k` vanishes for some `k = (T + 1) n`. Those modes are never divided
//! out; the truncated sum `A(x)` over the remaining modes is instead scaled
//! by `(T + 1) / T` for even `T` (and left alone for odd `T`), which restores
//! `a(x)` on `(-1, 1)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::observation::BoundaryTrace;
use crate::quadrature::pairwise_sum;
use crate::spectral::{CoefficientVector, PaddingConfig, SineBasis};

/// Denominators smaller than this at a non-skipped index are refused.
pub const DENOMINATOR_GUARD: f64 = 1e-9;

/// Sign applied to the `x = -1` trace in the second half of the extended
/// trace. `Minus` is the consistent choice; `Plus` is kept only to
/// demonstrate that it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionSign {
    #[default]
    Minus,
    Plus,
}

impl ExtensionSign {
    fn factor(self) -> f64 {
        match self {
            ExtensionSign::Minus => -1.0,
            ExtensionSign::Plus => 1.0,
        }
    }
}

impl fmt::Display for ExtensionSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtensionSign::Minus => "minus",
            ExtensionSign::Plus => "plus",
        })
    }
}

impl FromStr for ExtensionSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" => Ok(ExtensionSign::Minus),
            "plus" => Ok(ExtensionSign::Plus),
            other => Err(Error::Config(format!(
                "unknown extended-trace sign `{other}`"
            ))),
        }
    }
}

/// The glued trace `F_hat` on `[0, 2R]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedTrace {
    samples: GridFunction,
}

impl ExtendedTrace {
    pub fn samples(&self) -> &GridFunction {
        &self.samples
    }

    pub fn step(&self) -> f64 {
        self.samples.step()
    }

    pub fn values(&self) -> &[f64] {
        self.samples.values()
    }
}

pub fn assemble_extended_trace(tr: &BoundaryTrace, cfg: &PaddingConfig) -> Result<ExtendedTrace> {
    assemble_extended_trace_with_sign(tr, cfg, ExtensionSign::Minus)
}

pub fn assemble_extended_trace_with_sign(
    tr: &BoundaryTrace,
    cfg: &PaddingConfig,
    sign: ExtensionSign,
) -> Result<ExtendedTrace> {
    let half = tr.samples_per_unit() as usize * (cfg.padding() as usize + 1);
    if tr.len() != half + 1 {
        return Err(Error::InsufficientData(format!(
            "trace covers [0, {}] but the inverse needs exactly [0, {}]",
            tr.horizon(),
            cfg.radius()
        )));
    }
    let s = sign.factor();
    let mut values = Vec::with_capacity(2 * half + 1);
    values.extend_from_slice(tr.plus());
    values.extend((half + 1..=2 * half).map(|j| s * tr.minus()[2 * half - j]));
    let samples = GridFunction::new(0.0, 2.0 * cfg.radius(), values)?;
    Ok(ExtendedTrace { samples })
}

/// `sin((2 + T) k pi / (2(1 + T)))`, with the angle reduced in integer
/// arithmetic so that the degenerate indices give exactly zero.
pub fn denominator(k: usize, cfg: &PaddingConfig) -> f64 {
    let two_r = 2 * (cfg.padding() as u64 + 1);
    let mut m = ((cfg.padding() as u64 + 2) * k as u64) % (2 * two_r);
    let mut sign = 1.0;
    if m >= two_r {
        m -= two_r;
        sign = -1.0;
    }
    sign * (m as f64 * PI / two_r as f64).sin()
}

pub fn is_skipped(k: usize, cfg: &PaddingConfig) -> bool {
    k.is_multiple_of(cfg.padding() as usize + 1)
}

/// Recovered coefficients of the zero-extended profile. Skipped indices
/// carry no value.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    modes: usize,
    entries: Vec<(usize, f64)>,
    skipped: Vec<usize>,
}

impl ModeSet {
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.entries
            .binary_search_by_key(&k, |e| e.0)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// `(k, a_k)` for the non-skipped indices in increasing order.
    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn skipped(&self) -> &[usize] {
        &self.skipped
    }

    /// Dense coefficient vector with zeros at the skipped indices.
    pub fn to_coefficients(&self) -> CoefficientVector {
        let mut v = vec![0.0; self.modes];
        for &(k, c) in &self.entries {
            v[k - 1] = c;
        }
        // entries are finite by construction
        CoefficientVector::new(v).unwrap_or_else(|_| CoefficientVector::zeros(self.modes))
    }
}

/// Divides cosine coefficients by the matching denominators.
pub(crate) fn divide_out(
    cosine: impl Fn(usize) -> Result<f64>,
    denominator: impl Fn(usize) -> f64,
    skip: impl Fn(usize) -> bool,
    modes: usize,
) -> Result<ModeSet> {
    let mut entries = Vec::with_capacity(modes);
    let mut skipped = Vec::new();
    for k in 1..=modes {
        if skip(k) {
            skipped.push(k);
            continue;
        }
        let d = denominator(k);
        if d.abs() < DENOMINATOR_GUARD {
            return Err(Error::Conditioning { k, denominator: d });
        }
        let value = cosine(k)? / d;
        if !value.is_finite() {
            return Err(Error::Domain(format!(
                "recovered coefficient {k} is not finite"
            )));
        }
        entries.push((k, value));
    }
    Ok(ModeSet {
        modes,
        entries,
        skipped,
    })
}

pub fn recover_coefficients(
    ext: &ExtendedTrace,
    modes: usize,
    cfg: &PaddingConfig,
) -> Result<ModeSet> {
    if modes < 1 {
        return Err(Error::Domain("mode count must be at least 1".into()));
    }
    let basis = cfg.basis();
    basis.check_resolution(ext.step(), modes)?;
    divide_out(
        |k| basis.cosine_coefficient(&ext.samples, k),
        |k| denominator(k, cfg),
        |k| is_skipped(k, cfg),
        modes,
    )
}

/// `(T + 1) / T` for even `T`, `1` for odd `T`.
pub fn correction_factor(cfg: &PaddingConfig) -> f64 {
    let t = cfg.padding();
    if t.is_multiple_of(2) {
        f64::from(t + 1) / f64::from(t)
    } else {
        1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub modes: ModeSet,
    pub points: Vec<f64>,
    /// Truncated series `A(x)` over the non-skipped modes.
    pub partial: Vec<f64>,
    /// `factor * A(x)`, the estimate of `a(x)`.
    pub estimate: Vec<f64>,
    pub factor: f64,
    pub padding: u32,
}

pub fn reconstruct(
    tr: &BoundaryTrace,
    modes: usize,
    cfg: &PaddingConfig,
    points: &[f64],
) -> Result<Reconstruction> {
    reconstruct_with_sign(tr, modes, cfg, points, ExtensionSign::Minus)
}

pub fn reconstruct_with_sign(
    tr: &BoundaryTrace,
    modes: usize,
    cfg: &PaddingConfig,
    points: &[f64],
    sign: ExtensionSign,
) -> Result<Reconstruction> {
    if let Some(&x) = points.iter().find(|x| !(-1.0..=1.0).contains(*x)) {
        return Err(Error::Domain(format!("output point {x} outside [-1, 1]")));
    }
    let ext = assemble_extended_trace_with_sign(tr, cfg, sign)?;
    let mode_set = recover_coefficients(&ext, modes, cfg)?;
    let basis = cfg.basis();
    let partial: Vec<f64> = points
        .iter()
        .map(|&x| {
            let terms: Vec<f64> = mode_set
                .entries()
                .iter()
                .map(|&(k, c)| c * basis.eval_unchecked(k, x))
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    let factor = correction_factor(cfg);
    let estimate = partial.iter().map(|v| factor * v).collect();
    Ok(Reconstruction {
        modes: mode_set,
        points: points.to_vec(),
        partial,
        estimate,
        factor,
        padding: cfg.padding(),
    })
}

/// Relations between the coefficients of a profile on `(-1, 1)` and those of
/// its zero-extension to the padded interval.
pub mod identities {
    use super::*;

    /// The unpadded basis `sin(n pi (x + 1) / 2)` on `(-1, 1)`.
    pub fn unpadded_basis() -> SineBasis {
        SineBasis::new(1.0).expect("unit radius is valid")
    }

    /// Padded coefficient at a degenerate index `k = (T + 1) n0`:
    /// `a_{n0} cos(T n0 pi / 2) / (T + 1)`.
    pub fn degenerate_coefficient(
        unpadded: &CoefficientVector,
        n0: usize,
        cfg: &PaddingConfig,
    ) -> Option<f64> {
        let a = unpadded.get(n0)?;
        // cos(T n0 pi / 2) is 0 or +-1
        let q = (u64::from(cfg.padding()) * n0 as u64) % 4;
        let c = [1.0, 0.0, -1.0, 0.0][q as usize];
        Some(a * c / cfg.radius())
    }

    /// Padded coefficient at a non-degenerate index from the unpadded ones:
    ///
    /// `(4R / pi) sin(k pi T / (2R)) sum_{n + k even} n a_n / (R^2 n^2 - k^2)`,
    ///
    /// truncated at the length of `unpadded`.
    pub fn series_coefficient(
        unpadded: &CoefficientVector,
        k: usize,
        cfg: &PaddingConfig,
    ) -> Result<f64> {
        if is_skipped(k, cfg) {
            return Err(Error::Domain(format!("index {k} is degenerate")));
        }
        let r = cfg.radius();
        let t = f64::from(cfg.padding());
        let kf = k as f64;
        let terms: Vec<f64> = unpadded
            .iter()
            .filter(|(n, _)| (n + k).is_multiple_of(2))
            .map(|(n, a)| {
                let nf = n as f64;
                nf * a / (r * r * nf * nf - kf * kf)
            })
            .collect();
        Ok(4.0 * r / PI * (kf * PI * t / (2.0 * r)).sin() * pairwise_sum(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{boundary_traces, DalembertSolution, SpectralSolution};
    use crate::profile::Profile;
    use approx::assert_abs_diff_eq;

    fn cfg(t: u32) -> PaddingConfig {
        PaddingConfig::new(t).unwrap()
    }

    fn bump_trace(t: u32, n: u32) -> BoundaryTrace {
        let c = cfg(t);
        boundary_traces(
            &DalembertSolution::new(&Profile::smooth(), &c),
            n,
            t + 1,
            &c,
        )
        .unwrap()
    }

    #[test]
    fn denominator_examples() {
        assert_eq!(denominator(3, &cfg(2)), 0.0);
        assert_abs_diff_eq!(denominator(1, &cfg(2)), 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_eq!(denominator(8, &cfg(3)), 0.0);
        for k in 1..200 {
            let direct = (f64::from(2 + 3) * k as f64 * PI / 8.0).sin();
            assert_abs_diff_eq!(denominator(k, &cfg(3)), direct, epsilon = 1e-12);
        }
    }

    #[test]
    fn denominator_zero_set_is_within_skip_set() {
        // brute-force scan: every zero of the denominator is a skipped index
        for t in 1..8 {
            let c = cfg(t);
            for k in 1..400 {
                if denominator(k, &c).abs() < 1e-12 {
                    assert!(is_skipped(k, &c), "T={t} k={k}");
                }
            }
        }
    }

    #[test]
    fn correction_factor_examples() {
        assert_eq!(correction_factor(&cfg(2)), 1.5);
        assert_eq!(correction_factor(&cfg(3)), 1.0);
        assert_eq!(correction_factor(&cfg(4)), 1.25);
    }

    #[test]
    fn zero_trace_gives_zero_everything() {
        let c = cfg(2);
        let tr = BoundaryTrace::new(100, vec![0.0; 301], vec![0.0; 301]).unwrap();
        let ext = assemble_extended_trace(&tr, &c).unwrap();
        assert!(ext.values().iter().all(|&v| v == 0.0));
        let rec = reconstruct(&tr, 20, &c, &[-1.0, 0.0, 0.5, 1.0]).unwrap();
        assert!(rec.modes.entries().iter().all(|&(_, v)| v == 0.0));
        assert!(rec.estimate.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn extended_trace_halves() {
        let c = cfg(2);
        let tr = bump_trace(2, 100);
        let ext = assemble_extended_trace(&tr, &c).unwrap();
        assert_eq!(ext.values().len(), 601);
        assert_eq!(ext.values()[50], tr.plus()[50]);
        assert_eq!(ext.values()[500], -tr.minus()[100]);
        assert!(matches!(
            assemble_extended_trace(&tr, &cfg(3)),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn second_half_equals_even_part_of_series() {
        // u1(5) = sum a_k s_k cos(5 k pi / 6) from the forward coefficients
        let c = cfg(2);
        let sol = SpectralSolution::new(&Profile::smooth(), &c, 1000).unwrap();
        let b = c.basis();
        let u1: f64 = sol
            .pressure_coefficients()
            .iter()
            .map(|(k, a)| a * denominator(k, &c) * (b.frequency(k) * 5.0).cos())
            .sum();
        let ext = assemble_extended_trace(&bump_trace(2, 100), &c).unwrap();
        assert_abs_diff_eq!(ext.values()[500], u1, epsilon = 1e-6);
    }

    #[test]
    fn single_mode_recovery() {
        let c = cfg(2);
        let r = c.radius();
        let half = 300;
        let fhat = |t: f64| 3f64.sqrt() / 2.0 * (PI * t / (2.0 * r)).cos();
        let plus: Vec<f64> = (0..=half).map(|j| fhat(j as f64 / 100.0)).collect();
        let minus: Vec<f64> = (0..=half)
            .map(|j| -fhat(2.0 * r - j as f64 / 100.0))
            .collect();
        let tr = BoundaryTrace::new(100, plus, minus).unwrap();
        let ext = assemble_extended_trace(&tr, &c).unwrap();
        let m = recover_coefficients(&ext, 5, &c).unwrap();
        assert_eq!(m.skipped(), &[3]);
        assert_eq!(m.get(3), None);
        assert_abs_diff_eq!(m.get(1).unwrap(), 1.0, epsilon = 1e-10);
        for k in [2, 4, 5] {
            assert_abs_diff_eq!(m.get(k).unwrap(), 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn skip_set_for_t2() {
        let c = cfg(2);
        let ext = assemble_extended_trace(&bump_trace(2, 100), &c).unwrap();
        let m = recover_coefficients(&ext, 10, &c).unwrap();
        assert_eq!(m.skipped(), &[3, 6, 9]);
        assert_eq!(m.entries().len(), 7);
    }

    #[test]
    fn resolution_guard_applies_to_trace_sampling() {
        let c = cfg(2);
        let ext = assemble_extended_trace(&bump_trace(2, 10), &c).unwrap();
        // 4R / (K / N) = 120 / K >= 8 allows K <= 15
        assert!(recover_coefficients(&ext, 15, &c).is_ok());
        assert!(matches!(
            recover_coefficients(&ext, 16, &c),
            Err(Error::Resolution { .. })
        ));
    }

    #[test]
    fn conditioning_guard_for_non_integer_padding() {
        // T = 1.5: (2 + T) k / (2 (1 + T)) = 0.7 k is an integer at k = 10,
        // which the (T + 1) n skip rule does not cover
        let denom = |k: usize| (3.5 * k as f64 * PI / 5.0).sin();
        let err = divide_out(|_| Ok(1.0), denom, |_| false, 12).unwrap_err();
        assert!(matches!(err, Error::Conditioning { k: 10, .. }));
    }

    #[test]
    fn reconstruction_scales_by_factor() {
        let c = cfg(2);
        let pts = crate::grid::unit_interval_points(41);
        let rec = reconstruct(&bump_trace(2, 100), 30, &c, &pts).unwrap();
        assert_eq!(rec.factor, 1.5);
        for (a, p) in rec.estimate.iter().zip(&rec.partial) {
            assert_eq!(*a, 1.5 * p);
        }
        assert!(reconstruct(&bump_trace(2, 100), 30, &c, &[1.5]).is_err());
    }

    #[test]
    fn odd_padding_needs_no_factor() {
        let c = cfg(3);
        let pts = crate::grid::unit_interval_points(201);
        let rec = reconstruct(&bump_trace(3, 100), 80, &c, &pts).unwrap();
        assert_eq!(rec.factor, 1.0);
        assert_eq!(
            rec.modes.skipped(),
            &[4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 52, 56, 60, 64, 68, 72, 76, 80]
        );
        let p = Profile::smooth();
        let err = pts.iter().zip(&rec.estimate).fold(0.0_f64, |m, (&x, v)| {
            m.max((v - p.initial_pressure(x)).abs())
        });
        assert!(err < 5e-3, "max error {err}");
    }
}
