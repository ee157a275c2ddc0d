//! Forward problem on the padded interval: the separated-variables series
//! and an independent d'Alembert / method-of-images solution.

use crate::error::{Error, Result};
use crate::observation::BoundaryTrace;
use crate::profile::{sample_extended, Profile, Shape};
use crate::quadrature::{pairwise_sum, simpson_fn};
use crate::spectral::{CoefficientVector, PaddingConfig, SineBasis};

/// Default number of forward modes.
pub const DEFAULT_FORWARD_MODES: usize = 400;

/// Anything that can evaluate the pressure `u(x, t)`.
pub trait WaveSolution {
    fn value(&self, x: f64, t: f64) -> f64;
}

impl<F: Fn(f64, f64) -> f64> WaveSolution for F {
    fn value(&self, x: f64, t: f64) -> f64 {
        self(x, t)
    }
}

/// Grid density used to analyze a profile for `modes` modes: at least
/// 1024 intervals per unit length, rounded up to a power of two so the
/// kinks of the built-in profiles at `x = +-1/2` land on Simpson panel
/// boundaries.
pub fn analysis_points_per_unit(modes: usize, radius: f64) -> usize {
    let needed = (2.0 * modes as f64 / radius).ceil() as usize;
    needed.next_power_of_two().max(1024)
}

/// Truncated eigenfunction expansion
/// `u(x, t) = sum_k X_k(x) (a_k cos(w_k t) + b_k sin(w_k t) / w_k)`.
#[derive(Debug, Clone)]
pub struct SpectralSolution {
    basis: SineBasis,
    pressure: CoefficientVector,
    velocity: Option<CoefficientVector>,
}

impl SpectralSolution {
    /// Expands the zero-extension of `profile` in `modes` sine modes.
    pub fn new(profile: &Profile, cfg: &PaddingConfig, modes: usize) -> Result<Self> {
        let basis = cfg.basis();
        let ppu = analysis_points_per_unit(modes, basis.radius());
        let a = sample_extended(profile.pressure(), basis.radius(), ppu)?;
        let pressure = basis.analyze(&a, modes)?;
        let velocity = if profile.velocity().is_zero() {
            None
        } else {
            let b = sample_extended(profile.velocity(), basis.radius(), ppu)?;
            Some(basis.analyze(&b, modes)?)
        };
        Ok(SpectralSolution {
            basis,
            pressure,
            velocity,
        })
    }

    /// Uses the given coefficients directly, bypassing profile analysis.
    pub fn from_coefficients(
        cfg: &PaddingConfig,
        pressure: CoefficientVector,
        velocity: Option<CoefficientVector>,
    ) -> Result<Self> {
        if let Some(v) = &velocity {
            if v.modes() != pressure.modes() {
                return Err(Error::Domain(
                    "pressure and velocity coefficient counts differ".into(),
                ));
            }
        }
        Ok(SpectralSolution {
            basis: cfg.basis(),
            pressure,
            velocity,
        })
    }

    pub fn pressure_coefficients(&self) -> &CoefficientVector {
        &self.pressure
    }

    pub fn velocity_coefficients(&self) -> Option<&CoefficientVector> {
        self.velocity.as_ref()
    }

    /// Modal amplitude `T_k(t)` and its time derivative.
    pub fn modal_state(&self, k: usize, t: f64) -> (f64, f64) {
        let w = self.basis.frequency(k);
        let a = self.pressure.get(k).unwrap_or(0.0);
        let b = self.velocity.as_ref().and_then(|v| v.get(k)).unwrap_or(0.0);
        let (s, c) = (w * t).sin_cos();
        (a * c + b * s / w, -a * w * s + b * c)
    }

    /// `sum_k lambda_k T_k(t)^2 + T_k'(t)^2`.
    pub fn modal_energy(&self, t: f64) -> f64 {
        let terms: Vec<f64> = (1..=self.pressure.modes())
            .map(|k| {
                let (amp, rate) = self.modal_state(k, t);
                self.basis.frequency(k).powi(2) * amp * amp + rate * rate
            })
            .collect();
        pairwise_sum(&terms)
    }
}

impl WaveSolution for SpectralSolution {
    fn value(&self, x: f64, t: f64) -> f64 {
        let terms: Vec<f64> = (1..=self.pressure.modes())
            .map(|k| self.basis.eval_unchecked(k, x) * self.modal_state(k, t).0)
            .collect();
        pairwise_sum(&terms)
    }
}

/// d'Alembert solution of the Dirichlet problem on `(-R, R)` by the method
/// of images: the zero-extended data are continued oddly about `+-R` and
/// `4R`-periodically.
#[derive(Debug, Clone)]
pub struct DalembertSolution {
    profile: Profile,
    radius: f64,
}

impl DalembertSolution {
    pub fn new(profile: &Profile, cfg: &PaddingConfig) -> Self {
        DalembertSolution {
            profile: profile.clone(),
            radius: cfg.radius(),
        }
    }

    fn image(&self, shape: &Shape, s: f64) -> f64 {
        let r = self.radius;
        if s.abs() <= r {
            return shape.eval(s);
        }
        let folded = (s + r).rem_euclid(4.0 * r) - r;
        if folded <= r {
            shape.eval(folded)
        } else {
            -shape.eval(2.0 * r - folded)
        }
    }
}

impl WaveSolution for DalembertSolution {
    fn value(&self, x: f64, t: f64) -> f64 {
        let a = self.profile.pressure();
        let mut u = 0.5 * (self.image(a, x + t) + self.image(a, x - t));
        let b = self.profile.velocity();
        if !b.is_zero() && t != 0.0 {
            let panels = 2 * ((t * 1024.0).ceil() as usize).max(1);
            // panels > 0, so the quadrature cannot fail
            let integral =
                simpson_fn(|s| self.image(b, s), x - t, x + t, panels).unwrap_or(f64::NAN);
            u += 0.5 * integral;
        }
        u
    }
}

pub fn dalembert_eval(profile: &Profile, x: f64, t: f64, cfg: &PaddingConfig) -> f64 {
    DalembertSolution::new(profile, cfg).value(x, t)
}

/// Space-time samples `u(x_i, t_j)`, stored time-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    space: Vec<f64>,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl Field {
    pub fn space(&self) -> &[f64] {
        &self.space
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// `u(space[i], times[j])`.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.space.len() + i]
    }

    pub fn time_slice(&self, j: usize) -> &[f64] {
        let n = self.space.len();
        &self.values[j * n..(j + 1) * n]
    }
}

/// Evaluates the `modes`-term series on `space_points` uniform points of
/// `[-R, R]` and the given times, which must lie in `[0, 2R]`.
pub fn solve_forward(
    profile: &Profile,
    cfg: &PaddingConfig,
    modes: usize,
    space_points: usize,
    times: &[f64],
) -> Result<Field> {
    let r = cfg.radius();
    if let Some(&t) = times.iter().find(|&&t| !(0.0..=2.0 * r).contains(&t)) {
        return Err(Error::Domain(format!("time {t} outside [0, {}]", 2.0 * r)));
    }
    if space_points < 2 {
        return Err(Error::Domain("space grid needs at least two points".into()));
    }
    let solution = SpectralSolution::new(profile, cfg, modes)?;
    let h = 2.0 * r / (space_points - 1) as f64;
    let space: Vec<f64> = (0..space_points)
        .map(|i| {
            if i + 1 == space_points {
                r
            } else {
                -r + i as f64 * h
            }
        })
        .collect();
    let mut values = Vec::with_capacity(space.len() * times.len());
    for &t in times {
        values.extend(space.iter().map(|&x| solution.value(x, t)));
    }
    Ok(Field {
        space,
        times: times.to_vec(),
        values,
    })
}

/// Samples `u(+-1, j / N)` for `j = 0..=N * horizon`.
///
/// The inverse method needs the traces on `[0, R]`; shorter horizons are
/// rejected.
pub fn boundary_traces(
    solution: &impl WaveSolution,
    samples_per_unit: u32,
    horizon: u32,
    cfg: &PaddingConfig,
) -> Result<BoundaryTrace> {
    if f64::from(horizon) < cfg.radius() {
        return Err(Error::InsufficientData(format!(
            "trace horizon {horizon} shorter than R = {}",
            cfg.radius()
        )));
    }
    if samples_per_unit == 0 {
        return Err(Error::Domain(
            "samples per unit time must be positive".into(),
        ));
    }
    let count = (samples_per_unit * horizon) as usize + 1;
    let n = f64::from(samples_per_unit);
    let times = (0..count).map(|j| j as f64 / n);
    let (plus, minus): (Vec<f64>, Vec<f64>) = times
        .map(|t| (solution.value(1.0, t), solution.value(-1.0, t)))
        .unzip();
    BoundaryTrace::new(samples_per_unit, plus, minus)
}
