//! Initial data `(a, b) = (u, u_t)` at `t = 0`, supported inside `(-1, 1)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridFunction;

/// Support tolerance for `a(x) = 0` at `|x| >= 1`.
const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Smooth,
    Step,
    Tabulated,
}

impl ProfileKind {
    pub fn name(self) -> &'static str {
        match self {
            ProfileKind::Smooth => "smooth",
            ProfileKind::Step => "step",
            ProfileKind::Tabulated => "tabulated",
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smooth" => Ok(ProfileKind::Smooth),
            "step" => Ok(ProfileKind::Step),
            "tabulated" => Ok(ProfileKind::Tabulated),
            other => Err(Error::Config(format!("unknown profile `{other}`"))),
        }
    }
}

/// A single function of `x` with support in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Zero,
    /// `1/2 + 1/2 cos(2 pi x)` on `|x| <= 1/2`, zero elsewhere. C^1.
    SmoothBump,
    /// Indicator of `[-1/2, 1/2]`.
    Step,
    /// Linear interpolation of samples on `[-1, 1]`.
    Tabulated(GridFunction),
}

impl Shape {
    /// Tabulated shape from uniform samples on `[-1, 1]`; the end samples
    /// must vanish.
    pub fn tabulated(values: Vec<f64>) -> Result<Self> {
        let g = GridFunction::new(-1.0, 1.0, values)?;
        let first = g.values()[0];
        let last = g.values()[g.len() - 1];
        if first.abs() > SUPPORT_TOL || last.abs() > SUPPORT_TOL {
            return Err(Error::Domain(format!(
                "tabulated profile must vanish at x = -1 and x = 1, got {first} and {last}"
            )));
        }
        if g.values().iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(
                "tabulated profile has non-finite samples".into(),
            ));
        }
        Ok(Shape::Tabulated(g))
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x.abs() >= 1.0 {
            return 0.0;
        }
        match self {
            Shape::Zero => 0.0,
            Shape::SmoothBump => {
                if x.abs() <= 0.5 {
                    0.5 + 0.5 * (2.0 * PI * x).cos()
                } else {
                    0.0
                }
            }
            Shape::Step => {
                if x.abs() <= 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Tabulated(g) => g.interpolate(x),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Shape::Zero)
    }
}

/// Initial pressure `a` and initial velocity `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    kind: ProfileKind,
    pressure: Shape,
    velocity: Shape,
}

impl Profile {
    pub fn smooth() -> Self {
        Self::from_kind(ProfileKind::Smooth, Shape::SmoothBump)
    }

    pub fn step() -> Self {
        Self::from_kind(ProfileKind::Step, Shape::Step)
    }

    pub fn tabulated(values: Vec<f64>) -> Result<Self> {
        Ok(Self::from_kind(
            ProfileKind::Tabulated,
            Shape::tabulated(values)?,
        ))
    }

    /// The built-in profile of the given kind. Tabulated profiles need data
    /// and are rejected here.
    pub fn builtin(kind: ProfileKind) -> Result<Self> {
        match kind {
            ProfileKind::Smooth => Ok(Self::smooth()),
            ProfileKind::Step => Ok(Self::step()),
            ProfileKind::Tabulated => {
                Err(Error::Config("tabulated profiles need sample data".into()))
            }
        }
    }

    fn from_kind(kind: ProfileKind, pressure: Shape) -> Self {
        Profile {
            kind,
            pressure,
            velocity: Shape::Zero,
        }
    }

    pub fn with_velocity(mut self, velocity: Shape) -> Self {
        self.velocity = velocity;
        self
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn pressure(&self) -> &Shape {
        &self.pressure
    }

    pub fn velocity(&self) -> &Shape {
        &self.velocity
    }

    /// `a(x)`.
    pub fn initial_pressure(&self, x: f64) -> f64 {
        self.pressure.eval(x)
    }

    /// `b(x)`.
    pub fn initial_velocity(&self, x: f64) -> f64 {
        self.velocity.eval(x)
    }
}

/// Zero-extension of `shape` sampled on `[-radius, radius]` with
/// `points_per_unit` intervals per unit length.
pub fn sample_extended(shape: &Shape, radius: f64, points_per_unit: usize) -> Result<GridFunction> {
    let intervals = (2.0 * radius * points_per_unit as f64).round() as usize;
    GridFunction::sample(-radius, radius, intervals + 1, |x| shape.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_inside_unit_ball() {
        for p in [Profile::smooth(), Profile::step()] {
            let g = sample_extended(p.pressure(), 3.0, 256).unwrap();
            for (x, v) in g.points().into_iter().zip(g.values()) {
                if x.abs() >= 1.0 {
                    assert!(v.abs() <= SUPPORT_TOL);
                }
            }
        }
    }

    #[test]
    fn smooth_bump_values() {
        let p = Profile::smooth();
        assert_eq!(p.initial_pressure(0.0), 1.0);
        assert!(p.initial_pressure(0.5).abs() < 1e-16);
        assert_eq!(p.initial_pressure(0.7), 0.0);
        assert!((p.initial_pressure(0.25) - 0.5).abs() < 1e-15);
        assert_eq!(p.initial_velocity(0.0), 0.0);
    }

    #[test]
    fn step_values() {
        let p = Profile::step();
        assert_eq!(p.initial_pressure(0.5), 1.0);
        assert_eq!(p.initial_pressure(-0.5), 1.0);
        assert_eq!(p.initial_pressure(0.5000001), 0.0);
    }

    #[test]
    fn tabulated_requires_vanishing_ends() {
        assert!(Profile::tabulated(vec![0.0, 1.0, 0.0]).is_ok());
        assert!(Profile::tabulated(vec![0.1, 1.0, 0.0]).is_err());
        let p = Profile::tabulated(vec![0.0, 0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.initial_pressure(0.0), 1.0);
        assert!((p.initial_pressure(0.25) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in [
            ProfileKind::Smooth,
            ProfileKind::Step,
            ProfileKind::Tabulated,
        ] {
            assert_eq!(k.name().parse::<ProfileKind>().unwrap(), k);
        }
        assert!("gauss".parse::<ProfileKind>().is_err());
    }
}
