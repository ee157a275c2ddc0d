use crate::error::{Error, Result};
use crate::quadrature;

/// Samples of a function on a closed, uniformly spaced interval grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    lo: f64,
    hi: f64,
    values: Vec<f64>,
}

impl GridFunction {
    /// Wraps samples taken at `lo + i * (hi - lo) / (n - 1)`.
    pub fn new(lo: f64, hi: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain("grid needs at least two samples".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::Domain(format!("invalid grid interval [{lo}, {hi}]")));
        }
        Ok(GridFunction { lo, hi, values })
    }

    /// Samples `f` at `n` uniform points covering `[lo, hi]`.
    pub fn sample(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain("grid needs at least two samples".into()));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let values = (0..n).map(|i| f(lo + i as f64 * h)).collect();
        Self::new(lo, hi, values)
    }

    /// Builds a grid function from explicit sample points, checking that they
    /// are strictly increasing and uniform to 1e-12 relative.
    pub fn from_points(points: &[f64], values: Vec<f64>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::Domain(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if points.len() < 2 {
            return Err(Error::Domain("grid needs at least two samples".into()));
        }
        let lo = points[0];
        let hi = points[points.len() - 1];
        let h = (hi - lo) / (points.len() - 1) as f64;
        let scale = hi.abs().max(lo.abs()).max(hi - lo);
        for (i, &p) in points.iter().enumerate() {
            if i > 0 && p <= points[i - 1] {
                return Err(Error::Domain(format!(
                    "grid points not strictly increasing at index {i}"
                )));
            }
            if (p - (lo + i as f64 * h)).abs() > 1e-12 * scale {
                return Err(Error::Domain(format!("grid not uniform at index {i}")));
            }
        }
        Self::new(lo, hi, values)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.values.len() - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.values.len() {
            self.hi
        } else {
            self.lo + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Simpson integral of the samples over the grid interval.
    pub fn integral(&self) -> Result<f64> {
        quadrature::simpson(&self.values, self.step())
    }

    /// Piecewise-linear interpolation, clamped to the grid interval.
    pub fn interpolate(&self, x: f64) -> f64 {
        let h = self.step();
        let s = ((x - self.lo) / h).clamp(0.0, (self.len() - 1) as f64);
        let i = (s.floor() as usize).min(self.len() - 2);
        let frac = s - i as f64;
        if frac == 0.0 {
            return self.values[i];
        }
        self.values[i] * (1.0 - frac) + self.values[i + 1] * frac
    }
}

/// Uniform grid of `n` points on `[-1, 1]`, the default output carrier of
/// reconstructions.
pub fn unit_interval_points(n: usize) -> Vec<f64> {
    let h = 2.0 / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { 1.0 } else { -1.0 + i as f64 * h })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_uniform_points() {
        let pts = [0.0, 0.1, 0.25, 0.3];
        assert!(GridFunction::from_points(&pts, vec![0.0; 4]).is_err());
        let pts = [0.0, 0.1, 0.2, 0.3];
        assert!(GridFunction::from_points(&pts, vec![0.0; 4]).is_ok());
    }

    #[test]
    fn endpoints_present() {
        let g = GridFunction::sample(-3.0, 3.0, 601, |x| x).unwrap();
        assert_eq!(g.point(0), -3.0);
        assert_eq!(g.point(600), 3.0);
        assert_eq!(g.values()[600], 3.0);
    }

    #[test]
    fn interpolation_hits_nodes_and_midpoints() {
        let g = GridFunction::sample(0.0, 1.0, 11, |x| 2.0 * x).unwrap();
        assert_eq!(g.interpolate(0.3), g.values()[3]);
        assert!((g.interpolate(0.35) - 0.7).abs() < 1e-12);
        assert_eq!(g.interpolate(5.0), 2.0);
    }

    #[test]
    fn unit_interval_has_exact_endpoints() {
        let p = unit_interval_points(401);
        assert_eq!(p[0], -1.0);
        assert_eq!(p[200], 0.0);
        assert_eq!(p[400], 1.0);
    }
}
