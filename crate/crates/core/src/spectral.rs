//! Dirichlet eigenpairs on the padded interval `(-R, R)` with `R = 1 + T`,
//! and the sine/cosine series machinery built on them.
//!
//! The sine basis is `X_k(x) = sin(k pi (x + R) / (2R))`, `k >= 1`, with
//! eigenvalue `(k pi / (2R))^2` and squared norm `R`. Coefficients always use
//! the squared-norm normalization `c_k = (f, X_k) / R`, so synthesis is the
//! plain sum `sum_k c_k X_k`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::quadrature::{pairwise_sum, simpson_weights};

/// Minimum samples per wavelength of the highest requested mode.
pub const MIN_POINTS_PER_WAVELENGTH: f64 = 8.0;

/// Integer padding `T >= 1`; the artificial Dirichlet wall sits at `|x| = T + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PaddingConfig {
    padding: u32,
}

impl PaddingConfig {
    pub fn new(padding: u32) -> Result<Self> {
        if padding < 1 {
            return Err(Error::Domain(format!(
                "padding T must be a positive integer, got {padding}"
            )));
        }
        Ok(PaddingConfig { padding })
    }

    /// The padding `T`.
    pub fn padding(&self) -> u32 {
        self.padding
    }

    /// The half-width `R = T + 1` of the padded interval.
    pub fn radius(&self) -> f64 {
        f64::from(self.padding + 1)
    }

    pub fn basis(&self) -> SineBasis {
        SineBasis {
            radius: self.radius(),
        }
    }
}

/// Sine eigenbasis of `-d^2/dx^2` on `(-radius, radius)` with Dirichlet walls.
///
/// Usually obtained from [`PaddingConfig::basis`]; constructing one directly
/// with `radius = 1` gives the unpadded basis `sin(n pi (x + 1) / 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineBasis {
    radius: f64,
}

impl SineBasis {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Domain(format!(
                "basis radius must be positive, got {radius}"
            )));
        }
        Ok(SineBasis { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `sqrt(lambda_k) = k pi / (2R)`.
    pub fn frequency(&self, k: usize) -> f64 {
        k as f64 * PI / (2.0 * self.radius)
    }

    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        check_mode(k)?;
        Ok(self.frequency(k).powi(2))
    }

    pub fn eval(&self, k: usize, x: f64) -> Result<f64> {
        check_mode(k)?;
        self.check_position(x)?;
        Ok(self.eval_unchecked(k, x))
    }

    pub(crate) fn eval_unchecked(&self, k: usize, x: f64) -> f64 {
        ((x + self.radius) * self.frequency(k)).sin()
    }

    fn check_position(&self, x: f64) -> Result<()> {
        if x.abs() > self.radius * (1.0 + 1e-12) || x.is_nan() {
            return Err(Error::Domain(format!(
                "position {x} outside [-{r}, {r}]",
                r = self.radius
            )));
        }
        Ok(())
    }

    /// Rejects grids with fewer than [`MIN_POINTS_PER_WAVELENGTH`] samples per
    /// wavelength (`4R / k`) of mode `k_max`.
    pub fn check_resolution(&self, step: f64, k_max: usize) -> Result<()> {
        let points_per_wavelength = 4.0 * self.radius / (k_max as f64 * step);
        if points_per_wavelength < MIN_POINTS_PER_WAVELENGTH {
            return Err(Error::Resolution {
                k: k_max,
                points_per_wavelength,
                required: MIN_POINTS_PER_WAVELENGTH,
            });
        }
        Ok(())
    }

    /// Sine coefficients `c_k = (f, X_k) / R`, `k = 1..=modes`, by composite
    /// Simpson quadrature over the full interval.
    pub fn analyze(&self, f: &GridFunction, modes: usize) -> Result<CoefficientVector> {
        if modes < 1 {
            return Err(Error::Domain("mode count must be at least 1".into()));
        }
        let tol = 1e-12 * self.radius;
        if (f.lo() + self.radius).abs() > tol || (f.hi() - self.radius).abs() > tol {
            return Err(Error::Domain(format!(
                "analysis grid [{}, {}] does not cover [-{r}, {r}]",
                f.lo(),
                f.hi(),
                r = self.radius
            )));
        }
        self.check_resolution(f.step(), modes)?;
        let weighted: Vec<(f64, f64)> = simpson_weights(f.len(), f.step())?
            .into_iter()
            .zip(f.values())
            .enumerate()
            .map(|(i, (w, v))| (f.point(i) + self.radius, w * v))
            .collect();
        let values: Vec<f64> = (1..=modes)
            .into_par_iter()
            .map(|k| {
                let omega = self.frequency(k);
                let terms: Vec<f64> = weighted
                    .iter()
                    .map(|&(shifted, wv)| wv * (shifted * omega).sin())
                    .collect();
                pairwise_sum(&terms) / self.radius
            })
            .collect();
        CoefficientVector::new(values)
    }

    /// Evaluates `sum_k c_k X_k(x)`.
    pub fn synthesize(&self, coeffs: &CoefficientVector, x: f64) -> Result<f64> {
        self.check_position(x)?;
        let terms: Vec<f64> = coeffs
            .iter()
            .map(|(k, c)| c * self.eval_unchecked(k, x))
            .collect();
        Ok(pairwise_sum(&terms))
    }

    pub fn synthesize_many(&self, coeffs: &CoefficientVector, xs: &[f64]) -> Result<Vec<f64>> {
        xs.iter().map(|&x| self.synthesize(coeffs, x)).collect()
    }

    /// `(1/R) * integral_0^{2R} g(t) cos(k pi t / (2R)) dt`.
    pub fn cosine_coefficient(&self, g: &GridFunction, k: usize) -> Result<f64> {
        check_mode(k)?;
        let period = 2.0 * self.radius;
        let tol = 1e-12 * period;
        if g.lo().abs() > tol || (g.hi() - period).abs() > tol {
            return Err(Error::Domain(format!(
                "cosine analysis needs samples on [0, {period}], got [{}, {}]",
                g.lo(),
                g.hi()
            )));
        }
        let omega = self.frequency(k);
        let w = simpson_weights(g.len(), g.step())?;
        let terms: Vec<f64> = g
            .values()
            .iter()
            .zip(&w)
            .enumerate()
            .map(|(i, (v, w))| w * v * (omega * g.point(i)).cos())
            .collect();
        Ok(pairwise_sum(&terms) / self.radius)
    }
}

fn check_mode(k: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::Domain("mode index starts at 1".into()));
    }
    Ok(())
}

/// Sine-basis coefficients indexed from `k = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    values: Vec<f64>,
}

impl CoefficientVector {
    /// `values[0]` is the coefficient of `X_1`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "coefficient {} is not finite",
                i + 1
            )));
        }
        Ok(CoefficientVector { values })
    }

    pub fn zeros(modes: usize) -> Self {
        CoefficientVector {
            values: vec![0.0; modes],
        }
    }

    /// Number of modes `K`.
    pub fn modes(&self) -> usize {
        self.values.len()
    }

    /// Coefficient of mode `k`, or `None` outside `1..=K`.
    pub fn get(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (i + 1, v))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

pub fn eigenvalue(k: usize, cfg: &PaddingConfig) -> Result<f64> {
    cfg.basis().eigenvalue(k)
}

pub fn basis_eval(k: usize, cfg: &PaddingConfig, x: f64) -> Result<f64> {
    cfg.basis().eval(k, x)
}

pub fn analyze(f: &GridFunction, modes: usize, cfg: &PaddingConfig) -> Result<CoefficientVector> {
    cfg.basis().analyze(f, modes)
}

pub fn synthesize(c: &CoefficientVector, cfg: &PaddingConfig, x: f64) -> Result<f64> {
    cfg.basis().synthesize(c, x)
}

pub fn cosine_coefficient(g: &GridFunction, k: usize, cfg: &PaddingConfig) -> Result<f64> {
    cfg.basis().cosine_coefficient(g, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg(t: u32) -> PaddingConfig {
        PaddingConfig::new(t).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        assert_abs_diff_eq!(
            eigenvalue(1, &cfg(2)).unwrap(),
            0.2741556778,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(eigenvalue(6, &cfg(2)).unwrap(), PI * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(
            eigenvalue(2, &cfg(1)).unwrap(),
            2.4674011003,
            epsilon = 1e-9
        );
        assert!(eigenvalue(0, &cfg(2)).is_err());
        let l: Vec<f64> = (1..20).map(|k| eigenvalue(k, &cfg(3)).unwrap()).collect();
        assert!(l.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn padding_must_be_positive() {
        assert!(PaddingConfig::new(0).is_err());
        assert_eq!(cfg(2).radius(), 3.0);
    }

    #[test]
    fn basis_examples() {
        let c = cfg(2);
        for k in 1..10 {
            assert_eq!(basis_eval(k, &c, -3.0).unwrap(), 0.0);
            assert_abs_diff_eq!(basis_eval(k, &c, 3.0).unwrap(), 0.0, epsilon = 1e-13);
        }
        assert_abs_diff_eq!(basis_eval(1, &c, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(basis_eval(2, &c, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        assert!(basis_eval(1, &c, 3.5).is_err());
    }

    #[test]
    fn analyze_single_mode() {
        let c = cfg(2);
        let b = c.basis();
        let f = GridFunction::sample(-3.0, 3.0, 6 * 64 + 1, |x| b.eval_unchecked(2, x)).unwrap();
        let coeffs = analyze(&f, 5, &c).unwrap();
        for (k, v) in coeffs.iter() {
            let expect = if k == 2 { 1.0 } else { 0.0 };
            assert_abs_diff_eq!(v, expect, epsilon = 1e-10);
        }
        let zero = GridFunction::sample(-3.0, 3.0, 385, |_| 0.0).unwrap();
        assert!(analyze(&zero, 5, &c).unwrap().iter().all(|(_, v)| v == 0.0));
    }

    #[test]
    fn analyze_guards_resolution_and_coverage() {
        let c = cfg(2);
        // 4R / (K h) = 12 / (K / 10) < 8 once K > 15
        let f = GridFunction::sample(-3.0, 3.0, 61, |_| 1.0).unwrap();
        assert!(analyze(&f, 15, &c).is_ok());
        assert!(matches!(
            analyze(&f, 16, &c),
            Err(Error::Resolution { k: 16, .. })
        ));
        let short = GridFunction::sample(-2.0, 3.0, 61, |_| 1.0).unwrap();
        assert!(matches!(analyze(&short, 5, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn synthesize_examples() {
        let c = cfg(2);
        let mut e1 = vec![0.0; 4];
        e1[0] = 1.0;
        let e1 = CoefficientVector::new(e1).unwrap();
        assert_abs_diff_eq!(synthesize(&e1, &c, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        let z = CoefficientVector::zeros(7);
        assert_eq!(synthesize(&z, &c, 1.3).unwrap(), 0.0);
        assert!(synthesize(&z, &c, -3.1).is_err());
    }

    #[test]
    fn cosine_coefficient_examples() {
        let c = cfg(2);
        let r = c.radius();
        let n = 6 * 100 + 1;
        let g = GridFunction::sample(0.0, 2.0 * r, n, |t| (PI * t / (2.0 * r)).cos()).unwrap();
        assert_abs_diff_eq!(cosine_coefficient(&g, 1, &c).unwrap(), 1.0, epsilon = 1e-10);
        let g = GridFunction::sample(0.0, 2.0 * r, n, |_| 3.7).unwrap();
        for k in 1..10 {
            assert_abs_diff_eq!(cosine_coefficient(&g, k, &c).unwrap(), 0.0, epsilon = 1e-10);
        }
        let g = GridFunction::sample(0.0, 2.0 * r, n, |t| {
            (2.0 * PI * t / (2.0 * r)).cos() + 2.0 * (5.0 * PI * t / (2.0 * r)).cos()
        })
        .unwrap();
        assert_abs_diff_eq!(cosine_coefficient(&g, 5, &c).unwrap(), 2.0, epsilon = 1e-10);
        let partial = GridFunction::sample(0.0, r, n, |_| 1.0).unwrap();
        assert!(cosine_coefficient(&partial, 1, &c).is_err());
    }

    #[test]
    fn coefficient_vector_rejects_nan() {
        assert!(CoefficientVector::new(vec![1.0, f64::NAN]).is_err());
        let c = CoefficientVector::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(c.get(0), None);
        assert_eq!(c.get(2), Some(2.0));
        assert_eq!(c.get(3), None);
    }
}
