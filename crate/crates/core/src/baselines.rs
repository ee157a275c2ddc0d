//! Comparison methods: a brute-force least-squares fit of the sine/cosine
//! expansion to the traces, and time reversal by a leapfrog finite
//! difference scheme on `[-1, 1]`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::observation::BoundaryTrace;
use crate::quadrature::pairwise_sum;
use crate::spectral::{CoefficientVector, PaddingConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct LsqReport {
    pub coefficients: CoefficientVector,
    pub residual_norm: f64,
    /// `(sigma_max / sigma_min)^2` of the design matrix, the condition number
    /// of the normal system. Infinite when a column is exactly zero.
    pub condition_estimate: f64,
    pub rank: usize,
    /// Set when singular values fell below working precision and were
    /// truncated from the solve.
    pub rank_deficient: bool,
}

impl LsqReport {
    /// `sum_k c_k X_k(x)` at each point.
    pub fn evaluate(&self, cfg: &PaddingConfig, points: &[f64]) -> Result<Vec<f64>> {
        cfg.basis().synthesize_many(&self.coefficients, points)
    }
}

/// Least-squares fit of `c_1..c_K` to
/// `F(+-1, t_j) ~ sum_k c_k X_k(+-1) cos(w_k t_j)`.
///
/// Solved through the SVD of the stacked design matrix. Singular values
/// below `sigma_max * max(rows, K) * eps` are dropped, giving the
/// minimum-norm solution on the numerically resolvable subspace.
pub fn lsq_fit(tr: &BoundaryTrace, modes: usize, cfg: &PaddingConfig) -> Result<LsqReport> {
    if modes < 1 {
        return Err(Error::Domain("mode count must be at least 1".into()));
    }
    let basis = cfg.basis();
    let n = tr.len();
    let rows = 2 * n;
    let design = DMatrix::from_fn(rows, modes, |i, col| {
        let k = col + 1;
        let (x, j) = if i < n { (1.0, i) } else { (-1.0, i - n) };
        basis.eval_unchecked(k, x) * (basis.frequency(k) * tr.time(j)).cos()
    });
    let rhs = DVector::from_iterator(rows, tr.plus().iter().chain(tr.minus()).copied());

    let svd = design.clone().svd(true, true);
    let sigma = &svd.singular_values;
    let s_max = sigma.max();
    let s_min = sigma.min();
    let tol = s_max * rows.max(modes) as f64 * f64::EPSILON;
    let rank = sigma.iter().filter(|&&s| s > tol).count();
    let condition_estimate = if s_min > 0.0 {
        (s_max / s_min).powi(2)
    } else {
        f64::INFINITY
    };
    let solution = svd
        .solve(&rhs, tol)
        .map_err(|e| Error::Domain(format!("least-squares solve failed: {e}")))?;
    let residual = &design * &solution - &rhs;
    let sq: Vec<f64> = residual.iter().map(|r| r * r).collect();
    Ok(LsqReport {
        coefficients: CoefficientVector::new(solution.iter().copied().collect())?,
        residual_norm: pairwise_sum(&sq).sqrt(),
        condition_estimate,
        rank,
        rank_deficient: rank < modes,
    })
}

/// Parameters of the backward leapfrog solve.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FdConfig {
    /// Spatial step on `[-1, 1]`.
    pub h: f64,
    /// Time step.
    pub tau: f64,
    /// Terminal time at which the state is taken to be zero.
    pub t_final: f64,
}

impl FdConfig {
    /// `h = tau = 2.5e-3`, `t_final = min(T + 1, 2T)`.
    pub fn default_for(cfg: &PaddingConfig) -> Self {
        let t = f64::from(cfg.padding());
        FdConfig {
            h: 2.5e-3,
            tau: 2.5e-3,
            t_final: (t + 1.0).min(2.0 * t),
        }
    }

    fn cells(&self) -> Result<usize> {
        integer_ratio(2.0, self.h, "2 / h")
    }

    fn steps(&self) -> Result<usize> {
        integer_ratio(self.t_final, self.tau, "t_final / tau")
    }

    pub fn validate(&self, cfg: &PaddingConfig) -> Result<()> {
        if !(self.h > 0.0 && self.tau > 0.0 && self.h.is_finite() && self.tau.is_finite()) {
            return Err(Error::Config("FD steps must be positive".into()));
        }
        if self.tau / self.h > 1.0 + 1e-12 {
            return Err(Error::Config(format!(
                "CFL violated: tau / h = {} > 1",
                self.tau / self.h
            )));
        }
        let upper = 2.0 * f64::from(cfg.padding());
        if !(2.0 - 1e-12..=upper + 1e-12).contains(&self.t_final) {
            return Err(Error::Config(format!(
                "terminal time {} outside [2, {upper}]",
                self.t_final
            )));
        }
        self.cells()?;
        self.steps()?;
        Ok(())
    }
}

fn integer_ratio(num: f64, den: f64, what: &str) -> Result<usize> {
    let q = num / den;
    let r = q.round();
    if r < 1.0 || (q - r).abs() > 1e-9 * r {
        return Err(Error::Config(format!(
            "{what} = {q} is not a positive integer"
        )));
    }
    Ok(r as usize)
}

/// Explicit leapfrog for `u_tt = u_xx` on a uniform grid, two time levels.
#[derive(Debug, Clone)]
pub struct Leapfrog {
    h: f64,
    tau: f64,
    courant_sq: f64,
    previous: Vec<f64>,
    current: Vec<f64>,
}

impl Leapfrog {
    pub fn new(h: f64, tau: f64, previous: Vec<f64>, current: Vec<f64>) -> Self {
        assert_eq!(previous.len(), current.len());
        Leapfrog {
            h,
            tau,
            courant_sq: (tau / h).powi(2),
            previous,
            current,
        }
    }

    pub fn current(&self) -> &[f64] {
        &self.current
    }

    /// Advances one level, imposing Dirichlet values at both ends.
    pub fn step(&mut self, left: f64, right: f64) {
        let u = &self.current;
        let n = u.len();
        let mut next = vec![0.0; n];
        for i in 1..n - 1 {
            next[i] = 2.0 * u[i] - self.previous[i]
                + self.courant_sq * (u[i + 1] - 2.0 * u[i] + u[i - 1]);
        }
        next[0] = left;
        next[n - 1] = right;
        self.previous = std::mem::replace(&mut self.current, next);
    }

    /// Discrete energy between the two stored levels; conserved exactly
    /// (up to rounding) under homogeneous Dirichlet data when
    /// `tau <= h`.
    pub fn energy(&self) -> f64 {
        let (u0, u1) = (&self.previous, &self.current);
        let kinetic: Vec<f64> = u0
            .iter()
            .zip(u1)
            .map(|(a, b)| ((b - a) / self.tau).powi(2))
            .collect();
        let potential: Vec<f64> = (0..u0.len() - 1)
            .map(|i| (u1[i + 1] - u1[i]) * (u0[i + 1] - u0[i]) / (self.h * self.h))
            .collect();
        0.5 * self.h * (pairwise_sum(&kinetic) + pairwise_sum(&potential))
    }
}

/// Time reversal on `[-1, 1]`: starting from `u = u_t = 0` at `t_final`,
/// march `u_tt = u_xx` back to `t = 0` with the measured traces as Dirichlet
/// data (linearly interpolated in time) and return `u(., 0)`.
pub fn backward_fd(tr: &BoundaryTrace, fd: &FdConfig, cfg: &PaddingConfig) -> Result<GridFunction> {
    fd.validate(cfg)?;
    if fd.t_final > tr.horizon() + 1e-12 {
        return Err(Error::InsufficientData(format!(
            "terminal time {} beyond trace horizon {}",
            fd.t_final,
            tr.horizon()
        )));
    }
    let cells = fd.cells()?;
    let steps = fd.steps()?;
    let h = 2.0 / cells as f64;
    let tau = fd.t_final / steps as f64;
    let mut solver = Leapfrog::new(h, tau, vec![0.0; cells + 1], vec![0.0; cells + 1]);
    for s in 1..=steps {
        let t = if s == steps {
            0.0
        } else {
            fd.t_final - s as f64 * tau
        };
        let (plus, minus) = tr.interpolate(t);
        solver.step(minus, plus);
    }
    GridFunction::new(-1.0, 1.0, solver.current().to_vec())
}
