//! Recovery of the initial pressure of the one-dimensional wave equation
//! from pressure traces recorded at `x = -1` and `x = 1`.
//!
//! The model: `u_tt = u_xx`, `u(., 0) = a`, `u_t(., 0) = 0`, with `a`
//! supported in `(-1, 1)`. An artificial Dirichlet wall at `|x| = T + 1`
//! (integer padding `T`) does not affect the traces during the observation
//! window, so the solution expands in the sine eigenbasis of the padded
//! interval. The two traces glue into one even signal whose cosine
//! coefficients give the sine coefficients of `a`, up to a known factor and
//! a set of degenerate indices handled by a parity correction.
//!
//! Modules, bottom up:
//!
//! * [`spectral`]: eigenpairs, sine analysis/synthesis, cosine coefficients.
//! * [`forward`]: the series solution and a d'Alembert oracle; boundary traces.
//! * [`observation`]: sampled traces, noise, CSV format.
//! * [`inverse`]: extended trace, coefficient recovery, parity correction.
//! * [`baselines`]: least-squares fit and backward finite differences.
//! * [`harness`]: pipelines, sweeps, output files.
//!
//! ```
//! use pa1d::forward::{boundary_traces, DalembertSolution};
//! use pa1d::grid::unit_interval_points;
//! use pa1d::inverse::reconstruct;
//! use pa1d::profile::Profile;
//! use pa1d::spectral::PaddingConfig;
//!
//! let cfg = PaddingConfig::new(2)?;
//! let profile = Profile::smooth();
//! let trace = boundary_traces(&DalembertSolution::new(&profile, &cfg), 100, 3, &cfg)?;
//! let rec = reconstruct(&trace, 50, &cfg, &unit_interval_points(401))?;
//! assert_eq!(rec.factor, 1.5);
//! assert!((rec.estimate[200] - 1.0).abs() < 1e-2);
//! # Ok::<(), pa1d::Error>(())
//! ```

pub mod baselines;
pub mod error;
pub mod forward;
pub mod grid;
pub mod harness;
pub mod inverse;
pub mod metrics;
pub mod observation;
pub mod profile;
pub mod quadrature;
pub mod spectral;

pub use error::{Error, Result};
