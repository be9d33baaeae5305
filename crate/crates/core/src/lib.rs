//! Pseudospectral solver and contraction certificates for the epitaxial growth
//! equation `h_t = Δ exp(−Δh)` on the periodic torus T^n, n ∈ {1, 2}.
//!
//! Two solution engines are provided and checked against each other:
//!
//! * [`picard`]: iteration of the Duhamel map
//!   `T h = e^{−Δ²t} h₀ + I⁺(Σ_{j≥2} F_j(h))` on time-gridded trajectories,
//!   with the Duhamel integral evaluated exactly for piecewise-linear data.
//! * [`stepper`]: an integrating-factor RK4 (or ETD-Euler) time stepper.
//!
//! [`certificate`] evaluates the smallness conditions (‖Δh₀‖_A < 1/4 and the
//! admissible growth rate α) under which the Duhamel map is a contraction, and
//! [`norms`] provides the Wiener-type norms and the analyticity-radius fit used to
//! observe the linear-in-time growth of the radius.

pub mod certificate;
pub mod cli;
pub mod error;
pub mod nonlinear;
pub mod norms;
pub mod picard;
pub mod semigroup;
pub mod spectral;
pub mod stepper;
pub mod trajectory;

pub use certificate::{certify, max_alpha, Certificate};
pub use error::{Error, Result};
pub use nonlinear::TaylorDepth;
pub use norms::{analyticity_radius, radius_history, spacetime_norm, wiener_norm, LineFit, RadiusFit, WeightParams};
pub use picard::{duhamel_map, solve_picard, PicardDiagnostics, PicardSolution};
pub use semigroup::{duhamel_iplus, linear_trajectory, operator_bound_probe, propagate, ProbeReport};
pub use spectral::{FourierField, GridField, Wavevector};
pub use stepper::{solve_timestep, InitialLayer, Scheme, SolverConfig};
pub use trajectory::Trajectory;
