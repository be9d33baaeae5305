//! The Duhamel fixed-point map T h = e^{−Δ²t}h₀ + I⁺(Σ_{j≥2} F_j(h)) and its
//! iteration from the linear flow.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::nonlinear::{taylor_sum, TaylorDepth};
use crate::norms::{spacetime_norm, WeightParams};
use crate::semigroup::{duhamel_iplus, linear_trajectory};
use crate::spectral::FourierField;
use crate::stepper::SolverConfig;
use crate::trajectory::Trajectory;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PicardDiagnostics {
    pub iterations: usize,
    /// ‖h^{m+1} − h^m‖ in the (α, 2) norm, one per iteration.
    pub deltas: Vec<f64>,
    /// deltas[m+1] / deltas[m].
    pub empirical_ratios: Vec<f64>,
    /// ‖h^m − h⁰‖ in the (α, 2) norm for each produced iterate.
    pub ball_distances: Vec<f64>,
    pub certified_constant: f64,
    pub converged: bool,
}

impl PicardDiagnostics {
    /// CSV rows `iter,delta,ratio,ball_distance`; the first row has no ratio.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iter,delta,ratio,ball_distance\n");
        for (m, (delta, ball)) in self.deltas.iter().zip(&self.ball_distances).enumerate() {
            let ratio = if m == 0 {
                String::new()
            } else {
                format!("{:e}", self.empirical_ratios[m - 1])
            };
            let _ = writeln!(out, "{},{:e},{},{:e}", m + 1, delta, ratio, ball);
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct PicardSolution {
    pub solution: Trajectory,
    pub diag: PicardDiagnostics,
}

/// Σ_j F_j(h) at every node, means dropped (I⁺ annihilates them).
fn nonlinear_trajectory(h: &Trajectory, depth: TaylorDepth, padding: f64) -> Result<Trajectory> {
    if depth.is_linear() {
        return Trajectory::zeros(h.times().to_vec(), h.dim(), h.truncation());
    }
    let fields = h
        .fields()
        .par_iter()
        .map(|f| taylor_sum(f, depth, padding).map(|a| a.field))
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory::from_parts(h.times().to_vec(), fields))
}

fn apply_map(linear: &Trajectory, h: &Trajectory, depth: TaylorDepth, padding: f64) -> Result<Trajectory> {
    let forcing = nonlinear_trajectory(h, depth, padding)?;
    linear.try_add(&duhamel_iplus(&forcing))
}

/// T h = linear_trajectory(h₀) + I⁺(Σ_{j≥2} F_j(h)).
pub fn duhamel_map(h0: &FourierField, h: &Trajectory, depth: TaylorDepth, padding: f64) -> Result<Trajectory> {
    if !h0.same_shape(&h.fields()[0]) {
        return Err(Error::InvalidTrajectory(
            "initial data and trajectory differ in dim or truncation".into(),
        ));
    }
    let linear = linear_trajectory(h0, h.times())?;
    apply_map(&linear, h, depth, padding)
}

/// Iterates T from the linear flow until successive iterates differ by less than
/// `config.tol` in the (α, 2) norm. Requires a passing certificate.
pub fn solve_picard(h0: &FourierField, cert: &Certificate, config: &SolverConfig) -> Result<PicardSolution> {
    if !cert.pass {
        return Err(Error::CertificateFailed {
            r0: cert.r0,
            alpha: cert.alpha,
        });
    }
    iterate(h0, cert, config, true)
}

/// Same iteration without the certificate precondition or the ball check, for
/// experiments past the threshold.
pub fn solve_picard_uncertified(
    h0: &FourierField,
    cert: &Certificate,
    config: &SolverConfig,
) -> Result<PicardSolution> {
    iterate(h0, cert, config, false)
}

fn iterate(h0: &FourierField, cert: &Certificate, config: &SolverConfig, enforce_ball: bool) -> Result<PicardSolution> {
    config.validate()?;
    if h0.truncation() != config.truncation {
        return Err(Error::Config(format!(
            "initial data has truncation {}, config expects {}",
            h0.truncation(),
            config.truncation
        )));
    }
    let params = WeightParams::new(cert.alpha, 2);
    let (times, on_base) = config.compute_times()?;
    let linear = linear_trajectory(h0, &times)?;

    let mut diag = PicardDiagnostics {
        iterations: 0,
        deltas: Vec::new(),
        empirical_ratios: Vec::new(),
        ball_distances: Vec::new(),
        certified_constant: cert.contraction_constant,
        converged: false,
    };
    let mut current = linear.clone();
    while diag.iterations < config.max_iter {
        let next = apply_map(&linear, &current, config.taylor, config.padding)?;
        let delta = spacetime_norm(&next.try_sub(&current)?, params)?;
        let ball = spacetime_norm(&next.try_sub(&linear)?, params)?;
        if let Some(&prev) = diag.deltas.last() {
            diag.empirical_ratios.push(delta / prev);
        }
        diag.deltas.push(delta);
        diag.ball_distances.push(ball);
        diag.iterations += 1;
        current = next;
        if delta < config.tol {
            diag.converged = true;
            break;
        }
    }
    if !diag.converged {
        return Err(Error::NotConverged(Box::new(diag)));
    }
    let distance = *diag.ball_distances.last().unwrap_or(&0.0);
    if enforce_ball && distance > cert.r1 {
        return Err(Error::BallViolation {
            distance,
            radius: cert.r1,
        });
    }
    Ok(PicardSolution {
        solution: current.select(&on_base),
        diag,
    })
}
