//! The linear propagator e^{−Δ²t} and the Duhamel operator
//! I⁺f(t) = ∫₀ᵗ e^{−Δ²(t−s)} Δf(s) ds on piecewise-linear trajectories.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{spacetime_norm, WeightParams};
use crate::spectral::FourierField;
use crate::trajectory::{validate_times, Trajectory};

/// Below this value of λ·dt the moment weights use their power series.
const SERIES_CUTOFF: f64 = 1.0;

/// Multiplies coeff(k) by e^{−|k|⁴ t}.
pub fn propagate(field: &FourierField, t: f64) -> FourierField {
    assert!(t >= 0.0, "propagation time must be nonnegative, got {t}");
    field.apply_multiplier(|k| {
        let k2 = k.norm_sq() as f64;
        (-k2 * k2 * t).exp()
    })
}

/// Node i holds propagate(h0, t_i).
pub fn linear_trajectory(h0: &FourierField, times: &[f64]) -> Result<Trajectory> {
    validate_times(times)?;
    let fields = times.iter().map(|&t| propagate(h0, t)).collect();
    Ok(Trajectory::from_parts(times.to_vec(), fields))
}

/// φ₁-type weight ∫₀¹ e^{−zv} dv = (1 − e^{−z})/z.
pub(crate) fn phi1_neg(z: f64) -> f64 {
    if z == 0.0 {
        1.0
    } else {
        -(-z).exp_m1() / z
    }
}

/// ∫₀¹ v e^{−zv} dv.
fn moment_first(z: f64) -> f64 {
    if z < SERIES_CUTOFF {
        // Σ (−z)^n / (n! (n+2))
        let mut term = 1.0;
        let mut sum = 0.5;
        for n in 1..40 {
            term *= -z / n as f64;
            let add = term / (n + 2) as f64;
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        (phi1_neg(z) - (-z).exp()) / z
    }
}

/// ∫₀¹ (1 − v) e^{−zv} dv.
fn moment_complement(z: f64) -> f64 {
    if z < SERIES_CUTOFF {
        // Σ (−z)^n / (n+2)!
        let mut term = 0.5;
        let mut sum = 0.5;
        for n in 1..40 {
            term *= -z / (n + 2) as f64;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        (z + (-z).exp_m1()) / (z * z)
    }
}

/// ∫₀^{dt} e^{−λ(dt−s)} (f0 + (f1 − f0)s/dt) ds, without cancellation for small λ·dt.
pub fn stable_expm_moments(lambda: f64, dt: f64, f0: Complex64, f1: Complex64) -> Complex64 {
    debug_assert!(lambda >= 0.0 && dt > 0.0);
    let z = lambda * dt;
    f0 * (dt * moment_first(z)) + f1 * (dt * moment_complement(z))
}

/// ĝ(t_i, k) = −|k|² ∫₀^{t_i} e^{−|k|⁴(t_i − s)} f̂(s, k) ds with f̂ piecewise linear,
/// accumulated interval by interval.
pub fn duhamel_iplus(f: &Trajectory) -> Trajectory {
    let times = f.times();
    let nodes = times.len();
    let template = &f.fields()[0];
    let modes = template.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); modes]; nodes];
    for idx in 0..modes {
        let k = template.wavevector(idx);
        if k.is_zero() {
            continue;
        }
        let k2 = k.norm_sq() as f64;
        let lambda = k2 * k2;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..nodes - 1 {
            let dt = times[i + 1] - times[i];
            let f0 = f.fields()[i].coeffs()[idx];
            let f1 = f.fields()[i + 1].coeffs()[idx];
            acc = acc * (-lambda * dt).exp() - stable_expm_moments(lambda, dt, f0, f1) * k2;
            out[i + 1][idx] = acc;
        }
    }
    let fields = out
        .into_iter()
        .map(|c| FourierField::from_dense(template.dim(), template.truncation(), c))
        .collect();
    Trajectory::from_parts(times.to_vec(), fields)
}

/// Measured ‖I⁺f‖_{B²_α} / ‖f‖_{B⁰_α} against the bound 1/(1−α).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub alpha: f64,
    pub ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Relative slack allowed on the operator bound.
pub const PROBE_SLACK: f64 = 1e-6;

pub fn operator_bound_probe(f: &Trajectory, alpha: f64) -> Result<ProbeReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "operator bound needs alpha in (0, 1), got {alpha}"
        )));
    }
    let input = spacetime_norm(f, WeightParams::new(alpha, 0))?;
    if input == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let output = spacetime_norm(&duhamel_iplus(f), WeightParams::new(alpha, 2))?;
    let ratio = output / input;
    let bound = 1.0 / (1.0 - alpha);
    Ok(ProbeReport {
        alpha,
        ratio,
        bound,
        pass: ratio <= bound * (1.0 + PROBE_SLACK),
    })
}
