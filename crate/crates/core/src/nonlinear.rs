//! The right-hand side Δe^{−Δh}, evaluated two ways: a pointwise exponential on a
//! padded grid, and the series −Δ²h + Σ_{j≥2} ΔF_j with F_j = (−Δh)^j / j!.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{
    analyze, bilaplacian_neg, laplacian, padded_grid_points, synthesize, wiener_abs_sum,
    AnalyzedField, FourierField, GridField,
};

/// Hard cap on the adaptive series depth.
pub const TAYLOR_DEPTH_CAP: usize = 64;

/// Largest argument for which `exp` stays finite.
const EXP_ARG_MAX: f64 = 709.0;

/// How many terms of Σ_{j≥2} F_j to keep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaylorDepth {
    /// Keep j = 2..=J. `Fixed(1)` keeps nothing and switches the nonlinearity off.
    Fixed(usize),
    /// Smallest J with r^{J+1}/(J+1)! < tol, r = ‖Δh‖_A at the evaluation point.
    Adaptive { tol: f64 },
}

impl TaylorDepth {
    /// The linear sentinel: no nonlinear terms at all.
    pub const LINEAR: TaylorDepth = TaylorDepth::Fixed(1);

    pub fn is_linear(&self) -> bool {
        matches!(self, TaylorDepth::Fixed(1))
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TaylorDepth::Fixed(0) => Err(Error::InvalidParameter(
                "fixed Taylor depth must be ≥ 2 (or 1 to disable the nonlinearity)".into(),
            )),
            TaylorDepth::Fixed(j) if j > TAYLOR_DEPTH_CAP => Err(Error::InvalidParameter(format!(
                "fixed Taylor depth {j} exceeds cap {TAYLOR_DEPTH_CAP}"
            ))),
            TaylorDepth::Adaptive { tol } if !(tol.is_finite() && tol >= 0.0) => Err(
                Error::InvalidParameter(format!("Taylor tolerance must be finite and ≥ 0, got {tol}")),
            ),
            _ => Ok(()),
        }
    }

    /// Resolves the depth J for a field with ‖Δh‖_A = r.
    pub fn resolve(&self, r: f64) -> Result<usize> {
        self.validate()?;
        match *self {
            TaylorDepth::Fixed(j) => Ok(j),
            TaylorDepth::Adaptive { tol } => {
                if r == 0.0 {
                    return Ok(2);
                }
                if !r.is_finite() {
                    return Err(Error::NonFinite(format!("‖Δh‖_A = {r}")));
                }
                // next omitted term r^{J+1}/(J+1)!, starting from J = 2
                let mut depth = 2;
                let mut next = r * r * r / 6.0;
                while next >= tol {
                    if depth == TAYLOR_DEPTH_CAP {
                        return Err(Error::TaylorDepthCap {
                            cap: TAYLOR_DEPTH_CAP,
                            tail_bound: next,
                            tolerance: tol,
                        });
                    }
                    depth += 1;
                    next *= r / (depth + 1) as f64;
                }
                Ok(depth)
            }
        }
    }
}

impl Default for TaylorDepth {
    fn default() -> Self {
        TaylorDepth::Adaptive { tol: 1e-14 }
    }
}

/// Δh sampled on the padded grid.
fn padded_laplacian(field: &FourierField, padding: f64) -> Result<GridField> {
    let m = padded_grid_points(field.truncation(), padding)?;
    synthesize(&laplacian(field), m)
}

/// Fourier coefficients of Δ exp(−Δh) via a pointwise exponential.
pub fn rhs_exponential(field: &FourierField, padding: f64) -> Result<FourierField> {
    let u = padded_laplacian(field, padding)?;
    check_exponent(&u)?;
    // e^{−u} − 1 has the same Laplacian and no O(1) mean to round against
    let e = u.map(|v| (-v).exp_m1());
    Ok(laplacian(&analyze(&e, field.truncation())?.field))
}

/// Σ_{j≥2} F_j summed to all orders, as e^{−Δh} − 1 + Δh evaluated pointwise.
pub fn exponential_remainder(field: &FourierField, padding: f64) -> Result<AnalyzedField> {
    let u = padded_laplacian(field, padding)?;
    check_exponent(&u)?;
    analyze(&u.map(|v| (-v).exp_m1() + v), field.truncation())
}

fn check_exponent(u: &GridField) -> Result<()> {
    let max_value = u.samples().iter().fold(f64::NEG_INFINITY, |m, &v| m.max(-v));
    if !(max_value <= EXP_ARG_MAX) {
        return Err(Error::ExponentialOverflow { max_value });
    }
    Ok(())
}

/// F_j = ((−1)^j / j!)(Δh)^j. The mean is kept in the returned [`AnalyzedField`].
pub fn taylor_term_fj(field: &FourierField, j: usize, padding: f64) -> Result<AnalyzedField> {
    if j < 2 {
        return Err(Error::InvalidParameter(format!("F_j needs j ≥ 2, got {j}")));
    }
    let u = padded_laplacian(field, padding)?;
    let mut factorial = 1.0;
    for i in 2..=j {
        factorial *= i as f64;
    }
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let fj = u.map(|v| sign * v.powi(j as i32) / factorial);
    analyze(&fj, field.truncation())
}

/// Σ_{j=2}^{J} F_j, evaluated pointwise on the padded grid.
pub fn taylor_sum(field: &FourierField, depth: TaylorDepth, padding: f64) -> Result<AnalyzedField> {
    let max_j = depth.resolve(wiener_abs_sum(field, 2))?;
    let u = padded_laplacian(field, padding)?;
    // Horner form of Σ_{j=2}^{J} (−v)^j / j!, summed from the highest order down
    let mut inv_fact = vec![1.0f64; max_j + 1];
    for j in 1..=max_j {
        inv_fact[j] = inv_fact[j - 1] / j as f64;
    }
    let summed = u.map(|v| {
        let w = -v;
        let mut acc = inv_fact[max_j];
        for c in inv_fact[2..max_j].iter().rev() {
            acc = acc * w + c;
        }
        acc * w * w
    });
    analyze(&summed, field.truncation())
}

/// −Δ²h + Σ_{j=2}^{J} ΔF_j.
pub fn rhs_taylor(field: &FourierField, depth: TaylorDepth, padding: f64) -> Result<FourierField> {
    let linear = bilaplacian_neg(field);
    if depth.is_linear() {
        return Ok(linear);
    }
    let sum = taylor_sum(field, depth, padding)?;
    Ok(&linear + &laplacian(&sum.field))
}
