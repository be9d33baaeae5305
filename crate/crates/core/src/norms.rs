//! Wiener and weighted spacetime norms, plus the analyticity-radius estimate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{wiener_abs_sum, FourierField};
use crate::trajectory::Trajectory;

/// Default amplitude floor for the radius fit.
pub const RADIUS_FLOOR: f64 = 1e-13;

/// Weight parameters (α, j) of ‖f‖ = Σ_k |k|^j sup_t e^{αt|k|} |f̂(t, k)|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams {
    pub alpha: f64,
    pub j: u32,
}

impl WeightParams {
    pub fn new(alpha: f64, j: u32) -> Self {
        WeightParams { alpha, j }
    }
}

/// Σ_k |k|^j |coeff(k)|. With j = 2 this is ‖Δf‖_A.
pub fn wiener_norm(field: &FourierField, j: u32) -> f64 {
    wiener_abs_sum(field, j)
}

/// Σ_k |k|^j max_i e^{α t_i |k|} |f̂(t_i, k)|, the supremum taken over grid nodes.
pub fn spacetime_norm(traj: &Trajectory, params: WeightParams) -> Result<f64> {
    if !(params.alpha >= 0.0 && params.alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "alpha must be finite and ≥ 0, got {}",
            params.alpha
        )));
    }
    let template = &traj.fields()[0];
    let mut total = 0.0;
    for idx in 0..template.len() {
        let k = template.wavevector(idx);
        let magnitude = k.magnitude();
        let mut best = f64::NEG_INFINITY;
        for (t, field) in traj.times().iter().zip(traj.fields()) {
            let a = field.coeffs()[idx].norm();
            if a.is_nan() {
                return Err(Error::NonFinite(format!("NaN amplitude at mode {k}, t = {t}")));
            }
            if a > 0.0 {
                best = best.max(params.alpha * t * magnitude + a.ln());
            }
        }
        if best == f64::NEG_INFINITY {
            continue;
        }
        let weight = if params.j == 0 {
            1.0
        } else {
            magnitude.powi(params.j as i32)
        };
        total += weight * best.exp();
    }
    if !total.is_finite() {
        return Err(Error::NonFinite(format!(
            "weighted spacetime norm overflows (alpha = {}, j = {})",
            params.alpha, params.j
        )));
    }
    Ok(total)
}

/// Least-squares fit of −log|coeff(k)| ≈ ρ|k| + c over the modes above a floor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusFit {
    /// Decay rate: |f̂(k)| ≲ e^{−ρ|k|}.
    pub rho: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Number of distinct |k| shells used.
    pub shells: usize,
}

/// Estimates the exponential decay rate of the coefficients. Modes of equal |k| are
/// grouped by their largest amplitude.
pub fn analyticity_radius(field: &FourierField, floor: f64) -> Result<RadiusFit> {
    let mut shells: BTreeMap<i64, f64> = BTreeMap::new();
    for (k, c) in field.modes() {
        if k.is_zero() {
            continue;
        }
        let a = c.norm();
        let entry = shells.entry(k.norm_sq()).or_insert(0.0);
        *entry = entry.max(a);
    }
    let points: Vec<(f64, f64)> = shells
        .into_iter()
        .filter(|&(_, a)| a > floor)
        .map(|(k2, a)| ((k2 as f64).sqrt(), -a.ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::InsufficientModes {
            found: points.len(),
            required: 3,
        });
    }
    let line = LineFit::new(&points);
    Ok(RadiusFit {
        rho: line.slope,
        intercept: line.intercept,
        r_squared: line.r_squared,
        shells: points.len(),
    })
}

/// Ordinary least-squares line y ≈ slope·x + intercept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// 1 when the data are constant.
    pub r_squared: f64,
}

impl LineFit {
    /// Needs at least two distinct x values.
    pub fn new(points: &[(f64, f64)]) -> Self {
        let n = points.len() as f64;
        let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
        let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
        let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
        let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
        let slope = sxy / sxx;
        let intercept = mean_y - slope * mean_x;
        let ss_res: f64 = points.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
        let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
        LineFit {
            slope,
            intercept,
            r_squared,
        }
    }
}

/// Radius fit at every node; nodes with too few resolved shells are skipped.
pub fn radius_history(traj: &Trajectory, floor: f64) -> Result<Vec<(f64, RadiusFit)>> {
    let mut out = Vec::new();
    for (&t, f) in traj.times().iter().zip(traj.fields()) {
        match analyticity_radius(f, floor) {
            Ok(fit) => out.push((t, fit)),
            Err(Error::InsufficientModes { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::linear_trajectory;
    use crate::spectral::Wavevector;
    use num_complex::Complex64;

    fn cosine(eps: f64, k: i64) -> FourierField {
        FourierField::from_modes(1, 4, [(Wavevector::new1(k), Complex64::new(eps / 2.0, 0.0))]).unwrap()
    }

    #[test]
    fn wiener_examples() {
        assert_eq!(wiener_norm(&cosine(1.0, 1), 0), 1.0);
        assert_eq!(wiener_norm(&cosine(1.0, 1), 2), 1.0);
        assert_eq!(wiener_norm(&cosine(0.3, 2), 2), 4.0 * 0.3);
    }

    #[test]
    fn spacetime_examples() {
        let times: Vec<f64> = (0..=100).map(|i| i as f64 * 0.04).collect();
        let lin = linear_trajectory(&cosine(1.0, 1), &times).unwrap();
        for alpha in [0.0, 0.5] {
            let got = spacetime_norm(&lin, WeightParams::new(alpha, 2)).unwrap();
            assert!((got - 1.0).abs() < 1e-15, "alpha {alpha}: {got}");
        }

        // profile e^{−αt} on |k| = 1 is exactly cancelled by the weight
        let alpha = 0.3;
        let c = Complex64::new(0.7, -0.2);
        let fields = times
            .iter()
            .map(|t| {
                FourierField::from_modes(1, 4, [(Wavevector::new1(1), c * (-alpha * t).exp())]).unwrap()
            })
            .collect();
        let traj = Trajectory::new(times, fields).unwrap();
        let got = spacetime_norm(&traj, WeightParams::new(alpha, 3)).unwrap();
        assert!((got - 2.0 * c.norm()).abs() < 1e-14);
    }

    #[test]
    fn exact_exponential_profile() {
        let modes = (1..=8).map(|k| (Wavevector::new1(k), Complex64::new((-2.0 * k as f64).exp(), 0.0)));
        let f = FourierField::from_modes(1, 8, modes).unwrap();
        let fit = analyticity_radius(&f, RADIUS_FLOOR).unwrap();
        assert!((fit.rho - 2.0).abs() < 1e-9);
        assert!(fit.r_squared > 1.0 - 1e-12);
        assert_eq!(fit.shells, 8);
    }

    #[test]
    fn too_few_modes() {
        let f = cosine(1.0, 1);
        assert!(matches!(
            analyticity_radius(&f, RADIUS_FLOOR),
            Err(Error::InsufficientModes { found: 1, required: 3 })
        ));
    }

    #[test]
    fn shells_group_by_magnitude() {
        // (1,0) and (0,1) share |k| = 1; the larger amplitude represents the shell.
        let modes = [
            (Wavevector::new2(1, 0), Complex64::new(0.5, 0.0)),
            (Wavevector::new2(0, 1), Complex64::new(0.1, 0.0)),
            (Wavevector::new2(1, 1), Complex64::new(0.5 * (-(2f64).sqrt() + 1.0).exp(), 0.0)),
            (Wavevector::new2(2, 0), Complex64::new(0.5 * (-1.0f64).exp(), 0.0)),
        ];
        let f = FourierField::from_modes(2, 2, modes).unwrap();
        let fit = analyticity_radius(&f, RADIUS_FLOOR).unwrap();
        assert!((fit.rho - 1.0).abs() < 1e-12);
        assert_eq!(fit.shells, 3);
    }
}
