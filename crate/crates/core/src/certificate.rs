//! Smallness certificate for the contraction argument.
//!
//! With ball radius r₁ = r₀ around the linear flow, the Duhamel map is a
//! contraction that maps the ball into itself when
//!
//! * r₀ < 1/4,
//! * r₀ ≤ (1 − α) / (2(2 − α)),
//! * (e^{r₀+r₁} − 1)/(1 − α) < 1,
//! * (e^{r₀+r₁} − 1 − (r₀+r₁))/(1 − α) ≤ r₁.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::wiener_norm;
use crate::spectral::FourierField;

/// Smallness threshold on ‖Δh₀‖_A.
pub const THRESHOLD: f64 = 0.25;

/// α used when r₀ is at or above the threshold and the caller supplied none. No
/// admissible α exists there; the certificate fails regardless of this choice.
pub const FALLBACK_ALPHA: f64 = 0.5;

/// Largest r₀ the mapping condition admits for a given α: (1 − α)/(2(2 − α)).
pub fn mapping_bound(alpha: f64) -> f64 {
    (1.0 - alpha) / (2.0 * (2.0 - alpha))
}

/// Largest r₀ the contraction condition admits for a given α (with r₁ = r₀): ln(2 − α)/2.
pub fn contraction_bound(alpha: f64) -> f64 {
    (2.0 - alpha).ln() / 2.0
}

/// Largest α with r₀ ≤ (1 − α)/(2(2 − α)), i.e. (1 − 4r₀)/(1 − 2r₀).
pub fn max_alpha(r0: f64) -> Result<f64> {
    if !(r0 >= 0.0) {
        return Err(Error::InvalidParameter(format!("r0 must be ≥ 0, got {r0}")));
    }
    if r0 >= THRESHOLD {
        return Err(Error::AboveThreshold { r0 });
    }
    Ok((1.0 - 4.0 * r0) / (1.0 - 2.0 * r0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// ‖Δh₀‖_A.
    pub r0: f64,
    pub alpha: f64,
    /// Ball radius, set to r₀.
    pub r1: f64,
    /// (e^{r₀+r₁} − 1)/(1 − α).
    pub contraction_constant: f64,
    /// (e^{r₀+r₁} − 1 − (r₀+r₁))/(1 − α).
    pub mapping_lhs: f64,
    pub pass: bool,
    /// The smallness threshold, echoed for audit.
    pub threshold: f64,
}

impl Certificate {
    /// Evaluates all conditions for a given r₀ and α ∈ (0, 1).
    pub fn evaluate(r0: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        if !(r0 >= 0.0 && r0.is_finite()) {
            return Err(Error::InvalidParameter(format!("r0 must be finite and ≥ 0, got {r0}")));
        }
        let r1 = r0;
        let s = r0 + r1;
        let contraction_constant = s.exp_m1() / (1.0 - alpha);
        let mapping_lhs = (s.exp_m1() - s) / (1.0 - alpha);
        let pass = r0 < THRESHOLD
            && r0 <= mapping_bound(alpha)
            && contraction_constant < 1.0
            && mapping_lhs <= r1;
        Ok(Certificate {
            r0,
            alpha,
            r1,
            contraction_constant,
            mapping_lhs,
            pass,
            threshold: THRESHOLD,
        })
    }

    /// e^{2r₀} < 2 − α, implied by a passing certificate.
    pub fn exponential_condition(&self) -> bool {
        (2.0 * self.r0).exp() < 2.0 - self.alpha
    }
}

/// Default α for a given r₀: the midpoint of (0, max_alpha(r₀)), or
/// [`FALLBACK_ALPHA`] above the threshold.
pub fn default_alpha(r0: f64) -> f64 {
    match max_alpha(r0) {
        Ok(a) => a / 2.0,
        Err(_) => FALLBACK_ALPHA,
    }
}

/// Certificate for initial data h₀ with r₀ = ‖Δh₀‖_A.
pub fn certify(h0: &FourierField, alpha: Option<f64>) -> Result<Certificate> {
    let r0 = wiener_norm(h0, 2);
    let alpha = alpha.unwrap_or_else(|| default_alpha(r0));
    Certificate::evaluate(r0, alpha)
}
