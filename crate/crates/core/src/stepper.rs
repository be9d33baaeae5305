//! Exponential-integrator time stepping for h_t = −Δ²h + Σ_{j≥2} ΔF_j. The stiff
//! linear part is integrated exactly; this engine is the independent check on the
//! Picard construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nonlinear::{exponential_remainder, taylor_sum, TaylorDepth};
use crate::semigroup::phi1_neg;
use crate::spectral::{laplacian, min_grid_points, padded_grid_points, FourierField};
use crate::trajectory::{uniform_times, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Scheme {
    /// Classical RK4 on the integrating-factor variable e^{|k|⁴t}ĥ.
    #[default]
    #[serde(rename = "IF-RK4")]
    IfRk4,
    /// ĥ ← e^{−|k|⁴dt}ĥ + dt·φ₁(−|k|⁴dt)·N̂(h).
    #[serde(rename = "ETD-Euler")]
    EtdEuler,
}

/// Start-up layer: the first `steps` intervals of length dt are each split into
/// `refinement` equal substeps. Modes with |k|⁴dt ≫ 1 decay within a fraction of
/// one step; the finer nodes resolve that transient in the nonlinear forcing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct InitialLayer {
    pub steps: usize,
    pub refinement: usize,
}

impl Default for InitialLayer {
    fn default() -> Self {
        InitialLayer {
            steps: 16,
            refinement: 16,
        }
    }
}

impl InitialLayer {
    pub const OFF: InitialLayer = InitialLayer {
        steps: 0,
        refinement: 1,
    };
}

/// Shared configuration for both engines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub truncation: usize,
    pub dt: f64,
    pub t_final: f64,
    pub padding: f64,
    pub taylor: TaylorDepth,
    /// Picard stopping tolerance in the (α, 2) norm.
    pub tol: f64,
    pub max_iter: usize,
    pub scheme: Scheme,
    /// Output stride, in steps of dt.
    pub record_every: usize,
    pub initial_layer: InitialLayer,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            truncation: 16,
            dt: 1e-3,
            t_final: 4.0,
            padding: 2.0,
            taylor: TaylorDepth::default(),
            tol: 1e-10,
            max_iter: 200,
            scheme: Scheme::IfRk4,
            record_every: 1,
            initial_layer: InitialLayer::default(),
        }
    }
}

impl SolverConfig {
    /// Accuracy-driven step suggestion min(1e-3, 5/N⁴), shrunk so it divides `t_final`.
    pub fn suggested_dt(truncation: usize, t_final: f64) -> f64 {
        let n4 = (truncation as f64).powi(4);
        let raw = (1e-3f64).min(5.0 / n4);
        t_final / (t_final / raw).ceil()
    }

    pub fn validate(&self) -> Result<()> {
        if self.truncation == 0 {
            return Err(Error::Config("truncation must be positive".into()));
        }
        padded_grid_points(self.truncation, self.padding)?;
        debug_assert!(min_grid_points(self.truncation) > 0);
        uniform_times(self.t_final, self.dt)?;
        self.taylor.validate()?;
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 || self.record_every == 0 || self.initial_layer.refinement == 0 {
            return Err(Error::Config(
                "max_iter, record_every and initial_layer.refinement must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Computational time grid: the uniform dt grid with the start-up layer
    /// subdivided. The flag marks nodes of the uniform grid, whose times equal
    /// those of [`uniform_times`] exactly.
    pub fn compute_times(&self) -> Result<(Vec<f64>, Vec<bool>)> {
        let base = uniform_times(self.t_final, self.dt)?;
        let layer = self.initial_layer;
        let mut times = Vec::with_capacity(base.len() + layer.steps * layer.refinement);
        let mut on_base = Vec::with_capacity(times.capacity());
        for (i, &t) in base.iter().enumerate() {
            times.push(t);
            on_base.push(true);
            if i < layer.steps && i + 1 < base.len() {
                let h = (base[i + 1] - t) / layer.refinement as f64;
                for s in 1..layer.refinement {
                    times.push(t + s as f64 * h);
                    on_base.push(false);
                }
            }
        }
        Ok((times, on_base))
    }

    /// The time grid both engines report on.
    pub fn output_times(&self) -> Result<Vec<f64>> {
        let all = uniform_times(self.t_final, self.dt)?;
        Ok(all.into_iter().step_by(self.record_every).collect())
    }
}

/// Σ_{j≥2} ΔF_j = rhs(h) + Δ²h. The depth selects the series truncation; the
/// adaptive setting sums all orders through the pointwise exponential.
pub fn nonlinear_remainder(field: &FourierField, depth: TaylorDepth, padding: f64) -> Result<FourierField> {
    match depth {
        d if d.is_linear() => FourierField::zeros(field.dim(), field.truncation()),
        TaylorDepth::Fixed(_) => Ok(laplacian(&taylor_sum(field, depth, padding)?.field)),
        TaylorDepth::Adaptive { .. } => Ok(laplacian(&exponential_remainder(field, padding)?.field)),
    }
}

fn decay(field: &FourierField, t: f64) -> FourierField {
    field.apply_multiplier(|k| {
        let k2 = k.norm_sq() as f64;
        (-k2 * k2 * t).exp()
    })
}

/// One step of the configured scheme.
pub fn step(field: &FourierField, dt: f64, config: &SolverConfig) -> Result<FourierField> {
    let linear_part = decay(field, dt);
    if config.taylor.is_linear() {
        return Ok(linear_part);
    }
    let n = |f: &FourierField| nonlinear_remainder(f, config.taylor, config.padding);
    let next = match config.scheme {
        Scheme::IfRk4 => {
            let half = |f: &FourierField| decay(f, 0.5 * dt);
            let a = n(field)?;
            let ua = half(&(field + &a.scale(0.5 * dt)));
            let b = n(&ua)?;
            let ub = &half(field) + &b.scale(0.5 * dt);
            let c = n(&ub)?;
            let uc = &linear_part + &half(&c).scale(dt);
            let d = n(&uc)?;
            let mut incr = decay(&a, dt);
            incr = &incr + &half(&(&b + &c)).scale(2.0);
            incr = &incr + &d;
            &linear_part + &incr.scale(dt / 6.0)
        }
        Scheme::EtdEuler => {
            let a = n(field)?;
            let weighted = a.apply_multiplier(|k| {
                let k2 = k.norm_sq() as f64;
                dt * phi1_neg(k2 * k2 * dt)
            });
            &linear_part + &weighted
        }
    };
    Ok(next)
}

/// Marches from 0 to T, recording every `record_every` steps.
pub fn solve_timestep(h0: &FourierField, config: &SolverConfig) -> Result<Trajectory> {
    config.validate()?;
    if h0.truncation() != config.truncation {
        return Err(Error::Config(format!(
            "initial data has truncation {}, config expects {}",
            h0.truncation(),
            config.truncation
        )));
    }
    let (grid, on_base) = config.compute_times()?;
    let mut times = vec![0.0];
    let mut fields = vec![h0.clone()];
    let mut state = h0.clone();
    let mut base_index = 0usize;
    for i in 1..grid.len() {
        let next = step(&state, grid[i] - grid[i - 1], config)?;
        if !next.is_finite() {
            return Err(Error::StepRejected {
                last_good_time: grid[i - 1],
            });
        }
        state = next;
        if on_base[i] {
            base_index += 1;
            if base_index.is_multiple_of(config.record_every) {
                times.push(grid[i]);
                fields.push(state.clone());
            }
        }
    }
    Ok(Trajectory::from_parts(times, fields))
}
