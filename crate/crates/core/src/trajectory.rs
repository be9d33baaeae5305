use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::FourierField;

/// A time-gridded sequence of fields. Between nodes each mode's coefficient is
/// interpreted as the linear interpolant of its node values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    times: Vec<f64>,
    fields: Vec<FourierField>,
}

#[derive(Deserialize)]
struct TrajectoryRepr {
    times: Vec<f64>,
    fields: Vec<FourierField>,
}

impl<'de> Deserialize<'de> for Trajectory {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = TrajectoryRepr::deserialize(deserializer)?;
        Trajectory::new(repr.times, repr.fields).map_err(serde::de::Error::custom)
    }
}

/// Checks that `times` starts at exactly 0, is finite, and strictly increasing.
pub fn validate_times(times: &[f64]) -> Result<()> {
    match times.first() {
        None => return Err(Error::InvalidTrajectory("time grid is empty".into())),
        Some(&t0) if t0 != 0.0 => {
            return Err(Error::InvalidTrajectory(format!("first node must be at t = 0, got {t0}")))
        }
        _ => {}
    }
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(Error::InvalidTrajectory(format!("non-finite time {t}")));
    }
    if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidTrajectory(format!(
            "times must increase strictly, found {} then {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// Uniform grid 0, dt, 2dt, …, T. `dt` must divide `t_final` to within rounding.
pub fn uniform_times(t_final: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_final > 0.0 && t_final.is_finite() && dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "need positive finite T and dt, got T = {t_final}, dt = {dt}"
        )));
    }
    let steps = (t_final / dt).round();
    if (steps * dt - t_final).abs() > 1e-9 * t_final.max(1.0) || steps < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "dt = {dt} does not divide T = {t_final}"
        )));
    }
    let steps = steps as usize;
    Ok((0..=steps).map(|i| i as f64 * dt).collect())
}

impl Trajectory {
    pub fn new(times: Vec<f64>, fields: Vec<FourierField>) -> Result<Self> {
        validate_times(&times)?;
        if times.len() != fields.len() {
            return Err(Error::InvalidTrajectory(format!(
                "{} times but {} fields",
                times.len(),
                fields.len()
            )));
        }
        let first = &fields[0];
        if let Some(f) = fields.iter().find(|f| !f.same_shape(first)) {
            return Err(Error::InvalidTrajectory(format!(
                "node fields disagree in shape: dim {} N {} vs dim {} N {}",
                first.dim(),
                first.truncation(),
                f.dim(),
                f.truncation()
            )));
        }
        if fields.iter().any(|f| !f.is_finite()) {
            return Err(Error::InvalidTrajectory("non-finite amplitude at a node".into()));
        }
        Ok(Trajectory { times, fields })
    }

    /// Constructor for internally produced trajectories that already satisfy the invariants.
    pub(crate) fn from_parts(times: Vec<f64>, fields: Vec<FourierField>) -> Self {
        debug_assert_eq!(times.len(), fields.len());
        Trajectory { times, fields }
    }

    pub fn zeros(times: Vec<f64>, dim: usize, truncation: usize) -> Result<Self> {
        let zero = FourierField::zeros(dim, truncation)?;
        let fields = vec![zero; times.len()];
        Trajectory::new(times, fields)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn fields(&self) -> &[FourierField] {
        &self.fields
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory has at least one node")
    }

    pub fn dim(&self) -> usize {
        self.fields[0].dim()
    }

    pub fn truncation(&self) -> usize {
        self.fields[0].truncation()
    }

    /// Field at the node whose time is closest to `t`.
    pub fn nearest(&self, t: f64) -> (f64, &FourierField) {
        let i = self
            .times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        (self.times[i], &self.fields[i])
    }

    fn check_compatible(&self, other: &Trajectory) -> Result<()> {
        if self.times != other.times {
            return Err(Error::InvalidTrajectory("time grids differ".into()));
        }
        if !self.fields[0].same_shape(&other.fields[0]) {
            return Err(Error::InvalidTrajectory("field shapes differ".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Trajectory) -> Result<Trajectory> {
        self.check_compatible(other)?;
        let fields = self.fields.iter().zip(&other.fields).map(|(a, b)| a + b).collect();
        Ok(Trajectory::from_parts(self.times.clone(), fields))
    }

    pub fn try_sub(&self, other: &Trajectory) -> Result<Trajectory> {
        self.check_compatible(other)?;
        let fields = self.fields.iter().zip(&other.fields).map(|(a, b)| a - b).collect();
        Ok(Trajectory::from_parts(self.times.clone(), fields))
    }

    /// Keeps the nodes whose flag is set.
    pub(crate) fn select(&self, keep: &[bool]) -> Trajectory {
        let (times, fields) = self
            .times
            .iter()
            .zip(&self.fields)
            .zip(keep)
            .filter(|(_, k)| **k)
            .map(|((t, f), _)| (*t, f.clone()))
            .unzip();
        Trajectory::from_parts(times, fields)
    }

    /// Keeps every `stride`-th node (node 0 always kept).
    pub fn subsample(&self, stride: usize) -> Trajectory {
        let stride = stride.max(1);
        let (times, fields) = self
            .times
            .iter()
            .zip(&self.fields)
            .step_by(stride)
            .map(|(t, f)| (*t, f.clone()))
            .unzip();
        Trajectory::from_parts(times, fields)
    }
}
