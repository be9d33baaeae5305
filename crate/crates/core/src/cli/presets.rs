//! Named initial data and randomized probe trajectories. All presets are mean-zero.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::wiener_norm;
use crate::spectral::{FourierField, Wavevector};
use crate::trajectory::{uniform_times, Trajectory};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case")]
pub enum Preset {
    /// amplitude · cos(k·x), so ‖Δh₀‖_A = amplitude · |k|².
    SingleMode { dim: usize, k: Vec<i64>, amplitude: f64 },
    /// a1 · cos(k1·x) + a2 · sin(k2·x).
    TwoMode {
        dim: usize,
        k1: Vec<i64>,
        a1: f64,
        k2: Vec<i64>,
        a2: f64,
    },
    /// Random phases, magnitudes ∝ e^{−decay·|k|}, rescaled so ‖Δh₀‖_A = amplitude.
    RandomDecay {
        dim: usize,
        seed: u64,
        decay: f64,
        amplitude: f64,
    },
}

impl Preset {
    pub fn single_mode(amplitude: f64) -> Self {
        Preset::SingleMode {
            dim: 1,
            k: vec![1],
            amplitude,
        }
    }

    pub fn two_mode_default() -> Self {
        Preset::TwoMode {
            dim: 2,
            k1: vec![1, 0],
            a1: 0.1,
            k2: vec![1, 1],
            a2: 0.04,
        }
    }

    pub fn random_decay_default(seed: u64) -> Self {
        Preset::RandomDecay {
            dim: 2,
            seed,
            decay: 2.0,
            amplitude: 0.2,
        }
    }

    /// Builds the field at the given truncation.
    pub fn build(&self, truncation: usize) -> Result<FourierField> {
        match self {
            Preset::SingleMode { dim, k, amplitude } => {
                let k = checked_wavevector(*dim, k)?;
                FourierField::from_modes(*dim, truncation, [(k, Complex64::new(amplitude / 2.0, 0.0))])
            }
            Preset::TwoMode { dim, k1, a1, k2, a2 } => {
                let k1 = checked_wavevector(*dim, k1)?;
                let k2 = checked_wavevector(*dim, k2)?;
                if k1 == k2 || k1 == -k2 {
                    return Err(Error::Config("two-mode preset needs distinct ±k".into()));
                }
                FourierField::from_modes(
                    *dim,
                    truncation,
                    [
                        (k1, Complex64::new(a1 / 2.0, 0.0)),
                        (k2, Complex64::new(0.0, -a2 / 2.0)),
                    ],
                )
            }
            Preset::RandomDecay {
                dim,
                seed,
                decay,
                amplitude,
            } => {
                if !(*decay > 0.0) || !(*amplitude >= 0.0) {
                    return Err(Error::Config(format!(
                        "random-decay needs decay > 0 and amplitude ≥ 0, got {decay}, {amplitude}"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let zero = FourierField::zeros(*dim, truncation)?;
                let modes: Vec<_> = zero
                    .modes()
                    .map(|(k, _)| k)
                    .filter(|k| k > &Wavevector::ZERO)
                    .map(|k| {
                        let mag = rng.gen_range(0.5..1.0) * (-decay * k.magnitude()).exp();
                        let phase = rng.gen_range(0.0..2.0 * PI);
                        (k, Complex64::from_polar(mag, phase))
                    })
                    .collect();
                let raw = FourierField::from_modes(*dim, truncation, modes)?;
                let r0 = wiener_norm(&raw, 2);
                Ok(raw.scale(amplitude / r0))
            }
        }
    }

    pub fn with_seed(&self, new_seed: u64) -> Self {
        match self {
            Preset::RandomDecay {
                dim, decay, amplitude, ..
            } => Preset::RandomDecay {
                dim: *dim,
                seed: new_seed,
                decay: *decay,
                amplitude: *amplitude,
            },
            other => other.clone(),
        }
    }
}

fn checked_wavevector(dim: usize, comps: &[i64]) -> Result<Wavevector> {
    if comps.len() != dim {
        return Err(Error::Config(format!(
            "wavevector {comps:?} does not have {dim} components"
        )));
    }
    let k = Wavevector::from_slice(comps)?;
    if k.is_zero() {
        return Err(Error::Config("preset wavevector must be nonzero".into()));
    }
    Ok(k)
}

/// Settings for the randomized operator-bound suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProbeSuite {
    pub trials: usize,
    pub alphas: Vec<f64>,
    pub max_truncation: usize,
    pub t_final: f64,
    pub dt: f64,
}

impl Default for ProbeSuite {
    fn default() -> Self {
        ProbeSuite {
            trials: 100,
            alphas: vec![0.1, 0.5, 0.9],
            max_truncation: 16,
            t_final: 4.0,
            dt: 0.01,
        }
    }
}

/// One random trajectory: 1–4 random modes in a random box (n ≤ 2, N ≤ max), each
/// with profile c·e^{−βt}(1 + a·sin(ωt + φ)), β ∈ [0, 2], a ∈ [0, 1/2].
pub fn random_probe_trajectory(rng: &mut ChaCha8Rng, suite: &ProbeSuite) -> Result<Trajectory> {
    let dim = rng.gen_range(1..=2);
    let truncation = rng.gen_range(1..=suite.max_truncation.max(1));
    let n = truncation as i64;
    let pairs = match dim {
        1 => truncation,
        _ => ((2 * truncation + 1).pow(2) - 1) / 2,
    };
    let count = rng.gen_range(1..=4usize.min(pairs));
    let mut support = Vec::with_capacity(count);
    while support.len() < count {
        let k = match dim {
            1 => Wavevector::new1(rng.gen_range(-n..=n)),
            _ => Wavevector::new2(rng.gen_range(-n..=n), rng.gen_range(-n..=n)),
        };
        if !k.is_zero() && !support.iter().any(|(q, _): &(Wavevector, _)| *q == k || *q == -k) {
            let c = Complex64::from_polar(rng.gen_range(0.01..1.0), rng.gen_range(0.0..2.0 * PI));
            let beta = rng.gen_range(0.0..2.0);
            let wiggle = rng.gen_range(0.0..0.5);
            let omega = rng.gen_range(0.0..6.0);
            let phi = rng.gen_range(0.0..2.0 * PI);
            support.push((k, (c, beta, wiggle, omega, phi)));
        }
    }
    let times = uniform_times(suite.t_final, suite.dt)?;
    let fields = times
        .iter()
        .map(|&t| {
            let modes = support.iter().map(|&(k, (c, beta, wiggle, omega, phi))| {
                let profile = (-beta * t).exp() * (1.0 + wiggle * (omega * t + phi).sin());
                (k, c * profile)
            });
            FourierField::from_modes(dim, truncation, modes)
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(times, fields)
}
