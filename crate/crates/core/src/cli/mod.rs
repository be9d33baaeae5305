//! Command-line orchestration: run specifications, mode dispatch, and artifacts.
//!
//! A run is described by a [`RunSpec`], read from a JSON file carrying
//! `"schema_version": 1` and adjusted by command-line flags. Every JSON artifact
//! holds the resolved spec under `"run_spec"`; every CSV starts with a
//! `# run_spec: {...}` comment line, which gnuplot skips.

mod modes;
pub mod presets;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::RADIUS_FLOOR;
use crate::spectral::FourierField;
use crate::stepper::SolverConfig;

pub use modes::run;
pub use presets::{Preset, ProbeSuite};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "EPITAXY_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Certify, run both engines, write trajectories and their comparison.
    #[default]
    Solve,
    /// Write the certificate for the initial data.
    Certify,
    /// Randomized check of the Duhamel operator bound.
    ProbeOperator,
    /// Certificates and Picard outcomes over a grid of amplitudes.
    Sweep,
    /// Difference norms between two stored trajectories.
    Compare,
    /// Analyticity-radius fit at every node of a trajectory.
    Radius,
}

/// Initial data: a named preset, or a path to a serialized field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InitialData {
    Preset(Preset),
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSettings {
    /// Target values of ‖Δh₀‖_A; the initial data is rescaled to each.
    pub amplitudes: Vec<f64>,
    /// Attempt the Picard iteration at each point (certified points, or all with the override).
    pub iterate: bool,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings {
            amplitudes: vec![0.20, 0.24, 0.249, 0.251, 0.30],
            iterate: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSettings {
    pub left: PathBuf,
    pub right: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadiusSettings {
    /// Stored trajectory to analyze; when absent the Picard solution is computed.
    pub trajectory: Option<PathBuf>,
    pub floor: f64,
}

impl Default for RadiusSettings {
    fn default() -> Self {
        RadiusSettings {
            trajectory: None,
            floor: RADIUS_FLOOR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSpec {
    pub schema_version: u32,
    pub mode: Mode,
    pub initial_data: InitialData,
    pub solver: SolverConfig,
    pub alpha: Option<f64>,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub override_certificate: bool,
    pub sweep: SweepSettings,
    pub probe: ProbeSuite,
    pub compare: Option<CompareSettings>,
    pub radius: RadiusSettings,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            schema_version: SCHEMA_VERSION,
            mode: Mode::Solve,
            initial_data: InitialData::Preset(Preset::single_mode(0.2)),
            solver: SolverConfig::default(),
            alpha: None,
            output_dir: PathBuf::from("out"),
            seed: 0,
            override_certificate: false,
            sweep: SweepSettings::default(),
            probe: ProbeSuite::default(),
            compare: None,
            radius: RadiusSettings::default(),
        }
    }
}

impl RunSpec {
    /// Parses a config document. `schema_version` is mandatory.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("schema_version").and_then(|v| v.as_u64()) {
            Some(v) if v == u64::from(SCHEMA_VERSION) => {}
            Some(v) => {
                return Err(Error::Config(format!(
                    "unsupported schema_version {v}; this build reads {SCHEMA_VERSION}"
                )))
            }
            None => return Err(Error::Config("config lacks an integer schema_version".into())),
        }
        serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Sets the seed, including the seed of a random preset.
    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
        if let InitialData::Preset(p) = &self.initial_data {
            self.initial_data = InitialData::Preset(p.with_seed(seed));
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!("unsupported schema_version {}", self.schema_version)));
        }
        self.solver.validate()?;
        if let Some(a) = self.alpha {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::Config(format!("alpha must lie in (0, 1), got {a}")));
            }
        }
        match self.mode {
            Mode::Sweep => {
                if self.sweep.amplitudes.is_empty() {
                    return Err(Error::Config("sweep needs at least one amplitude".into()));
                }
                if let Some(a) = self.sweep.amplitudes.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
                    return Err(Error::Config(format!("sweep amplitudes must be positive, got {a}")));
                }
            }
            Mode::ProbeOperator => {
                let p = &self.probe;
                if p.trials == 0 || p.max_truncation == 0 || p.alphas.is_empty() {
                    return Err(Error::Config("probe needs trials, max_truncation and alphas".into()));
                }
                if let Some(a) = p.alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
                    return Err(Error::Config(format!("probe alphas must lie in (0, 1), got {a}")));
                }
                crate::trajectory::uniform_times(p.t_final, p.dt)?;
            }
            Mode::Compare if self.compare.is_none() => {
                return Err(Error::Config("compare mode needs a \"compare\" section".into()));
            }
            Mode::Radius if !(self.radius.floor > 0.0) => {
                return Err(Error::Config("radius floor must be positive".into()));
            }
            _ => {}
        }
        Ok(())
    }

    /// Builds the initial data at the solver truncation.
    pub fn initial_field(&self) -> Result<FourierField> {
        let field = match &self.initial_data {
            InitialData::Preset(p) => p.build(self.solver.truncation)?,
            InitialData::File { path } => read_field(path)?,
        };
        if field.truncation() != self.solver.truncation {
            return Err(Error::Config(format!(
                "initial data has truncation {}, solver expects {}",
                field.truncation(),
                self.solver.truncation
            )));
        }
        Ok(field)
    }
}

/// Reads a field stored bare or under a `"field"` key.
pub fn read_field(path: &Path) -> Result<FourierField> {
    read_payload(path, "field")
}

/// Reads a trajectory stored bare or under a `"trajectory"` key, as written by `solve`.
pub fn read_trajectory(path: &Path) -> Result<crate::trajectory::Trajectory> {
    read_payload(path, "trajectory")
}

fn read_payload<T: serde::de::DeserializeOwned>(path: &Path, key: &str) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut value: serde_json::Value = serde_json::from_str(&text)?;
    if let Some(inner) = value.get_mut(key) {
        value = inner.take();
    }
    Ok(serde_json::from_value(value)?)
}

#[derive(Debug, Parser)]
#[command(name = "epitaxy", version, about = "Pseudospectral solver and contraction certificates for h_t = Δ exp(−Δh) on the torus")]
pub struct Args {
    #[arg(value_enum)]
    pub mode: Mode,
    /// JSON run specification.
    #[arg(long)]
    pub config: PathBuf,
    /// Weight growth rate α ∈ (0, 1); defaults to half the largest admissible α.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Run the Picard iteration even when the certificate fails.
    #[arg(long)]
    pub override_certificate: bool,
}

impl Args {
    /// Loads the config file and applies the flags.
    pub fn resolve(&self) -> Result<RunSpec> {
        let mut spec = RunSpec::from_file(&self.config)?;
        spec.mode = self.mode;
        if let Some(a) = self.alpha {
            spec.alpha = Some(a);
        }
        if let Some(out) = &self.out {
            spec.output_dir = out.clone();
        }
        if let Some(s) = self.seed {
            spec.set_seed(s);
        }
        if self.override_certificate {
            spec.override_certificate = true;
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Caps the global rayon pool from [`THREADS_ENV`], if set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a pool already built by an earlier call in the same process is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Machine-readable error report.
pub fn error_json(err: &Error) -> serde_json::Value {
    let mut value = serde_json::json!({
        "error": {
            "kind": err.kind(),
            "message": err.to_string(),
            "exit_code": err.exit_code(),
        }
    });
    if let Error::NotConverged(diag) = err {
        value["error"]["diagnostics"] = serde_json::to_value(diag).unwrap_or_default();
    }
    value
}

/// Full command-line entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out_dir = args.out.clone();
    let result = configure_threads()
        .and_then(|_| args.resolve())
        .and_then(|spec| run(&spec).map(|paths| (spec, paths)));
    match result {
        Ok((_, paths)) => {
            for p in paths {
                println!("{}", p.display());
            }
            0
        }
        Err(err) => {
            let report = error_json(&err);
            let text = serde_json::to_string_pretty(&report).unwrap_or_default();
            eprintln!("{text}");
            if let Some(dir) = out_dir {
                if fs::create_dir_all(&dir).is_ok() {
                    let _ = fs::write(dir.join("error.json"), text + "\n");
                }
            }
            err.exit_code()
        }
    }
}
