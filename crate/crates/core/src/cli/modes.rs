use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use super::presets::random_probe_trajectory;
use super::{read_trajectory, Mode, RunSpec};
use crate::certificate::{certify, Certificate};
use crate::error::{Error, Result};
use crate::norms::{radius_history, wiener_norm, LineFit};
use crate::picard::{solve_picard, solve_picard_uncertified, PicardSolution};
use crate::semigroup::operator_bound_probe;
use crate::spectral::FourierField;
use crate::stepper::{solve_timestep, SolverConfig};
use crate::trajectory::Trajectory;

/// Writes artifacts into one directory, stamping each with the run spec.
struct Sink {
    dir: PathBuf,
    spec: Value,
    written: Vec<PathBuf>,
}

impl Sink {
    fn new(dir: &Path, spec: &RunSpec) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Sink {
            dir: dir.to_path_buf(),
            spec: serde_json::to_value(spec)?,
            written: Vec::new(),
        })
    }

    fn json(&mut self, name: &str, payload: Map<String, Value>) -> Result<()> {
        let mut doc = Map::new();
        doc.insert("run_spec".into(), self.spec.clone());
        doc.extend(payload);
        let text = serde_json::to_string_pretty(&Value::Object(doc))? + "\n";
        self.write(name, &text)
    }

    fn csv(&mut self, name: &str, body: &str) -> Result<()> {
        let text = format!("# run_spec: {}\n{body}", serde_json::to_string(&self.spec)?);
        self.write(name, &text)
    }

    fn write(&mut self, name: &str, text: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, text)?;
        self.written.push(path);
        Ok(())
    }
}

fn entry(key: &str, value: impl Serialize) -> Result<Map<String, Value>> {
    let mut m = Map::new();
    m.insert(key.into(), serde_json::to_value(value)?);
    Ok(m)
}

/// Executes a validated run and returns the artifact paths. A failing certificate
/// without the override writes its artifacts and then returns
/// [`Error::CertificateFailed`].
pub fn run(spec: &RunSpec) -> Result<Vec<PathBuf>> {
    spec.validate()?;
    let mut sink = Sink::new(&spec.output_dir, spec)?;
    match spec.mode {
        Mode::Certify => certify_mode(spec, &mut sink)?,
        Mode::Solve => solve_mode(spec, &mut sink)?,
        Mode::ProbeOperator => probe_mode(spec, &mut sink)?,
        Mode::Sweep => sweep_mode(spec, &mut sink)?,
        Mode::Compare => compare_mode(spec, &mut sink)?,
        Mode::Radius => radius_mode(spec, &mut sink)?,
    }
    Ok(sink.written)
}

fn require_pass(cert: &Certificate, spec: &RunSpec) -> Result<()> {
    if cert.pass || spec.override_certificate {
        Ok(())
    } else {
        Err(Error::CertificateFailed {
            r0: cert.r0,
            alpha: cert.alpha,
        })
    }
}

fn certify_mode(spec: &RunSpec, sink: &mut Sink) -> Result<()> {
    let h0 = spec.initial_field()?;
    let cert = certify(&h0, spec.alpha)?;
    let mut payload = entry("certificate", cert)?;
    payload.insert("exponential_condition".into(), cert.exponential_condition().into());
    sink.json("certificate.json", payload)?;
    require_pass(&cert, spec)
}

/// Picard run honoring the override; diagnostics of a failed run are still written.
fn picard_run(h0: &FourierField, cert: &Certificate, config: &SolverConfig, sink: &mut Sink) -> Result<PicardSolution> {
    let result = if cert.pass {
        solve_picard(h0, cert, config)
    } else {
        solve_picard_uncertified(h0, cert, config)
    };
    match result {
        Ok(sol) => {
            sink.csv("picard_diagnostics.csv", &sol.diag.to_csv())?;
            Ok(sol)
        }
        Err(Error::NotConverged(diag)) => {
            sink.csv("picard_diagnostics.csv", &diag.to_csv())?;
            Err(Error::NotConverged(diag))
        }
        Err(e) => Err(e),
    }
}

fn solve_mode(spec: &RunSpec, sink: &mut Sink) -> Result<()> {
    let h0 = spec.initial_field()?;
    let cert = certify(&h0, spec.alpha)?;
    sink.json("certificate.json", entry("certificate", cert)?)?;
    require_pass(&cert, spec)?;

    let config = &spec.solver;
    let picard = picard_run(&h0, &cert, config, sink)?;
    let picard_traj = picard.solution.subsample(config.record_every);
    let stepper_traj = solve_timestep(&h0, config)?;
    sink.json("picard_trajectory.json", entry("trajectory", &picard_traj)?)?;
    sink.json("stepper_trajectory.json", entry("trajectory", &stepper_traj)?)?;

    let diff = picard_traj.try_sub(&stepper_traj)?;
    let mut csv = String::from("t,diff_j0,diff_j2,picard_j2,stepper_j2\n");
    let mut max_diff = 0.0f64;
    for (i, &t) in diff.times().iter().enumerate() {
        let d2 = wiener_norm(&diff.fields()[i], 2);
        max_diff = max_diff.max(d2);
        let _ = writeln!(
            csv,
            "{:e},{:e},{:e},{:e},{:e}",
            t,
            wiener_norm(&diff.fields()[i], 0),
            d2,
            wiener_norm(&picard_traj.fields()[i], 2),
            wiener_norm(&stepper_traj.fields()[i], 2),
        );
    }
    sink.csv("comparison.csv", &csv)?;

    let mut summary = entry("certificate", cert)?;
    summary.insert("picard".into(), serde_json::to_value(&picard.diag)?);
    summary.insert("max_diff_j2".into(), max_diff.into());
    sink.json("summary.json", summary)
}

#[derive(Serialize)]
struct ProbeRow {
    trial: usize,
    dim: usize,
    truncation: usize,
    alpha: f64,
    ratio: f64,
    bound: f64,
    pass: bool,
}

fn probe_mode(spec: &RunSpec, sink: &mut Sink) -> Result<()> {
    let suite = &spec.probe;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let trajectories = (0..suite.trials)
        .map(|_| random_probe_trajectory(&mut rng, suite))
        .collect::<Result<Vec<_>>>()?;
    let rows = trajectories
        .par_iter()
        .enumerate()
        .map(|(trial, traj)| {
            suite
                .alphas
                .iter()
                .map(|&alpha| {
                    let r = operator_bound_probe(traj, alpha)?;
                    Ok(ProbeRow {
                        trial,
                        dim: traj.dim(),
                        truncation: traj.truncation(),
                        alpha,
                        ratio: r.ratio,
                        bound: r.bound,
                        pass: r.pass,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<ProbeRow> = rows.into_iter().flatten().collect();

    let mut csv = String::from("trial,dim,truncation,alpha,ratio,bound,pass\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{:e},{:e},{:e},{}",
            r.trial, r.dim, r.truncation, r.alpha, r.ratio, r.bound, r.pass
        );
    }
    sink.csv("probe.csv", &csv)?;
    let failures = rows.iter().filter(|r| !r.pass).count();
    let worst = rows.iter().map(|r| r.ratio / r.bound).fold(0.0, f64::max);
    let mut summary = entry("cases", rows.len())?;
    summary.insert("failures".into(), failures.into());
    summary.insert("max_ratio_over_bound".into(), worst.into());
    sink.json("probe_summary.json", summary)?;
    if failures > 0 {
        return Err(Error::BoundExceeded {
            failures,
            cases: rows.len(),
        });
    }
    Ok(())
}

#[derive(Serialize)]
struct SweepPoint {
    amplitude: f64,
    certificate: Certificate,
    outcome: &'static str,
    iterations: Option<usize>,
    final_delta: Option<f64>,
}

fn sweep_mode(spec: &RunSpec, sink: &mut Sink) -> Result<()> {
    let base = spec.initial_field()?;
    let base_r0 = wiener_norm(&base, 2);
    if base_r0 == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let points = spec
        .sweep
        .amplitudes
        .par_iter()
        .enumerate()
        .map(|(i, &amplitude)| -> Result<(SweepPoint, Vec<PathBuf>)> {
            let h0 = base.scale(amplitude / base_r0);
            let cert = certify(&h0, spec.alpha)?;
            let mut point_sink = Sink::new(&sink.dir.join(format!("point_{i:03}")), spec)?;
            let mut payload = entry("certificate", cert)?;
            payload.insert("amplitude".into(), amplitude.into());
            point_sink.json("certificate.json", payload)?;

            let attempt = spec.sweep.iterate && (cert.pass || spec.override_certificate);
            let (outcome, iterations, final_delta) = if !attempt {
                ("skipped", None, None)
            } else {
                match picard_run(&h0, &cert, &spec.solver, &mut point_sink) {
                    Ok(sol) => ("converged", Some(sol.diag.iterations), sol.diag.deltas.last().copied()),
                    Err(Error::NotConverged(d)) => ("not_converged", Some(d.iterations), d.deltas.last().copied()),
                    Err(Error::BallViolation { .. }) => ("ball_violation", None, None),
                    Err(e) if e.exit_code() == 4 => ("numerical_failure", None, None),
                    Err(e) => return Err(e),
                }
            };
            let point = SweepPoint {
                amplitude,
                certificate: cert,
                outcome,
                iterations,
                final_delta,
            };
            Ok((point, point_sink.written))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut csv =
        String::from("amplitude,r0,alpha,contraction_constant,mapping_lhs,pass,outcome,iterations,final_delta\n");
    let opt = |v: Option<String>| v.unwrap_or_default();
    for (p, _) in &points {
        let c = &p.certificate;
        let _ = writeln!(
            csv,
            "{:e},{:e},{:e},{:e},{:e},{},{},{},{}",
            p.amplitude,
            c.r0,
            c.alpha,
            c.contraction_constant,
            c.mapping_lhs,
            c.pass,
            p.outcome,
            opt(p.iterations.map(|n| n.to_string())),
            opt(p.final_delta.map(|d| format!("{d:e}"))),
        );
    }
    for (_, written) in &points {
        sink.written.extend(written.iter().cloned());
    }
    sink.csv("sweep.csv", &csv)?;
    let summary: Vec<&SweepPoint> = points.iter().map(|(p, _)| p).collect();
    sink.json("sweep.json", entry("points", summary)?)
}

fn compare_mode(spec: &RunSpec, sink: &mut Sink) -> Result<()> {
    let paths = spec.compare.as_ref().expect("validated");
    let left = read_trajectory(&paths.left)?;
    let right = read_trajectory(&paths.right)?;
    if !left.fields()[0].same_shape(&right.fields()[0]) {
        return Err(Error::InvalidTrajectory("trajectories differ in dim or truncation".into()));
    }
    let mut csv = String::from("t,diff_j0,diff_j2,left_j2,right_j2\n");
    let mut shared = 0usize;
    let mut max_j0 = 0.0f64;
    let mut max_j2 = 0.0f64;
    for (i, &t) in left.times().iter().enumerate() {
        let Some(j) = right.times().iter().position(|&s| (s - t).abs() <= 1e-9 * t.abs().max(1.0)) else {
            continue;
        };
        let (a, b) = (&left.fields()[i], &right.fields()[j]);
        let d = a - b;
        let (d0, d2) = (wiener_norm(&d, 0), wiener_norm(&d, 2));
        max_j0 = max_j0.max(d0);
        max_j2 = max_j2.max(d2);
        shared += 1;
        let _ = writeln!(csv, "{:e},{:e},{:e},{:e},{:e}", t, d0, d2, wiener_norm(a, 2), wiener_norm(b, 2));
    }
    if shared == 0 {
        return Err(Error::InvalidTrajectory("trajectories share no time nodes".into()));
    }
    sink.csv("compare.csv", &csv)?;
    let mut summary = entry("shared_nodes", shared)?;
    summary.insert("max_diff_j0".into(), max_j0.into());
    summary.insert("max_diff_j2".into(), max_j2.into());
    sink.json("compare_summary.json", summary)
}

fn radius_mode(spec: &RunSpec, sink: &mut Sink) -> Result<()> {
    let (traj, alpha): (Trajectory, f64) = match &spec.radius.trajectory {
        Some(path) => {
            let traj = read_trajectory(path)?;
            let cert = certify(&traj.fields()[0], spec.alpha)?;
            (traj, cert.alpha)
        }
        None => {
            let h0 = spec.initial_field()?;
            let cert = certify(&h0, spec.alpha)?;
            sink.json("certificate.json", entry("certificate", cert)?)?;
            require_pass(&cert, spec)?;
            let sol = picard_run(&h0, &cert, &spec.solver, sink)?;
            (sol.solution.subsample(spec.solver.record_every), cert.alpha)
        }
    };
    let history = radius_history(&traj, spec.radius.floor)?;
    let mut csv = String::from("t,rho,r_squared,shells\n");
    for (t, fit) in &history {
        let _ = writeln!(csv, "{:e},{:e},{:e},{}", t, fit.rho, fit.r_squared, fit.shells);
    }
    sink.csv("radius.csv", &csv)?;

    let points: Vec<(f64, f64)> = history.iter().map(|(t, f)| (*t, f.rho)).collect();
    if points.len() < 2 {
        return Err(Error::InsufficientModes {
            found: points.len(),
            required: 2,
        });
    }
    let line = LineFit::new(&points);
    let min_r2 = history.iter().map(|(_, f)| f.r_squared).fold(f64::INFINITY, f64::min);
    let mut summary = entry("alpha", alpha)?;
    summary.insert("fit".into(), serde_json::to_value(line)?);
    summary.insert("slope_minus_alpha".into(), (line.slope - alpha).into());
    summary.insert("min_node_r_squared".into(), min_r2.into());
    summary.insert("nodes_fitted".into(), history.len().into());
    summary.insert("nodes_skipped".into(), (traj.len() - history.len()).into());
    sink.json("radius_fit.json", summary)
}
