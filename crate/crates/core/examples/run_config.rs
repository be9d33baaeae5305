//! Drives the command-line modes from code: parses a config, overrides the output
//! directory and runs a threshold sweep, then prints the written artifacts.
//!
//!     cargo run --example run_config [-- <config.json> <out_dir>]

use std::path::{Path, PathBuf};

use epitaxy::cli::{run, RunSpec};

const SWEEP: &str = r#"{
  "schema_version": 1,
  "mode": "sweep",
  "initial_data": {"preset": "single-mode", "dim": 1, "k": [1], "amplitude": 0.2},
  "solver": {"truncation": 8, "dt": 0.01, "t_final": 0.5},
  "sweep": {"amplitudes": [0.2, 0.24, 0.249, 0.251, 0.3]}
}"#;

fn main() -> epitaxy::Result<()> {
    let mut args = std::env::args().skip(1);
    let mut spec = match args.next() {
        Some(path) => RunSpec::from_file(Path::new(&path))?,
        None => RunSpec::from_json(SWEEP)?,
    };
    spec.output_dir = args.next().map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("epitaxy-sweep"));
    spec.validate()?;
    for path in run(&spec)? {
        println!("{}", path.display());
    }
    Ok(())
}
