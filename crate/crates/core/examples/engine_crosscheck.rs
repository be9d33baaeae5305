//! Runs both engines on the three reference initial data and reports the largest
//! j = 2 Wiener distance between them over the shared time nodes.
//!
//!     cargo run --release --example engine_crosscheck [-- <t_final> <dt>]

use std::time::Instant;

use epitaxy::cli::Preset;
use epitaxy::{certify, solve_picard, solve_timestep, wiener_norm, SolverConfig};

fn main() -> epitaxy::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let t_final = args.next().unwrap_or(2.0);
    let dt = args.next().unwrap_or(1e-3);
    let config = SolverConfig {
        truncation: 16,
        dt,
        t_final,
        ..SolverConfig::default()
    };
    let corpus = [
        ("single-mode 0.2", Preset::single_mode(0.2)),
        ("two-mode", Preset::two_mode_default()),
        ("random-decay seed 7", Preset::random_decay_default(7)),
    ];
    println!("{:<22}{:>8}{:>8}{:>12}{:>14}{:>9}", "data", "r0", "alpha", "iterations", "max diff j=2", "secs");
    for (name, preset) in corpus {
        let start = Instant::now();
        let h0 = preset.build(config.truncation)?;
        let cert = certify(&h0, None)?;
        let picard = solve_picard(&h0, &cert, &config)?;
        let stepper = solve_timestep(&h0, &config)?;
        let diff = picard.solution.try_sub(&stepper)?;
        let worst = diff.fields().iter().map(|f| wiener_norm(f, 2)).fold(0.0, f64::max);
        println!(
            "{:<22}{:>8.3}{:>8.4}{:>12}{:>14.3e}{:>9.2}",
            name,
            cert.r0,
            cert.alpha,
            picard.diag.iterations,
            worst,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
