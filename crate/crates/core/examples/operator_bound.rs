//! Measures ‖I⁺f‖_{B²_α}/‖f‖_{B⁰_α} on the profile e^{−αt} that nearly saturates
//! 1/(1 − α), and on a few random trajectories from the probe suite.
//!
//!     cargo run --release --example operator_bound

use epitaxy::cli::presets::random_probe_trajectory;
use epitaxy::cli::ProbeSuite;
use epitaxy::trajectory::uniform_times;
use epitaxy::{operator_bound_probe, FourierField, Trajectory, Wavevector};
use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> epitaxy::Result<()> {
    println!("first shell, f(t) = e^(−αt), T = 8, dt = 1e-3");
    println!("{:>6}{:>12}{:>12}", "alpha", "ratio", "1/(1−α)");
    let times = uniform_times(8.0, 1e-3)?;
    for alpha in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let fields = times
            .iter()
            .map(|&t| FourierField::from_modes(1, 1, [(Wavevector::new1(1), Complex64::new((-alpha * t).exp(), 0.0))]))
            .collect::<epitaxy::Result<Vec<_>>>()?;
        let r = operator_bound_probe(&Trajectory::new(times.clone(), fields)?, alpha)?;
        println!("{alpha:>6.1}{:>12.6}{:>12.6}", r.ratio, r.bound);
    }

    println!("\nrandom trajectories");
    let suite = ProbeSuite {
        max_truncation: 8,
        ..ProbeSuite::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let traj = random_probe_trajectory(&mut rng, &suite)?;
        let ratios: Vec<String> = suite
            .alphas
            .iter()
            .map(|&a| operator_bound_probe(&traj, a).map(|r| format!("{:.3}/{:.3}", r.ratio, r.bound)))
            .collect::<epitaxy::Result<_>>()?;
        println!("  n = {}, N = {:>2}: {}", traj.dim(), traj.truncation(), ratios.join("  "));
    }
    Ok(())
}
