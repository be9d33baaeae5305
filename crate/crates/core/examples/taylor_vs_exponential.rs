//! Compares the truncated Taylor sum Σ_{j=2}^{J} F_j with the pointwise
//! remainder e^{−Δh} − 1 + Δh, and prints the adaptive depth chosen for each size.
//!
//!     cargo run --release --example taylor_vs_exponential

use epitaxy::nonlinear::{exponential_remainder, taylor_sum, taylor_term_fj};
use epitaxy::{wiener_norm, FourierField, TaylorDepth, Wavevector};
use num_complex::Complex64;

fn main() -> epitaxy::Result<()> {
    let padding = 2.0;
    println!("{:>8}{:>6}{:>16}{:>16}", "r0", "J", "fixed(3) err", "adaptive err");
    for r0 in [0.01, 0.05, 0.1, 0.2, 0.24] {
        // two modes so the products actually mix
        let h = FourierField::from_modes(
            2,
            12,
            [
                (Wavevector::new2(1, 0), Complex64::new(0.3, 0.0)),
                (Wavevector::new2(1, 1), Complex64::new(0.0, -0.1)),
            ],
        )?;
        let h = h.scale(r0 / wiener_norm(&h, 2));
        let exact = exponential_remainder(&h, padding)?.field;
        let depth = TaylorDepth::default();
        let j = depth.resolve(r0)?;
        let fixed = taylor_sum(&h, TaylorDepth::Fixed(3), padding)?.field;
        let adaptive = taylor_sum(&h, depth, padding)?.field;
        println!(
            "{r0:>8.2}{j:>6}{:>16.3e}{:>16.3e}",
            wiener_norm(&(&fixed - &exact), 0),
            wiener_norm(&(&adaptive - &exact), 0)
        );
    }

    let h = FourierField::from_modes(1, 16, [(Wavevector::new1(1), Complex64::new(0.1, 0.0))])?;
    println!("\nsingle mode, r0 = 0.2: ‖F_j‖_A against r0^j/j!");
    let mut fact = 1.0;
    for j in 2..=8 {
        fact *= j as f64;
        let fj = taylor_term_fj(&h, j, padding)?;
        println!("  j = {j}: {:.3e}  <=  {:.3e}", fj.wiener_norm_with_mean(), 0.2f64.powi(j as i32) / fact);
    }
    Ok(())
}
