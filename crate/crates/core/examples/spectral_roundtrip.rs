//! Synthesizes a random field on grids of increasing size, analyzes it back and
//! shows what an unpadded grid does to a product.
//!
//!     cargo run --release --example spectral_roundtrip

use epitaxy::spectral::{analyze, min_grid_points, pointwise_product, synthesize, GridField};
use epitaxy::{wiener_norm, FourierField, Wavevector};
use num_complex::Complex64;

fn main() -> epitaxy::Result<()> {
    let n = 6;
    let modes = (1..=n as i64).flat_map(|a| {
        (-(n as i64)..=n as i64).map(move |b| {
            let k = Wavevector::new2(a, b);
            let c = Complex64::from_polar((-0.4 * k.magnitude()).exp(), 0.3 * (a * 7 + b) as f64);
            (k, c)
        })
    });
    let f = FourierField::from_modes(2, n, modes)?;
    println!("field on the box |k_i| <= {n}, ‖f‖_A = {:.6}", wiener_norm(&f, 0));

    println!("\n{:>6}{:>22}", "M", "max |coeff error|");
    for m in [min_grid_points(n), 16, 24, 32] {
        let back = analyze(&synthesize(&f, m)?, n)?.field;
        println!("{m:>6}{:>22.3e}", (&back - &f).max_abs());
    }

    // cos(Nx)² = 1/2 + cos(2Nx)/2: exact on a 2N box, aliased onto k = ±1 on the unpadded grid
    let c = FourierField::from_modes(1, n, [(Wavevector::new1(n as i64), Complex64::new(0.5, 0.0))])?;
    let exact = pointwise_product(&c, &c)?;
    let m = min_grid_points(n);
    let s = synthesize(&c, m)?;
    let aliased = analyze(&GridField::new(1, m, s.samples().iter().map(|v| v * v).collect())?, n)?;
    let k2 = Wavevector::new1(2 * n as i64);
    println!("\ncos({n}x)^2: mean {:.3}, coeff({}) {:.3}", exact.mean, 2 * n, exact.field.get(k2).re);
    println!("same product on {m} points: coeff(1) {:.3}", aliased.field.get(Wavevector::new1(1)).re);
    Ok(())
}
