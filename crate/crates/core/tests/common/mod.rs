#![allow(dead_code)]

use std::f64::consts::PI;

use epitaxy::{FourierField, Wavevector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random real mean-zero field; magnitudes ∝ e^{−decay|k|} with a random subset of
/// modes switched off.
pub fn random_field(rng: &mut ChaCha8Rng, dim: usize, truncation: usize, decay: f64) -> FourierField {
    let zero = FourierField::zeros(dim, truncation).unwrap();
    let modes: Vec<_> = zero
        .modes()
        .map(|(k, _)| k)
        .filter(|k| k > &Wavevector::ZERO)
        .filter_map(|k| {
            if rng.gen_bool(0.3) {
                return None;
            }
            let mag = rng.gen_range(0.0..1.0) * (-decay * k.magnitude()).exp();
            Some((k, Complex64::from_polar(mag, rng.gen_range(0.0..2.0 * PI))))
        })
        .collect();
    FourierField::from_modes(dim, truncation, modes).unwrap()
}

/// Same as [`random_field`], rescaled so that Σ|k|^j|coeff| equals `target`.
pub fn random_field_with_norm(rng: &mut ChaCha8Rng, dim: usize, truncation: usize, j: u32, target: f64) -> FourierField {
    loop {
        let f = random_field(rng, dim, truncation, 0.7);
        let n = epitaxy::wiener_norm(&f, j);
        if n > 0.0 {
            return f.scale(target / n);
        }
    }
}

/// (dim, truncation, seed) triples for property tests.
pub fn shape_and_seed(max_truncation: usize) -> impl Strategy<Value = (usize, usize, u64)> {
    (1usize..=2, 1usize..=max_truncation, any::<u64>())
}

pub fn max_rel_diff(a: &FourierField, b: &FourierField) -> f64 {
    let scale = a.max_abs().max(b.max_abs()).max(f64::MIN_POSITIVE);
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale
}

pub fn is_hermitian(f: &FourierField) -> bool {
    f.modes().all(|(k, c)| f.get(-k) == c.conj()) && f.get(Wavevector::ZERO) == Complex64::new(0.0, 0.0)
}
