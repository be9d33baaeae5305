use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use super::field::{check_shape, FourierField};
use super::wiener_abs_sum;
use crate::error::{Error, Result};

/// Residue allowed in the imaginary part of synthesized samples, relative to the
/// field's ℓ¹ magnitude.
const IMAG_RESIDUE_REL: f64 = 1e-12;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Real samples on the uniform M^n grid x_j = 2πj/M over [0, 2π)^n, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    dim: usize,
    points_per_dim: usize,
    samples: Vec<f64>,
}

impl GridField {
    pub fn new(dim: usize, points_per_dim: usize, samples: Vec<f64>) -> Result<Self> {
        if !(dim == 1 || dim == 2) {
            return Err(Error::InvalidField(format!("dimension must be 1 or 2, got {dim}")));
        }
        let expected = points_per_dim.pow(dim as u32);
        if samples.len() != expected {
            return Err(Error::InvalidField(format!(
                "expected {expected} samples for a {points_per_dim}^{dim} grid, got {}",
                samples.len()
            )));
        }
        Ok(GridField {
            dim,
            points_per_dim,
            samples,
        })
    }

    /// Samples a function of the grid coordinates.
    pub fn from_fn<F>(dim: usize, points_per_dim: usize, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64,
    {
        let m = points_per_dim;
        let h = 2.0 * PI / m as f64;
        let samples = match dim {
            1 => (0..m).map(|i| f(&[i as f64 * h])).collect(),
            2 => (0..m * m)
                .map(|idx| f(&[(idx / m) as f64 * h, (idx % m) as f64 * h]))
                .collect(),
            _ => Vec::new(),
        };
        Self::new(dim, points_per_dim, samples)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points_per_dim(&self) -> usize {
        self.points_per_dim
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Applies a pointwise map to the samples.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> GridField {
        GridField {
            dim: self.dim,
            points_per_dim: self.points_per_dim,
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    pub(crate) fn from_samples_unchecked(dim: usize, points_per_dim: usize, samples: Vec<f64>) -> Self {
        GridField {
            dim,
            points_per_dim,
            samples,
        }
    }
}

/// Result of a forward transform: the mean-zero field plus the mean that was split off.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzedField {
    pub field: FourierField,
    pub mean: f64,
}

impl AnalyzedField {
    /// ℓ¹ norm of all coefficients including the mean.
    pub fn wiener_norm_with_mean(&self) -> f64 {
        wiener_abs_sum(&self.field, 0) + self.mean.abs()
    }
}

/// Smallest grid size that holds truncation N without aliasing.
pub fn min_grid_points(truncation: usize) -> usize {
    2 * truncation + 1
}

/// Default grid size: next power of two ≥ 2(N+1).
pub fn default_grid_points(truncation: usize) -> usize {
    (2 * (truncation + 1)).next_power_of_two()
}

/// Grid size for a padded nonlinear evaluation, ⌈padding·(2N+1)⌉.
pub fn padded_grid_points(truncation: usize, padding: f64) -> Result<usize> {
    if !(padding.is_finite() && padding >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "padding factor must be a finite number ≥ 1, got {padding}"
        )));
    }
    Ok((padding * min_grid_points(truncation) as f64).ceil() as usize)
}

fn check_grid(grid: usize, truncation: usize) -> Result<()> {
    let required = min_grid_points(truncation);
    if grid < required {
        return Err(Error::GridTooSmall {
            grid,
            truncation,
            required,
        });
    }
    Ok(())
}

/// In-place unnormalized n-dimensional DFT on a row-major M^n buffer.
fn fft_nd(buf: &mut [Complex64], dim: usize, m: usize, direction: FftDirection) {
    let fft = PLANNER.with(|p| p.borrow_mut().plan_fft(m, direction));
    // rows are contiguous in both 1-d and 2-d layouts
    fft.process(buf);
    if dim == 2 {
        let mut column = vec![Complex64::new(0.0, 0.0); m];
        for j in 0..m {
            for (i, slot) in column.iter_mut().enumerate() {
                *slot = buf[i * m + j];
            }
            fft.process(&mut column);
            for (i, value) in column.iter().enumerate() {
                buf[i * m + j] = *value;
            }
        }
    }
}

fn wrap(k: i64, m: usize) -> usize {
    k.rem_euclid(m as i64) as usize
}

/// Evaluates Σ_k coeff(k) e^{ik·x} on an M^n grid.
pub fn synthesize(field: &FourierField, grid_points_per_dim: usize) -> Result<GridField> {
    let m = grid_points_per_dim;
    check_grid(m, field.truncation())?;
    let dim = field.dim();
    let mut buf = vec![Complex64::new(0.0, 0.0); m.pow(dim as u32)];
    for (k, c) in field.modes() {
        let idx = match dim {
            1 => wrap(k.0[0], m),
            _ => wrap(k.0[0], m) * m + wrap(k.0[1], m),
        };
        buf[idx] = c;
    }
    fft_nd(&mut buf, dim, m, FftDirection::Inverse);

    let magnitude = wiener_abs_sum(field, 0);
    let limit = IMAG_RESIDUE_REL * magnitude;
    let residue = buf.iter().fold(0.0, |r: f64, v| r.max(v.im.abs()));
    if residue > limit && residue > f64::MIN_POSITIVE {
        return Err(Error::ImaginaryResidue { residue, limit });
    }
    Ok(GridField::from_samples_unchecked(
        dim,
        m,
        buf.into_iter().map(|v| v.re).collect(),
    ))
}

/// Discrete Fourier coefficients of grid samples restricted to |k_i| ≤ N.
/// The mean is split off and returned separately.
pub fn analyze(grid: &GridField, truncation: usize) -> Result<AnalyzedField> {
    let dim = grid.dim();
    check_shape(dim, truncation)?;
    let m = grid.points_per_dim();
    check_grid(m, truncation)?;
    let total = m.pow(dim as u32);
    let mut buf: Vec<Complex64> = grid
        .samples()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    fft_nd(&mut buf, dim, m, FftDirection::Forward);
    let scale = 1.0 / total as f64;

    let n = truncation as i64;
    let side = 2 * truncation + 1;
    let mut dense = Vec::with_capacity(side.pow(dim as u32));
    match dim {
        1 => {
            for k in -n..=n {
                dense.push(buf[wrap(k, m)] * scale);
            }
        }
        _ => {
            for k1 in -n..=n {
                for k2 in -n..=n {
                    dense.push(buf[wrap(k1, m) * m + wrap(k2, m)] * scale);
                }
            }
        }
    }
    let mean = buf[0].re * scale;
    Ok(AnalyzedField {
        field: FourierField::from_dense(dim, truncation, dense),
        mean,
    })
}

/// Product of two fields, computed on a grid large enough that no aliasing occurs.
/// The result has truncation N_f + N_g and carries the (generally nonzero) mean.
pub fn pointwise_product(f: &FourierField, g: &FourierField) -> Result<AnalyzedField> {
    if f.dim() != g.dim() {
        return Err(Error::InvalidField(format!(
            "cannot multiply a {}-d field by a {}-d field",
            f.dim(),
            g.dim()
        )));
    }
    let truncation = f.truncation() + g.truncation();
    let m = min_grid_points(truncation);
    let fs = synthesize(f, m)?;
    let gs = synthesize(g, m)?;
    let samples = fs
        .samples()
        .iter()
        .zip(gs.samples())
        .map(|(a, b)| a * b)
        .collect();
    analyze(&GridField::from_samples_unchecked(f.dim(), m, samples), truncation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Wavevector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cosine_1d() -> FourierField {
        FourierField::from_modes(1, 4, [(Wavevector::new1(1), c(0.5, 0.0))]).unwrap()
    }

    #[test]
    fn zero_field_synthesizes_to_zero() {
        let z = FourierField::zeros(2, 3).unwrap();
        let g = synthesize(&z, 8).unwrap();
        assert!(g.samples().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn two_mode_synthesis_is_cosine() {
        let g = synthesize(&cosine_1d(), 16).unwrap();
        for (i, v) in g.samples().iter().enumerate() {
            let x = 2.0 * PI * i as f64 / 16.0;
            assert!((v - x.cos()).abs() < 1e-15);
        }
    }

    #[test]
    fn antisymmetric_imaginary_pair_is_sine() {
        let f = FourierField::from_modes(2, 2, [(Wavevector::new2(1, 0), c(0.0, -0.5))]).unwrap();
        let g = synthesize(&f, 7).unwrap();
        let expected = GridField::from_fn(2, 7, |x| x[0].sin()).unwrap();
        for (a, b) in g.samples().iter().zip(expected.samples()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn grid_too_small_reports_sizes() {
        match synthesize(&cosine_1d(), 8) {
            Err(Error::GridTooSmall {
                grid,
                truncation,
                required,
            }) => assert_eq!((grid, truncation, required), (8, 4, 9)),
            other => panic!("unexpected {other:?}"),
        }
        let g = GridField::from_fn(1, 8, |x| x[0].cos()).unwrap();
        assert!(matches!(analyze(&g, 4), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn analyze_recovers_cosine() {
        let g = GridField::from_fn(1, 9, |x| x[0].cos()).unwrap();
        let a = analyze(&g, 4).unwrap();
        assert!(a.mean.abs() < 1e-16);
        assert!((a.field.get(Wavevector::new1(1)) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((a.field.get(Wavevector::new1(-1)) - c(0.5, 0.0)).norm() < 1e-15);
        assert!(a.field.get(Wavevector::new1(2)).norm() < 1e-15);
    }

    #[test]
    fn constant_samples_are_pure_mean() {
        let g = GridField::from_fn(2, 6, |_| 3.0).unwrap();
        let a = analyze(&g, 2).unwrap();
        assert!((a.mean - 3.0).abs() < 1e-14);
        assert!(a.field.max_abs() < 1e-14);
    }

    #[test]
    fn coefficient_convention_matches_normalized_integral() {
        // coeff(k) = (2π)^{-1} ∫ h e^{-ikx} dx for h = 2 sin(3x) + cos(x): coeff(3) = -i.
        let g = GridField::from_fn(1, 32, |x| 2.0 * (3.0 * x[0]).sin() + x[0].cos()).unwrap();
        let a = analyze(&g, 5).unwrap();
        assert!((a.field.get(Wavevector::new1(3)) - c(0.0, -1.0)).norm() < 1e-14);
        assert!((a.field.get(Wavevector::new1(1)) - c(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn product_of_cosines() {
        let f = cosine_1d();
        let p = pointwise_product(&f, &f).unwrap();
        assert_eq!(p.field.truncation(), 8);
        assert!((p.mean - 0.5).abs() < 1e-15);
        assert!((p.field.get(Wavevector::new1(2)) - c(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn grid_size_helpers() {
        assert_eq!(default_grid_points(16), 64);
        assert_eq!(default_grid_points(3), 8);
        assert_eq!(padded_grid_points(16, 2.0).unwrap(), 66);
        assert_eq!(padded_grid_points(4, 1.5).unwrap(), 14);
        assert!(padded_grid_points(4, 0.5).is_err());
    }
}
