use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance used when checking that two supplied Hermitian partners agree.
const HERMITIAN_TOL: f64 = 1e-12;

/// A lattice point k in Z^n, n ∈ {1, 2}. One-dimensional wavevectors keep a zero
/// second component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wavevector(pub [i64; 2]);

impl Wavevector {
    pub const ZERO: Wavevector = Wavevector([0, 0]);

    pub fn new1(k: i64) -> Self {
        Wavevector([k, 0])
    }

    pub fn new2(k1: i64, k2: i64) -> Self {
        Wavevector([k1, k2])
    }

    /// Builds from a slice of one or two components.
    pub fn from_slice(comps: &[i64]) -> Result<Self> {
        match comps {
            [k] => Ok(Self::new1(*k)),
            [k1, k2] => Ok(Self::new2(*k1, *k2)),
            _ => Err(Error::InvalidField(format!(
                "wavevector must have 1 or 2 components, got {}",
                comps.len()
            ))),
        }
    }

    /// |k|², exact.
    pub fn norm_sq(&self) -> i64 {
        self.0[0] * self.0[0] + self.0[1] * self.0[1]
    }

    /// Euclidean magnitude |k|.
    pub fn magnitude(&self) -> f64 {
        (self.norm_sq() as f64).sqrt()
    }

    pub fn max_norm(&self) -> i64 {
        self.0[0].abs().max(self.0[1].abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0]
    }

    pub fn components(&self, dim: usize) -> &[i64] {
        &self.0[..dim]
    }
}

impl Neg for Wavevector {
    type Output = Wavevector;

    fn neg(self) -> Wavevector {
        Wavevector([-self.0[0], -self.0[1]])
    }
}

impl fmt::Display for Wavevector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0[0], self.0[1])
    }
}

/// Truncated Fourier coefficients of a real, mean-zero function on the torus T^n.
///
/// Modes are stored densely over the max-norm box |k_i| ≤ N. Coefficients follow
/// `coeff(k) = (2π)^{-n} ∫ h(x) e^{-ik·x} dx`, so `cos(x)` is the pair of
/// coefficients 1/2 at k = ±1. The zero mode is always exactly zero and
/// `coeff(-k) = conj(coeff(k))` holds for every stored mode.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierField {
    dim: usize,
    truncation: usize,
    coeffs: Vec<Complex64>,
}

impl FourierField {
    pub fn zeros(dim: usize, truncation: usize) -> Result<Self> {
        check_shape(dim, truncation)?;
        let side = 2 * truncation + 1;
        Ok(FourierField {
            dim,
            truncation,
            coeffs: vec![Complex64::new(0.0, 0.0); side.pow(dim as u32)],
        })
    }

    /// Builds a field from a list of modes. Hermitian partners are filled in; if
    /// both k and -k are given they must agree. The zero mode must be zero.
    pub fn from_modes<I>(dim: usize, truncation: usize, modes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Wavevector, Complex64)>,
    {
        let mut field = Self::zeros(dim, truncation)?;
        let mut given = vec![false; field.coeffs.len()];
        for (k, c) in modes {
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidField(format!("non-finite amplitude at {k}")));
            }
            let idx = field.checked_index(k)?;
            if k.is_zero() {
                if c != Complex64::new(0.0, 0.0) {
                    return Err(Error::InvalidField(format!(
                        "zero mode must vanish for a mean-zero field, got {c}"
                    )));
                }
                continue;
            }
            let partner = field.index(-k);
            if given[partner] {
                let expected = field.coeffs[partner].conj();
                let scale = c.norm().max(expected.norm());
                if (c - expected).norm() > HERMITIAN_TOL * scale {
                    return Err(Error::InvalidField(format!(
                        "mode {k} = {c} is not the conjugate of its partner {expected}"
                    )));
                }
            }
            field.coeffs[idx] = c;
            field.coeffs[partner] = c.conj();
            given[idx] = true;
        }
        Ok(field)
    }

    /// Builds from dense storage (index order of [`FourierField::modes`]), zeroing the
    /// mean and symmetrizing so the invariants hold exactly.
    pub(crate) fn from_dense(dim: usize, truncation: usize, mut coeffs: Vec<Complex64>) -> Self {
        let side = 2 * truncation + 1;
        debug_assert_eq!(coeffs.len(), side.pow(dim as u32));
        let len = coeffs.len();
        // The dense box is point-symmetric: index i and len-1-i are k and -k.
        for i in 0..len / 2 {
            let j = len - 1 - i;
            let avg = (coeffs[i] + coeffs[j].conj()) * 0.5;
            coeffs[i] = avg;
            coeffs[j] = avg.conj();
        }
        coeffs[len / 2] = Complex64::new(0.0, 0.0);
        FourierField {
            dim,
            truncation,
            coeffs,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn same_shape(&self, other: &FourierField) -> bool {
        self.dim == other.dim && self.truncation == other.truncation
    }

    /// Coefficient at k, zero outside the truncation box.
    pub fn get(&self, k: Wavevector) -> Complex64 {
        match self.checked_index(k) {
            Ok(i) => self.coeffs[i],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Wavevector stored at dense index `i`.
    pub fn wavevector(&self, i: usize) -> Wavevector {
        let side = 2 * self.truncation + 1;
        let n = self.truncation as i64;
        match self.dim {
            1 => Wavevector::new1(i as i64 - n),
            _ => Wavevector::new2((i / side) as i64 - n, (i % side) as i64 - n),
        }
    }

    /// Iterates over all retained modes in storage order.
    pub fn modes(&self) -> impl Iterator<Item = (Wavevector, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.wavevector(i), c))
    }

    /// Multiplies each coefficient by a real symbol of the wavevector.
    pub fn apply_multiplier<F>(&self, symbol: F) -> FourierField
    where
        F: Fn(Wavevector) -> f64,
    {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * symbol(self.wavevector(i)))
            .collect();
        FourierField {
            dim: self.dim,
            truncation: self.truncation,
            coeffs,
        }
    }

    pub fn scale(&self, a: f64) -> FourierField {
        FourierField {
            dim: self.dim,
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|&c| c * a).collect(),
        }
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Re-embeds into a box of a different truncation, dropping modes that no longer fit.
    pub fn with_truncation(&self, truncation: usize) -> Result<FourierField> {
        let modes: Vec<_> = self
            .modes()
            .filter(|(k, c)| k.max_norm() <= truncation as i64 && c.norm() > 0.0)
            .collect();
        FourierField::from_modes(self.dim, truncation, modes)
    }

    pub(crate) fn index(&self, k: Wavevector) -> usize {
        let side = 2 * self.truncation + 1;
        let n = self.truncation as i64;
        match self.dim {
            1 => (k.0[0] + n) as usize,
            _ => (k.0[0] + n) as usize * side + (k.0[1] + n) as usize,
        }
    }

    fn checked_index(&self, k: Wavevector) -> Result<usize> {
        if self.dim == 1 && k.0[1] != 0 {
            return Err(Error::InvalidField(format!(
                "wavevector {k} has a second component in a 1-d field"
            )));
        }
        if k.max_norm() > self.truncation as i64 {
            return Err(Error::InvalidField(format!(
                "wavevector {k} lies outside truncation {}",
                self.truncation
            )));
        }
        Ok(self.index(k))
    }

    fn zip_with<F>(&self, other: &FourierField, op: F) -> FourierField
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        assert!(
            self.same_shape(other),
            "field shapes differ: dim {} N {} vs dim {} N {}",
            self.dim,
            self.truncation,
            other.dim,
            other.truncation
        );
        FourierField {
            dim: self.dim,
            truncation: self.truncation,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

pub(crate) fn check_shape(dim: usize, truncation: usize) -> Result<()> {
    if !(dim == 1 || dim == 2) {
        return Err(Error::InvalidField(format!(
            "dimension must be 1 or 2, got {dim}"
        )));
    }
    if truncation == 0 {
        return Err(Error::InvalidField("truncation must be positive".into()));
    }
    Ok(())
}

impl Add for &FourierField {
    type Output = FourierField;

    fn add(self, rhs: &FourierField) -> FourierField {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &FourierField {
    type Output = FourierField;

    fn sub(self, rhs: &FourierField) -> FourierField {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &FourierField {
    type Output = FourierField;

    fn mul(self, rhs: f64) -> FourierField {
        self.scale(rhs)
    }
}

impl Neg for &FourierField {
    type Output = FourierField;

    fn neg(self) -> FourierField {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn partner_is_filled_in() {
        let f = FourierField::from_modes(2, 3, [(Wavevector::new2(1, -2), c(0.5, 0.25))]).unwrap();
        assert_eq!(f.get(Wavevector::new2(-1, 2)), c(0.5, -0.25));
    }

    #[test]
    fn nonzero_mean_is_rejected() {
        let err = FourierField::from_modes(1, 2, [(Wavevector::ZERO, c(1.0, 0.0))]);
        assert!(matches!(err, Err(Error::InvalidField(_))));
    }

    #[test]
    fn inconsistent_partners_are_rejected() {
        let modes = [(Wavevector::new1(1), c(1.0, 0.0)), (Wavevector::new1(-1), c(2.0, 0.0))];
        assert!(FourierField::from_modes(1, 2, modes).is_err());
    }

    #[test]
    fn out_of_box_mode_is_rejected() {
        assert!(FourierField::from_modes(1, 2, [(Wavevector::new1(3), c(1.0, 0.0))]).is_err());
        assert!(FourierField::from_modes(1, 2, [(Wavevector::new2(1, 1), c(1.0, 0.0))]).is_err());
    }

    #[test]
    fn index_round_trips() {
        let f = FourierField::zeros(2, 4).unwrap();
        for i in 0..f.len() {
            assert_eq!(f.index(f.wavevector(i)), i);
        }
        // the dense box is point-symmetric about its centre
        let len = f.len();
        for i in 0..len {
            assert_eq!(f.wavevector(len - 1 - i), -f.wavevector(i));
        }
    }

    #[test]
    fn dense_constructor_restores_invariants() {
        let dense = vec![c(1.0, 2.0), c(3.0, 4.0), c(5.0, 6.0)];
        let f = FourierField::from_dense(1, 1, dense);
        assert_eq!(f.get(Wavevector::ZERO), c(0.0, 0.0));
        assert_eq!(f.get(Wavevector::new1(1)), f.get(Wavevector::new1(-1)).conj());
    }
}
