use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{FourierField, Wavevector};
use crate::error::{Error, Result};

/// On-disk form of a [`FourierField`]: only nonzero modes, each as `[k..., re, im]`.
/// Hermitian partners may be omitted on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldRepr {
    pub dim: usize,
    pub truncation: usize,
    pub coeffs: Vec<Vec<f64>>,
}

impl From<&FourierField> for FieldRepr {
    fn from(field: &FourierField) -> Self {
        let dim = field.dim();
        let coeffs = field
            .modes()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(k, c)| {
                let mut row: Vec<f64> = k.components(dim).iter().map(|&v| v as f64).collect();
                row.push(c.re);
                row.push(c.im);
                row
            })
            .collect();
        FieldRepr {
            dim,
            truncation: field.truncation(),
            coeffs,
        }
    }
}

impl TryFrom<FieldRepr> for FourierField {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Self> {
        let dim = repr.dim;
        let mut modes = Vec::with_capacity(repr.coeffs.len());
        for row in &repr.coeffs {
            if row.len() != dim + 2 {
                return Err(Error::InvalidField(format!(
                    "coefficient row {row:?} must have {} entries",
                    dim + 2
                )));
            }
            let mut comps = Vec::with_capacity(dim);
            for &v in &row[..dim] {
                if v.fract() != 0.0 || !v.is_finite() {
                    return Err(Error::InvalidField(format!("non-integer wavevector component {v}")));
                }
                comps.push(v as i64);
            }
            let k = Wavevector::from_slice(&comps)?;
            modes.push((k, Complex64::new(row[dim], row[dim + 1])));
        }
        FourierField::from_modes(dim, repr.truncation, modes)
    }
}

impl Serialize for FourierField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FieldRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FourierField {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = FieldRepr::deserialize(deserializer)?;
        FourierField::try_from(repr).map_err(serde::de::Error::custom)
    }
}
