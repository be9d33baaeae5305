//! Lattice bookkeeping, transforms, and Fourier multipliers for real fields on T^n.

mod field;
mod io;
mod transform;

pub use field::{FourierField, Wavevector};
pub use io::FieldRepr;
pub use transform::{
    analyze, default_grid_points, min_grid_points, padded_grid_points, pointwise_product,
    synthesize, AnalyzedField, GridField,
};

/// Δ: multiplies coeff(k) by −|k|².
pub fn laplacian(field: &FourierField) -> FourierField {
    field.apply_multiplier(|k| -(k.norm_sq() as f64))
}

/// −Δ²: multiplies coeff(k) by −|k|⁴.
pub fn bilaplacian_neg(field: &FourierField) -> FourierField {
    field.apply_multiplier(|k| {
        let k2 = k.norm_sq() as f64;
        -(k2 * k2)
    })
}

/// Σ_k |k|^j |coeff(k)| in storage order.
pub(crate) fn wiener_abs_sum(field: &FourierField, j: u32) -> f64 {
    field
        .modes()
        .map(|(k, c)| {
            let a = c.norm();
            if j == 0 {
                a
            } else if j.is_multiple_of(2) {
                (k.norm_sq() as f64).powi(j as i32 / 2) * a
            } else {
                k.magnitude().powi(j as i32) * a
            }
        })
        .sum()
}
