mod common;

use common::{is_hermitian, max_rel_diff, random_field, rng, shape_and_seed};
use epitaxy::spectral::{
    analyze, bilaplacian_neg, default_grid_points, laplacian, min_grid_points, pointwise_product,
    synthesize, FieldRepr,
};
use epitaxy::{FourierField, Wavevector};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #[test]
    fn analyze_inverts_synthesize((dim, n, seed) in shape_and_seed(10), extra in 0usize..5) {
        let f = random_field(&mut rng(seed), dim, n, 0.3);
        let m = min_grid_points(n) + extra;
        let back = analyze(&synthesize(&f, m).unwrap(), n).unwrap();
        prop_assert!(max_rel_diff(&back.field, &f) <= 1e-12);
        prop_assert!(back.mean.abs() <= 1e-12 * f.max_abs().max(1e-300));
        prop_assert!(is_hermitian(&back.field));
    }

    #[test]
    fn laplacian_is_linear((dim, n, seed) in shape_and_seed(8), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let mut r = rng(seed);
        let f = random_field(&mut r, dim, n, 0.2);
        let g = random_field(&mut r, dim, n, 0.2);
        let lhs = laplacian(&(&f.scale(a) + &g.scale(b)));
        let rhs = &laplacian(&f).scale(a) + &laplacian(&g).scale(b);
        prop_assert!(max_rel_diff(&lhs, &rhs) <= 1e-13);
    }

    #[test]
    fn multipliers_preserve_symmetry((dim, n, seed) in shape_and_seed(8)) {
        let f = random_field(&mut rng(seed), dim, n, 0.2);
        prop_assert!(is_hermitian(&laplacian(&f)));
        prop_assert!(is_hermitian(&bilaplacian_neg(&f)));
        let twice = laplacian(&laplacian(&f));
        prop_assert!(max_rel_diff(&twice, &bilaplacian_neg(&f).scale(-1.0)) <= 1e-15);
    }

    #[test]
    fn product_matches_direct_convolution((dim, n, seed) in shape_and_seed(4)) {
        let mut r = rng(seed);
        let f = random_field(&mut r, dim, n, 0.1);
        let g = random_field(&mut r, dim, n, 0.1);
        let prod = pointwise_product(&f, &g).unwrap();
        let mut mean = Complex64::new(0.0, 0.0);
        let mut worst = 0.0f64;
        for (k, _) in prod.field.modes() {
            let mut direct = Complex64::new(0.0, 0.0);
            for (p, c) in f.modes() {
                let q = Wavevector([k.0[0] - p.0[0], k.0[1] - p.0[1]]);
                if q.max_norm() <= n as i64 {
                    direct += c * g.get(q);
                }
            }
            if k.is_zero() {
                mean = direct;
            } else {
                worst = worst.max((direct - prod.field.get(k)).norm());
            }
        }
        prop_assert!(worst <= 1e-13);
        prop_assert!((mean.re - prod.mean).abs() <= 1e-13 && mean.im.abs() <= 1e-13);
    }

    #[test]
    fn json_round_trip_is_exact((dim, n, seed) in shape_and_seed(6)) {
        let f = random_field(&mut rng(seed), dim, n, 0.5);
        let text = serde_json::to_string(&f).unwrap();
        let back: FourierField = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn grid_helpers() {
    assert_eq!(min_grid_points(16), 33);
    assert_eq!(default_grid_points(16), 64);
    assert!(synthesize(&FourierField::zeros(1, 16).unwrap(), 32).is_err());
}

#[test]
fn half_of_the_partners_suffice_on_load() {
    let text = r#"{"dim": 2, "truncation": 2, "coeffs": [[1, 0, 0.0, -0.5]]}"#;
    let f: FourierField = serde_json::from_str(text).unwrap();
    assert_eq!(f.get(Wavevector::new2(-1, 0)), Complex64::new(0.0, 0.5));
    let grid = synthesize(&f, 8).unwrap();
    // sin(x₁) at x₁ = 2π/8
    assert!((grid.samples()[8] - (std::f64::consts::PI / 4.0).sin()).abs() < 1e-15);
    let repr = FieldRepr::from(&f);
    assert_eq!(repr.coeffs.len(), 2);
}
