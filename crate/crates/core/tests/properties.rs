//! Property tests for the algebraic invariants of the series layer and the
//! geometry of the turning-angle functional.

use bohrlab_core::laurent::{laurent_mul, laurent_pow, LaurentSeries, Window};
use bohrlab_core::norms::PolygonCurve;
use num_complex::Complex64;
use proptest::prelude::*;

fn series_strategy() -> impl Strategy<Value = LaurentSeries> {
    // small coefficients keep the 8th power near unit scale, where the
    // 1e-12 absolute tolerances below are meaningful
    (
        -4i32..=0,
        prop::collection::vec((-0.3f64..0.3, -0.3f64..0.3), 1..6),
    )
        .prop_map(|(lo, parts)| {
            let coeffs = parts
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect();
            LaurentSeries::new(lo, coeffs, 0.0).expect("nonempty coefficients")
        })
}

fn wide() -> Window {
    Window::new(-24, 24).expect("valid window")
}

fn max_coeff_diff(a: &LaurentSeries, b: &LaurentSeries) -> f64 {
    let lo = a.lo_degree().min(b.lo_degree());
    let hi = a.hi_degree().max(b.hi_degree());
    (lo..=hi)
        .map(|k| (a.coeff(k) - b.coeff(k)).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn mul_commutative(a in series_strategy(), b in series_strategy()) {
        let ab = laurent_mul(&a, &b, wide()).unwrap();
        let ba = laurent_mul(&b, &a, wide()).unwrap();
        prop_assert!(max_coeff_diff(&ab, &ba) < 1e-12);
    }

    #[test]
    fn mul_associative(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        let left = laurent_mul(&laurent_mul(&a, &b, wide()).unwrap(), &c, wide()).unwrap();
        let right = laurent_mul(&a, &laurent_mul(&b, &c, wide()).unwrap(), wide()).unwrap();
        prop_assert!(max_coeff_diff(&left, &right) < 1e-12);
    }

    #[test]
    fn pow_matches_repeated_mul(a in series_strategy(), k in 0u32..=8) {
        let window = Window::new(-60, 60).unwrap();
        let p = laurent_pow(&a, k, window).unwrap();
        let mut acc = LaurentSeries::one();
        for _ in 0..k {
            acc = laurent_mul(&acc, &a, window).unwrap();
        }
        prop_assert!(max_coeff_diff(&p, &acc) < 1e-12);
    }

    #[test]
    fn eval_is_multiplicative(
        a in series_strategy(),
        b in series_strategy(),
        radius in 1.1f64..3.0,
        theta in 0.0f64..(2.0 * std::f64::consts::PI),
    ) {
        let w = Complex64::from_polar(radius, theta);
        let prod = laurent_mul(&a, &b, wide()).unwrap();
        let lhs = prod.eval(w).unwrap();
        let rhs = a.eval(w).unwrap() * b.eval(w).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }
}

fn star_polygon_strategy() -> impl Strategy<Value = Vec<Complex64>> {
    // vertices at strictly increasing angles around the origin form a
    // simple polygon as long as every angular step stays below pi; the
    // 2:1 cap on relative step sizes guarantees that for 3+ vertices
    prop::collection::vec((0.5f64..1.0, 0.5f64..2.0), 3..12).prop_map(|steps| {
        let total: f64 = steps.iter().map(|(da, _)| da).sum();
        let mut angle = 0.0;
        steps
            .iter()
            .map(|(da, r)| {
                angle += da / total * (2.0 * std::f64::consts::PI - 0.1);
                Complex64::from_polar(*r, angle)
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn angular_variation_is_rigid_motion_invariant(
        vertices in star_polygon_strategy(),
        rot in 0.0f64..(2.0 * std::f64::consts::PI),
        shift_re in -5.0f64..5.0,
        shift_im in -5.0f64..5.0,
        scale in 0.1f64..10.0,
    ) {
        let base = PolygonCurve::new(vertices.clone()).unwrap();
        let v0 = base.angular_variation();
        let q = Complex64::from_polar(scale, rot);
        let shift = Complex64::new(shift_re, shift_im);
        let moved = PolygonCurve::new(
            vertices.iter().map(|z| q * z + shift).collect(),
        ).unwrap();
        prop_assert!((moved.angular_variation() - v0).abs() < 1e-12);
    }

    #[test]
    fn angular_variation_at_least_two_pi(vertices in star_polygon_strategy()) {
        // a closed curve turns through at least a full revolution
        let poly = PolygonCurve::new(vertices).unwrap();
        prop_assert!(poly.angular_variation() >= 2.0 * std::f64::consts::PI - 1e-9);
    }
}
