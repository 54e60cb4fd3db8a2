use nalgebra::Matrix3;
use periodic_waves::triple_power::{
    analyze, f1, half_kink_omega, region_boundaries, region_label, root_count, PortraitKind, RegionBoundaries,
};
use proptest::prelude::*;

/// Positive real roots of `r³ − γr² + r − ω` from the eigenvalues of its
/// companion matrix.
fn companion_count(gamma: f64, omega: f64) -> usize {
    let m = Matrix3::new(gamma, -1.0, omega, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0);
    m.complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() < 1e-6 && z.re > 0.0)
        .count()
}

/// Distance from `ω` to the nearest region boundary at `γ`.
fn boundary_distance(gamma: f64, omega: f64) -> f64 {
    let mut d = omega.abs();
    if let RegionBoundaries::Split {
        f1_at_r_plus,
        f1_at_r_minus,
        ..
    } = region_boundaries(gamma).unwrap()
    {
        d = d.min((omega - f1_at_r_plus).abs()).min((omega - f1_at_r_minus).abs());
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn label_agrees_with_companion_roots(gamma in 0.5f64..3.0, omega in -0.4f64..0.5) {
        // Near a double root the companion eigenvalues split by about the
        // square root of the rounding error; stay clear of that band.
        prop_assume!(boundary_distance(gamma, omega) > 1e-6);
        let oracle = companion_count(gamma, omega);
        prop_assert_eq!(region_label(gamma, omega).unwrap() as usize, oracle);
        prop_assert_eq!(root_count(gamma, omega).unwrap(), oracle);
    }
}

#[test]
fn boundaries_are_stationary_values() {
    for k in 0..50 {
        let gamma = 3f64.sqrt() + 0.02 + 0.05 * k as f64;
        let RegionBoundaries::Split {
            r_minus,
            r_plus,
            f1_at_r_plus,
            f1_at_r_minus,
        } = region_boundaries(gamma).unwrap()
        else {
            panic!("gamma {gamma} should split");
        };
        let d1 = |r: f64| 1.0 - 2.0 * gamma * r + 3.0 * r * r;
        assert!(d1(r_minus).abs() < 1e-12 && d1(r_plus).abs() < 1e-12);
        assert!((f1(gamma, r_plus) - f1_at_r_plus).abs() < 1e-14);
        assert!((f1(gamma, r_minus) - f1_at_r_minus).abs() < 1e-14);
    }
}

#[test]
fn half_kink_curve_lies_in_three_root_band() {
    let start = 4.0 / 5f64.sqrt();
    for k in 1..=10 {
        let gamma = start + 0.12 * k as f64;
        let omega = half_kink_omega(gamma).unwrap();
        let a = analyze(gamma, omega, 1e-9).unwrap();
        assert_eq!(a.count, 3);
        assert_eq!(a.portrait, PortraitKind::ThreeRootsHalfKink);
        let above = analyze(gamma, omega + 1e-4, 1e-9).unwrap();
        let below = analyze(gamma, omega - 1e-4, 1e-9).unwrap();
        assert_eq!(above.portrait, PortraitKind::ThreeRootsVc2Negative);
        assert_eq!(below.portrait, PortraitKind::ThreeRootsVc2Positive);
    }
}
