use std::f64::consts::PI;

use periodic_waves::profile_ode::{
    classify_equilibrium, critical_points, integrate_orbit, momentum_threshold, orbit_period, orbit_period_around,
    EquilibriumKind, PotentialParams,
};
use periodic_waves::NonlinearitySpec;
use proptest::prelude::*;

fn cubic() -> NonlinearitySpec {
    NonlinearitySpec::single_power(3.0).unwrap()
}

/// `−V''` by central differences of `V`.
fn minus_v2(params: &PotentialParams, r: f64) -> f64 {
    let h = 1e-4 * r.abs().max(1e-2);
    -(params.potential(r + h) - 2.0 * params.potential(r) + params.potential(r - h)) / (h * h)
}

/// Sign changes of `V'` on a uniform grid of `(0, r_max]`.
fn brute_force_roots(params: &PotentialParams, r_max: f64, n: usize) -> usize {
    let v1 = |r: f64| params.dpotential(r);
    (1..n)
        .filter(|&i| {
            let (r0, r1) = (r_max * i as f64 / n as f64, r_max * (i + 1) as f64 / n as f64);
            v1(r0).signum() != v1(r1).signum()
        })
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_matches_finite_differences(
        p in prop_oneof![Just(3.0), Just(5.0), 2.0f64..4.0],
        a in prop_oneof![-2.0f64..-0.2, 0.2f64..2.0],
        b in prop_oneof![-2.0f64..-0.2, 0.2f64..2.0],
        j in prop_oneof![Just(0.0), 0.05f64..0.5],
    ) {
        let params = PotentialParams::new(NonlinearitySpec::single_power(p).unwrap(), a, b, j).unwrap();
        for c in critical_points(&params) {
            if c.r == 0.0 || c.kind == EquilibriumKind::SaddleNode {
                continue;
            }
            let oracle = minus_v2(&params, c.r);
            prop_assert!(oracle.abs() > 1e-6);
            let expected = if oracle < 0.0 { EquilibriumKind::Center } else { EquilibriumKind::Saddle };
            prop_assert_eq!(c.kind, expected, "r = {}, -V'' = {}", c.r, oracle);
            prop_assert!((c.lambda_sq - oracle).abs() < 1e-4 * (1.0 + oracle.abs()));
        }
    }

    #[test]
    fn defocusing_count_follows_threshold(
        a in 0.3f64..2.0,
        b in -2.0f64..-0.3,
        frac in prop_oneof![0.05f64..0.95, 1.05f64..3.0],
    ) {
        let (_, kc) = momentum_threshold(&cubic(), a, b).unwrap();
        let j = (frac * kc).sqrt();
        let params = PotentialParams::new(cubic(), a, b, j).unwrap();
        let roots = critical_points(&params);
        let expected = if frac < 1.0 { 2 } else { 0 };
        prop_assert_eq!(roots.len(), expected);
        let reach = 3.0 * (a / -b).sqrt();
        prop_assert_eq!(brute_force_roots(&params, reach, 200_000), expected);
        if expected == 2 {
            prop_assert_eq!(roots[0].kind, EquilibriumKind::Center);
            prop_assert_eq!(roots[1].kind, EquilibriumKind::Saddle);
        }
    }

    #[test]
    fn focusing_with_momentum_has_one_center(a in -2.0f64..2.0, b in 0.3f64..2.0, j in 0.05f64..2.0) {
        let params = PotentialParams::new(cubic(), a, b, j).unwrap();
        let roots = critical_points(&params);
        prop_assert_eq!(roots.len(), 1);
        prop_assert_eq!(roots[0].kind, EquilibriumKind::Center);
    }

    #[test]
    fn orbits_are_time_reversible(r0 in 0.2f64..0.9, rx0 in -0.3f64..0.3) {
        let params = PotentialParams::new(cubic(), 1.0, -1.0, 0.0).unwrap();
        let fwd = integrate_orbit(&params, r0, rx0, 5.0, 1e-3).unwrap();
        prop_assume!(fwd.halted.is_none());
        let end = fwd.samples.last().unwrap();
        let back = integrate_orbit(&params, end.r, -end.rx, 5.0, 1e-3).unwrap();
        let last = back.samples.last().unwrap();
        prop_assert!((last.r - r0).abs() < 1e-8);
        prop_assert!((last.rx + rx0).abs() < 1e-8);
    }
}

#[test]
fn double_root_at_threshold() {
    let (rc, kc) = momentum_threshold(&cubic(), 1.0, -1.0).unwrap();
    let params = PotentialParams::new(cubic(), 1.0, -1.0, kc.sqrt()).unwrap();
    let roots = critical_points(&params);
    assert_eq!(roots.len(), 1);
    assert_eq!(roots[0].kind, EquilibriumKind::SaddleNode);
    assert!((roots[0].r - rc).abs() < 1e-4);
}

#[test]
fn drift_per_unit_length() {
    let cases = [
        (1.0, -1.0, 0.0, 0.5),
        (1.0, 1.0, 0.0, 1.5),
        (-1.0, 1.0, 0.0, 1.2),
        (1.0, -1.0, 0.3, 0.6),
        (-1.0, 1.0, 0.5, 1.0),
    ];
    for (a, b, j, r0) in cases {
        let params = PotentialParams::new(cubic(), a, b, j).unwrap();
        let orbit = integrate_orbit(&params, r0, 0.0, 50.0, 1e-3).unwrap();
        assert!(orbit.halted.is_none());
        assert!(orbit.drift <= 1e-7 * orbit.length(), "{a} {b} {j}: {}", orbit.drift);
    }
}

#[test]
fn quadrature_period_matches_integrated_period() {
    let params = PotentialParams::new(cubic(), -1.0, 1.0, 0.0).unwrap();
    for r0 in [1.1, 1.3, 1.4] {
        let e = params.potential(r0);
        let orbit = integrate_orbit(&params, r0, 0.0, 40.0, 5e-4).unwrap();
        let measured = orbit.measured_period().unwrap();
        let quad = orbit_period(&params, e).unwrap();
        assert!((measured - quad).abs() < 1e-3 * quad, "{measured} vs {quad}");
    }
}

#[test]
fn linearized_period_at_centers() {
    let cases = [(1.0, 1.0, 0.0, 0.0), (-1.0, 1.0, 0.0, 1.0), (1.0, -1.0, 0.0, 0.0)];
    for (a, b, j, center) in cases {
        let params = PotentialParams::new(cubic(), a, b, j).unwrap();
        let e = params.potential(center) + 1e-9;
        let t = orbit_period_around(&params, e, center).unwrap();
        let expected = 2.0 * PI / params.d2potential(center).sqrt();
        assert!((t - expected).abs() < 1e-3 * expected, "{t} vs {expected}");
    }
}

#[test]
fn non_roots_are_rejected() {
    let params = PotentialParams::new(cubic(), 1.0, -1.0, 0.0).unwrap();
    assert!(classify_equilibrium(&params, 0.5).is_err());
    let c = classify_equilibrium(&params, 1.0).unwrap();
    assert_eq!(c.kind, EquilibriumKind::Saddle);
}
