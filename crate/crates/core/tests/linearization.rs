use std::f64::consts::PI;

use num_complex::Complex64;
use periodic_waves::linearization::{constant_spectrum, hill_matrix, hill_spectrum};
use periodic_waves::minimizers::{minimize_mass, minimize_nehari, MinimizeConfig};
use periodic_waves::{Boundary, NonlinearitySpec, PeriodicField};
use proptest::prelude::*;

fn cubic() -> NonlinearitySpec {
    NonlinearitySpec::single_power(3.0).unwrap()
}

fn config(modes: usize) -> MinimizeConfig {
    MinimizeConfig {
        modes,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hill_on_constants_matches_closed_form(m in 0.1f64..5.0, t in 1.0f64..12.0, b in prop_oneof![Just(1.0), Just(-1.0)]) {
        let s0 = (2.0 * m / t).sqrt();
        let a = -b * s0 * s0;
        let u = PeriodicField::constant(t, 6, Complex64::new(s0, 0.0)).unwrap();
        let hill = hill_spectrum(&u, &cubic(), a, b, 6, None).unwrap();
        let closed = constant_spectrum(&cubic(), b, m, t, 6).unwrap();
        prop_assert_eq!(hill.eigenvalues.len(), closed.eigenvalues.len());
        for (x, y) in hill.eigenvalues.iter().zip(&closed.eigenvalues) {
            prop_assert!((x - y).abs() < 1e-10 * (1.0 + y.abs()));
        }
    }
}

#[test]
fn hill_truncation_converges() {
    let r = minimize_mass(&cubic(), 1.0, PI, 2.0 * PI, Boundary::Periodic, true, &config(48)).unwrap();
    let low = |n: usize| {
        let s = hill_spectrum(&r.field, &cubic(), r.multiplier_a, 1.0, n, None).unwrap();
        s.eigenvalues[..5].to_vec()
    };
    let (a, b, c) = (low(12), low(24), low(48));
    let d1 = a.iter().zip(&c).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let d2 = b.iter().zip(&c).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    assert!(d2 < d1, "{d1} {d2}");
    assert!(d2 < 1e-8, "{d2}");
}

#[test]
fn translation_mode_is_in_the_kernel() {
    let r = minimize_mass(&cubic(), 1.0, PI, 2.0 * PI, Boundary::Periodic, true, &config(32)).unwrap();
    let u = &r.field;
    // Coefficients of u_x.
    let du: Vec<Complex64> = u
        .iter_modes()
        .map(|(j, c)| c * Complex64::new(0.0, u.wavenumber(j)))
        .collect();
    let h = hill_matrix(u, &cubic(), r.multiplier_a, 1.0, 32).unwrap();
    let v = nalgebra::DVector::from_vec(du.clone());
    let hv = &h * &v;
    let ratio = hv.norm() / v.norm();
    assert!(ratio < 1e-8, "|L u_x| / |u_x| = {ratio}");
    let s = hill_spectrum(u, &cubic(), r.multiplier_a, 1.0, 32, None).unwrap();
    assert_eq!(s.kernel_dimension(), 1);
}

#[test]
fn minimizers_have_morse_index_at_most_one() {
    for m in [0.5, 1.0, 2.0, PI, 5.0] {
        let r = minimize_mass(&cubic(), 1.0, m, 2.0 * PI, Boundary::Periodic, true, &config(32)).unwrap();
        assert!(r.converged);
        let s = hill_spectrum(&r.field, &cubic(), r.multiplier_a, 1.0, 32, Some(1e-7)).unwrap();
        assert!(s.morse_index <= 1, "m = {m}: {:?}", &s.eigenvalues[..4]);
    }
    let r = minimize_nehari(&cubic(), 1.0, -1.0, 2.0 * PI, Boundary::Periodic, &config(32)).unwrap();
    let s = hill_spectrum(&r.field, &cubic(), -1.0, 1.0, 32, Some(1e-7)).unwrap();
    assert_eq!(s.morse_index, 1);
}
