#![allow(dead_code)]

use num_complex::Complex64;
use periodic_waves::{Boundary, PeriodicField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random band-limited field with coefficients decaying like `e^{−|j|/3}`.
pub fn random_field(seed: u64, period: f64, boundary: Boundary, modes: usize) -> PeriodicField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (-(modes as i64)..=modes as i64)
        .map(|j| {
            let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            if boundary.admits(j) {
                c * (-(j.abs() as f64) / 3.0).exp()
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    PeriodicField::new(period, boundary, modes, coeffs).unwrap()
}

/// `Re ∫ u v̄`.
pub fn real_inner(u: &PeriodicField, v: &PeriodicField) -> f64 {
    u.inner(v).re
}

pub fn rel_diff(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(1e-300)
}
