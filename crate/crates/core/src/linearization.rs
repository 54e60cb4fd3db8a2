//! Spectra of the real linearized operator `L = −∂xx − a − b f'(u)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{analyze, quadrature_points, synthesize, Boundary, PeriodicField};
use crate::nonlinearity::NonlinearitySpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Operator {
    /// Linearization at the constant of mass `m`; `a` is its multiplier.
    Constant { m: f64, period: f64, a: f64 },
    /// Galerkin truncation on `|j| ≤ modes` around a computed profile.
    Hill {
        period: f64,
        boundary: Boundary,
        profile_modes: usize,
        a: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Ascending, repeated according to multiplicity.
    pub eigenvalues: Vec<f64>,
    pub morse_index: usize,
    /// Eigenvalues with `|λ| ≤ zero_tol` are neither negative nor positive.
    pub zero_tol: f64,
    pub b: f64,
    pub spec: NonlinearitySpec,
    pub operator: Operator,
    /// `n_max` for the closed form, `N` for the Galerkin matrix.
    pub truncation: usize,
}

impl SpectrumReport {
    fn new(
        mut eigenvalues: Vec<f64>,
        zero_tol: Option<f64>,
        b: f64,
        spec: &NonlinearitySpec,
        operator: Operator,
        truncation: usize,
    ) -> SpectrumReport {
        eigenvalues.sort_by(f64::total_cmp);
        let radius = eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
        let zero_tol = zero_tol.unwrap_or(1e-8 * radius);
        let morse_index = eigenvalues.iter().filter(|&&l| l < -zero_tol).count();
        SpectrumReport {
            eigenvalues,
            morse_index,
            zero_tol,
            b,
            spec: spec.clone(),
            operator,
            truncation,
        }
    }

    /// Number of eigenvalues with `|λ| ≤ zero_tol`.
    pub fn kernel_dimension(&self) -> usize {
        self.eigenvalues
            .iter()
            .filter(|l| l.abs() <= self.zero_tol)
            .count()
    }
}

/// Closed-form spectrum at the constant `s₀ = √(2m/T)`:
/// `λ_n = (2πn/T)² + b (f(s₀)/s₀ − f'(s₀))`, with `a = −b f(s₀)/s₀`.
pub fn constant_spectrum(
    spec: &NonlinearitySpec,
    b: f64,
    m: f64,
    period: f64,
    n_max: usize,
) -> Result<SpectrumReport> {
    spec.validate()?;
    if !(m > 0.0) || !(period > 0.0) {
        return Err(Error::Domain(format!(
            "mass and period must be > 0, got m = {m}, T = {period}"
        )));
    }
    let s0 = (2.0 * m / period).sqrt();
    let shift = b * (spec.f_over_s(s0) - spec.df(s0));
    let mut eigenvalues = vec![shift];
    for n in 1..=n_max {
        let l = (2.0 * PI * n as f64 / period).powi(2) + shift;
        eigenvalues.push(l);
        eigenvalues.push(l);
    }
    let operator = Operator::Constant {
        m,
        period,
        a: -b * spec.f_over_s(s0),
    };
    Ok(SpectrumReport::new(eigenvalues, None, b, spec, operator, n_max))
}

/// The Hermitian matrix of `L` on the Fourier modes `|j| ≤ modes` of the
/// profile's boundary class.
pub fn hill_matrix(
    profile: &PeriodicField,
    spec: &NonlinearitySpec,
    a: f64,
    b: f64,
    modes: usize,
) -> Result<DMatrix<Complex64>> {
    spec.validate()?;
    if !profile.is_real(1e-8) {
        return Err(Error::Precondition(
            "the linearized operator -d_xx - a - b f'(u) is assembled for real profiles".into(),
        ));
    }
    let boundary = profile.boundary();
    let basis: Vec<i64> = (-(modes as i64)..=modes as i64)
        .filter(|&j| boundary.admits(j))
        .collect();
    let cutoff = profile.modes().max(modes);
    let n = quadrature_points(cutoff, spec.max_exponent());
    let padded = profile.with_modes(cutoff)?;
    let samples = synthesize(padded.coeffs(), n);
    let weight: Vec<Complex64> = samples
        .iter()
        .map(|z| Complex64::new(spec.df(z.norm()), 0.0))
        .collect();
    // Coefficients of f'(|u|) for |l| ≤ 2 modes.
    let w = analyze(&weight, 2 * modes);
    let w_at = |l: i64| w[(l + 2 * modes as i64) as usize];
    let k0 = 2.0 * PI / profile.period();
    let dim = basis.len();
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for (r, &j) in basis.iter().enumerate() {
        for (c, &k) in basis.iter().enumerate() {
            let mut v = -b * w_at(j - k);
            if r == c {
                v += Complex64::new((k0 * j as f64).powi(2) - a, 0.0);
            }
            h[(r, c)] = v;
        }
    }
    let sym = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(sym)
}

/// Eigenvalues of the Galerkin truncation of `L` around `profile`.
pub fn hill_spectrum(
    profile: &PeriodicField,
    spec: &NonlinearitySpec,
    a: f64,
    b: f64,
    modes: usize,
    zero_tol: Option<f64>,
) -> Result<SpectrumReport> {
    let h = hill_matrix(profile, spec, a, b, modes)?;
    let eigenvalues: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    let operator = Operator::Hill {
        period: profile.period(),
        boundary: profile.boundary(),
        profile_modes: profile.modes(),
        a,
    };
    Ok(SpectrumReport::new(eigenvalues, zero_tol, b, spec, operator, modes))
}
