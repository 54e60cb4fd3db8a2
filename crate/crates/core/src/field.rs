//! Band-limited periodic and anti-periodic complex fields on `[0, T)`, stored
//! by their Fourier coefficients, and the conserved functionals evaluated on
//! them.
//!
//! A field is `u(x) = Σ_{|j| ≤ N} c_j e^{i j 2π x / T}`. Anti-periodic fields
//! (`u(x + T/2) = −u(x)`) live on the odd sub-lattice: every even coefficient
//! is identically zero. Quadratic quantities (mass, kinetic energy, momentum)
//! are computed exactly from the coefficients; integrals of the nonlinearity
//! use the trapezoidal rule on an oversampled uniform grid, which is exact for
//! trigonometric polynomials of degree below the number of points.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nonlinearity::NonlinearitySpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Boundary {
    Periodic,
    /// `u(x + T/2) = −u(x)`: odd Fourier modes of the period-`T` lattice.
    AntiPeriodic,
}

impl Boundary {
    /// Whether mode `j` can carry energy under this boundary condition.
    pub fn admits(self, j: i64) -> bool {
        match self {
            Boundary::Periodic => true,
            Boundary::AntiPeriodic => j.rem_euclid(2) == 1,
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt.write_str(match self {
            Boundary::Periodic => "periodic",
            Boundary::AntiPeriodic => "anti-periodic",
        })
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" => Ok(Boundary::Periodic),
            "anti-periodic" | "antiperiodic" => Ok(Boundary::AntiPeriodic),
            other => Err(Error::Parse(format!(
                "unknown boundary '{other}' (expected periodic or anti-periodic)"
            ))),
        }
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plans(n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        (p.plan_fft_forward(n), p.plan_fft_inverse(n))
    })
}

/// Uniform-grid values of `Σ_{|j|≤N} coeffs[j+N] e^{2πi j l / n}`.
pub(crate) fn synthesize(coeffs: &[Complex64], n: usize) -> Vec<Complex64> {
    let modes = (coeffs.len() - 1) / 2;
    debug_assert!(n > 2 * modes);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (idx, c) in coeffs.iter().enumerate() {
        let j = idx as i64 - modes as i64;
        buf[j.rem_euclid(n as i64) as usize] += c;
    }
    plans(n).1.process(&mut buf);
    buf
}

/// Discrete Fourier coefficients `|j| ≤ modes` of uniform samples.
pub(crate) fn analyze(samples: &[Complex64], modes: usize) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    plans(n).0.process(&mut buf);
    let scale = 1.0 / n as f64;
    (-(modes as i64)..=modes as i64)
        .map(|j| buf[j.rem_euclid(n as i64) as usize] * scale)
        .collect()
}

/// Number of quadrature points used for nonlinear integrals of a field with
/// cutoff `modes` under a nonlinearity of largest exponent `p_max`.
pub fn quadrature_points(modes: usize, p_max: f64) -> usize {
    let factor = p_max.ceil().max(1.0) as usize + 1;
    factor * (2 * modes + 1)
}

/// A band-limited field on `[0, T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicField {
    period: f64,
    boundary: Boundary,
    modes: usize,
    coeffs: Vec<Complex64>,
}

impl PeriodicField {
    /// Builds a field from `2N+1` coefficients ordered `j = −N..=N`.
    pub fn new(
        period: f64,
        boundary: Boundary,
        modes: usize,
        coeffs: Vec<Complex64>,
    ) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::Domain(format!("period must be > 0, got {period}")));
        }
        if modes < 1 {
            return Err(Error::Domain("mode cutoff N must be >= 1".into()));
        }
        if coeffs.len() != 2 * modes + 1 {
            return Err(Error::Domain(format!(
                "expected {} coefficients for N = {modes}, got {}",
                2 * modes + 1,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("field coefficient".into()));
        }
        for (idx, c) in coeffs.iter().enumerate() {
            let j = idx as i64 - modes as i64;
            if !boundary.admits(j) && c.norm() != 0.0 {
                return Err(Error::Boundary(format!(
                    "anti-periodic field has nonzero even mode {j}"
                )));
            }
        }
        Ok(PeriodicField {
            period,
            boundary,
            modes,
            coeffs,
        })
    }

    pub fn zeros(period: f64, boundary: Boundary, modes: usize) -> Result<Self> {
        PeriodicField::new(
            period,
            boundary,
            modes,
            vec![Complex64::new(0.0, 0.0); 2 * modes + 1],
        )
    }

    /// The periodic constant field `u ≡ value`.
    pub fn constant(period: f64, modes: usize, value: Complex64) -> Result<Self> {
        let mut field = PeriodicField::zeros(period, Boundary::Periodic, modes)?;
        field.coeffs[modes] = value;
        Ok(field)
    }

    /// `amplitude · e^{i j 2π x / T}` for a single admissible mode `j`.
    pub fn single_mode(
        period: f64,
        boundary: Boundary,
        modes: usize,
        j: i64,
        amplitude: Complex64,
    ) -> Result<Self> {
        let mut field = PeriodicField::zeros(period, boundary, modes)?;
        field.set_coeff(j, amplitude)?;
        Ok(field)
    }

    /// Projects uniform samples on `[0, T)` onto the band (and onto the odd
    /// sub-lattice for anti-periodic fields).
    pub fn from_samples(
        period: f64,
        boundary: Boundary,
        modes: usize,
        samples: &[Complex64],
    ) -> Result<Self> {
        if samples.len() < 2 * modes + 1 {
            return Err(Error::Undersampled {
                points: samples.len(),
                modes: 2 * modes + 1,
            });
        }
        let mut coeffs = analyze(samples, modes);
        project_parity(&mut coeffs, boundary);
        PeriodicField::new(period, boundary, modes, coeffs)
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Mode cutoff `N`.
    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Coefficients ordered `j = −N..=N`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Coefficient of mode `j`; zero outside the band.
    pub fn coeff(&self, j: i64) -> Complex64 {
        if j.unsigned_abs() as usize > self.modes {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs[(j + self.modes as i64) as usize]
    }

    pub fn set_coeff(&mut self, j: i64, c: Complex64) -> Result<()> {
        if j.unsigned_abs() as usize > self.modes {
            return Err(Error::Domain(format!(
                "mode {j} outside band N = {}",
                self.modes
            )));
        }
        if !self.boundary.admits(j) && c.norm() != 0.0 {
            return Err(Error::Boundary(format!(
                "mode {j} is not admissible for an anti-periodic field"
            )));
        }
        self.coeffs[(j + self.modes as i64) as usize] = c;
        Ok(())
    }

    /// `(j, c_j)` over the band.
    pub fn iter_modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let n = self.modes as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(idx, c)| (idx as i64 - n, *c))
    }

    pub fn wavenumber(&self, j: i64) -> f64 {
        2.0 * PI * j as f64 / self.period
    }

    /// Uniform samples `u(l T / n)`, `l = 0..n`.
    pub fn sample(&self, n_points: usize) -> Result<Vec<Complex64>> {
        if n_points < 2 * self.modes + 1 {
            return Err(Error::Undersampled {
                points: n_points,
                modes: 2 * self.modes + 1,
            });
        }
        Ok(synthesize(&self.coeffs, n_points))
    }

    /// Samples of `∂ₓ^order u`.
    pub fn sample_derivative(&self, n_points: usize, order: u32) -> Result<Vec<Complex64>> {
        if n_points < 2 * self.modes + 1 {
            return Err(Error::Undersampled {
                points: n_points,
                modes: 2 * self.modes + 1,
            });
        }
        let ik = |j: i64| Complex64::new(0.0, self.wavenumber(j)).powu(order);
        let coeffs: Vec<Complex64> = self.iter_modes().map(|(j, c)| c * ik(j)).collect();
        Ok(synthesize(&coeffs, n_points))
    }

    /// Grid abscissas matching [`PeriodicField::sample`].
    pub fn grid(&self, n_points: usize) -> Vec<f64> {
        (0..n_points)
            .map(|l| self.period * l as f64 / n_points as f64)
            .collect()
    }

    /// `‖u‖²_{L²(0,T)}`.
    pub fn l2_norm_sq(&self) -> f64 {
        self.period * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    /// `M(u) = ½ ‖u‖²`.
    pub fn mass(&self) -> f64 {
        0.5 * self.l2_norm_sq()
    }

    /// `‖∂ₓ u‖²_{L²(0,T)}`.
    pub fn gradient_norm_sq(&self) -> f64 {
        self.period
            * self
                .iter_modes()
                .map(|(j, c)| self.wavenumber(j).powi(2) * c.norm_sqr())
                .sum::<f64>()
    }

    /// `P(u) = ½ Im ∫ u ∂ₓū = −(T/2) Σ k_j |c_j|²`.
    pub fn momentum(&self) -> f64 {
        -0.5 * self.period
            * self
                .iter_modes()
                .map(|(j, c)| self.wavenumber(j) * c.norm_sqr())
                .sum::<f64>()
    }

    /// Complex `L²` inner product `∫ u v̄`.
    pub fn inner(&self, other: &PeriodicField) -> Complex64 {
        debug_assert_eq!(self.modes, other.modes);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            * self.period
    }

    /// `∫ |u|^q` by oversampled trapezoidal quadrature.
    pub fn lp_integral(&self, q: f64) -> f64 {
        let n = quadrature_points(self.modes, q.max(1.0));
        let samples = synthesize(&self.coeffs, n);
        samples.iter().map(|z| z.norm().powf(q)).sum::<f64>() * self.period / n as f64
    }

    pub fn scaled(&self, factor: f64) -> PeriodicField {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= factor);
        out
    }

    pub fn rotated(&self, phase: f64) -> PeriodicField {
        let rot = Complex64::from_polar(1.0, phase);
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= rot);
        out
    }

    /// `u(x − delta)`.
    pub fn shifted(&self, delta: f64) -> PeriodicField {
        let mut out = self.clone();
        let n = self.modes as i64;
        for (idx, c) in out.coeffs.iter_mut().enumerate() {
            let k = self.wavenumber(idx as i64 - n);
            *c *= Complex64::from_polar(1.0, -k * delta);
        }
        out
    }

    /// Same function with cutoff `modes` (zero-padded or truncated).
    pub fn with_modes(&self, modes: usize) -> Result<PeriodicField> {
        let coeffs = (-(modes as i64)..=modes as i64)
            .map(|j| self.coeff(j))
            .collect();
        PeriodicField::new(self.period, self.boundary, modes, coeffs)
    }

    /// Whether `c_{−j} = conj(c_j)` to `tol` relative to the largest coefficient.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.max_coeff_norm().max(f64::MIN_POSITIVE);
        self.iter_modes()
            .all(|(j, c)| (c - self.coeff(-j).conj()).norm() <= tol * scale)
    }

    /// Projection onto real-valued fields.
    pub fn real_part(&self) -> PeriodicField {
        let mut out = self.clone();
        project_real(&mut out.coeffs);
        out
    }

    fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Rotates the global phase so that the largest coefficient is real and
    /// positive. Ties are broken towards the lowest `|j|`, then negative `j`.
    pub fn gauge_aligned(&self) -> PeriodicField {
        let max = self.max_coeff_norm();
        if max == 0.0 {
            return self.clone();
        }
        let mut best: Option<(i64, Complex64)> = None;
        for (j, c) in self.iter_modes() {
            if c.norm() >= max * (1.0 - 1e-9) {
                let better = match best {
                    None => true,
                    Some((bj, _)) => j.abs() < bj.abs(),
                };
                if better {
                    best = Some((j, c));
                }
            }
        }
        let (_, c) = best.unwrap();
        self.rotated(-c.arg())
    }

    /// `min_θ ‖u − e^{iθ} v‖_{L²}`.
    pub fn distance_modulo_phase(&self, other: &PeriodicField) -> f64 {
        let cross = self.inner(other);
        if cross.norm() == 0.0 {
            return (self.l2_norm_sq() + other.l2_norm_sq()).sqrt();
        }
        self.distance(&other.rotated(cross.arg()))
    }

    /// `‖u − v‖_{L²}`.
    pub fn distance(&self, other: &PeriodicField) -> f64 {
        let diff: f64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        (diff * self.period).sqrt()
    }

    /// Relative standard deviation of `|u|` on the quadrature grid; 0 for constants.
    pub fn constancy(&self) -> f64 {
        let n = quadrature_points(self.modes, 1.0);
        let samples = synthesize(&self.coeffs, n);
        let mods: Vec<f64> = samples.iter().map(|z| z.norm()).collect();
        let mean = mods.iter().sum::<f64>() / n as f64;
        if mean == 0.0 {
            return 0.0;
        }
        let var = mods.iter().map(|m| (m - mean).powi(2)).sum::<f64>() / n as f64;
        var.sqrt() / mean
    }

    /// Canonical representative: global phase aligned and, when the field is
    /// real and non-constant, translated so that `max |u|` sits at `x = T/2`.
    pub fn canonical(&self) -> PeriodicField {
        let aligned = self.gauge_aligned();
        if !aligned.is_real(1e-9) || aligned.constancy() < 1e-12 {
            return aligned;
        }
        let peak = aligned.argmax_modulus();
        aligned.shifted(0.5 * self.period - peak).real_part()
    }

    /// Abscissa of `max |u|`, located on a fine grid and polished by Newton
    /// steps on `∂ₓ |u|²`.
    pub fn argmax_modulus(&self) -> f64 {
        let n = (16 * (2 * self.modes + 1)).max(64);
        let samples = synthesize(&self.coeffs, n);
        let (l, _) = samples
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (l, z)| {
                if z.norm_sqr() > acc.1 {
                    (l, z.norm_sqr())
                } else {
                    acc
                }
            });
        let mut x = self.period * l as f64 / n as f64;
        for _ in 0..20 {
            let (u, du, d2u) = self.eval_point(x);
            // g = |u|², g' = 2 Re(u' ū), g'' = 2 (|u'|² + Re(u'' ū))
            let g1 = 2.0 * (du * u.conj()).re;
            let g2 = 2.0 * (du.norm_sqr() + (d2u * u.conj()).re);
            if g2 >= 0.0 {
                break;
            }
            let step = g1 / g2;
            x -= step;
            if step.abs() < 1e-15 * self.period {
                break;
            }
        }
        x.rem_euclid(self.period)
    }

    /// `(u, u', u'')` at a single point.
    pub fn eval_point(&self, x: f64) -> (Complex64, Complex64, Complex64) {
        let mut out = (Complex64::default(), Complex64::default(), Complex64::default());
        for (j, c) in self.iter_modes() {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let k = self.wavenumber(j);
            let e = c * Complex64::from_polar(1.0, k * x);
            out.0 += e;
            out.1 += e * Complex64::new(0.0, k);
            out.2 += e * (-k * k);
        }
        out
    }
}

pub(crate) fn project_parity(coeffs: &mut [Complex64], boundary: Boundary) {
    let n = ((coeffs.len() - 1) / 2) as i64;
    for (idx, c) in coeffs.iter_mut().enumerate() {
        if !boundary.admits(idx as i64 - n) {
            *c = Complex64::new(0.0, 0.0);
        }
    }
}

pub(crate) fn project_real(coeffs: &mut [Complex64]) {
    let len = coeffs.len();
    for idx in 0..=len / 2 {
        let mirror = len - 1 - idx;
        let avg = 0.5 * (coeffs[idx] + coeffs[mirror].conj());
        coeffs[idx] = avg;
        coeffs[mirror] = avg.conj();
    }
}

/// Values of the conserved functionals for one field, together with the
/// parameters they were computed with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalValues {
    pub energy: f64,
    pub mass: f64,
    pub momentum: f64,
    pub action: f64,
    pub nehari: f64,
    /// `‖∂ₓ u‖²`.
    pub gradient_norm_sq: f64,
    /// `∫ F(|u|)`.
    pub potential_integral: f64,
    /// `∫ f(|u|) |u|`.
    pub work_integral: f64,
    pub a: f64,
    pub b: f64,
    pub spec: NonlinearitySpec,
}

/// Nonlinear integrals `(∫F(|u|), ∫f(|u|)|u|)` by oversampled quadrature.
fn nonlinear_integrals(field: &PeriodicField, spec: &NonlinearitySpec) -> (f64, f64) {
    let n = quadrature_points(field.modes, spec.max_exponent());
    let samples = synthesize(&field.coeffs, n);
    let (mut pot, mut work) = (0.0, 0.0);
    for z in &samples {
        let s = z.norm();
        pot += spec.antiderivative(s);
        work += spec.f(s) * s;
    }
    let w = field.period / n as f64;
    (pot * w, work * w)
}

/// `E`, `M`, `P`, `S = E − aM` and `I = ⟨S'(u), u⟩` for one field.
pub fn functionals(
    field: &PeriodicField,
    spec: &NonlinearitySpec,
    b: f64,
    a: f64,
) -> FunctionalValues {
    let grad = field.gradient_norm_sq();
    let mass = field.mass();
    let (pot, work) = nonlinear_integrals(field, spec);
    let energy = 0.5 * grad - b * pot;
    FunctionalValues {
        energy,
        mass,
        momentum: field.momentum(),
        action: energy - a * mass,
        nehari: grad - 2.0 * a * mass - b * work,
        gradient_norm_sq: grad,
        potential_integral: pot,
        work_integral: work,
        a,
        b,
        spec: spec.clone(),
    }
}

/// Grid samples of `f(u) = (f(|u|)/|u|) u`.
pub(crate) fn nonlinear_samples(samples: &[Complex64], spec: &NonlinearitySpec) -> Vec<Complex64> {
    samples.iter().map(|z| z * spec.f_over_s(z.norm())).collect()
}

/// `L²` gradient of `E`: the field `−u_xx − b f(u)`, projected back onto the
/// band and onto the boundary class of `field`.
pub fn gradient_energy(field: &PeriodicField, spec: &NonlinearitySpec, b: f64) -> PeriodicField {
    let n = quadrature_points(field.modes, spec.max_exponent());
    let samples = synthesize(&field.coeffs, n);
    let nl = analyze(&nonlinear_samples(&samples, spec), field.modes);
    let mut coeffs: Vec<Complex64> = field
        .iter_modes()
        .zip(nl)
        .map(|((j, c), g)| c * field.wavenumber(j).powi(2) - g * b)
        .collect();
    project_parity(&mut coeffs, field.boundary);
    PeriodicField {
        coeffs,
        ..field.clone()
    }
}

/// `‖u_xx + a u + b f(u)‖_{L²}` on the oversampled grid, without band projection.
pub fn ode_residual(field: &PeriodicField, spec: &NonlinearitySpec, a: f64, b: f64) -> f64 {
    let n = quadrature_points(field.modes, spec.max_exponent());
    let u = synthesize(&field.coeffs, n);
    let uxx = field
        .sample_derivative(n, 2)
        .expect("quadrature grid resolves the band");
    let sum: f64 = u
        .iter()
        .zip(&uxx)
        .map(|(z, zxx)| (zxx + z * a + z * (b * spec.f_over_s(z.norm()))).norm_sqr())
        .sum();
    (sum * field.period / n as f64).sqrt()
}

/// Scales `field` onto the Nehari manifold `I = 0` along its ray (single
/// powers only). Returns the scale factor and the projected field.
pub fn nehari_project(
    field: &PeriodicField,
    spec: &NonlinearitySpec,
    a: f64,
    b: f64,
) -> Result<(f64, PeriodicField)> {
    let p = spec.single_power_exponent().ok_or_else(|| {
        Error::Precondition("the Nehari scaling projection needs a single power f(u) = |u|^{p-1}u".into())
    })?;
    let quad = field.gradient_norm_sq() - a * field.l2_norm_sq();
    // Same quadrature as `functionals`, so that I(t0 u) vanishes to rounding
    // even where |u|^{p+1} is not smooth.
    let nonlinear = b * nonlinear_integrals(field, spec).1;
    if nonlinear == 0.0 || quad == 0.0 {
        return Err(Error::NoNehariRepresentative(format!(
            "degenerate ray (quadratic part {quad:e}, nonlinear part {nonlinear:e})"
        )));
    }
    if quad.signum() != nonlinear.signum() {
        return Err(Error::NoNehariRepresentative(format!(
            "quadratic part {quad:e} and nonlinear part {nonlinear:e} have opposite signs"
        )));
    }
    let t0 = (quad / nonlinear).powf(1.0 / (p - 1.0));
    Ok((t0, field.scaled(t0)))
}
