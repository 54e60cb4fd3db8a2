//! Polar-form analysis of the profile equation `u_xx + a u + b f(u) = 0`.
//!
//! Writing `u = r e^{iφ}` with angular momentum `J = r² φ_x`, the modulus obeys
//! `r_xx = J²/r³ − a r − b f(r)`, a one-degree-of-freedom Hamiltonian system
//! with first integral `E = r_x²/2 + V_J(r)` and effective potential
//! `V_J(r) = J²/(2r²) + a r²/2 + b F(r)`.
//!
//! For `J = 0` the profile is real up to a constant phase and `r` is allowed to
//! change sign; `f` is extended oddly and `F` evenly.
//!
//! When `b < 0 < a` and `J ≠ 0` the number of equilibria is governed by the
//! comparison of `J²` with the maximum *value* `k(r_c)` of
//! `k(r) = r⁴ (a + b f(r)/r)`, where `k'(r_c) = 0`; see
//! [`momentum_threshold`].

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nonlinearity::NonlinearitySpec;
use crate::quadrature;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub spec: NonlinearitySpec,
    pub a: f64,
    pub b: f64,
    /// Angular momentum `J = Im(u_x ū)`.
    pub j: f64,
}

impl PotentialParams {
    pub fn new(spec: NonlinearitySpec, a: f64, b: f64, j: f64) -> Result<Self> {
        spec.validate()?;
        if b == 0.0 || !b.is_finite() {
            return Err(Error::Domain(format!("coupling b must be nonzero, got {b}")));
        }
        if !a.is_finite() || !j.is_finite() {
            return Err(Error::Domain("a and J must be finite".into()));
        }
        Ok(PotentialParams { spec, a, b, j })
    }

    fn j_sq(&self) -> f64 {
        self.j * self.j
    }

    /// `V_J(r)`; even in `r` when `J = 0`.
    pub fn potential(&self, r: f64) -> f64 {
        let s = r.abs();
        let centrifugal = if self.j == 0.0 {
            0.0
        } else {
            self.j_sq() / (2.0 * s * s)
        };
        centrifugal + 0.5 * self.a * s * s + self.b * self.spec.antiderivative(s)
    }

    /// `V_J'(r) = −J²/r³ + a r + b f(r)`; odd in `r` when `J = 0`.
    pub fn dpotential(&self, r: f64) -> f64 {
        let s = r.abs();
        let centrifugal = if self.j == 0.0 {
            0.0
        } else {
            -self.j_sq() / (s * s * s)
        };
        r.signum() * (centrifugal + self.a * s + self.b * self.spec.f(s))
    }

    /// `V_J''(r) = 3J²/r⁴ + a + b f'(r)`.
    pub fn d2potential(&self, r: f64) -> f64 {
        let s = r.abs();
        let centrifugal = if self.j == 0.0 {
            0.0
        } else {
            3.0 * self.j_sq() / (s * s * s * s)
        };
        centrifugal + self.a + self.b * self.spec.df(s)
    }

    /// Magnitude of the terms of `V_J'`, used to scale root tolerances.
    fn force_scale(&self, r: f64) -> f64 {
        let s = r.abs();
        let centrifugal = if self.j == 0.0 {
            0.0
        } else {
            self.j_sq() / (s * s * s)
        };
        centrifugal + (self.a * s).abs() + (self.b * self.spec.f(s)).abs()
    }

    /// First integral `E(r, r_x)`.
    pub fn energy(&self, r: f64, rx: f64) -> f64 {
        0.5 * rx * rx + self.potential(r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquilibriumKind {
    Center,
    Saddle,
    SaddleNode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub r: f64,
    pub kind: EquilibriumKind,
    pub potential: f64,
    /// `λ²` of the Jacobian, `−V_J''(r)`.
    pub lambda_sq: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    /// Relative tolerance on `|V_J'|` for accepting a root.
    pub root_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            r_min: 1e-6,
            r_max: 1e3,
            points: 10_000,
            root_tol: 1e-9,
        }
    }
}

fn bisect<F: Fn(f64) -> f64>(g: F, a: f64, b: f64) -> f64 {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut glo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn lambda_sq_at(params: &PotentialParams, r: f64) -> f64 {
    if r == 0.0 {
        -(params.a + params.b * params.spec.df(0.0))
    } else {
        -params.d2potential(r)
    }
}

fn classify_kind(params: &PotentialParams, r: f64, lambda_sq: f64, double: bool) -> EquilibriumKind {
    let scale = if r == 0.0 {
        params.a.abs().max(f64::MIN_POSITIVE)
    } else {
        params.force_scale(r) / r.abs()
    };
    let degenerate = lambda_sq.abs() <= 1e-8 * scale;
    if double || (degenerate && r != 0.0) {
        EquilibriumKind::SaddleNode
    } else if degenerate || lambda_sq == 0.0 {
        if params.b > 0.0 {
            EquilibriumKind::Center
        } else {
            EquilibriumKind::Saddle
        }
    } else if lambda_sq < 0.0 {
        EquilibriumKind::Center
    } else {
        EquilibriumKind::Saddle
    }
}

/// Zeros of `V_J'` on `[0, r_max]`, sorted and classified.
pub fn critical_points(params: &PotentialParams) -> Vec<CriticalPoint> {
    critical_points_with(params, &ScanOptions::default())
}

pub fn critical_points_with(params: &PotentialParams, opts: &ScanOptions) -> Vec<CriticalPoint> {
    let grid = crate::nonlinearity::log_grid(opts.r_min, opts.r_max, opts.points);
    let dv: Vec<f64> = grid.iter().map(|&r| params.dpotential(r)).collect();
    let d2v: Vec<f64> = grid.iter().map(|&r| params.d2potential(r)).collect();

    // (r, double)
    let mut candidates: Vec<(f64, bool)> = Vec::new();
    for i in 0..grid.len() - 1 {
        if dv[i] == 0.0 {
            candidates.push((grid[i], false));
        } else if dv[i].signum() != dv[i + 1].signum() && dv[i + 1] != 0.0 {
            candidates.push((bisect(|r| params.dpotential(r), grid[i], grid[i + 1]), false));
        }
        // Tangential roots: extrema of V_J' touching zero.
        if d2v[i] != 0.0 && d2v[i].signum() != d2v[i + 1].signum() {
            let re = bisect(|r| params.d2potential(r), grid[i], grid[i + 1]);
            if params.dpotential(re).abs() <= opts.root_tol * params.force_scale(re) {
                candidates.push((re, true));
            }
        }
    }
    if let Some(&last) = dv.last() {
        if last == 0.0 {
            candidates.push((*grid.last().unwrap(), false));
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));

    // Roots closer than 10 × tolerance are one double root.
    let merge = 10.0 * opts.root_tol.sqrt();
    let mut merged: Vec<(f64, bool)> = Vec::new();
    for (r, double) in candidates {
        match merged.last_mut() {
            Some(last) if (r - last.0).abs() <= merge * r.max(1.0) => {
                last.1 = true;
            }
            _ => merged.push((r, double)),
        }
    }

    let mut out = Vec::with_capacity(merged.len() + 1);
    if params.j == 0.0 {
        let lambda_sq = lambda_sq_at(params, 0.0);
        out.push(CriticalPoint {
            r: 0.0,
            kind: classify_kind(params, 0.0, lambda_sq, false),
            potential: params.potential(0.0),
            lambda_sq,
        });
    }
    for (r, double) in merged {
        let lambda_sq = lambda_sq_at(params, r);
        out.push(CriticalPoint {
            r,
            kind: classify_kind(params, r, lambda_sq, double),
            potential: params.potential(r),
            lambda_sq,
        });
    }
    out
}

/// Classifies a known zero `r0` of `V_J'`.
pub fn classify_equilibrium(params: &PotentialParams, r0: f64) -> Result<CriticalPoint> {
    if params.j != 0.0 && r0 <= 0.0 {
        return Err(Error::Domain(
            "with J != 0 equilibria have r > 0".into(),
        ));
    }
    let residual = if r0 == 0.0 { 0.0 } else { params.dpotential(r0) };
    let scale = if r0 == 0.0 { 1.0 } else { params.force_scale(r0) };
    if residual.abs() > 1e-8 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NotARoot {
            r: r0,
            residual: residual.abs(),
        });
    }
    let r = r0.abs();
    let lambda_sq = lambda_sq_at(params, r);
    Ok(CriticalPoint {
        r: r0,
        kind: classify_kind(params, r, lambda_sq, false),
        potential: params.potential(r0),
        lambda_sq,
    })
}

/// `(r_c, k(r_c))` with `k'(r_c) = 0`: the largest `J²` for which `V_J` still
/// has critical points in the defocusing case `b < 0 < a`. `None` when `k`
/// has no interior maximum.
pub fn momentum_threshold(spec: &NonlinearitySpec, a: f64, b: f64) -> Option<(f64, f64)> {
    let dk = |r: f64| spec.eval_k(r, a, b).map(|v| v.1).unwrap_or(f64::NAN);
    let grid = crate::nonlinearity::log_grid(1e-6, 1e3, 10_000);
    for w in grid.windows(2) {
        let (d0, d1) = (dk(w[0]), dk(w[1]));
        if d0 > 0.0 && d1 <= 0.0 {
            let rc = bisect(dk, w[0], w[1]);
            let kc = spec.eval_k(rc, a, b).ok()?.0;
            return Some((rc, kc));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitSample {
    pub x: f64,
    pub r: f64,
    pub rx: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitHalt {
    /// `r` entered the guard band around the centrifugal singularity.
    NearSingularity,
    /// `|(r, r_x)|` exceeded the blow-up bound; the trajectory is unbounded.
    BlowUp,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub samples: Vec<OrbitSample>,
    pub energy: f64,
    /// `max |E(sample) − E(start)|`.
    pub drift: f64,
    pub j: f64,
    pub halted: Option<OrbitHalt>,
}

impl Orbit {
    pub fn length(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.x - self.samples[0].x)
    }

    /// Mean spacing between successive maxima of `r`, located by linear
    /// interpolation of the zero crossings of `r_x`.
    pub fn measured_period(&self) -> Option<f64> {
        let mut maxima = Vec::new();
        for w in self.samples.windows(2) {
            if w[0].rx > 0.0 && w[1].rx <= 0.0 {
                let t = w[0].rx / (w[0].rx - w[1].rx);
                maxima.push(w[0].x + t * (w[1].x - w[0].x));
            }
        }
        if maxima.len() < 2 {
            return None;
        }
        Some((maxima[maxima.len() - 1] - maxima[0]) / (maxima.len() - 1) as f64)
    }
}

const BLOW_UP: f64 = 1e6;

fn rk4_step(params: &PotentialParams, r: f64, rx: f64, h: f64) -> (f64, f64) {
    let acc = |r: f64| -params.dpotential(r);
    let (k1r, k1v) = (rx, acc(r));
    let (k2r, k2v) = (rx + 0.5 * h * k1v, acc(r + 0.5 * h * k1r));
    let (k3r, k3v) = (rx + 0.5 * h * k2v, acc(r + 0.5 * h * k2r));
    let (k4r, k4v) = (rx + h * k3v, acc(r + h * k3r));
    (
        r + h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r),
        rx + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )
}

/// Fixed-step RK4 integration of `(r, r_x)` over `|length|`; a negative
/// `length` integrates backwards in `x`.
pub fn integrate_orbit(
    params: &PotentialParams,
    r0: f64,
    rdot0: f64,
    length: f64,
    step: f64,
) -> Result<Orbit> {
    integrate_until(params, r0, rdot0, length, step, |_, _| false)
}

fn integrate_until<S>(
    params: &PotentialParams,
    r0: f64,
    rdot0: f64,
    length: f64,
    step: f64,
    mut stop: S,
) -> Result<Orbit>
where
    S: FnMut(&OrbitSample, &OrbitSample) -> bool,
{
    if !(step > 0.0) {
        return Err(Error::Domain(format!("step must be > 0, got {step}")));
    }
    if params.j != 0.0 && r0 <= 0.0 {
        return Err(Error::Domain(
            "orbits with J != 0 must start at r > 0".into(),
        ));
    }
    let guard = if params.j != 0.0 { 1e-3 * r0.min(1.0) } else { 0.0 };
    let steps = (length.abs() / step).round() as usize;
    let h = length.signum() * step;
    let energy = params.energy(r0, rdot0);
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(OrbitSample {
        x: 0.0,
        r: r0,
        rx: rdot0,
    });
    let (mut r, mut rx) = (r0, rdot0);
    let mut drift: f64 = 0.0;
    let mut halted = None;
    for n in 1..=steps {
        let (nr, nrx) = rk4_step(params, r, rx, h);
        if !nr.is_finite() || !nrx.is_finite() || nr.abs().max(nrx.abs()) > BLOW_UP {
            halted = Some(OrbitHalt::BlowUp);
            break;
        }
        if params.j != 0.0 && nr <= guard {
            halted = Some(OrbitHalt::NearSingularity);
            break;
        }
        r = nr;
        rx = nrx;
        drift = drift.max((params.energy(r, rx) - energy).abs());
        let sample = OrbitSample {
            x: n as f64 * h,
            r,
            rx,
        };
        let prev = *samples.last().unwrap();
        samples.push(sample);
        if stop(&prev, &sample) {
            break;
        }
    }
    Ok(Orbit {
        samples,
        energy,
        drift,
        j: params.j,
        halted,
    })
}

/// Period of the closed orbit at level `energy` around the deepest center.
pub fn orbit_period(params: &PotentialParams, energy: f64) -> Result<f64> {
    let center = critical_points(params)
        .into_iter()
        .filter(|c| c.kind == EquilibriumKind::Center)
        .min_by(|x, y| x.potential.total_cmp(&y.potential))
        .ok_or_else(|| Error::LevelSet("is empty: the potential has no center".into()))?;
    orbit_period_around(params, energy, center.r)
}

fn turning_point(
    params: &PotentialParams,
    energy: f64,
    center: f64,
    direction: f64,
    maxima: &[f64],
) -> Result<f64> {
    let mut h = 1e-3 * center.abs().max(1.0);
    let mut prev = center;
    loop {
        let r = center + direction * h;
        if params.j != 0.0 && r <= 0.0 {
            // V_J → +∞ at 0⁺: a crossing lies in (0, prev].
            let lo = prev * 1e-12;
            return Ok(bisect(|r| params.potential(r) - energy, lo, prev));
        }
        if r.abs() > BLOW_UP {
            return Err(Error::LevelSet(format!(
                "at E = {energy} is unbounded: no turning point on the {} side",
                if direction > 0.0 { "right" } else { "left" }
            )));
        }
        // A local maximum above the level inside the step would be skipped.
        let (lo, hi) = if prev < r { (prev, r) } else { (r, prev) };
        let barrier = maxima
            .iter()
            .filter(|&&m| m > lo && m < hi && params.potential(m) >= energy)
            .min_by(|x, y| (*x - prev).abs().total_cmp(&(*y - prev).abs()));
        if let Some(&m) = barrier {
            return Ok(bisect(|r| params.potential(r) - energy, prev, m));
        }
        if params.potential(r) >= energy {
            return Ok(bisect(|r| params.potential(r) - energy, prev, r));
        }
        prev = r;
        h *= 1.05;
    }
}

/// Period `2 ∫ dr / √(2 (E − V_J))` of the closed orbit at level `energy`
/// containing the center `center` in its interior.
pub fn orbit_period_around(params: &PotentialParams, energy: f64, center: f64) -> Result<f64> {
    let c = classify_equilibrium(params, center)?;
    if c.kind != EquilibriumKind::Center {
        return Err(Error::LevelSet(format!("around r = {center} is not around a center")));
    }
    let v_c = params.potential(center);
    let curvature = params.d2potential(center.abs());
    let scale = v_c.abs().max(1.0);
    if energy < v_c - 1e-14 * scale {
        return Err(Error::LevelSet(format!(
            "at E = {energy} is empty: below the center value {v_c}"
        )));
    }
    if energy <= v_c + 1e-14 * scale {
        return Ok(2.0 * PI / curvature.sqrt());
    }
    let mut maxima: Vec<f64> = Vec::new();
    for c in critical_points(params) {
        if c.kind != EquilibriumKind::Center {
            maxima.push(c.r);
            if params.j == 0.0 {
                maxima.push(-c.r);
            }
        }
    }
    let lo = turning_point(params, energy, center, -1.0, &maxima)?;
    let hi = turning_point(params, energy, center, 1.0, &maxima)?;
    check_no_escape(params, energy, lo, hi)?;
    let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    let (dlo, dhi) = (params.dpotential(lo), params.dpotential(hi));
    let integrand = |theta: f64| {
        let (s, cth) = theta.sin_cos();
        let r = mid + half * s;
        let mut gap = energy - params.potential(r);
        let small = 1e-10 * energy.abs().max(1.0);
        if gap < small {
            // Linearize at the nearer turning point to avoid cancellation.
            gap = if s > 0.0 {
                dhi * (hi - r)
            } else {
                -dlo * (r - lo)
            };
        }
        if gap <= 0.0 {
            return 0.0;
        }
        half * cth / (2.0 * gap).sqrt()
    };
    Ok(2.0 * quadrature::adaptive(integrand, -0.5 * PI, 0.5 * PI, 1e-11))
}

/// Rejects levels whose sublevel set between the turning points is not a
/// single well, i.e. the orbit would leave through a saddle.
fn check_no_escape(params: &PotentialParams, energy: f64, lo: f64, hi: f64) -> Result<()> {
    let n = 2000;
    for i in 1..n {
        let r = lo + (hi - lo) * i as f64 / n as f64;
        if params.potential(r) > energy {
            return Err(Error::LevelSet(format!(
                "at E = {energy} has no closed orbit spanning [{lo}, {hi}]"
            )));
        }
    }
    Ok(())
}

/// Rectangle of the `(r, r_x)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub r_min: f64,
    pub r_max: f64,
    pub rx_min: f64,
    pub rx_max: f64,
}

impl Window {
    fn contains(&self, r: f64, rx: f64, slack: f64) -> bool {
        let wr = slack * (self.r_max - self.r_min);
        let wv = slack * (self.rx_max - self.rx_min);
        r >= self.r_min - wr && r <= self.r_max + wr && rx >= self.rx_min - wv && rx <= self.rx_max + wv
    }

    /// A window framing all equilibria of `params` with margin.
    pub fn around(params: &PotentialParams) -> Window {
        let reach = critical_points(params)
            .iter()
            .map(|c| c.r.abs())
            .fold(0.0, f64::max)
            .max(1.0)
            * 1.6;
        let r_min = if params.j == 0.0 { -reach } else { 0.0 };
        Window {
            r_min,
            r_max: reach,
            rx_min: -reach,
            rx_max: reach,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortraitOrbit {
    pub level: f64,
    pub separatrix: bool,
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhasePortrait {
    pub params: PotentialParams,
    pub window: Window,
    /// Equilibria in the window, mirrored to `r < 0` when `J = 0`.
    pub equilibria: Vec<CriticalPoint>,
    /// Abscissas of the vertical isocline `I₀` (where `r_xx = 0`, `r_x ≠ 0`).
    pub isocline_zero: Vec<f64>,
    /// Segments `[r₁, r₂]` of the horizontal isocline `I_∞` on `r_x = 0`.
    pub isocline_infinity: Vec<[f64; 2]>,
    pub separatrix_levels: Vec<f64>,
    pub orbits: Vec<PortraitOrbit>,
}

const PORTRAIT_STEP: f64 = 5e-3;
const PORTRAIT_LENGTH: f64 = 200.0;

fn trace(params: &PotentialParams, window: &Window, r0: f64, rx0: f64) -> Vec<[f64; 2]> {
    let mut crossings = 0;
    let start_sign = if rx0 == 0.0 { None } else { Some(rx0 > 0.0) };
    let orbit = integrate_until(params, r0, rx0, PORTRAIT_LENGTH, PORTRAIT_STEP, |prev, cur| {
        if !window.contains(cur.r, cur.rx, 0.25) {
            return true;
        }
        if (prev.rx > 0.0) != (cur.rx > 0.0) && prev.rx != 0.0 {
            crossings += 1;
        }
        match start_sign {
            // Axis seed: closed after two sign changes of r_x.
            None => crossings >= 2 && cur.x > PORTRAIT_STEP * 4.0,
            Some(_) => {
                crossings >= 2
                    && (cur.r - r0).abs() < 1e-2 * (window.r_max - window.r_min)
                    && (cur.rx - rx0).abs() < 1e-2 * (window.rx_max - window.rx_min)
            }
        }
    });
    let Ok(orbit) = orbit else {
        return Vec::new();
    };
    let stride = (orbit.samples.len() / 1500).max(1);
    let mut pts: Vec<[f64; 2]> = orbit
        .samples
        .iter()
        .step_by(stride)
        .map(|s| [s.r, s.rx])
        .collect();
    if let Some(last) = orbit.samples.last() {
        pts.push([last.r, last.rx]);
    }
    pts
}

/// Equilibria, isoclines and representative orbits of the radial dynamics.
pub fn phase_portrait(params: &PotentialParams, window: &Window, resolution: usize) -> PhasePortrait {
    let roots = critical_points(params);
    let mut equilibria: Vec<CriticalPoint> = Vec::new();
    for c in &roots {
        equilibria.push(*c);
        if params.j == 0.0 && c.r > 0.0 {
            equilibria.push(CriticalPoint { r: -c.r, ..*c });
        }
    }
    equilibria.retain(|c| c.r >= window.r_min && c.r <= window.r_max);
    equilibria.sort_by(|x, y| x.r.total_cmp(&y.r));

    let isocline_zero: Vec<f64> = equilibria.iter().map(|c| c.r).collect();
    let mut cuts = vec![window.r_min];
    cuts.extend(isocline_zero.iter().copied());
    cuts.push(window.r_max);
    let isocline_infinity = cuts
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| [w[0], w[1]])
        .collect();

    let mut portrait = PhasePortrait {
        params: params.clone(),
        window: *window,
        equilibria: equilibria.clone(),
        isocline_zero,
        isocline_infinity,
        separatrix_levels: Vec::new(),
        orbits: Vec::new(),
    };
    let centers: Vec<&CriticalPoint> = roots
        .iter()
        .filter(|c| c.kind == EquilibriumKind::Center)
        .collect();
    if centers.is_empty() {
        return portrait;
    }

    // Regular orbits seeded on the r axis.
    let n = resolution.max(2);
    let lo = if params.j == 0.0 {
        window.r_min
    } else {
        window.r_min.max(1e-3 * window.r_max)
    };
    for i in 0..n {
        let r = lo + (window.r_max - lo) * (i as f64 + 0.5) / n as f64;
        if equilibria.iter().any(|c| (c.r - r).abs() < 1e-6) {
            continue;
        }
        let points = trace(params, window, r, 0.0);
        if points.len() > 1 {
            portrait.orbits.push(PortraitOrbit {
                level: params.potential(r),
                separatrix: false,
                points,
            });
        }
    }

    // Separatrices: levels just inside and just outside each saddle level.
    for s in roots
        .iter()
        .filter(|c| c.kind != EquilibriumKind::Center)
    {
        let level = s.potential;
        let gap = centers
            .iter()
            .map(|c| (level - c.potential).abs())
            .fold(f64::INFINITY, f64::min);
        if !gap.is_finite() || gap == 0.0 {
            continue;
        }
        portrait.separatrix_levels.push(level);
        let offset = 1e-6 * gap;
        let mirrors: &[f64] = if params.j == 0.0 && s.r > 0.0 { &[1.0, -1.0] } else { &[1.0] };
        for &sign in mirrors {
            let rs = sign * s.r;
            // Just outside: pass over the saddle.
            let rx = (2.0 * offset).sqrt();
            for dir in [1.0, -1.0] {
                let points = trace(params, window, rs, dir * rx);
                if points.len() > 1 {
                    portrait.orbits.push(PortraitOrbit {
                        level: level + offset,
                        separatrix: true,
                        points,
                    });
                }
            }
            // Just inside: start at the turning point next to the saddle on
            // each side whose potential dips below the saddle level.
            for dir in [1.0, -1.0] {
                let probe = rs + dir * 1e-3 * s.r.abs().max(1e-3);
                if params.j != 0.0 && probe <= 0.0 {
                    continue;
                }
                if params.potential(probe) >= level {
                    continue;
                }
                let target = level - offset;
                let mut far = probe;
                let mut step = 1e-3 * s.r.abs().max(1e-3);
                while params.potential(far) < target && far.abs() < BLOW_UP {
                    step *= 1.2;
                    far = rs + dir * step;
                    if params.j != 0.0 && far <= 0.0 {
                        break;
                    }
                }
                // Turning point between the saddle and the well.
                let turn = bisect(|r| params.potential(r) - target, rs, probe);
                let points = trace(params, window, turn, 0.0);
                if points.len() > 1 {
                    portrait.orbits.push(PortraitOrbit {
                        level: target,
                        separatrix: true,
                        points,
                    });
                }
            }
        }
    }
    portrait
}
