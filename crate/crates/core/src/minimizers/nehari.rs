//! Action minimization on the Nehari manifold `I = 0` for single powers
//! `f(u) = |u|^{p−1} u`, and the equivalent norm problem.
//!
//! Along the ray through `v`, the Nehari representative is `t₀ v` with
//! `t₀^{p−1} = Q(v) / (b ‖v‖_{p+1}^{p+1})`, `Q(v) = ‖v_x‖² − a‖v‖²`. The
//! descent runs on the manifold: step along the preconditioned `L²` gradient
//! `−u_xx − a u − b f(u)` of `S`, then scale back onto the manifold. Rays
//! without a representative are rejected by the line search.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{
    analyze, functionals, gradient_energy, nehari_project, nonlinear_samples, ode_residual, project_parity,
    project_real, quadrature_points, synthesize, Boundary, PeriodicField,
};
use crate::nonlinearity::NonlinearitySpec;
use crate::rearrangement::fourier_rearrange;

use super::descent::{combine, rounding_slack, with_coeffs, Metric, StepControl};
use super::{
    anti_periodic_frequency_bound, check_period, initial_field, MinimizationResult, MinimizeConfig, Problem,
};

const ARMIJO: f64 = 1e-4;

/// Result of the rearrangement pass applied to anti-periodic minimizers
/// when `p` is an odd integer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RearrangementOutcome {
    /// `S` of the descent result before rearrangement.
    pub action_before: f64,
    /// `S` of the Nehari representative of the rearranged field.
    pub action_after: f64,
    pub accepted: bool,
}

fn single_power(spec: &NonlinearitySpec) -> Result<f64> {
    spec.validate()?;
    spec.single_power_exponent().ok_or_else(|| {
        Error::Precondition(
            "the Nehari problems are posed for single powers f(u) = |u|^{p-1} u".into(),
        )
    })
}

/// Sign preconditions of the three Nehari problems.
fn check_signs(a: f64, b: f64, period: f64, boundary: Boundary) -> Result<()> {
    match boundary {
        Boundary::Periodic => {
            if b > 0.0 && a < 0.0 || b < 0.0 && a > 0.0 {
                Ok(())
            } else {
                Err(Error::Precondition(format!(
                    "the periodic Nehari problem needs a and b of opposite signs \
                     (focusing b > 0 with a < 0, or defocusing b < 0 with a > 0); got a = {a}, b = {b}"
                )))
            }
        }
        Boundary::AntiPeriodic => {
            let bound = anti_periodic_frequency_bound(period);
            if b > 0.0 && a < bound {
                Ok(())
            } else {
                Err(Error::Precondition(format!(
                    "the anti-periodic Nehari problem needs b > 0 and a < 4 pi^2/T^2 = {bound} \
                     (Poincare-Wirtinger coercivity); got a = {a}, b = {b}"
                )))
            }
        }
    }
}

struct Point {
    field: PeriodicField,
    action: f64,
    scale: f64,
}

fn evaluate(field: PeriodicField, spec: &NonlinearitySpec, a: f64, b: f64) -> Point {
    let v = functionals(&field, spec, b, a);
    Point {
        action: v.action,
        scale: 0.5 * v.gradient_norm_sq + (a * v.mass).abs() + (b * v.potential_integral).abs(),
        field,
    }
}

fn action_gradient(field: &PeriodicField, spec: &NonlinearitySpec, a: f64, b: f64, real: bool) -> Vec<Complex64> {
    let mut grad = gradient_energy(field, spec, b).coeffs().to_vec();
    if real {
        project_real(&mut grad);
    }
    combine(&grad, -a, field.coeffs())
}

struct Descent {
    point: Point,
    gradient: Vec<Complex64>,
    iterations: usize,
    converged: bool,
}

#[allow(clippy::too_many_arguments)]
fn descend(
    start: Point,
    spec: &NonlinearitySpec,
    a: f64,
    b: f64,
    metric: &Metric,
    config: &MinimizeConfig,
    real: bool,
    history: &mut Vec<f64>,
) -> Descent {
    let mut current = start;
    let mut step = StepControl::new(config.step);
    let mut g = action_gradient(&current.field, spec, a, b, real);
    let mut previous: Option<(Vec<Complex64>, Vec<Complex64>, f64)> = None;
    let mut iterations = 0;
    let mut converged = false;
    loop {
        if let Some((s, g_prev, accepted)) = previous.take() {
            let y = combine(&g, -1.0, &g_prev);
            step.update(metric, &s, &y, accepted);
        }
        if metric.norm(&g) <= config.tol {
            converged = true;
            break;
        }
        if iterations >= config.max_iters {
            break;
        }
        let u = current.field.coeffs();
        let dir = metric.precondition(&g);
        let slope = metric.dot(&g, &dir);
        if !(slope > 0.0) {
            break;
        }
        let mut alpha = step.current();
        let mut accepted = None;
        for _ in 0..60 {
            let trial = with_coeffs(&current.field, combine(u, -alpha, &dir));
            if let Ok((_, projected)) = nehari_project(&trial, spec, a, b) {
                let trial = evaluate(projected, spec, a, b);
                let bound = current.action - ARMIJO * alpha * slope + rounding_slack(current.scale);
                if trial.action <= bound {
                    accepted = Some(trial);
                    break;
                }
            }
            alpha *= 0.5;
        }
        let Some(next) = accepted else {
            break;
        };
        iterations += 1;
        let s = combine(next.field.coeffs(), -1.0, u);
        let g_prev = std::mem::take(&mut g);
        current = next;
        history.push(current.action);
        g = action_gradient(&current.field, spec, a, b, real);
        previous = Some((s, g_prev, alpha));
    }
    Descent {
        point: current,
        gradient: g,
        iterations,
        converged,
    }
}

fn is_odd_integer(p: f64) -> bool {
    p.fract() == 0.0 && (p as i64) % 2 == 1
}

/// Minimizes `S(u) = E(u) − a M(u)` over nonzero fields with `I(u) = 0`.
///
/// For anti-periodic fields and odd integer `p` the descent result is
/// rearranged; the rearranged field is kept when its action is not larger,
/// and then polished by a second descent restricted to real fields.
pub fn minimize_nehari(
    spec: &NonlinearitySpec,
    b: f64,
    a: f64,
    period: f64,
    boundary: Boundary,
    config: &MinimizeConfig,
) -> Result<MinimizationResult> {
    let p = single_power(spec)?;
    config.validate()?;
    check_period(period)?;
    check_signs(a, b, period, boundary)?;
    let real = config.real_only;

    let c0 = (-a / b).abs().powf(1.0 / (p - 1.0)).max(1e-3);
    let start = initial_field(config, period, boundary, c0, b > 0.0, real)?;
    let (_, start) = nehari_project(&start, spec, a, b).map_err(|e| match e {
        Error::NoNehariRepresentative(msg) => {
            Error::NoNehariRepresentative(format!("initial field: {msg}"))
        }
        other => other,
    })?;
    let metric = Metric::new(&start, 1.0 + a.abs());
    let start = evaluate(start, spec, a, b);
    let mut history = vec![start.action];
    let mut run = descend(start, spec, a, b, &metric, config, real, &mut history);
    let mut iterations = run.iterations;

    let mut rearrangement = None;
    if boundary == Boundary::AntiPeriodic && is_odd_integer(p) {
        let before = run.point.action;
        let rearranged = fourier_rearrange(&run.point.field)?;
        if let Ok((_, projected)) = nehari_project(&rearranged, spec, a, b) {
            let candidate = evaluate(projected, spec, a, b);
            let accepted = candidate.action <= before + rounding_slack(run.point.scale);
            rearrangement = Some(RearrangementOutcome {
                action_before: before,
                action_after: candidate.action,
                accepted,
            });
            if accepted {
                history.push(candidate.action);
                let budget = MinimizeConfig {
                    max_iters: config.max_iters.saturating_sub(iterations),
                    ..config.clone()
                };
                run = descend(candidate, spec, a, b, &metric, &budget, true, &mut history);
                iterations += run.iterations;
            }
        }
    }

    let gradient_norm = metric.norm(&run.gradient);
    let field = run.point.field.canonical();
    let values = functionals(&field, spec, b, a);
    Ok(MinimizationResult {
        problem: Problem::Nehari { a },
        ode_residual: ode_residual(&field, spec, a, b),
        constancy: field.constancy(),
        constraint_residual: values.nehari.abs(),
        values,
        field,
        multiplier_a: a,
        gradient_norm,
        iterations,
        converged: run.converged,
        history,
        rearrangement,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormProblemResult {
    /// Minimizer scaled onto the Nehari manifold.
    pub field: PeriodicField,
    /// `(½ − 1/(p+1)) Q(t₀ v)` at the minimizer.
    pub objective: f64,
    /// `min Q` on the unit sphere of `L^{p+1}`.
    pub q_min: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// `(∫|v|^{p+1}, (p+1)|v|^{p−1}v)` with the gradient projected on the band.
fn lp_and_gradient(v: &PeriodicField, spec: &NonlinearitySpec, p: f64, real: bool) -> (f64, Vec<Complex64>) {
    let n = quadrature_points(v.modes(), p);
    let samples = synthesize(v.coeffs(), n);
    let integral = samples.iter().map(|z| z.norm().powf(p + 1.0)).sum::<f64>() * v.period() / n as f64;
    let mut grad: Vec<Complex64> = analyze(&nonlinear_samples(&samples, spec), v.modes())
        .into_iter()
        .map(|c| c * (p + 1.0))
        .collect();
    project_parity(&mut grad, v.boundary());
    if real {
        project_real(&mut grad);
    }
    (integral, grad)
}

fn quadratic_form(v: &PeriodicField, a: f64) -> f64 {
    v.gradient_norm_sq() - a * v.l2_norm_sq()
}

fn normalize(v: &PeriodicField, spec: &NonlinearitySpec, p: f64) -> PeriodicField {
    let (l, _) = lp_and_gradient(v, spec, p, false);
    v.scaled(l.powf(-1.0 / (p + 1.0)))
}

/// Minimizes `(½ − 1/(p+1)) ‖v‖²` over nonzero `v` with `I(v) ≤ 0`, where
/// `‖v‖² = Q(v) = ‖v_x‖² − a‖v‖²` (focusing, `Q` positive definite). Solved
/// as `min Q` on the unit sphere of `L^{p+1}`; at the minimum `I = 0` and the
/// objective is `c Q^{(p+1)/(p−1)} b^{−2/(p−1)}` with `c = ½ − 1/(p+1)`.
pub fn minimize_norm_problem(
    spec: &NonlinearitySpec,
    b: f64,
    a: f64,
    period: f64,
    boundary: Boundary,
    config: &MinimizeConfig,
) -> Result<NormProblemResult> {
    let p = single_power(spec)?;
    config.validate()?;
    check_period(period)?;
    let positive = match boundary {
        Boundary::Periodic => a < 0.0,
        Boundary::AntiPeriodic => a < anti_periodic_frequency_bound(period),
    };
    if !(b > 0.0) || !positive {
        return Err(Error::Precondition(format!(
            "the norm problem needs b > 0 and a positive definite quadratic form \
             (a < 0 periodic, a < 4 pi^2/T^2 anti-periodic); got a = {a}, b = {b}"
        )));
    }
    let real = config.real_only;
    let c0 = (a.abs() / b).powf(1.0 / (p - 1.0)).max(1e-3);
    let start = initial_field(config, period, boundary, c0, true, real)?;
    let mut v = normalize(&start, spec, p);
    let mut q = quadratic_form(&v, a);
    let metric = Metric::new(&v, 1.0 + a.abs());
    let k2: Vec<f64> = v.iter_modes().map(|(j, _)| v.wavenumber(j).powi(2)).collect();
    let grad_q = |v: &PeriodicField| -> Vec<Complex64> {
        v.coeffs()
            .iter()
            .zip(&k2)
            .map(|(c, k)| c * (2.0 * (k - a)))
            .collect()
    };
    let tangent = |v: &PeriodicField| -> (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>) {
        let gq = grad_q(v);
        let (_, gl) = lp_and_gradient(v, spec, p, real);
        let nu = metric.dot(&gq, &gl) / metric.dot(&gl, &gl);
        (combine(&gq, -nu, &gl), gq, gl)
    };

    let mut step = StepControl::new(config.step);
    let (mut r, mut gq, mut gl) = tangent(&v);
    let mut previous: Option<(Vec<Complex64>, Vec<Complex64>, f64)> = None;
    let mut iterations = 0;
    let mut converged = false;
    loop {
        if let Some((s, r_prev, accepted)) = previous.take() {
            let y = combine(&r, -1.0, &r_prev);
            step.update(&metric, &s, &y, accepted);
        }
        if metric.norm(&r) <= config.tol {
            converged = true;
            break;
        }
        if iterations >= config.max_iters {
            break;
        }
        let pq = metric.precondition(&gq);
        let pl = metric.precondition(&gl);
        let mu = metric.dot(&gl, &pq) / metric.dot(&gl, &pl);
        // r' = gq − μ gl is P-orthogonal to gl, so ⟨gq, P r'⟩ = ⟨r', P r'⟩.
        let tangent_q = combine(&gq, -mu, &gl);
        let dir = combine(&pq, -mu, &pl);
        let slope = metric.dot(&tangent_q, &dir);
        if !(slope > 0.0) {
            break;
        }
        let mut alpha = step.current();
        let mut accepted = None;
        for _ in 0..60 {
            let trial = with_coeffs(&v, combine(v.coeffs(), -alpha, &dir));
            if trial.l2_norm_sq() > 0.0 {
                let w = normalize(&trial, spec, p);
                let qw = quadratic_form(&w, a);
                if qw <= q - ARMIJO * alpha * slope + rounding_slack(q.abs() + (a * w.l2_norm_sq()).abs()) {
                    accepted = Some((w, qw));
                    break;
                }
            }
            alpha *= 0.5;
        }
        let Some((w, qw)) = accepted else {
            break;
        };
        iterations += 1;
        let s = combine(w.coeffs(), -1.0, v.coeffs());
        let r_prev = std::mem::take(&mut r);
        v = w;
        q = qw;
        (r, gq, gl) = tangent(&v);
        previous = Some((s, r_prev, alpha));
    }

    let c = 0.5 - 1.0 / (p + 1.0);
    let objective = c * q.powf((p + 1.0) / (p - 1.0)) * b.powf(-2.0 / (p - 1.0));
    let (_, field) = nehari_project(&v, spec, a, b)?;
    Ok(NormProblemResult {
        field: field.canonical(),
        objective,
        q_min: q,
        gradient_norm: metric.norm(&r),
        iterations,
        converged,
    })
}
