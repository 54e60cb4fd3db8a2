//! Energy minimization at fixed mass.

use crate::error::{Error, Result};
use crate::field::{functionals, gradient_energy, ode_residual, project_real, Boundary, PeriodicField};
use crate::nonlinearity::NonlinearitySpec;

use super::descent::{combine, rounding_slack, with_coeffs, Metric, StepControl};
use super::{check_period, initial_field, require_subcritical, MinimizationResult, MinimizeConfig, Problem};

const ARMIJO: f64 = 1e-4;

struct Iterate {
    field: PeriodicField,
    energy: f64,
    /// Magnitude of the terms of `E`, for rounding slack.
    scale: f64,
}

fn evaluate(field: PeriodicField, spec: &NonlinearitySpec, b: f64) -> Iterate {
    let v = functionals(&field, spec, b, 0.0);
    Iterate {
        energy: v.energy,
        scale: 0.5 * v.gradient_norm_sq + (b * v.potential_integral).abs(),
        field,
    }
}

fn rescale_to_mass(field: &PeriodicField, m: f64) -> PeriodicField {
    field.scaled((m / field.mass()).sqrt())
}

/// Constrained gradient `g = G − a u`, the multiplier `a = ⟨G, u⟩/‖u‖²` and
/// the energy gradient `G`.
fn constrained_gradient(
    field: &PeriodicField,
    spec: &NonlinearitySpec,
    b: f64,
    metric: &Metric,
    real: bool,
) -> (Vec<num_complex::Complex64>, f64) {
    let mut grad = gradient_energy(field, spec, b).coeffs().to_vec();
    if real {
        project_real(&mut grad);
    }
    let u = field.coeffs();
    let a = metric.dot(&grad, u) / metric.dot(u, u);
    (combine(&grad, -a, u), a)
}

/// Minimizes `E(u) = ½‖u_x‖² − b∫F(|u|)` subject to `M(u) = m` over fields of
/// the given boundary class. `momentum_zero` restricts to real fields, which
/// carry zero momentum.
pub fn minimize_mass(
    spec: &NonlinearitySpec,
    b: f64,
    m: f64,
    period: f64,
    boundary: Boundary,
    momentum_zero: bool,
    config: &MinimizeConfig,
) -> Result<MinimizationResult> {
    spec.validate()?;
    config.validate()?;
    check_period(period)?;
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::Domain(format!("mass must be > 0, got {m}")));
    }
    if b == 0.0 || !b.is_finite() {
        return Err(Error::Domain(format!("coupling b must be nonzero, got {b}")));
    }
    require_subcritical(spec, b)?;
    let real = config.real_only || momentum_zero;

    let s0 = (2.0 * m / period).sqrt();
    let start = initial_field(config, period, boundary, s0, b > 0.0, real)?;
    let mut current = evaluate(rescale_to_mass(&start, m), spec, b);

    let probe = Metric::new(&current.field, 1.0);
    let (_, a0) = constrained_gradient(&current.field, spec, b, &probe, real);
    let metric = Metric::new(&current.field, 1.0 + a0.abs());

    let mut step = StepControl::new(config.step);
    let mut history = vec![current.energy];
    let mut previous: Option<(Vec<num_complex::Complex64>, Vec<num_complex::Complex64>, f64)> = None;
    let mut iterations = 0;
    let mut converged = false;
    let (mut g, mut a) = constrained_gradient(&current.field, spec, b, &metric, real);
    loop {
        if let Some((s, g_prev, accepted)) = previous.take() {
            let y = combine(&g, -1.0, &g_prev);
            step.update(&metric, &s, &y, accepted);
        }
        let gnorm = metric.norm(&g);
        if gnorm <= config.tol {
            converged = true;
            break;
        }
        if iterations >= config.max_iters {
            break;
        }
        let u = current.field.coeffs();
        let pg = metric.precondition(&g);
        let pu = metric.precondition(u);
        let mu = metric.dot(u, &pg) / metric.dot(u, &pu);
        // g − μu is P-orthogonal to u, so ⟨g, dir⟩ = ⟨g − μu, P(g − μu)⟩.
        let dir = combine(&pg, -mu, &pu);
        let slope = metric.dot(&combine(&g, -mu, u), &dir);
        if !(slope > 0.0) {
            break;
        }

        let mut alpha = step.current();
        let mut accepted = None;
        for _ in 0..60 {
            let trial = with_coeffs(&current.field, combine(u, -alpha, &dir));
            let trial = evaluate(rescale_to_mass(&trial, m), spec, b);
            let bound = current.energy - ARMIJO * alpha * slope + rounding_slack(current.scale);
            if trial.energy <= bound {
                accepted = Some(trial);
                break;
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
        history.push(current.energy);
        (g, a) = constrained_gradient(&current.field, spec, b, &metric, real);
        previous = Some((s, g_prev, alpha));
    }

    let gradient_norm = metric.norm(&g);
    let field = current.field.canonical();
    let values = functionals(&field, spec, b, a);
    Ok(MinimizationResult {
        problem: Problem::Mass { m, momentum_zero },
        ode_residual: ode_residual(&field, spec, a, b),
        constancy: field.constancy(),
        constraint_residual: (values.mass - m).abs(),
        values,
        field,
        multiplier_a: a,
        gradient_norm,
        iterations,
        converged,
        history,
        rearrangement: None,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use num_complex::Complex64;

    use super::*;
    use crate::minimizers::Init;

    fn cubic() -> NonlinearitySpec {
        NonlinearitySpec::single_power(3.0).unwrap()
    }

    fn config(modes: usize) -> MinimizeConfig {
        MinimizeConfig {
            modes,
            ..Default::default()
        }
    }

    #[test]
    fn defocusing_constant() {
        let r = minimize_mass(&cubic(), -1.0, 1.0, 2.0 * PI, Boundary::Periodic, false, &config(16)).unwrap();
        assert!(r.converged);
        let c = PeriodicField::constant(2.0 * PI, 16, Complex64::new((1.0 / PI).sqrt(), 0.0)).unwrap();
        assert!(r.field.distance_modulo_phase(&c) < 1e-10);
        assert!((r.multiplier_a - 1.0 / PI).abs() < 1e-12);
        assert!((r.values.energy - 1.0 / (2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn defocusing_from_random_start() {
        let cfg = MinimizeConfig {
            init: Init::Random,
            seed: 3,
            ..config(16)
        };
        let r = minimize_mass(&cubic(), -1.0, 1.0, 2.0 * PI, Boundary::Periodic, false, &cfg).unwrap();
        assert!(r.converged, "gradient {}", r.gradient_norm);
        assert!(r.constancy < 1e-8);
        assert!((r.multiplier_a - 1.0 / PI).abs() < 1e-8);
        assert!(r.history.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }

    #[test]
    fn focusing_small_mass_is_constant() {
        let r = minimize_mass(&cubic(), 1.0, PI / 4.0, 2.0 * PI, Boundary::Periodic, true, &config(16)).unwrap();
        assert!(r.converged);
        assert!(r.constancy < 1e-6);
        assert!(r.values.energy < 0.0);
    }

    #[test]
    fn focusing_large_mass_is_not_constant() {
        let r = minimize_mass(&cubic(), 1.0, PI, 2.0 * PI, Boundary::Periodic, true, &config(32)).unwrap();
        assert!(r.converged, "gradient {}", r.gradient_norm);
        assert!(r.constancy > 1e-2);
        assert!(r.multiplier_a < 0.0);
        assert!(r.values.energy < 0.0);
        assert!(r.ode_residual < 1e-8);
        assert!((r.values.mass - PI).abs() < 1e-12);
    }

    #[test]
    fn supercritical_focusing_refused() {
        let spec = NonlinearitySpec::single_power(7.0).unwrap();
        assert!(matches!(
            minimize_mass(&spec, 1.0, 1.0, 1.0, Boundary::Periodic, false, &config(8)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn invalid_inputs() {
        assert!(minimize_mass(&cubic(), -1.0, 0.0, 1.0, Boundary::Periodic, false, &config(8)).is_err());
        assert!(minimize_mass(&cubic(), -1.0, 1.0, 1.0, Boundary::Periodic, false, &config(2)).is_err());
        let cfg = MinimizeConfig {
            init: Init::Constant,
            ..config(8)
        };
        assert!(minimize_mass(&cubic(), -1.0, 1.0, 1.0, Boundary::AntiPeriodic, false, &cfg).is_err());
    }
}
