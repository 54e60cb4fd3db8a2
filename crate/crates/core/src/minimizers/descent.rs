//! Shared pieces of the projected descent loops: the `L²` inner product in
//! coefficient space, the `H¹` preconditioner and the Barzilai–Borwein step.

use num_complex::Complex64;

use crate::field::PeriodicField;

/// Coefficient-space geometry of one band: `⟨x, y⟩ = T Re Σ x_j conj(y_j)`
/// and the preconditioner `P = (σ + k_j²)⁻¹`.
pub(crate) struct Metric {
    period: f64,
    weights: Vec<f64>,
}

impl Metric {
    pub(crate) fn new(template: &PeriodicField, sigma: f64) -> Metric {
        let weights = template
            .iter_modes()
            .map(|(j, _)| 1.0 / (sigma + template.wavenumber(j).powi(2)))
            .collect();
        Metric {
            period: template.period(),
            weights,
        }
    }

    pub(crate) fn dot(&self, x: &[Complex64], y: &[Complex64]) -> f64 {
        self.period * x.iter().zip(y).map(|(a, b)| (a * b.conj()).re).sum::<f64>()
    }

    pub(crate) fn norm(&self, x: &[Complex64]) -> f64 {
        self.dot(x, x).sqrt()
    }

    pub(crate) fn precondition(&self, x: &[Complex64]) -> Vec<Complex64> {
        x.iter().zip(&self.weights).map(|(c, w)| c * w).collect()
    }

    /// `⟨x, P⁻¹ x⟩`.
    pub(crate) fn inverse_norm_sq(&self, x: &[Complex64]) -> f64 {
        self.period
            * x.iter()
                .zip(&self.weights)
                .map(|(c, w)| c.norm_sqr() / w)
                .sum::<f64>()
    }
}

pub(crate) fn combine(x: &[Complex64], alpha: f64, y: &[Complex64]) -> Vec<Complex64> {
    x.iter().zip(y).map(|(a, b)| a + b * alpha).collect()
}

pub(crate) fn with_coeffs(template: &PeriodicField, coeffs: Vec<Complex64>) -> PeriodicField {
    let mut out = template.clone();
    out.coeffs_mut().copy_from_slice(&coeffs);
    out
}

/// Step-length state for the preconditioned iteration `x ← x − α P g`.
pub(crate) struct StepControl {
    alpha: f64,
    min: f64,
    max: f64,
}

impl StepControl {
    pub(crate) fn new(initial: f64) -> StepControl {
        StepControl {
            alpha: initial,
            min: initial * 1e-8,
            max: initial * 1e6,
        }
    }

    pub(crate) fn current(&self) -> f64 {
        self.alpha
    }

    /// BB1 step in the `P⁻¹` metric from `s = x₊ − x` and `y = g₊ − g`.
    pub(crate) fn update(&mut self, metric: &Metric, s: &[Complex64], y: &[Complex64], accepted: f64) {
        let sy = metric.dot(s, y);
        let ss = metric.inverse_norm_sq(s);
        self.alpha = if sy > 0.0 && ss > 0.0 {
            (ss / sy).clamp(self.min, self.max)
        } else {
            (2.0 * accepted).clamp(self.min, self.max)
        };
    }
}

/// Slack for comparing objective values that agree to rounding.
pub(crate) fn rounding_slack(magnitude: f64) -> f64 {
    64.0 * f64::EPSILON * magnitude.abs().max(f64::MIN_POSITIVE)
}
