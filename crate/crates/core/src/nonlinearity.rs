//! Gauge-invariant nonlinearities `f(z) = g(|z|²) z` restricted to the
//! nonnegative half-line, their antiderivative and derivatives, the auxiliary
//! functions `h`, `A` and `k`, and a grid audit of the structural hypotheses
//! (H1)–(H7) used throughout the variational analysis.
//!
//! Every kind is a finite sum of monomials `c s^q`, so values and derivatives
//! are evaluated in closed form.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One monomial `coefficient · s^exponent` of a sum-of-powers nonlinearity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub exponent: f64,
    pub coefficient: f64,
}

/// Parametric description of the real restriction of `f`.
///
/// The coupling `b` is not part of the spec; callers carry it separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonlinearitySpec {
    /// `f(s) = s^p`, `p > 1`.
    SinglePower { p: f64 },
    /// `f(s) = Σ cⱼ s^{pⱼ}` with every `pⱼ > 1` and `cⱼ > 0`.
    MultiPower { terms: Vec<PowerTerm> },
    /// Normalized triple power `f(s) = s² − γ s³ + s⁴`, `γ > 0`.
    TriplePower { gamma: f64 },
}

/// `f`, `F`, `f'` and `f''` at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub f: f64,
    pub antiderivative: f64,
    pub df: f64,
    /// Infinite at `s = 0` when some exponent lies in `(1, 2)`.
    pub d2f: f64,
}

impl Evaluation {
    pub fn is_finite(&self) -> bool {
        self.f.is_finite()
            && self.antiderivative.is_finite()
            && self.df.is_finite()
            && self.d2f.is_finite()
    }
}

impl NonlinearitySpec {
    pub fn single_power(p: f64) -> Result<Self> {
        let spec = NonlinearitySpec::SinglePower { p };
        spec.validate()?;
        Ok(spec)
    }

    pub fn multi_power(terms: Vec<(f64, f64)>) -> Result<Self> {
        let spec = NonlinearitySpec::MultiPower {
            terms: terms
                .into_iter()
                .map(|(exponent, coefficient)| PowerTerm {
                    exponent,
                    coefficient,
                })
                .collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn triple_power(gamma: f64) -> Result<Self> {
        let spec = NonlinearitySpec::TriplePower { gamma };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            NonlinearitySpec::SinglePower { p } => {
                if !(p.is_finite() && *p > 1.0) {
                    return Err(Error::InvalidNonlinearity(format!(
                        "exponent must be > 1, got {p}"
                    )));
                }
            }
            NonlinearitySpec::MultiPower { terms } => {
                if terms.is_empty() {
                    return Err(Error::InvalidNonlinearity("empty power list".into()));
                }
                for t in terms {
                    if !(t.exponent.is_finite() && t.exponent > 1.0) {
                        return Err(Error::InvalidNonlinearity(format!(
                            "exponent must be > 1, got {}",
                            t.exponent
                        )));
                    }
                    if !(t.coefficient.is_finite() && t.coefficient > 0.0) {
                        return Err(Error::InvalidNonlinearity(format!(
                            "coefficient must be > 0, got {}",
                            t.coefficient
                        )));
                    }
                }
            }
            NonlinearitySpec::TriplePower { gamma } => {
                if !(gamma.is_finite() && *gamma > 0.0) {
                    return Err(Error::InvalidNonlinearity(format!(
                        "triple-power gamma must be > 0, got {gamma}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The monomials making up `f`.
    pub fn terms(&self) -> Vec<PowerTerm> {
        match self {
            NonlinearitySpec::SinglePower { p } => vec![PowerTerm {
                exponent: *p,
                coefficient: 1.0,
            }],
            NonlinearitySpec::MultiPower { terms } => terms.clone(),
            NonlinearitySpec::TriplePower { gamma } => vec![
                PowerTerm {
                    exponent: 2.0,
                    coefficient: 1.0,
                },
                PowerTerm {
                    exponent: 3.0,
                    coefficient: -gamma,
                },
                PowerTerm {
                    exponent: 4.0,
                    coefficient: 1.0,
                },
            ],
        }
    }

    pub fn max_exponent(&self) -> f64 {
        self.terms()
            .iter()
            .map(|t| t.exponent)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Exponent of a single power, `None` for the other kinds.
    pub fn single_power_exponent(&self) -> Option<f64> {
        match self {
            NonlinearitySpec::SinglePower { p } => Some(*p),
            _ => None,
        }
    }

    /// Unchecked `f(s)` for `s ≥ 0`.
    pub fn f(&self, s: f64) -> f64 {
        match self {
            NonlinearitySpec::SinglePower { p } => s.powf(*p),
            NonlinearitySpec::TriplePower { gamma } => s * s * (1.0 - gamma * s + s * s),
            NonlinearitySpec::MultiPower { terms } => terms
                .iter()
                .map(|t| t.coefficient * s.powf(t.exponent))
                .sum(),
        }
    }

    /// `f(s)/s`, evaluated without the division so that it is exact at 0.
    pub fn f_over_s(&self, s: f64) -> f64 {
        match self {
            NonlinearitySpec::SinglePower { p } => s.powf(p - 1.0),
            NonlinearitySpec::TriplePower { gamma } => s * (1.0 - gamma * s + s * s),
            NonlinearitySpec::MultiPower { terms } => terms
                .iter()
                .map(|t| t.coefficient * s.powf(t.exponent - 1.0))
                .sum(),
        }
    }

    /// Unchecked antiderivative `F(s) = ∫₀ˢ f`.
    pub fn antiderivative(&self, s: f64) -> f64 {
        match self {
            NonlinearitySpec::SinglePower { p } => s.powf(p + 1.0) / (p + 1.0),
            NonlinearitySpec::TriplePower { gamma } => {
                let s3 = s * s * s;
                s3 * (1.0 / 3.0 - gamma * s / 4.0 + s * s / 5.0)
            }
            NonlinearitySpec::MultiPower { terms } => terms
                .iter()
                .map(|t| t.coefficient * s.powf(t.exponent + 1.0) / (t.exponent + 1.0))
                .sum(),
        }
    }

    /// Unchecked `f'(s)`.
    pub fn df(&self, s: f64) -> f64 {
        match self {
            NonlinearitySpec::SinglePower { p } => p * s.powf(p - 1.0),
            NonlinearitySpec::TriplePower { gamma } => s * (2.0 - 3.0 * gamma * s + 4.0 * s * s),
            NonlinearitySpec::MultiPower { terms } => terms
                .iter()
                .map(|t| t.coefficient * t.exponent * s.powf(t.exponent - 1.0))
                .sum(),
        }
    }

    /// Unchecked `f''(s)`; `+∞` at 0 for exponents in `(1, 2)`.
    pub fn d2f(&self, s: f64) -> f64 {
        self.terms()
            .iter()
            .map(|t| {
                let q = t.exponent;
                if q == 2.0 {
                    2.0 * t.coefficient
                } else {
                    t.coefficient * q * (q - 1.0) * s.powf(q - 2.0)
                }
            })
            .sum()
    }

    /// `(f, F, f', f'')` at `s ≥ 0`.
    pub fn eval(&self, s: f64) -> Result<Evaluation> {
        self.validate()?;
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!("s must be finite and >= 0, got {s}")));
        }
        Ok(Evaluation {
            f: self.f(s),
            antiderivative: self.antiderivative(s),
            df: self.df(s),
            d2f: self.d2f(s),
        })
    }

    /// `h(s) = (s f(s) − 2F(s)) / s²`.
    pub fn eval_h(&self, s: f64) -> Result<f64> {
        self.validate()?;
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!("h requires s > 0, got {s}")));
        }
        Ok(self.h_unchecked(s))
    }

    fn h_unchecked(&self, s: f64) -> f64 {
        // Σ c (1 − 2/(q+1)) s^{q−1}: no cancellation for small s.
        self.terms()
            .iter()
            .map(|t| {
                let q = t.exponent;
                t.coefficient * (q - 1.0) / (q + 1.0) * s.powf(q - 1.0)
            })
            .sum()
    }

    /// `A(s) = 4π²/T² + b (f(s)/s − f'(s))`.
    pub fn eval_a(&self, s: f64, period: f64, b: f64) -> Result<f64> {
        self.validate()?;
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::Domain(format!("A requires s > 0, got {s}")));
        }
        if !(period > 0.0) {
            return Err(Error::Domain(format!("period must be > 0, got {period}")));
        }
        Ok(self.a_unchecked(s, period, b))
    }

    pub(crate) fn a_unchecked(&self, s: f64, period: f64, b: f64) -> f64 {
        4.0 * PI * PI / (period * period) + b * (self.f_over_s(s) - self.df(s))
    }

    /// `k(r) = r⁴ (a + b f(r)/r)` together with `k'(r)`.
    pub fn eval_k(&self, r: f64, a: f64, b: f64) -> Result<(f64, f64)> {
        self.validate()?;
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("k requires r > 0, got {r}")));
        }
        let r3 = r * r * r;
        let k = r3 * r * (a + b * self.f_over_s(r));
        let dk = r3 * (4.0 * a + b * self.df(r) + 3.0 * b * self.f_over_s(r));
        Ok((k, dk))
    }
}

impl fmt::Display for NonlinearitySpec {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonlinearitySpec::SinglePower { p } => write!(fmt, "power:{p}"),
            NonlinearitySpec::TriplePower { gamma } => write!(fmt, "triple:{gamma}"),
            NonlinearitySpec::MultiPower { terms } => {
                write!(fmt, "powers:")?;
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(fmt, ",")?;
                    }
                    write!(fmt, "{}@{}", t.exponent, t.coefficient)?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `power:P`, `powers:P1@C1,P2@C2,...` or `triple:GAMMA`.
impl FromStr for NonlinearitySpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (kind, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected KIND:PARAMS, got '{text}'")))?;
        let number = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad number '{s}' in '{text}'")))
        };
        match kind {
            "power" => NonlinearitySpec::single_power(number(rest)?),
            "triple" => NonlinearitySpec::triple_power(number(rest)?),
            "powers" => {
                let mut terms = Vec::new();
                for item in rest.split(',') {
                    let (p, c) = match item.split_once('@') {
                        Some((p, c)) => (number(p)?, number(c)?),
                        None => (number(item)?, 1.0),
                    };
                    terms.push((p, c));
                }
                NonlinearitySpec::multi_power(terms)
            }
            other => Err(Error::Parse(format!(
                "unknown nonlinearity kind '{other}' (expected power, powers or triple)"
            ))),
        }
    }
}

// ---------------------------------------------------------------------------
// Hypothesis audit
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hypothesis {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 7] = [
        Hypothesis::H1,
        Hypothesis::H2,
        Hypothesis::H3,
        Hypothesis::H4,
        Hypothesis::H5,
        Hypothesis::H6,
        Hypothesis::H7,
    ];

    pub fn statement(&self) -> &'static str {
        match self {
            Hypothesis::H1 => "f' non-decreasing on (0, inf)",
            Hypothesis::H2 => "F(s)/s^2 -> inf as s -> inf",
            Hypothesis::H3 => "f(s)/s increasing, f(s)/s -> 0 as s -> 0",
            Hypothesis::H4 => "h(s) strictly increasing, h(s) -> 0 as s -> 0",
            Hypothesis::H5 => "|f(s)| <= M s^p for s >= s0 with some p < 5",
            Hypothesis::H6 => "s^2 f''(s) > s f'(s) - f(s) for s > 0",
            Hypothesis::H7 => "f(s)/s - f'(s) -> -inf as s -> inf",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    HoldsOnGrid,
    /// `violation` is the amount by which the defining inequality fails at
    /// `witness`, in the units of that inequality.
    FailsAt { witness: f64, violation: f64 },
    NotApplicable { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsOnGrid)
    }

    pub fn witness(&self) -> Option<f64> {
        match self {
            Verdict::FailsAt { witness, .. } => Some(*witness),
            _ => None,
        }
    }
}

/// Constants of the growth bound fitted for (H5).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthBound {
    pub m: f64,
    pub p: f64,
    pub s0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    /// Relative slack allowed in every pointwise inequality.
    pub tol: f64,
    /// A limit "→ 0" holds if the value at the smallest grid point is below this.
    pub small_limit: f64,
    /// A limit "→ ±∞" holds if the value at the largest grid point exceeds this in magnitude.
    pub large_limit: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            tol: 1e-10,
            small_limit: 1e-2,
            large_limit: 1e2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub b: f64,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_len: usize,
    pub verdicts: Vec<(Hypothesis, Verdict)>,
    pub growth_bound: Option<GrowthBound>,
}

impl HypothesisReport {
    pub fn verdict(&self, h: Hypothesis) -> &Verdict {
        &self
            .verdicts
            .iter()
            .find(|(k, _)| *k == h)
            .expect("every hypothesis is audited")
            .1
    }

    pub fn all_hold(&self, which: &[Hypothesis]) -> bool {
        which.iter().all(|h| self.verdict(*h).holds())
    }
}

/// `n` log-spaced abscissas in `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Default audit grid: 2000 log-spaced points on `[1e-4, 1e4]`.
pub fn default_audit_grid() -> Vec<f64> {
    log_grid(1e-4, 1e4, 2000)
}

fn check_increasing<F>(grid: &[f64], tol: f64, value: F) -> Verdict
where
    F: Fn(f64) -> f64,
{
    let values: Vec<f64> = grid.iter().map(|&s| value(s)).collect();
    for i in 0..grid.len() - 1 {
        let (lo, hi) = (values[i], values[i + 1]);
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        if hi - lo < -tol * scale {
            return Verdict::FailsAt {
                witness: 0.5 * (grid[i] + grid[i + 1]),
                violation: lo - hi,
            };
        }
    }
    Verdict::HoldsOnGrid
}

/// Points in the last decade of the grid (`s ≥ s_max / 10`).
fn last_decade(grid: &[f64]) -> Option<&[f64]> {
    let s_max = *grid.last()?;
    let start = grid.iter().position(|&s| s >= s_max / 10.0)?;
    if start == 0 || grid.len() - start < 3 {
        return None;
    }
    Some(&grid[start..])
}

/// Points in the first decade of the grid (`s ≤ 10 s_min`).
fn first_decade(grid: &[f64]) -> Option<&[f64]> {
    let s_min = *grid.first()?;
    let end = grid.iter().rposition(|&s| s <= 10.0 * s_min)?;
    if end + 1 == grid.len() || end < 2 {
        return None;
    }
    Some(&grid[..=end])
}

/// Trend + threshold surrogate for `lim_{s→∞} value(s) = sign·∞`.
fn check_limit_infinity<F>(grid: &[f64], sign: f64, cfg: &AuditConfig, value: F) -> Verdict
where
    F: Fn(f64) -> f64,
{
    let Some(tail) = last_decade(grid) else {
        return Verdict::NotApplicable {
            reason: "grid spans less than one decade".into(),
        };
    };
    if let Verdict::FailsAt { witness, violation } =
        check_increasing(tail, cfg.tol, |s| sign * value(s))
    {
        return Verdict::FailsAt { witness, violation };
    }
    let s_end = *tail.last().unwrap();
    let end = sign * value(s_end);
    if end < cfg.large_limit {
        return Verdict::FailsAt {
            witness: s_end,
            violation: cfg.large_limit - end,
        };
    }
    Verdict::HoldsOnGrid
}

/// Trend + threshold surrogate for `lim_{s→0} value(s) = 0`.
fn check_limit_zero<F>(grid: &[f64], cfg: &AuditConfig, value: F) -> Verdict
where
    F: Fn(f64) -> f64,
{
    let Some(head) = first_decade(grid) else {
        return Verdict::NotApplicable {
            reason: "grid spans less than one decade".into(),
        };
    };
    if let Verdict::FailsAt { witness, violation } =
        check_increasing(head, cfg.tol, |s| value(s).abs())
    {
        return Verdict::FailsAt { witness, violation };
    }
    let s0 = head[0];
    let start = value(s0).abs();
    if start > cfg.small_limit {
        return Verdict::FailsAt {
            witness: s0,
            violation: start - cfg.small_limit,
        };
    }
    Verdict::HoldsOnGrid
}

fn first_failure(verdicts: Vec<Verdict>) -> Verdict {
    for v in &verdicts {
        if let Verdict::FailsAt { .. } = v {
            return v.clone();
        }
    }
    for v in verdicts {
        if let Verdict::NotApplicable { .. } = v {
            return v;
        }
    }
    Verdict::HoldsOnGrid
}

fn fit_growth(spec: &NonlinearitySpec, grid: &[f64]) -> (Verdict, Option<GrowthBound>) {
    let Some(tail) = last_decade(grid) else {
        return (
            Verdict::NotApplicable {
                reason: "grid spans less than one decade".into(),
            },
            None,
        );
    };
    let mut slope_max = f64::NEG_INFINITY;
    let mut at = tail[0];
    for w in tail.windows(2) {
        let (f0, f1) = (spec.f(w[0]).abs(), spec.f(w[1]).abs());
        if f0 <= 0.0 || f1 <= 0.0 {
            continue;
        }
        let slope = (f1 / f0).ln() / (w[1] / w[0]).ln();
        if slope > slope_max {
            slope_max = slope;
            at = w[1];
        }
    }
    if !slope_max.is_finite() {
        return (
            Verdict::NotApplicable {
                reason: "f vanishes on the tail".into(),
            },
            None,
        );
    }
    // The local slope of a power sum only approaches its leading exponent,
    // so a critical term s^5 would slip under any grid-based threshold.
    let leading = spec
        .terms()
        .iter()
        .filter(|t| t.coefficient != 0.0)
        .map(|t| t.exponent)
        .fold(f64::NEG_INFINITY, f64::max);
    let p = slope_max.max(leading);
    if p >= 5.0 {
        return (
            Verdict::FailsAt {
                witness: at,
                violation: p - 5.0,
            },
            None,
        );
    }
    let p = p.max(1.0 + 1e-12);
    let m = tail
        .iter()
        .map(|&s| spec.f(s).abs() / s.powf(p))
        .fold(0.0, f64::max);
    (
        Verdict::HoldsOnGrid,
        Some(GrowthBound { m, p, s0: tail[0] }),
    )
}

/// Audits (H1)–(H7) on `grid`.
pub fn audit_hypotheses(
    spec: &NonlinearitySpec,
    b: f64,
    grid: &[f64],
    cfg: &AuditConfig,
) -> Result<HypothesisReport> {
    spec.validate()?;
    if grid.len() < 100 {
        return Err(Error::DegenerateGrid(format!(
            "need at least 100 points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
        return Err(Error::DegenerateGrid("abscissas must be positive".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::DegenerateGrid("grid must be strictly increasing".into()));
    }

    let tol = cfg.tol;
    let h1 = check_increasing(grid, tol, |s| spec.df(s));
    let h2 = check_limit_infinity(grid, 1.0, cfg, |s| spec.antiderivative(s) / (s * s));
    let h3 = first_failure(vec![
        check_increasing(grid, tol, |s| spec.f_over_s(s)),
        check_limit_zero(grid, cfg, |s| spec.f_over_s(s)),
    ]);
    let h4 = first_failure(vec![
        check_increasing(grid, tol, |s| spec.h_unchecked(s)),
        check_limit_zero(grid, cfg, |s| spec.h_unchecked(s)),
        check_limit_zero(grid, cfg, |s| spec.f_over_s(s)),
    ]);
    let (h5, growth_bound) = fit_growth(spec, grid);
    let mut h6 = Verdict::HoldsOnGrid;
    for &s in grid {
        let lhs = s * s * spec.d2f(s);
        let rhs = s * spec.df(s) - spec.f(s);
        let scale = lhs.abs() + (s * spec.df(s)).abs() + spec.f(s).abs();
        if lhs - rhs <= -tol * scale {
            h6 = Verdict::FailsAt {
                witness: s,
                violation: rhs - lhs,
            };
            break;
        }
    }
    let h7 = check_limit_infinity(grid, -1.0, cfg, |s| spec.f_over_s(s) - spec.df(s));

    Ok(HypothesisReport {
        b,
        grid_min: grid[0],
        grid_max: *grid.last().unwrap(),
        grid_len: grid.len(),
        verdicts: vec![
            (Hypothesis::H1, h1),
            (Hypothesis::H2, h2),
            (Hypothesis::H3, h3),
            (Hypothesis::H4, h4),
            (Hypothesis::H5, h5),
            (Hypothesis::H6, h6),
            (Hypothesis::H7, h7),
        ],
        growth_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> NonlinearitySpec {
        NonlinearitySpec::single_power(3.0).unwrap()
    }

    #[test]
    fn cubic_values_at_two() {
        let e = cubic().eval(2.0).unwrap();
        assert_eq!((e.f, e.antiderivative, e.df, e.d2f), (8.0, 4.0, 12.0, 12.0));
    }

    #[test]
    fn zero_is_fixed_for_every_kind() {
        for spec in [
            cubic(),
            NonlinearitySpec::multi_power(vec![(1.5, 2.0), (3.0, 0.5)]).unwrap(),
            NonlinearitySpec::triple_power(2.0).unwrap(),
        ] {
            let e = spec.eval(0.0).unwrap();
            assert_eq!(e.f, 0.0);
            assert_eq!(e.antiderivative, 0.0);
        }
    }

    #[test]
    fn triple_power_at_one() {
        let e = NonlinearitySpec::triple_power(2.0).unwrap().eval(1.0).unwrap();
        assert_eq!(e.f, 0.0);
        assert!((e.antiderivative - 1.0 / 30.0).abs() < 1e-15);
    }

    #[test]
    fn second_derivative_singular_below_two() {
        let e = NonlinearitySpec::single_power(1.5).unwrap().eval(0.0).unwrap();
        assert!(!e.d2f.is_finite());
        assert!(!e.is_finite());
        let e = NonlinearitySpec::single_power(2.0).unwrap().eval(0.0).unwrap();
        assert_eq!(e.d2f, 2.0);
    }

    #[test]
    fn negative_abscissa_rejected() {
        assert!(matches!(cubic().eval(-1.0), Err(Error::Domain(_))));
        assert!(cubic().eval_h(0.0).is_err());
        assert!(cubic().eval_a(-0.1, 1.0, 1.0).is_err());
        assert!(cubic().eval_k(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(NonlinearitySpec::single_power(1.0).is_err());
        assert!(NonlinearitySpec::multi_power(vec![(3.0, -1.0)]).is_err());
        assert!(NonlinearitySpec::multi_power(vec![]).is_err());
        assert!(NonlinearitySpec::triple_power(0.0).is_err());
    }

    #[test]
    fn h_for_powers() {
        assert!((cubic().eval_h(2.0).unwrap() - 2.0).abs() < 1e-14);
        for p in [1.5, 3.0, 4.5] {
            let spec = NonlinearitySpec::single_power(p).unwrap();
            for s in [0.1, 0.7, 3.0] {
                let direct = (s * spec.f(s) - 2.0 * spec.antiderivative(s)) / (s * s);
                let closed = (p - 1.0) / (p + 1.0) * s.powf(p - 1.0);
                assert!((spec.eval_h(s).unwrap() - closed).abs() < 1e-12 * closed.max(1.0));
                assert!((direct - closed).abs() < 1e-12 * closed.max(1.0));
            }
            assert!(spec.eval_h(1e-12).unwrap() < 1e-3);
        }
    }

    #[test]
    fn auxiliary_a_for_cubic() {
        let t = 2.0 * PI;
        let spec = cubic();
        assert!((spec.eval_a(1e-9, t, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(spec.eval_a(0.5f64.sqrt(), t, 1.0).unwrap().abs() < 1e-14);
        assert!((spec.eval_a(1.0, t, 1.0).unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn auxiliary_k_for_cubic() {
        let spec = cubic();
        assert_eq!(spec.eval_k(1.0, 1.0, 1.0).unwrap().0, 2.0);
        assert!(spec.eval_k(1e-4, 1.0, 1.0).unwrap().0 < 1e-15);
        let (k, dk) = spec.eval_k(1.0, -1.0, 1.0).unwrap();
        assert_eq!(k, 0.0);
        // k = r^6 - r^4, k' = 6r^5 - 4r^3
        assert!((dk - 2.0).abs() < 1e-14);
    }

    #[test]
    fn parse_round_trip() {
        for text in ["power:3", "triple:2.2", "powers:3@1,5@0.5"] {
            let spec: NonlinearitySpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("cubic:3".parse::<NonlinearitySpec>().is_err());
        assert!("power:x".parse::<NonlinearitySpec>().is_err());
    }

    #[test]
    fn audit_cubic_holds() {
        let grid = default_audit_grid();
        for b in [1.0, -1.0] {
            let report = audit_hypotheses(&cubic(), b, &grid, &AuditConfig::default()).unwrap();
            for (h, v) in &report.verdicts {
                assert!(v.holds(), "{h:?}: {v:?}");
            }
            let bound = report.growth_bound.unwrap();
            assert!(bound.p < 5.0);
        }
    }

    #[test]
    fn audit_septic_fails_growth() {
        let spec = NonlinearitySpec::single_power(7.0).unwrap();
        let report =
            audit_hypotheses(&spec, 1.0, &default_audit_grid(), &AuditConfig::default()).unwrap();
        assert!(matches!(report.verdict(Hypothesis::H5), Verdict::FailsAt { .. }));
        assert!(report.verdict(Hypothesis::H1).holds());
    }

    #[test]
    fn audit_critical_term_fails_growth() {
        let spec: NonlinearitySpec = "powers:3@1,5@0.5".parse().unwrap();
        let report =
            audit_hypotheses(&spec, 1.0, &default_audit_grid(), &AuditConfig::default()).unwrap();
        assert!(matches!(report.verdict(Hypothesis::H5), Verdict::FailsAt { .. }));
        let spec: NonlinearitySpec = "powers:3@1,4.9@0.5".parse().unwrap();
        let report =
            audit_hypotheses(&spec, 1.0, &default_audit_grid(), &AuditConfig::default()).unwrap();
        let bound = report.growth_bound.unwrap();
        assert_eq!(bound.p, 4.9);
        assert!((bound.m - 0.5).abs() < 0.1);
    }

    #[test]
    fn audit_triple_power_h3_witness() {
        let spec = NonlinearitySpec::triple_power(2.0).unwrap();
        let report =
            audit_hypotheses(&spec, 1.0, &default_audit_grid(), &AuditConfig::default()).unwrap();
        let w = report.verdict(Hypothesis::H3).witness().expect("H3 must fail");
        assert!(w > 1.0 / 3.0 && w < 1.0, "witness {w}");
    }

    #[test]
    fn audit_rejects_bad_grids() {
        let cfg = AuditConfig::default();
        assert!(audit_hypotheses(&cubic(), 1.0, &log_grid(1.0, 2.0, 50), &cfg).is_err());
        let mut grid = default_audit_grid();
        grid.swap(10, 11);
        assert!(audit_hypotheses(&cubic(), 1.0, &grid, &cfg).is_err());
        let mut grid = default_audit_grid();
        grid[0] = 0.0;
        assert!(audit_hypotheses(&cubic(), 1.0, &grid, &cfg).is_err());
    }
}
