//! Stationary radii and solution-count regions for the normalized triple
//! power `f(s) = s² − γs³ + s⁴`, with frequency `ω = −a` and `b = 1`.
//!
//! Positive equilibria of the real profile equation solve
//! `f₁(r) = r − γr² + r³ = ω`. For `γ > √3`, `f₁` increases on `(0, r₋)`,
//! decreases on `(r₋, r₊)` and increases again, `r± = (γ ± √(γ² − 3))/3`,
//! so the number of solutions is read off from `ω` against `0`, `f₁(r₊)` and
//! `f₁(r₋)`.
//!
//! Closure of the two-solution band: it is the open band `f₁(r₊) < ω < 0`
//! together with the tangency lines where a double root coexists with a
//! simple one (`ω = f₁(r₋) > 0`, `ω = f₁(r₊) > 0`, and `ω = 0` when
//! `f₁(r₊) < 0`). Every boundary point gets the number of distinct positive
//! roots of the cubic there.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nonlinearity::NonlinearitySpec;
use crate::profile_ode::PotentialParams;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Width of the band around a region boundary where [`region_label`] falls
/// back to counting roots.
pub const GUARD_BAND: f64 = 1e-9;

pub fn f1(gamma: f64, r: f64) -> f64 {
    r * (1.0 + r * (r - gamma))
}

/// `F(r) = r³/3 − γr⁴/4 + r⁵/5`.
pub fn antiderivative(gamma: f64, r: f64) -> f64 {
    let r3 = r * r * r;
    r3 * (1.0 / 3.0 + r * (-gamma / 4.0 + r / 5.0))
}

/// `V(r) = −ωr²/2 + F(r)`.
pub fn potential(gamma: f64, omega: f64, r: f64) -> f64 {
    -0.5 * omega * r * r + antiderivative(gamma, r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StationaryRadius {
    pub r: f64,
    /// Root of multiplicity two (or three).
    pub tangent: bool,
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::Domain(format!("gamma must be finite and > 0, got {gamma}")));
    }
    Ok(())
}

/// Depressed form `t³ + pt + q` of `r³ − γr² + r − ω` under `r = t + γ/3`,
/// with the discriminant `−(4p³ + 27q²)` and its scale.
fn depressed(gamma: f64, omega: f64) -> (f64, f64, f64, f64) {
    let p = 1.0 - gamma * gamma / 3.0;
    let q = gamma / 3.0 - 2.0 * gamma.powi(3) / 27.0 - omega;
    let disc = -(4.0 * p.powi(3) + 27.0 * q * q);
    let scale = 4.0 * p.abs().powi(3) + 27.0 * q * q;
    (p, q, disc, scale)
}

fn polish(gamma: f64, omega: f64, mut r: f64) -> f64 {
    for _ in 0..3 {
        let g = f1(gamma, r) - omega;
        let dg = 1.0 + r * (3.0 * r - 2.0 * gamma);
        if dg == 0.0 {
            break;
        }
        let next = r - g / dg;
        if !next.is_finite() || (f1(gamma, next) - omega).abs() >= g.abs() {
            break;
        }
        r = next;
    }
    r
}

/// Positive roots of `r³ − γr² + r − ω`, sorted, by the closed-form cubic
/// solution followed by Newton polishing.
pub fn stationary_radii(gamma: f64, omega: f64) -> Result<Vec<StationaryRadius>> {
    check_gamma(gamma)?;
    if !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be finite, got {omega}")));
    }
    let shift = gamma / 3.0;
    let (p, q, disc, scale) = depressed(gamma, omega);
    let mut roots: Vec<StationaryRadius> = Vec::with_capacity(3);
    if disc.abs() <= 1e-13 * scale || scale == 0.0 {
        if p.abs() <= 1e-15 {
            roots.push(StationaryRadius {
                r: shift,
                tangent: true,
            });
        } else {
            roots.push(StationaryRadius {
                r: 3.0 * q / p + shift,
                tangent: false,
            });
            roots.push(StationaryRadius {
                r: -1.5 * q / p + shift,
                tangent: true,
            });
        }
    } else if disc > 0.0 {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        for k in 0..3 {
            let t = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
            roots.push(StationaryRadius {
                r: t + shift,
                tangent: false,
            });
        }
    } else {
        let s = (q * q / 4.0 + p.powi(3) / 27.0).sqrt();
        let t = (-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt();
        roots.push(StationaryRadius {
            r: t + shift,
            tangent: false,
        });
    }
    for root in roots.iter_mut() {
        if !root.tangent {
            root.r = polish(gamma, omega, root.r);
        }
    }
    roots.retain(|root| root.r > 0.0);
    roots.sort_by(|x, y| x.r.total_cmp(&y.r));
    Ok(roots)
}

/// Number of distinct positive roots from the discriminant sign and the sign
/// of `ω` (Descartes' rule fixes the sign pattern).
pub fn root_count(gamma: f64, omega: f64) -> Result<usize> {
    check_gamma(gamma)?;
    if omega == 0.0 {
        // r (r² − γr + 1)
        return Ok(if gamma > 2.0 {
            2
        } else if gamma == 2.0 {
            1
        } else {
            0
        });
    }
    let (p, _, mut disc, scale) = depressed(gamma, omega);
    if disc.abs() <= 1e-12 * scale {
        disc = 0.0;
    }
    Ok(match (omega > 0.0, disc.partial_cmp(&0.0)) {
        (true, Some(std::cmp::Ordering::Greater)) => 3,
        (true, Some(std::cmp::Ordering::Equal)) => {
            if p.abs() <= 1e-12 {
                1
            } else {
                2
            }
        }
        (true, _) => 1,
        (false, Some(std::cmp::Ordering::Greater)) => 2,
        (false, Some(std::cmp::Ordering::Equal)) => 1,
        (false, _) => 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RegionBoundaries {
    /// `γ < √3`: `f₁` is strictly increasing.
    Monotone,
    /// `γ = √3`: `r₋ = r₊ = γ/3`.
    Degenerate { r: f64, f1: f64 },
    Split {
        r_minus: f64,
        r_plus: f64,
        f1_at_r_plus: f64,
        f1_at_r_minus: f64,
    },
}

pub fn region_boundaries(gamma: f64) -> Result<RegionBoundaries> {
    check_gamma(gamma)?;
    let d = gamma * gamma - 3.0;
    if d.abs() <= 1e-14 {
        let r = gamma / 3.0;
        return Ok(RegionBoundaries::Degenerate {
            r,
            f1: f1(gamma, r),
        });
    }
    if d < 0.0 {
        return Ok(RegionBoundaries::Monotone);
    }
    let root = d.sqrt();
    let d32 = d * root;
    let base = gamma * (9.0 - 2.0 * gamma * gamma);
    Ok(RegionBoundaries::Split {
        r_minus: (gamma - root) / 3.0,
        r_plus: (gamma + root) / 3.0,
        f1_at_r_plus: (base - 2.0 * d32) / 27.0,
        f1_at_r_minus: (base + 2.0 * d32) / 27.0,
    })
}

/// Number of positive solutions of `f₁(r) = ω`, from the boundary ordinates.
pub fn region_label(gamma: f64, omega: f64) -> Result<u8> {
    check_gamma(gamma)?;
    let near = |x: f64| (omega - x).abs() <= GUARD_BAND;
    let label = match region_boundaries(gamma)? {
        RegionBoundaries::Monotone | RegionBoundaries::Degenerate { .. } => {
            if near(0.0) {
                return root_count(gamma, omega).map(|c| c as u8);
            }
            u8::from(omega > 0.0)
        }
        RegionBoundaries::Split {
            f1_at_r_plus: lo,
            f1_at_r_minus: hi,
            ..
        } => {
            if near(0.0) || near(lo) || near(hi) {
                return root_count(gamma, omega).map(|c| c as u8);
            }
            if omega > hi {
                1
            } else if omega > lo.max(0.0) {
                3
            } else if omega > 0.0 {
                // 0 < ω < lo
                1
            } else if omega > lo {
                // lo < ω < 0
                2
            } else {
                0
            }
        }
    };
    Ok(label)
}

/// `ω` on the half-kink curve `V(c₂) = 0`.
pub fn half_kink_omega(gamma: f64) -> Result<f64> {
    let start = 4.0 / 5f64.sqrt();
    if !(gamma >= start) || !gamma.is_finite() {
        return Err(Error::Domain(format!(
            "the half-kink curve starts at gamma = 4/sqrt(5), got {gamma}"
        )));
    }
    let g2 = 5.0 * gamma * gamma;
    let radicand = (g2 - 16.0).max(0.0);
    Ok((-5.0 * gamma * (g2 - 24.0) + (5.0 * radicand.powi(3)).sqrt()) / 432.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PortraitKind {
    NoPositiveEquilibrium,
    SingleCenter,
    TwoRoots,
    ThreeRootsVc2Positive,
    ThreeRootsHalfKink,
    ThreeRootsVc2Negative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionAnalysis {
    pub gamma: f64,
    pub omega: f64,
    pub radii: Vec<StationaryRadius>,
    pub r_minus: Option<f64>,
    pub r_plus: Option<f64>,
    pub count: usize,
    pub portrait: PortraitKind,
    /// `V(c₂)` in the three-root case.
    pub v_c2: Option<f64>,
}

pub fn analyze(gamma: f64, omega: f64, tol: f64) -> Result<RegionAnalysis> {
    let radii = stationary_radii(gamma, omega)?;
    let (r_minus, r_plus) = match region_boundaries(gamma)? {
        RegionBoundaries::Split { r_minus, r_plus, .. } => (Some(r_minus), Some(r_plus)),
        RegionBoundaries::Degenerate { r, .. } => (Some(r), Some(r)),
        RegionBoundaries::Monotone => (None, None),
    };
    let mut v_c2 = None;
    let portrait = match radii.len() {
        0 => PortraitKind::NoPositiveEquilibrium,
        1 => PortraitKind::SingleCenter,
        2 => PortraitKind::TwoRoots,
        _ => {
            let v = potential(gamma, omega, radii[1].r);
            v_c2 = Some(v);
            if v.abs() <= tol {
                PortraitKind::ThreeRootsHalfKink
            } else if v > 0.0 {
                PortraitKind::ThreeRootsVc2Positive
            } else {
                PortraitKind::ThreeRootsVc2Negative
            }
        }
    };
    Ok(RegionAnalysis {
        gamma,
        omega,
        count: radii.len(),
        radii,
        r_minus,
        r_plus,
        portrait,
        v_c2,
    })
}

pub fn classify_portrait(gamma: f64, omega: f64, tol: f64) -> Result<PortraitKind> {
    analyze(gamma, omega, tol).map(|a| a.portrait)
}

/// Parameters of the real profile equation `u_xx − ωu + f(u) = 0` for the
/// phase-plane module.
pub fn portrait_params(gamma: f64, omega: f64) -> Result<PotentialParams> {
    PotentialParams::new(NonlinearitySpec::triple_power(gamma)?, -omega, 1.0, 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMap {
    pub gammas: Vec<f64>,
    pub omegas: Vec<f64>,
    /// `labels[i][k]` is the label at `(gammas[k], omegas[i])`.
    pub labels: Vec<Vec<u8>>,
    /// `(γ, f₁(r₊))` for `γ ≥ √3`.
    pub lower_curve: Vec<[f64; 2]>,
    /// `(γ, f₁(r₋))` for `γ ≥ √3`.
    pub upper_curve: Vec<[f64; 2]>,
    pub half_kink_curve: Vec<[f64; 2]>,
}

fn nodes(range: (f64, f64), n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![range.0];
    }
    (0..n)
        .map(|i| range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64)
        .collect()
}

pub fn scan_region_map(
    gamma_range: (f64, f64),
    omega_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<RegionMap> {
    if resolution.0 == 0 || resolution.1 == 0 {
        return Err(Error::Domain("resolution must be positive".into()));
    }
    if !(gamma_range.0 > 0.0) || gamma_range.1 < gamma_range.0 || omega_range.1 < omega_range.0 {
        return Err(Error::Domain(format!(
            "invalid ranges gamma {gamma_range:?}, omega {omega_range:?}"
        )));
    }
    let gammas = nodes(gamma_range, resolution.0);
    let omegas = nodes(omega_range, resolution.1);
    let labels = omegas
        .par_iter()
        .map(|&w| {
            gammas
                .iter()
                .map(|&g| region_label(g, w))
                .collect::<Result<Vec<u8>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let fine = nodes(gamma_range, resolution.0.max(2) * 4);
    let mut lower_curve = Vec::new();
    let mut upper_curve = Vec::new();
    let mut half_kink_curve = Vec::new();
    let mut curve_gammas: Vec<f64> = fine.clone();
    if SQRT3 > gamma_range.0 && SQRT3 < gamma_range.1 {
        curve_gammas.push(SQRT3);
    }
    let kink_start = 4.0 / 5f64.sqrt();
    if kink_start > gamma_range.0 && kink_start < gamma_range.1 {
        curve_gammas.push(kink_start);
    }
    curve_gammas.sort_by(f64::total_cmp);
    for &g in &curve_gammas {
        match region_boundaries(g)? {
            RegionBoundaries::Split {
                f1_at_r_plus,
                f1_at_r_minus,
                ..
            } => {
                lower_curve.push([g, f1_at_r_plus]);
                upper_curve.push([g, f1_at_r_minus]);
            }
            RegionBoundaries::Degenerate { f1, .. } => {
                lower_curve.push([g, f1]);
                upper_curve.push([g, f1]);
            }
            RegionBoundaries::Monotone => {}
        }
        if g >= kink_start {
            half_kink_curve.push([g, half_kink_omega(g)?]);
        }
    }
    Ok(RegionMap {
        gammas,
        omegas,
        labels,
        lower_curve,
        upper_curve,
        half_kink_curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile_ode::{critical_points, EquilibriumKind};

    /// Distinct positive roots of `r³ − γr² + r − ω` via a Sturm sequence,
    /// counted on `(0, R]` with `R` a Cauchy bound.
    fn sturm_count(gamma: f64, omega: f64) -> usize {
        // p0 = r³ − γr² + r − ω, p1 = 3r² − 2γr + 1
        let p0 = [-omega, 1.0, -gamma, 1.0];
        let p1 = [1.0, -2.0 * gamma, 3.0];
        let rem = |num: &[f64], den: &[f64]| -> Vec<f64> {
            let mut n = num.to_vec();
            while n.len() >= den.len() {
                let c = n[n.len() - 1] / den[den.len() - 1];
                let off = n.len() - den.len();
                for (i, d) in den.iter().enumerate() {
                    n[off + i] -= c * d;
                }
                n.pop();
            }
            n.iter().map(|v| -v).collect()
        };
        let mut seq: Vec<Vec<f64>> = vec![p0.to_vec(), p1.to_vec()];
        loop {
            let k = seq.len();
            let mut r = rem(&seq[k - 2], &seq[k - 1]);
            while r.last().is_some_and(|v| v.abs() < 1e-300) {
                r.pop();
            }
            if r.is_empty() {
                break;
            }
            seq.push(r);
            if seq.last().unwrap().len() == 1 {
                break;
            }
        }
        let eval = |p: &[f64], x: f64| p.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let changes = |x: f64| {
            let vals: Vec<f64> = seq.iter().map(|p| eval(p, x)).filter(|v| *v != 0.0).collect();
            vals.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count()
        };
        let bound = 1.0 + gamma.abs().max(1.0).max(omega.abs());
        changes(1e-300) - changes(bound)
    }

    #[test]
    fn stationary_radii_examples() {
        assert_eq!(stationary_radii(2.0, 0.1).unwrap().len(), 3);
        assert_eq!(stationary_radii(2.0, 0.2).unwrap().len(), 1);
        let r = stationary_radii(2.2, -0.1).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.r > 0.5 && x.r < 2.0));
        for x in &r {
            assert!((f1(2.2, x.r) + 0.1).abs() < 1e-14);
        }
    }

    #[test]
    fn tangent_root_reported_once() {
        // γ = 2, ω = 0: r (r − 1)²
        let r = stationary_radii(2.0, 0.0).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].tangent && (r[0].r - 1.0).abs() < 1e-6);
        let r = stationary_radii(2.0, 4.0 / 27.0).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].r - 1.0 / 3.0).abs() < 1e-6 && r[0].tangent);
    }

    #[test]
    fn boundaries_examples() {
        let RegionBoundaries::Split {
            r_minus,
            r_plus,
            f1_at_r_plus,
            f1_at_r_minus,
        } = region_boundaries(2.0).unwrap()
        else {
            panic!("expected split");
        };
        assert!((r_minus - 1.0 / 3.0).abs() < 1e-15 && (r_plus - 1.0).abs() < 1e-15);
        assert!(f1_at_r_plus.abs() < 1e-15 && (f1_at_r_minus - 4.0 / 27.0).abs() < 1e-15);

        let RegionBoundaries::Split {
            f1_at_r_plus,
            f1_at_r_minus,
            ..
        } = region_boundaries(2.2).unwrap()
        else {
            panic!("expected split");
        };
        // 1.84^{3/2} = 2.495...
        let d32 = 1.84f64.powf(1.5);
        assert!((f1_at_r_plus - (2.2 * (9.0 - 9.68) - 2.0 * d32) / 27.0).abs() < 1e-15);
        assert!((f1_at_r_plus + 0.24032).abs() < 1e-4);
        assert!((f1_at_r_minus - 0.12950).abs() < 1e-4);

        assert!(matches!(region_boundaries(SQRT3).unwrap(), RegionBoundaries::Degenerate { .. }));
        assert_eq!(region_boundaries(1.0).unwrap(), RegionBoundaries::Monotone);
        assert!(region_boundaries(0.0).is_err());
    }

    #[test]
    fn boundary_ordinates_match_f1() {
        for g in [1.8, 2.0, 2.7, 4.0] {
            let RegionBoundaries::Split {
                r_minus,
                r_plus,
                f1_at_r_plus,
                f1_at_r_minus,
            } = region_boundaries(g).unwrap()
            else {
                panic!()
            };
            assert!((f1(g, r_plus) - f1_at_r_plus).abs() < 1e-13);
            assert!((f1(g, r_minus) - f1_at_r_minus).abs() < 1e-13);
        }
    }

    #[test]
    fn label_examples() {
        assert_eq!(region_label(1.0, 0.5).unwrap(), 1);
        assert_eq!(region_label(2.0, -0.05).unwrap(), 0);
        assert_eq!(region_label(2.2, -0.1).unwrap(), 2);
        assert_eq!(region_label(2.0, 0.1).unwrap(), 3);
        assert_eq!(region_label(2.0, 0.2).unwrap(), 1);
    }

    #[test]
    fn labels_on_tangency_lines() {
        assert_eq!(region_label(2.0, 0.0).unwrap(), 1);
        assert_eq!(region_label(2.5, 0.0).unwrap(), 2);
        assert_eq!(region_label(1.0, 0.0).unwrap(), 0);
        assert_eq!(region_label(2.0, 4.0 / 27.0).unwrap(), 2);
    }

    #[test]
    fn label_matches_sturm_oracle() {
        let mut checked = 0;
        for i in 0..120 {
            for k in 0..120 {
                let g = 0.5 + 2.5 * i as f64 / 119.0;
                let w = -0.4 + 0.9 * k as f64 / 119.0;
                let near = match region_boundaries(g).unwrap() {
                    RegionBoundaries::Split {
                        f1_at_r_plus,
                        f1_at_r_minus,
                        ..
                    } => [0.0, f1_at_r_plus, f1_at_r_minus]
                        .iter()
                        .any(|b| (w - b).abs() <= 1e-6),
                    _ => w.abs() <= 1e-6,
                };
                if near {
                    continue;
                }
                assert_eq!(
                    region_label(g, w).unwrap() as usize,
                    sturm_count(g, w),
                    "gamma {g} omega {w}"
                );
                assert_eq!(stationary_radii(g, w).unwrap().len(), sturm_count(g, w));
                checked += 1;
            }
        }
        assert!(checked > 14_000);
    }

    #[test]
    fn ordering_in_three_root_case() {
        let a = analyze(2.0, 0.1, 1e-9).unwrap();
        let c: Vec<f64> = a.radii.iter().map(|x| x.r).collect();
        let (rm, rp) = (a.r_minus.unwrap(), a.r_plus.unwrap());
        assert!(c[0] < rm && rm < c[1] && c[1] < rp && rp < c[2]);
    }

    #[test]
    fn half_kink_values() {
        let start = 4.0 / 5f64.sqrt();
        let w = half_kink_omega(start).unwrap();
        assert!((w - 2.0 * 5f64.sqrt() / 27.0).abs() < 1e-15);
        let w2 = half_kink_omega(2.0).unwrap();
        assert!((w2 - (40.0 + 8.0 * 5f64.sqrt()) / 432.0).abs() < 1e-15);
        assert!(half_kink_omega(1.7).is_err());
        for g in [1.9, 2.0, 2.5] {
            let a = analyze(g, half_kink_omega(g).unwrap(), 1e-9).unwrap();
            assert_eq!(a.portrait, PortraitKind::ThreeRootsHalfKink);
            assert!(a.v_c2.unwrap().abs() <= 1e-9);
        }
    }

    #[test]
    fn half_kink_separates_portraits() {
        let w = half_kink_omega(2.0).unwrap();
        let below = analyze(2.0, w - 0.01, 1e-9).unwrap();
        let above = analyze(2.0, w + 0.01, 1e-9).unwrap();
        assert!(below.v_c2.unwrap().signum() != above.v_c2.unwrap().signum());
    }

    #[test]
    fn portrait_kinds() {
        assert_eq!(classify_portrait(1.0, 0.5, 1e-9).unwrap(), PortraitKind::SingleCenter);
        assert_eq!(classify_portrait(2.0, -0.05, 1e-9).unwrap(), PortraitKind::NoPositiveEquilibrium);
        assert_eq!(classify_portrait(2.2, -0.1, 1e-9).unwrap(), PortraitKind::TwoRoots);
    }

    #[test]
    fn equilibria_kinds_via_phase_plane() {
        let params = portrait_params(2.0, 0.1).unwrap();
        let kinds: Vec<EquilibriumKind> = critical_points(&params).iter().map(|c| c.kind).collect();
        use EquilibriumKind::*;
        assert_eq!(kinds, vec![Saddle, Center, Saddle, Center]);
        let kinds: Vec<EquilibriumKind> = critical_points(&portrait_params(2.2, -0.1).unwrap())
            .iter()
            .map(|c| c.kind)
            .collect();
        assert_eq!(kinds, vec![Center, Saddle, Center]);
    }

    #[test]
    fn scan_shape_and_curves() {
        let map = scan_region_map((0.5, 3.0), (-0.4, 0.5), (20, 10)).unwrap();
        assert_eq!(map.labels.len(), 10);
        assert!(map.labels.iter().all(|row| row.len() == 20));
        assert!(map.lower_curve.iter().all(|p| p[0] >= SQRT3 - 1e-15));
        assert!(map.half_kink_curve.iter().all(|p| p[0] >= 4.0 / 5f64.sqrt() - 1e-15));
        assert!(scan_region_map((0.5, 3.0), (-0.4, 0.5), (0, 10)).is_err());
    }
}
