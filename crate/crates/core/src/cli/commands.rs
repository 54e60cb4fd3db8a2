use std::error::Error as StdError;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};

use super::field_file::{read_field, write_field};
use super::plot::{csv, Figure, PALETTE};
use super::*;
use crate::field::{functionals, ode_residual, FunctionalValues, PeriodicField};
use crate::linearization::{constant_spectrum, hill_spectrum, SpectrumReport};
use crate::minimizers::{
    mass_threshold, minimize_mass, minimize_nehari, minimize_norm_problem, Init, MinimizationResult,
    MinimizeConfig,
};
use crate::nonlinearity::{audit_hypotheses, log_grid, AuditConfig};
use crate::profile_ode::{
    critical_points_with, momentum_threshold, phase_portrait, EquilibriumKind, PotentialParams, ScanOptions,
    Window,
};
use crate::rearrangement::fourier_rearrange;
use crate::triple_power::{scan_region_map, RegionMap};

type Outcome = std::result::Result<i32, Box<dyn StdError>>;

const NOT_CONVERGED: i32 = 2;

pub(super) fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Potential(a) => potential(a),
        Command::Portrait(a) => portrait(a),
        Command::MinimizeMass(a) => minimize_mass_cmd(a),
        Command::MinimizeNehari(a) => minimize_nehari_cmd(a),
        Command::Threshold(a) => threshold(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Rearrange(a) => rearrange(a),
        Command::Regions(a) => regions(a),
        Command::Audit(a) => audit(a),
    }
}

fn emit(output: &Output, command: &str, config: &impl Serialize, result: Value) -> std::io::Result<()> {
    let doc = json!({
        "schema": format!("pwave.{command}/{SCHEMA_VERSION}"),
        "command": command,
        "config": config,
        "result": result,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("documents are plain JSON values");
    text.push('\n');
    match &output.out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn write_optional(path: &Option<PathBuf>, contents: impl FnOnce() -> String) -> std::io::Result<()> {
    match path {
        Some(path) => fs::write(path, contents()),
        None => Ok(()),
    }
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn values_json(v: &FunctionalValues) -> Value {
    json!({
        "energy": v.energy,
        "mass": v.mass,
        "momentum": v.momentum,
        "action": v.action,
        "nehari": v.nehari,
        "a": v.a,
        "b": v.b,
    })
}

/// Finite-value range of `ys` with a little headroom.
fn padded(ys: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = ys
        .filter(|y| y.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| (lo.min(y), hi.max(y)));
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    let pad = 0.08 * (hi - lo).max(1e-12);
    (lo - pad, hi + pad)
}

// ---------------------------------------------------------------------------

fn potential(args: PotentialArgs) -> Outcome {
    let params = PotentialParams::new(args.nonlinearity.clone(), args.a, args.b, args.j)?;
    let opts = ScanOptions {
        r_max: args.r_max,
        ..ScanOptions::default()
    };
    let roots = critical_points_with(&params, &opts);
    let threshold = momentum_threshold(&args.nonlinearity, args.a, args.b).map(|(rc, kc)| {
        json!({ "r_c": rc, "k_c": kc, "J_sq": args.j * args.j })
    });

    let (lo, hi) = match args.r_range {
        Some(r) => (r.lo, r.hi),
        None => {
            let reach = roots.iter().map(|c| c.r).fold(1.0, f64::max) * 1.6;
            if args.j == 0.0 {
                (-reach, reach)
            } else {
                (0.02 * reach, reach)
            }
        }
    };
    let n = args.samples.max(2);
    let curve: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let r = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            [r, params.potential(r)]
        })
        .collect();

    write_optional(&args.csv, || {
        csv(&["r", "V"], curve.iter().map(|p| vec![num(p[0]), num(p[1])]))
    })?;
    write_optional(&args.svg, || {
        // Clip the centrifugal wall: frame the lower 90% of the sampled values.
        let mut ys: Vec<f64> = curve.iter().map(|p| p[1]).filter(|y| y.is_finite()).collect();
        ys.sort_by(f64::total_cmp);
        let cut = ys.get(ys.len() * 9 / 10).copied().unwrap_or(1.0);
        let mut extra: Vec<f64> = roots.iter().map(|c| c.potential).collect();
        extra.push(cut);
        let y = padded(ys.iter().copied().filter(|&y| y <= cut).chain(extra));
        let mut fig = Figure::new(
            &format!("V_J, {} a={} b={} J={}", args.nonlinearity, args.a, args.b, args.j),
            "r",
            "V_J(r)",
            (lo, hi),
            y,
        );
        fig.polyline(&curve, PALETTE[0], 1.5, false);
        for c in &roots {
            let color = match c.kind {
                EquilibriumKind::Center => PALETTE[2],
                EquilibriumKind::Saddle => PALETTE[1],
                EquilibriumKind::SaddleNode => PALETTE[3],
            };
            fig.marker(c.r, c.potential, true, color);
            if args.j == 0.0 && c.r > 0.0 {
                fig.marker(-c.r, c.potential, true, color);
            }
        }
        fig.legend("center", PALETTE[2]);
        fig.legend("saddle", PALETTE[1]);
        fig.legend("saddle-node", PALETTE[3]);
        fig.render()
    })?;

    emit(
        &args.output,
        "potential",
        &args,
        json!({ "critical_points": roots, "momentum_threshold": threshold }),
    )?;
    Ok(0)
}

fn portrait(args: PortraitArgs) -> Outcome {
    let params = PotentialParams::new(args.nonlinearity.clone(), args.a, args.b, args.j)?;
    let mut window = Window::around(&params);
    if let Some(r) = args.r_range {
        window.r_min = r.lo;
        window.r_max = r.hi;
    }
    if let Some(r) = args.rx_range {
        window.rx_min = r.lo;
        window.rx_max = r.hi;
    }
    let pp = phase_portrait(&params, &window, args.resolution);

    write_optional(&args.csv, || {
        let rows = pp.orbits.iter().enumerate().flat_map(|(i, o)| {
            o.points.iter().map(move |p| {
                vec![
                    i.to_string(),
                    num(o.level),
                    o.separatrix.to_string(),
                    num(p[0]),
                    num(p[1]),
                ]
            })
        });
        csv(&["orbit", "level", "separatrix", "r", "r_x"], rows)
    })?;
    write_optional(&args.svg, || {
        let mut fig = Figure::new(
            &format!("phase portrait, {} a={} b={} J={}", args.nonlinearity, args.a, args.b, args.j),
            "r",
            "r_x",
            (window.r_min, window.r_max),
            (window.rx_min, window.rx_max),
        );
        for seg in &pp.isocline_infinity {
            fig.polyline(&[[seg[0], 0.0], [seg[1], 0.0]], "#bbbbbb", 1.0, true);
        }
        for &r in &pp.isocline_zero {
            fig.polyline(&[[r, window.rx_min], [r, window.rx_max]], "#bbbbbb", 1.0, true);
        }
        for o in &pp.orbits {
            let (color, width) = if o.separatrix { (PALETTE[1], 1.6) } else { (PALETTE[0], 1.0) };
            fig.polyline(&o.points, color, width, false);
        }
        for c in &pp.equilibria {
            match c.kind {
                EquilibriumKind::Center => fig.marker(c.r, 0.0, true, PALETTE[2]),
                _ => fig.marker(c.r, 0.0, false, PALETTE[1]),
            }
        }
        fig.legend("orbit", PALETTE[0]);
        fig.legend("separatrix", PALETTE[1]);
        fig.legend("center", PALETTE[2]);
        fig.legend("isoclines", "#bbbbbb");
        fig.render()
    })?;

    emit(
        &args.output,
        "portrait",
        &args,
        json!({
            "window": pp.window,
            "equilibria": pp.equilibria,
            "isocline_zero": pp.isocline_zero,
            "isocline_infinity": pp.isocline_infinity,
            "separatrix_levels": pp.separatrix_levels,
            "orbit_count": pp.orbits.len(),
            "orbit_levels": pp.orbits.iter().map(|o| o.level).collect::<Vec<_>>(),
        }),
    )?;
    Ok(0)
}

fn solver_config(s: &Solver) -> std::result::Result<MinimizeConfig, crate::Error> {
    let init = match (&s.init_field, s.init.as_str()) {
        (Some(path), _) => Init::Field(read_field(path)?),
        (None, "constant") => Init::Constant,
        (None, "random") => Init::Random,
        _ => Init::Auto,
    };
    Ok(MinimizeConfig {
        modes: s.modes,
        step: s.step,
        tol: s.tol,
        max_iters: s.max_iters,
        seed: s.seed,
        real_only: s.real,
        init,
    })
}

fn profile_samples(field: &PeriodicField) -> Vec<[f64; 4]> {
    let n = (4 * field.modes() + 2).max(512);
    let xs = field.grid(n);
    let us = field.sample(n).expect("grid finer than the band");
    xs.iter()
        .zip(&us)
        .map(|(&x, u)| [x, u.re, u.im, u.norm()])
        .collect()
}

fn write_profile(profile: &Profile, field: &PeriodicField, title: &str) -> std::io::Result<()> {
    if let Some(path) = &profile.field_out {
        write_field(path, field)?;
    }
    if profile.csv.is_none() && profile.svg.is_none() {
        return Ok(());
    }
    let samples = profile_samples(field);
    write_optional(&profile.csv, || {
        csv(
            &["x", "re", "im", "abs"],
            samples.iter().map(|s| s.iter().map(|&v| num(v)).collect()),
        )
    })?;
    write_optional(&profile.svg, || {
        let y = padded(samples.iter().flat_map(|s| [s[1], s[2], s[3], 0.0]));
        let mut fig = Figure::new(title, "x", "u(x)", (0.0, field.period()), y);
        for (k, label) in [(1, "Re u"), (2, "Im u"), (3, "|u|")] {
            let pts: Vec<[f64; 2]> = samples.iter().map(|s| [s[0], s[k]]).collect();
            fig.polyline(&pts, PALETTE[k - 1], 1.5, k == 3);
            fig.legend(label, PALETTE[k - 1]);
        }
        fig.render()
    })
}

fn minimizer_json(r: &MinimizationResult) -> Value {
    let samples = profile_samples(&r.field);
    let min_re = samples.iter().map(|s| s[1]).fold(f64::INFINITY, f64::min);
    let max_abs = samples.iter().map(|s| s[3]).fold(0.0, f64::max);
    json!({
        "converged": r.converged,
        "iterations": r.iterations,
        "gradient_norm": r.gradient_norm,
        "objective": r.objective(),
        "multiplier_a": r.multiplier_a,
        "values": values_json(&r.values),
        "ode_residual": r.ode_residual,
        "constancy": r.constancy,
        "constraint_residual": r.constraint_residual,
        "real": r.field.is_real(1e-10),
        "min_real_part": min_re,
        "max_modulus": max_abs,
        "modes": r.field.modes(),
        "rearrangement": r.rearrangement,
    })
}

fn minimize_mass_cmd(args: MassArgs) -> Outcome {
    let config = solver_config(&args.solver)?;
    let r = minimize_mass(
        &args.nonlinearity,
        args.b,
        args.m,
        args.period,
        args.boundary,
        args.momentum_zero,
        &config,
    )?;
    write_profile(&args.profile, &r.field, &format!("mass minimizer, m={}", args.m))?;
    emit(&args.output, "minimize-mass", &args, minimizer_json(&r))?;
    if !r.converged {
        eprintln!(
            "pwave: not converged after {} iterations (gradient norm {:e})",
            r.iterations, r.gradient_norm
        );
        return Ok(NOT_CONVERGED);
    }
    Ok(0)
}

fn minimize_nehari_cmd(args: NehariArgs) -> Outcome {
    let config = solver_config(&args.solver)?;
    let r = minimize_nehari(&args.nonlinearity, args.b, args.a, args.period, args.boundary, &config)?;
    let mut converged = r.converged;
    let mut result = minimizer_json(&r);
    if args.norm_problem {
        let n = minimize_norm_problem(&args.nonlinearity, args.b, args.a, args.period, args.boundary, &config)?;
        converged &= n.converged;
        result["norm_problem"] = json!({
            "converged": n.converged,
            "iterations": n.iterations,
            "gradient_norm": n.gradient_norm,
            "objective": n.objective,
            "q_min": n.q_min,
            "difference": n.objective - r.objective(),
        });
    }
    write_profile(&args.profile, &r.field, &format!("Nehari minimizer, a={}", args.a))?;
    emit(&args.output, "minimize-nehari", &args, result)?;
    if !converged {
        eprintln!("pwave: not converged (gradient norm {:e})", r.gradient_norm);
        return Ok(NOT_CONVERGED);
    }
    Ok(0)
}

fn threshold(args: ThresholdArgs) -> Outcome {
    let (m_star, m_tilde) = mass_threshold(&args.nonlinearity, args.b, args.period)?;
    emit(
        &args.output,
        "threshold",
        &args,
        json!({ "m_star": m_star, "m_tilde": m_tilde }),
    )?;
    Ok(0)
}

fn spectrum_json(s: &SpectrumReport) -> Value {
    json!({
        "operator": s.operator,
        "truncation": s.truncation,
        "eigenvalues": s.eigenvalues,
        "morse_index": s.morse_index,
        "kernel_dimension": s.kernel_dimension(),
        "zero_tol": s.zero_tol,
    })
}

fn spectrum(args: SpectrumArgs) -> Outcome {
    let mut result;
    let report = match &args.field {
        Some(path) => {
            let field = read_field(path)?;
            let a = args.a.expect("clap enforces --a with --field");
            let report = hill_spectrum(
                &field,
                &args.nonlinearity,
                a,
                args.b,
                args.modes.unwrap_or(field.modes()),
                args.zero_tol,
            )?;
            result = spectrum_json(&report);
            result["profile"] = json!({
                "values": values_json(&functionals(&field, &args.nonlinearity, args.b, a)),
                "ode_residual": ode_residual(&field, &args.nonlinearity, a, args.b),
            });
            report
        }
        None => {
            let (m, period) = (args.m.expect("clap enforces --m"), args.period.expect("clap enforces --T"));
            let report = constant_spectrum(&args.nonlinearity, args.b, m, period, args.n_max)?;
            result = spectrum_json(&report);
            report
        }
    };
    write_optional(&args.csv, || {
        csv(
            &["index", "eigenvalue"],
            report
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(i, l)| vec![i.to_string(), num(*l)]),
        )
    })?;
    emit(&args.output, "spectrum", &args, result)?;
    Ok(0)
}

fn rearrange(args: RearrangeArgs) -> Outcome {
    let v = read_field(&args.field)?;
    let w = fourier_rearrange(&v)?;
    if let Some(path) = &args.field_out {
        write_field(path, &w)?;
    }
    let norms: Vec<Value> = args
        .p
        .iter()
        .map(|&p| {
            json!({
                "p": p,
                "before": v.lp_integral(p + 1.0),
                "after": w.lp_integral(p + 1.0),
            })
        })
        .collect();
    let mut result = json!({
        "mass": { "before": v.mass(), "after": w.mass() },
        "gradient_norm_sq": { "before": v.gradient_norm_sq(), "after": w.gradient_norm_sq() },
        "lp_integrals": norms,
        "real": w.is_real(0.0),
    });
    if let (Some(spec), Some(b), Some(a)) = (&args.nonlinearity, args.b, args.a) {
        result["values"] = json!({
            "before": values_json(&functionals(&v, spec, b, a)),
            "after": values_json(&functionals(&w, spec, b, a)),
        });
    }
    emit(&args.output, "rearrange", &args, result)?;
    Ok(0)
}

const REGION_NAMES: [&str; 4] = ["zero solutions", "one solution", "two solutions", "three solutions"];
const REGION_COLORS: [&str; 4] = ["#f2f2f2", "#c6dbef", "#fdd0a2", "#c7e9c0"];

fn region_svg(map: &RegionMap) -> String {
    let (g, w) = (&map.gammas, &map.omegas);
    let half = |xs: &[f64], i: usize| {
        let h = if xs.len() > 1 { (xs[1] - xs[0]) / 2.0 } else { 0.5 };
        (xs[i] - h, xs[i] + h)
    };
    let mut fig = Figure::new(
        "triple power: positive solutions of r - gamma r^2 + r^3 = omega",
        "gamma",
        "omega",
        (half(g, 0).0, half(g, g.len() - 1).1),
        (half(w, 0).0, half(w, w.len() - 1).1),
    );
    for (i, row) in map.labels.iter().enumerate() {
        let (y0, y1) = half(w, i);
        // Merge runs of equal labels into one rectangle.
        let mut k = 0;
        while k < row.len() {
            let start = k;
            while k + 1 < row.len() && row[k + 1] == row[start] {
                k += 1;
            }
            let color = REGION_COLORS[usize::from(row[start]).min(3)];
            fig.rect(half(g, start).0, y0, half(g, k).1, y1, color);
            k += 1;
        }
    }
    fig.polyline(&map.lower_curve, "black", 1.5, false);
    fig.polyline(&map.upper_curve, "black", 1.5, false);
    fig.polyline(&map.half_kink_curve, PALETTE[1], 1.5, true);
    fig.polyline(&[[g[0], 0.0], [g[g.len() - 1], 0.0]], "black", 0.8, false);
    for (name, color) in REGION_NAMES.iter().zip(REGION_COLORS) {
        fig.legend(name, color);
    }
    fig.legend("f1(r+), f1(r-)", "black");
    fig.legend("V(c2) = 0", PALETTE[1]);
    fig.render()
}

fn regions(args: RegionsArgs) -> Outcome {
    let map = scan_region_map(
        (args.gamma.lo, args.gamma.hi),
        (args.omega.lo, args.omega.hi),
        (args.gamma.n, args.omega.n),
    )?;
    let mut counts = [0usize; 4];
    for &l in map.labels.iter().flatten() {
        counts[usize::from(l).min(3)] += 1;
    }
    write_optional(&args.csv, || {
        let rows = map.labels.iter().enumerate().flat_map(|(i, row)| {
            let map = &map;
            row.iter()
                .enumerate()
                .map(move |(k, l)| vec![num(map.gammas[k]), num(map.omegas[i]), l.to_string()])
        });
        csv(&["gamma", "omega", "label"], rows)
    })?;
    write_optional(&args.svg, || region_svg(&map))?;
    emit(
        &args.output,
        "regions",
        &args,
        json!({
            "label_counts": {
                "0": counts[0], "1": counts[1], "2": counts[2], "3": counts[3],
            },
            "lower_curve": map.lower_curve,
            "upper_curve": map.upper_curve,
            "half_kink_curve": map.half_kink_curve,
        }),
    )?;
    Ok(0)
}

fn audit(args: AuditArgs) -> Outcome {
    if !(args.grid_min > 0.0 && args.grid_min < args.grid_max) {
        return Err(Box::new(crate::Error::Domain(format!(
            "audit grid needs 0 < grid-min < grid-max, got {}..{}",
            args.grid_min, args.grid_max
        ))));
    }
    let grid = log_grid(args.grid_min, args.grid_max, args.grid_points.max(2));
    let cfg = AuditConfig {
        tol: args.tol,
        ..AuditConfig::default()
    };
    let report = audit_hypotheses(&args.nonlinearity, args.b, &grid, &cfg)?;
    let verdicts: Vec<Value> = report
        .verdicts
        .iter()
        .map(|(h, v)| json!({ "hypothesis": h, "statement": h.statement(), "verdict": v }))
        .collect();
    emit(
        &args.output,
        "audit",
        &args,
        json!({ "verdicts": verdicts, "growth_bound": report.growth_bound }),
    )?;
    Ok(0)
}
