//! Equilibria, periods and orbits of the radial profile dynamics.

use periodic_waves::profile_ode::{
    critical_points, integrate_orbit, momentum_threshold, orbit_period, phase_portrait, PotentialParams, Window,
};
use periodic_waves::NonlinearitySpec;

fn main() -> periodic_waves::Result<()> {
    let cubic = NonlinearitySpec::single_power(3.0)?;

    for (a, b) in [(1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)] {
        let params = PotentialParams::new(cubic.clone(), a, b, 0.0)?;
        println!("a = {a:>4}, b = {b:>4}, J = 0");
        for c in critical_points(&params) {
            println!("  r = {:.6}  {:?}  V = {:.6}  lambda^2 = {:.3}", c.r, c.kind, c.potential, c.lambda_sq);
        }
    }

    // Defocusing with angular momentum: two, one or no equilibria.
    let (rc, kc) = momentum_threshold(&cubic, 1.0, -1.0).expect("defocusing threshold");
    println!("threshold k(r_c) = {kc:.6} at r_c = {rc:.6}");
    for j_sq in [0.5 * kc, kc, 2.0 * kc] {
        let params = PotentialParams::new(cubic.clone(), 1.0, -1.0, j_sq.sqrt())?;
        let kinds: Vec<_> = critical_points(&params).iter().map(|c| c.kind).collect();
        println!("  J^2 = {j_sq:.4}: {kinds:?}");
    }

    // Period growth toward the separatrix of the focusing problem.
    let params = PotentialParams::new(cubic.clone(), -1.0, 1.0, 0.0)?;
    for e in [-0.2, -0.1, -0.01, -1e-4] {
        println!("E = {e:>8}: period {:.6}", orbit_period(&params, e)?);
    }

    let orbit = integrate_orbit(&params, 1.2, 0.0, 20.0, 1e-3)?;
    println!(
        "orbit from r = 1.2: {} samples, energy drift {:.2e}, period {:?}",
        orbit.samples.len(),
        orbit.drift,
        orbit.measured_period()
    );

    let portrait = phase_portrait(&params, &Window::around(&params), 8);
    println!(
        "portrait: {} orbits, separatrix levels {:?}",
        portrait.orbits.len(),
        portrait.separatrix_levels
    );
    Ok(())
}
