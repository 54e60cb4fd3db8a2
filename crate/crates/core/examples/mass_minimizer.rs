//! Energy minimizers at fixed mass, periodic and anti-periodic.

use std::f64::consts::PI;

use periodic_waves::minimizers::{minimize_mass, MinimizeConfig};
use periodic_waves::{Boundary, NonlinearitySpec};

fn main() -> periodic_waves::Result<()> {
    let cubic = NonlinearitySpec::single_power(3.0)?;
    let t = 2.0 * PI;
    let config = MinimizeConfig::default();

    let runs = [
        ("defocusing, periodic", -1.0, 1.0, Boundary::Periodic),
        ("defocusing, anti-periodic", -1.0, 1.0, Boundary::AntiPeriodic),
        ("focusing, below threshold", 1.0, PI / 4.0, Boundary::Periodic),
        ("focusing, above threshold", 1.0, PI, Boundary::Periodic),
    ];
    for (label, b, m, boundary) in runs {
        let r = minimize_mass(&cubic, b, m, t, boundary, false, &config)?;
        println!("{label} (m = {m:.4})");
        println!(
            "  converged {} in {} steps, E = {:.10}, a = {:.10}",
            r.converged, r.iterations, r.values.energy, r.multiplier_a
        );
        println!(
            "  constancy {:.3e}, ode residual {:.2e}, real {}",
            r.constancy,
            r.ode_residual,
            r.field.is_real(1e-10)
        );
    }
    Ok(())
}
