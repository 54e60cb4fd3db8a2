//! Action minimizers on the Nehari manifold, and the norm formulation of the
//! anti-periodic problem.

use std::f64::consts::PI;

use periodic_waves::minimizers::{minimize_nehari, minimize_norm_problem, MinimizeConfig};
use periodic_waves::{Boundary, NonlinearitySpec};

fn main() -> periodic_waves::Result<()> {
    let cubic = NonlinearitySpec::single_power(3.0)?;
    let t = 2.0 * PI;
    let config = MinimizeConfig::default();

    let r = minimize_nehari(&cubic, -1.0, 1.0, t, Boundary::Periodic, &config)?;
    println!("defocusing: S = {:.12} (constant gives {:.12})", r.values.action, -PI / 2.0);

    let r = minimize_nehari(&cubic, 1.0, -1.0, t, Boundary::Periodic, &config)?;
    println!(
        "focusing periodic: S = {:.12}, I = {:.1e}, constancy {:.3}",
        r.values.action, r.values.nehari, r.constancy
    );

    for a in [0.0, 0.5] {
        let r = minimize_nehari(&cubic, 1.0, a, t, Boundary::AntiPeriodic, &config)?;
        let n = minimize_norm_problem(&cubic, 1.0, a, t, Boundary::AntiPeriodic, &config)?;
        println!(
            "focusing anti-periodic a = {a}: S = {:.12}, norm problem {:.12}, rearrangement {:?}",
            r.values.action, n.objective, r.rearrangement
        );
    }
    Ok(())
}
