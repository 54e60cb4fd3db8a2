//! Non-constancy threshold and the spectrum of the linearization at the
//! constant state.

use std::f64::consts::PI;

use periodic_waves::linearization::{constant_spectrum, hill_spectrum};
use periodic_waves::minimizers::{mass_threshold, minimize_mass, MinimizeConfig};
use periodic_waves::{Boundary, NonlinearitySpec};

fn main() -> periodic_waves::Result<()> {
    let cubic = NonlinearitySpec::single_power(3.0)?;
    let t = 2.0 * PI;

    let (m_star, m_tilde) = mass_threshold(&cubic, 1.0, t)?;
    println!("m* = {m_star:.12}, m~ = {m_tilde:.12} (pi/2 = {:.12})", PI / 2.0);

    for m in [0.5 * m_tilde, 2.0 * m_tilde] {
        let s = constant_spectrum(&cubic, 1.0, m, t, 3)?;
        println!("m = {m:.4}: lambda_0..3 = {:.6?}, Morse index {}", s.eigenvalues, s.morse_index);
    }

    // Around the non-constant minimizer above the threshold.
    let r = minimize_mass(&cubic, 1.0, PI, t, Boundary::Periodic, true, &MinimizeConfig::default())?;
    let s = hill_spectrum(&r.field, &cubic, r.multiplier_a, 1.0, 32, None)?;
    println!(
        "non-constant profile: lowest eigenvalues {:.6?}, Morse index {}, kernel {}",
        &s.eigenvalues[..4],
        s.morse_index,
        s.kernel_dimension()
    );
    Ok(())
}
