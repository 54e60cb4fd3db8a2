//! The Fourier rearrangement keeps the L2 and H1 norms and does not decrease
//! the L4 norm.

use std::f64::consts::PI;

use num_complex::Complex64;
use periodic_waves::rearrangement::fourier_rearrange;
use periodic_waves::{Boundary, PeriodicField};

fn main() -> periodic_waves::Result<()> {
    let t = 2.0 * PI;
    let plane = PeriodicField::single_mode(t, Boundary::AntiPeriodic, 5, 1, Complex64::new(1.0, 0.0))?;
    let cosine = fourier_rearrange(&plane)?;
    println!(
        "e^(ix) -> sqrt(2) cos x: L4 ratio {:.12}",
        cosine.lp_integral(4.0) / plane.lp_integral(4.0)
    );

    let mut v = PeriodicField::zeros(t, Boundary::AntiPeriodic, 7)?;
    v.set_coeff(1, Complex64::new(0.3, 0.9))?;
    v.set_coeff(-1, Complex64::new(-0.2, 0.1))?;
    v.set_coeff(3, Complex64::new(0.0, -0.4))?;
    v.set_coeff(-5, Complex64::new(0.25, 0.0))?;
    let w = fourier_rearrange(&v)?;
    println!("mass      {:.15} -> {:.15}", v.mass(), w.mass());
    println!("|v_x|^2   {:.15} -> {:.15}", v.gradient_norm_sq(), w.gradient_norm_sq());
    for q in [4.0, 6.0] {
        println!("int |v|^{q} {:.15} -> {:.15}", v.lp_integral(q), w.lp_integral(q));
    }
    Ok(())
}
