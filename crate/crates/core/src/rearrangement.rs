//! Fourier rearrangement of anti-periodic fields.
//!
//! Each odd mode pair `(v_j, v_{−j})` is replaced by the common real amplitude
//! `√((|v_j|² + |v_{−j}|²)/2)`. The result is real, has the same `L²` norm
//! and the same `L²` norm of the derivative, and for odd integer `p` its
//! `L^{p+1}` norm is not smaller than that of the input.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Boundary, PeriodicField};

pub fn fourier_rearrange(field: &PeriodicField) -> Result<PeriodicField> {
    if field.boundary() != Boundary::AntiPeriodic {
        return Err(Error::Boundary(
            "the Fourier rearrangement is defined for anti-periodic fields".into(),
        ));
    }
    let mut out = field.clone();
    let n = field.modes() as i64;
    for j in 1..=n {
        if j % 2 == 0 {
            continue;
        }
        let amp = ((field.coeff(j).norm_sqr() + field.coeff(-j).norm_sqr()) / 2.0).sqrt();
        out.set_coeff(j, Complex64::new(amp, 0.0))?;
        out.set_coeff(-j, Complex64::new(amp, 0.0))?;
    }
    Ok(out)
}
