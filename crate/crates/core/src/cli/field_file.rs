//! Text format for band-limited fields.
//!
//! ```text
//! T=6.2831853071795862
//! boundary=periodic
//! N=2
//! -2 0.0000000000000000e0 0.0000000000000000e0
//! ...
//! ```
//!
//! Coefficients are written with 17 significant digits, which round-trips
//! every `f64`. Blank lines and lines starting with `#` are ignored.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Boundary, PeriodicField};

pub fn format_field(field: &PeriodicField) -> String {
    let mut out = format!(
        "T={:.16e}\nboundary={}\nN={}\n",
        field.period(),
        field.boundary(),
        field.modes()
    );
    for (j, c) in field.iter_modes() {
        out.push_str(&format!("{j} {:.16e} {:.16e}\n", c.re, c.im));
    }
    out
}

fn header<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::Parse(format!("missing header line '{key}='")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .map(str::trim)
        .ok_or_else(|| Error::Parse(format!("expected '{key}=...', got '{line}'")))
}

fn number<T: std::str::FromStr>(text: &str, what: &str) -> Result<T> {
    text.parse()
        .map_err(|_| Error::Parse(format!("bad {what} '{text}'")))
}

pub fn parse_field(text: &str) -> Result<PeriodicField> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let period: f64 = number(header(lines.next(), "T")?, "period")?;
    let boundary: Boundary = header(lines.next(), "boundary")?.parse()?;
    let modes: usize = number(header(lines.next(), "N")?, "mode cutoff")?;
    let mut coeffs = vec![None; 2 * modes + 1];
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected 'j re im', got '{line}'")));
        }
        let j: i64 = number(parts[0], "mode index")?;
        if j.unsigned_abs() as usize > modes {
            return Err(Error::Parse(format!("mode {j} outside -{modes}..={modes}")));
        }
        let slot = &mut coeffs[(j + modes as i64) as usize];
        if slot.is_some() {
            return Err(Error::Parse(format!("mode {j} given twice")));
        }
        *slot = Some(Complex64::new(
            number(parts[1], "real part")?,
            number(parts[2], "imaginary part")?,
        ));
    }
    // Missing modes are zero.
    let coeffs = coeffs.into_iter().map(Option::unwrap_or_default).collect();
    PeriodicField::new(period, boundary, modes, coeffs)
}

pub fn read_field(path: &Path) -> Result<PeriodicField> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read field file {}: {e}", path.display())))?;
    parse_field(&text)
}

pub fn write_field(path: &Path, field: &PeriodicField) -> std::io::Result<()> {
    fs::write(path, format_field(field))
}
