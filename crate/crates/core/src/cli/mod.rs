//! The `pwave` command-line front end.
//!
//! Each subcommand writes one JSON result document (to `--out` or stdout)
//! with the keys `schema`, `command`, `config` and `result`, plus optional
//! CSV tables and SVG plots. Documents carry no timestamps, so identical
//! arguments give byte-identical output.
//!
//! Exit codes: 0 success, 1 invalid input or failed precondition, 2 a
//! minimizer stopped before reaching its tolerance.

mod commands;
pub mod field_file;
mod plot;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Serialize, Serializer};

use crate::field::Boundary;
use crate::nonlinearity::NonlinearitySpec;

/// Version of every result document layout.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(
    name = "pwave",
    version,
    about = "Periodic and anti-periodic standing waves of 1-D NLS"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Critical points of the effective potential V_J, with a plot of V_J.
    #[command(allow_negative_numbers = true)]
    Potential(PotentialArgs),
    /// Phase portrait of the radial dynamics (SVG and CSV).
    #[command(allow_negative_numbers = true)]
    Portrait(PortraitArgs),
    /// Minimize the energy at fixed mass.
    #[command(allow_negative_numbers = true)]
    MinimizeMass(MassArgs),
    /// Minimize the action on the Nehari manifold.
    #[command(allow_negative_numbers = true)]
    MinimizeNehari(NehariArgs),
    /// Mass above which the focusing minimizer is not constant.
    #[command(allow_negative_numbers = true)]
    Threshold(ThresholdArgs),
    /// Spectrum of the linearized operator, at a constant or around a field file.
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Fourier rearrangement of an anti-periodic field file.
    #[command(allow_negative_numbers = true)]
    Rearrange(RearrangeArgs),
    /// Solution-count regions of the triple-power nonlinearity.
    #[command(allow_negative_numbers = true)]
    Regions(RegionsArgs),
    /// Check the structural hypotheses on a nonlinearity.
    #[command(allow_negative_numbers = true)]
    Audit(AuditArgs),
}

fn spec_as_text<S: Serializer>(spec: &NonlinearitySpec, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(spec)
}

fn boundary_as_text<S: Serializer>(b: &Boundary, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(b)
}

/// `LO:HI:N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct Range3 {
    lo: f64,
    hi: f64,
    n: usize,
}

fn parse_range3(text: &str) -> Result<Range3, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected LO:HI:N, got '{text}'"));
    }
    let lo: f64 = parts[0].parse().map_err(|_| format!("bad number '{}'", parts[0]))?;
    let hi: f64 = parts[1].parse().map_err(|_| format!("bad number '{}'", parts[1]))?;
    let n: usize = parts[2].parse().map_err(|_| format!("bad count '{}'", parts[2]))?;
    if !(lo < hi) || n < 2 {
        return Err(format!("need LO < HI and N >= 2, got '{text}'"));
    }
    Ok(Range3 { lo, hi, n })
}

/// `LO:HI`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct Range2 {
    lo: f64,
    hi: f64,
}

fn parse_range2(text: &str) -> Result<Range2, String> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got '{text}'"))?;
    let lo: f64 = lo.parse().map_err(|_| format!("bad number '{lo}'"))?;
    let hi: f64 = hi.parse().map_err(|_| format!("bad number '{hi}'"))?;
    if !(lo < hi) {
        return Err(format!("need LO < HI, got '{text}'"));
    }
    Ok(Range2 { lo, hi })
}

#[derive(Args, Debug, Serialize)]
struct Output {
    /// Result document path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct PotentialArgs {
    /// power:P, powers:P1@C1,P2@C2,... or triple:GAMMA.
    #[arg(long)]
    #[serde(serialize_with = "spec_as_text")]
    nonlinearity: NonlinearitySpec,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    /// Angular momentum.
    #[arg(long = "J", default_value_t = 0.0)]
    j: f64,
    /// Upper end of the root scan.
    #[arg(long, default_value_t = 1e3)]
    r_max: f64,
    /// Plot range for r; framed around the critical points when absent.
    #[arg(long, value_parser = parse_range2, allow_hyphen_values = true)]
    r_range: Option<Range2>,
    #[arg(long, default_value_t = 400)]
    samples: usize,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct PortraitArgs {
    #[arg(long)]
    #[serde(serialize_with = "spec_as_text")]
    nonlinearity: NonlinearitySpec,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long = "J", default_value_t = 0.0)]
    j: f64,
    /// Number of orbits seeded between equilibria.
    #[arg(long, default_value_t = 10)]
    resolution: usize,
    #[arg(long, value_parser = parse_range2, allow_hyphen_values = true)]
    r_range: Option<Range2>,
    #[arg(long, value_parser = parse_range2, allow_hyphen_values = true)]
    rx_range: Option<Range2>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct Solver {
    /// Mode cutoff N.
    #[arg(long, default_value_t = 64)]
    modes: usize,
    /// Tolerance on the constrained gradient norm.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 50_000)]
    max_iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Initial step of the descent.
    #[arg(long, default_value_t = 1.0)]
    step: f64,
    /// auto, constant or random.
    #[arg(long, default_value = "auto", value_parser = ["auto", "constant", "random"])]
    init: String,
    /// Start from a field file instead.
    #[arg(long, conflicts_with = "init")]
    init_field: Option<PathBuf>,
    /// Restrict to real fields.
    #[arg(long)]
    real: bool,
}

#[derive(Args, Debug, Serialize)]
struct Profile {
    /// Write the minimizer as a field file.
    #[arg(long)]
    field_out: Option<PathBuf>,
    /// Profile samples x, Re u, Im u, |u|.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct MassArgs {
    #[arg(long)]
    #[serde(serialize_with = "spec_as_text")]
    nonlinearity: NonlinearitySpec,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    m: f64,
    #[arg(long = "T")]
    period: f64,
    #[arg(long, default_value = "periodic")]
    #[serde(serialize_with = "boundary_as_text")]
    boundary: Boundary,
    /// Restrict to fields of zero momentum (real fields).
    #[arg(long)]
    momentum_zero: bool,
    #[command(flatten)]
    solver: Solver,
    #[command(flatten)]
    profile: Profile,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct NehariArgs {
    #[arg(long)]
    #[serde(serialize_with = "spec_as_text")]
    nonlinearity: NonlinearitySpec,
    #[arg(long)]
    b: f64,
    #[arg(long)]
    a: f64,
    #[arg(long = "T")]
    period: f64,
    #[arg(long, default_value = "periodic")]
    #[serde(serialize_with = "boundary_as_text")]
    boundary: Boundary,
    /// Also solve the norm formulation and compare the two minima.
    #[arg(long)]
    norm_problem: bool,
    #[command(flatten)]
    solver: Solver,
    #[command(flatten)]
    profile: Profile,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct ThresholdArgs {
    #[arg(long)]
    #[serde(serialize_with = "spec_as_text")]
    nonlinearity: NonlinearitySpec,
    #[arg(long)]
    b: f64,
    #[arg(long = "T")]
    period: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct SpectrumArgs {
    #[arg(long)]
    #[serde(serialize_with = "spec_as_text")]
    nonlinearity: NonlinearitySpec,
    #[arg(long)]
    b: f64,
    /// Profile field file; the closed-form constant spectrum is used when absent.
    #[arg(long, requires = "a", conflicts_with_all = ["m", "period"])]
    field: Option<PathBuf>,
    /// Frequency of the profile equation solved by the field.
    #[arg(long)]
    a: Option<f64>,
    /// Galerkin cutoff; defaults to the cutoff of the field.
    #[arg(long, requires = "field")]
    modes: Option<usize>,
    /// Mass of the constant state.
    #[arg(long, required_unless_present = "field")]
    m: Option<f64>,
    #[arg(long = "T", required_unless_present = "field")]
    period: Option<f64>,
    /// Highest index n of the constant spectrum.
    #[arg(long, default_value_t = 16)]
    n_max: usize,
    /// Eigenvalues with |λ| below this count as zero; relative to the spectral radius when absent.
    #[arg(long)]
    zero_tol: Option<f64>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct RearrangeArgs {
    /// Anti-periodic input field file.
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    field_out: Option<PathBuf>,
    /// Exponents p at which ‖v‖_{p+1} is compared.
    #[arg(long, value_delimiter = ',', default_value = "3,5")]
    p: Vec<f64>,
    /// With --b and --a, also report the functionals.
    #[arg(long, requires_all = ["b", "a"])]
    #[serde(serialize_with = "optional_spec_as_text")]
    nonlinearity: Option<NonlinearitySpec>,
    #[arg(long, requires = "nonlinearity")]
    b: Option<f64>,
    #[arg(long, requires = "nonlinearity")]
    a: Option<f64>,
    #[command(flatten)]
    output: Output,
}

fn optional_spec_as_text<S: Serializer>(spec: &Option<NonlinearitySpec>, s: S) -> Result<S::Ok, S::Error> {
    match spec {
        Some(spec) => s.collect_str(spec),
        None => s.serialize_none(),
    }
}

#[derive(Args, Debug, Serialize)]
struct RegionsArgs {
    /// LO:HI:N.
    #[arg(long, value_parser = parse_range3, allow_hyphen_values = true)]
    gamma: Range3,
    /// LO:HI:N.
    #[arg(long, value_parser = parse_range3, allow_hyphen_values = true)]
    omega: Range3,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Labels as gamma, omega, label.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct AuditArgs {
    #[arg(long)]
    #[serde(serialize_with = "spec_as_text")]
    nonlinearity: NonlinearitySpec,
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = 1e-4)]
    grid_min: f64,
    #[arg(long, default_value_t = 1e4)]
    grid_max: f64,
    #[arg(long, default_value_t = 2000)]
    grid_points: usize,
    /// Relative slack in the pointwise inequalities.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    output: Output,
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code. Diagnostics go to stderr.
pub fn run(args: &[String]) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("pwave: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range3("-0.4:0.5:200").unwrap(), Range3 { lo: -0.4, hi: 0.5, n: 200 });
        assert!(parse_range3("1:0:3").is_err());
        assert!(parse_range3("0:1").is_err());
        assert_eq!(parse_range2("-2:2").unwrap(), Range2 { lo: -2.0, hi: 2.0 });
    }

    #[test]
    fn negative_values_parse() {
        let cli = Cli::try_parse_from([
            "pwave", "regions", "--gamma", "0.5:3:20", "--omega", "-0.4:0.5:20",
        ])
        .unwrap();
        assert!(matches!(cli.command, Command::Regions(_)));
        let cli = Cli::try_parse_from([
            "pwave", "minimize-mass", "--nonlinearity", "power:3", "--b", "-1", "--m", "1", "--T", "6.28",
        ])
        .unwrap();
        let Command::MinimizeMass(a) = cli.command else { panic!() };
        assert_eq!(a.b, -1.0);
    }

    #[test]
    fn physical_parameters_are_required() {
        assert!(Cli::try_parse_from(["pwave", "threshold", "--nonlinearity", "power:3", "--b", "1"]).is_err());
        assert!(Cli::try_parse_from(["pwave", "spectrum", "--nonlinearity", "power:3", "--b", "1", "--m", "1"]).is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(&["pwave".into(), "nope".into()]), 1);
        assert_eq!(run(&["pwave".into(), "--help".into()]), 0);
    }
}
