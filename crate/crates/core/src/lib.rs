//! Periodic and anti-periodic standing waves `ψ(t, x) = e^{−iat} u(x)` of the
//! one-dimensional nonlinear Schrödinger equation
//! `i ψ_t + ψ_xx + b f(ψ) = 0` with gauge-invariant nonlinearities.
//!
//! The crate computes the profiles `u` as minimizers of constrained
//! variational problems (energy at fixed mass, action on the Nehari
//! manifold), checks them against the closed-form minimizers where those
//! exist, and analyzes the profile equation `u_xx + a u + b f(u) = 0` in the
//! phase plane.
//!
//! Modules:
//! - [`nonlinearity`]: the nonlinearity family and the hypothesis audit.
//! - [`field`]: band-limited Fourier fields and the functionals `E, M, P, S, I`.
//! - [`rearrangement`]: the Fourier rearrangement of anti-periodic fields.
//! - [`minimizers`]: projected descent for the mass and Nehari problems.
//! - [`linearization`]: spectra of `−∂xx − a − b f'(u)`.
//! - [`profile_ode`]: effective potentials, equilibria, orbits and portraits.
//! - [`triple_power`]: region map of the normalized triple-power nonlinearity.
//! - [`cli`]: the `pwave` command-line front end.

pub mod cli;
pub mod error;
pub mod field;
pub mod linearization;
pub mod minimizers;
pub mod nonlinearity;
pub mod profile_ode;
mod quadrature;
pub mod rearrangement;
pub mod triple_power;

pub use error::{Error, Result};
pub use field::{Boundary, FunctionalValues, PeriodicField};
pub use nonlinearity::NonlinearitySpec;
