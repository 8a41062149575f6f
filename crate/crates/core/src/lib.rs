//! Numerical core for translation-invariant Ricci flow on the plane.
//!
//! A conformal metric `u(x)(dx² + dy²)` with `u` independent of `y` evolves
//! under Ricci flow by the logarithmic fast diffusion equation
//! `u_t = (log u)_xx`. This crate provides:
//!
//! - uniform grids and second-order finite-difference stencils ([`grid_fd`]),
//! - conformal flow states and Gauss curvature evaluation ([`flow_state`]),
//! - the explicit expanding soliton `u = 2t/(t² + x²)` as a closed-form
//!   oracle ([`soliton`]),
//! - an implicit (backward Euler + damped Newton) time stepper, including
//!   mollified measure initial data ([`evolve`]),
//! - pressure diagnostics `w = 1/u`, `q = w_xx` and verification of the
//!   sharp curvature bounds `|K| ≤ 1/(2t)` ([`pressure`]),
//! - geodesic distance and volume ratios in the evolving metric via
//!   weighted grid shortest paths ([`distance`]),
//! - algebraic curvature tensors and minimization of complex sectional
//!   curvature over degenerate 2-planes ([`pic1`]).
//!
//! The crate is `no_std`-compatible (requires `alloc`); disable the `std`
//! feature and enable `libm` to build without the standard library.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("planeflow-core requires either the `std` or the `libm` feature");

pub mod distance;
pub mod error;
pub mod evolve;
pub mod flow_state;
pub mod grid_fd;
pub mod math;
pub mod pic1;
pub mod pressure;
pub mod rng;
pub mod soliton;

pub use error::{Error, Result};
