//! Special functions and quadrature shared by the field-synthesis and
//! scattering modules.
//!
//! Everything here is pure and reentrant, so field maps may call into this
//! module from parallel workers without synchronization.

mod bessel;
mod quad;

pub use bessel::bessel_j;
pub use quad::{integrate_complex, QuadratureResult, QuadratureSpec};

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum NumericsError {
    #[error("domain error: {0}")]
    Domain(String),
    /// The adaptive integrator hit its subdivision budget before the error
    /// estimate fell below tolerance. The partial estimate is carried along
    /// so callers can report how far off the result was.
    #[error(
        "quadrature failed to converge after {subdivisions} subdivisions \
         (estimate {estimate}, error {error_estimate}, requested {requested})"
    )]
    NonConvergence {
        estimate: num_complex::Complex64,
        error_estimate: f64,
        requested: f64,
        subdivisions: usize,
    },
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
}
