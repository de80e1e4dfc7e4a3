//! Exact vector solutions of Maxwell's equations for strongly focused
//! Gaussian and Laguerre-Gaussian beams, and the response of a single
//! J=0 -> J=1 atom driven by them.
//!
//! The crate is organized bottom-up:
//!
//! * [`numerics`] - Bessel functions and adaptive complex quadrature.
//! * [`modes`] - the cylindrical eigenmode set the focused fields are
//!   expanded over.
//! * [`beams`] - the thin-lens transform, exact field synthesis, the
//!   paraxial approximation and its correction decomposition.
//! * [`atom`] - drive coefficients, decay, and the driven steady state.
//! * [`scatter`] - far-field observables: intensity decomposition,
//!   zero-delay g2, the forward laser/dipole ratio K, and the scattering
//!   ratio R_s.
//! * [`cli`] - sweep configuration and CSV/JSON emission for the
//!   `strongfocus` binary.

pub mod atom;
pub mod beams;
pub mod cli;
pub mod modes;
pub mod numerics;
pub mod scatter;
