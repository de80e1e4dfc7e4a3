//! Transverse eigenmodes of the free field in cylindrical coordinates.
//!
//! Each mode is labeled by wavenumber `k`, transverse wavenumber `k_t`,
//! integer angular-momentum index `m` and helicity `s`; only the
//! forward-propagating branch `k_z = +sqrt(k^2 - k_t^2)` is represented,
//! since the lens problem never populates backward modes. Components are
//! stored in the circular basis (eps_minus, eps_plus, z); conversion to
//! Cartesian components is a separate helper.

use crate::numerics::{bessel_j, NumericsError};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ModeError {
    #[error("invalid mode index: {0}")]
    InvalidIndex(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Quantum numbers (k, k_t, m, s) of one transverse eigenmode at fixed
/// frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeIndex {
    k: f64,
    k_t: f64,
    m: i32,
    s: i8,
}

impl ModeIndex {
    /// Angular-momentum indices beyond |m| = 2 would require Bessel orders
    /// this crate does not provide; the lens outputs here carry m in {0,1,2}.
    pub fn new(k: f64, k_t: f64, m: i32, s: i8) -> Result<Self, ModeError> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(ModeError::InvalidIndex(format!("k must be > 0, got {k}")));
        }
        if !(0.0..=k).contains(&k_t) {
            return Err(ModeError::InvalidIndex(format!(
                "k_t must satisfy 0 <= k_t <= k, got k_t={k_t}, k={k}"
            )));
        }
        if s != 1 && s != -1 {
            return Err(ModeError::InvalidIndex(format!(
                "helicity s must be +1 or -1, got {s}"
            )));
        }
        if m.abs() > 2 {
            return Err(ModeError::InvalidIndex(format!(
                "|m| <= 2 supported, got {m}"
            )));
        }
        Ok(Self { k, k_t, m, s })
    }

    pub fn k(&self) -> f64 {
        self.k
    }
    pub fn k_t(&self) -> f64 {
        self.k_t
    }
    pub fn m(&self) -> i32 {
        self.m
    }
    pub fn s(&self) -> i8 {
        self.s
    }
    /// Forward-propagating longitudinal wavenumber.
    pub fn k_z(&self) -> f64 {
        ((self.k - self.k_t) * (self.k + self.k_t)).max(0.0).sqrt()
    }
}

/// A point in cylindrical coordinates (rho, phi, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylPoint {
    pub rho: f64,
    pub phi: f64,
    pub z: f64,
}

impl CylPoint {
    pub fn new(rho: f64, phi: f64, z: f64) -> Self {
        assert!(rho >= 0.0, "rho must be >= 0, got {rho}");
        Self { rho, phi, z }
    }

    pub fn on_axis(z: f64) -> Self {
        Self { rho: 0.0, phi: 0.0, z }
    }

    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Self {
        Self {
            rho: x.hypot(y),
            phi: y.atan2(x),
            z,
        }
    }
}

/// Complex field amplitudes along the circular basis vectors
/// eps_minus = (x - i y)/sqrt(2), eps_plus = (x + i y)/sqrt(2), and z.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CircularVector {
    pub e_minus: Complex64,
    pub e_plus: Complex64,
    pub e_z: Complex64,
}

impl CircularVector {
    /// Cartesian components (x, y, z) of the same vector.
    pub fn to_cartesian(&self) -> [Complex64; 3] {
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let i = Complex64::new(0.0, 1.0);
        [
            (self.e_plus + self.e_minus) * inv_sqrt2,
            (self.e_plus - self.e_minus) * i * inv_sqrt2,
            self.e_z,
        ]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.e_minus.norm_sqr() + self.e_plus.norm_sqr() + self.e_z.norm_sqr()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            e_minus: self.e_minus * factor,
            e_plus: self.e_plus * factor,
            e_z: self.e_z * factor,
        }
    }
}

/// Scalar kernel G(k, k_z, m) = J_m(k_t rho) exp(i k_z z) exp(i m phi),
/// evaluated with an effective angular index (negative orders fold back
/// through J_{-m} = (-1)^m J_m).
pub fn kernel_g(idx: &ModeIndex, m_eff: i32, p: &CylPoint) -> Result<Complex64, ModeError> {
    if m_eff.abs() > 3 {
        return Err(ModeError::InvalidIndex(format!(
            "kernel supports |m_eff| <= 3, got {m_eff}"
        )));
    }
    let order = m_eff.unsigned_abs() as u8;
    let mut radial = bessel_j(order, idx.k_t * p.rho)?;
    if m_eff < 0 && m_eff % 2 != 0 {
        radial = -radial;
    }
    let phase = Complex64::new(0.0, idx.k_z() * p.z + f64::from(m_eff) * p.phi).exp();
    Ok(radial * phase)
}

/// Helicity-dependent prefactors of the circular components: the mode is
/// (1/4pi) [(sk - k_z)/k G(m+1), (sk + k_z)/k G(m-1), -i sqrt(2) k_t/k G(m)].
pub(crate) fn circular_prefactors(idx: &ModeIndex) -> (f64, f64, Complex64) {
    let k = idx.k;
    let k_z = idx.k_z();
    let s = f64::from(idx.s);
    let norm = 1.0 / (4.0 * PI);
    let f_minus = norm * (s * k - k_z) / k;
    let f_plus = norm * (s * k + k_z) / k;
    let f_z = Complex64::new(0.0, -norm * std::f64::consts::SQRT_2 * idx.k_t / k);
    (f_minus, f_plus, f_z)
}

/// The dimensionless vector mode function at a point, in circular components.
pub fn mode_field(idx: &ModeIndex, p: &CylPoint) -> Result<CircularVector, ModeError> {
    let (f_minus, f_plus, f_z) = circular_prefactors(idx);
    Ok(CircularVector {
        e_minus: f_minus * kernel_g(idx, idx.m + 1, p)?,
        e_plus: f_plus * kernel_g(idx, idx.m - 1, p)?,
        e_z: f_z * kernel_g(idx, idx.m, p)?,
    })
}
