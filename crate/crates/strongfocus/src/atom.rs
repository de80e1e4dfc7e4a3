//! A J_g = 0 -> J_e = 1 atom on the beam axis: its dipole radiation
//! pattern, the drive it picks up from the focused field, and the driven
//! steady state.
//!
//! Internal units: hbar = epsilon_0 = c = 1, lengths in units of the
//! wavelength, rates in units of the decay rate. The dipole matrix element
//! is recovered from the decay rate (Gamma = d^2 w_a^3 / 3 pi), so the one
//! free scale left is the dimensionless drive |C|/Gamma.

use crate::beams::FieldSample;
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum AtomError {
    #[error("invalid atom spec: {0}")]
    InvalidSpec(String),
}

/// Transition and placement parameters of the scatterer.
#[derive(Debug, Clone, Copy)]
pub struct AtomSpec {
    /// Resonance wavelength of the transition.
    pub wavelength_a: f64,
    /// Spontaneous decay rate of each excited sublevel.
    pub gamma: f64,
    /// Laser detuning from resonance, in the same rate units as `gamma`.
    pub detuning: f64,
    /// Position on the z axis.
    pub z_atom: f64,
}

impl AtomSpec {
    pub fn new(wavelength_a: f64, gamma: f64, detuning: f64, z_atom: f64) -> Result<Self, AtomError> {
        if !(wavelength_a > 0.0) || !wavelength_a.is_finite() {
            return Err(AtomError::InvalidSpec(format!(
                "wavelength_a must be positive, got {wavelength_a}"
            )));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(AtomError::InvalidSpec(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        if !detuning.is_finite() {
            return Err(AtomError::InvalidSpec("detuning must be finite".into()));
        }
        Ok(Self {
            wavelength_a,
            gamma,
            detuning,
            z_atom,
        })
    }

    pub fn resonance_frequency(&self) -> f64 {
        TAU / self.wavelength_a
    }

    /// Reduced dipole matrix element from Gamma = d^2 w_a^3 / (3 pi).
    pub fn dipole_moment(&self) -> f64 {
        (3.0 * PI * self.gamma / self.resonance_frequency().powi(3)).sqrt()
    }

    /// Amplitude of the radiated dipole field, w_a^2 d / 4 pi. The source
    /// prefactor is evaluated at the atomic resonance; for the weak
    /// on-resonance drives studied here the laser and atomic frequencies
    /// coincide anyway.
    pub fn dipole_field_prefactor(&self) -> f64 {
        let w = self.resonance_frequency();
        w * w * self.dipole_moment() / (4.0 * PI)
    }

    /// The far-field source expression is only valid well away from the
    /// atom.
    pub fn far_field_ok(&self, distance: f64) -> bool {
        distance >= 10.0 * self.wavelength_a
    }
}

/// Unit polarization vectors of the three transitions, u_{-1} = eps_minus,
/// u_0 = z, u_{+1} = -eps_plus, as Cartesian components.
pub fn transition_axis(i: i32) -> [Complex64; 3] {
    let s = FRAC_1_SQRT_2;
    match i {
        -1 => [
            Complex64::new(s, 0.0),
            Complex64::new(0.0, -s),
            Complex64::new(0.0, 0.0),
        ],
        0 => [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ],
        1 => [
            Complex64::new(-s, 0.0),
            Complex64::new(0.0, -s),
            Complex64::new(0.0, 0.0),
        ],
        other => panic!("polarization index must be -1, 0 or +1, got {other}"),
    }
}

/// Far-field dipole radiation pattern of transition `i` at displacement `r`
/// from the atom (Cartesian): (w^2 d / 4 pi) [u_i - (u_i . rhat) rhat] / r.
/// The retardation phase exp(ik|r|) is applied by the caller together with
/// the steady-state coherence.
pub fn dipole_field(atom: &AtomSpec, i: i32, r: [f64; 3]) -> [Complex64; 3] {
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    assert!(norm > 0.0, "dipole_field is singular at the atom position");
    let rhat = [r[0] / norm, r[1] / norm, r[2] / norm];
    let u = transition_axis(i);
    let u_dot_r = u[0] * rhat[0] + u[1] * rhat[1] + u[2] * rhat[2];
    let scale = atom.dipole_field_prefactor() / norm;
    [
        (u[0] - u_dot_r * rhat[0]) * scale,
        (u[1] - u_dot_r * rhat[1]) * scale,
        (u[2] - u_dot_r * rhat[2]) * scale,
    ]
}

/// Drive amplitudes C_i = alpha d_i* . F(r_atom), indexed i = -1, 0, +1.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DriveCoefficients {
    c: [Complex64; 3],
}

impl DriveCoefficients {
    pub fn from_components(c_minus1: Complex64, c_0: Complex64, c_plus1: Complex64) -> Self {
        Self {
            c: [c_minus1, c_0, c_plus1],
        }
    }

    pub fn get(&self, i: i32) -> Complex64 {
        self.c[(i + 1) as usize]
    }

    pub fn components(&self) -> [Complex64; 3] {
        self.c
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Project the beam field at the atom onto the three transition dipoles.
/// In circular components: C_{+1} = -alpha d E_plus, C_0 = alpha d E_z,
/// C_{-1} = alpha d E_minus.
pub fn drive_coefficients(
    atom: &AtomSpec,
    field_at_atom: &FieldSample,
    alpha: Complex64,
) -> DriveCoefficients {
    let d = atom.dipole_moment();
    DriveCoefficients {
        c: [
            alpha * d * field_at_atom.e_minus,
            alpha * d * field_at_atom.e_z,
            -alpha * d * field_at_atom.e_plus,
        ],
    }
}

/// Steady-state density-matrix blocks in the rotating frame. The coherence
/// is stored without its exp(-i w_0 t) factor; consumers pair it with the
/// conjugate laser phase so the time dependence drops out.
#[derive(Debug, Clone)]
pub struct SteadyState {
    pub sigma_gg: f64,
    pub sigma_ee: [[Complex64; 3]; 3],
    pub sigma_eg: [Complex64; 3],
}

impl SteadyState {
    pub fn excited_population(&self) -> f64 {
        (0..3).map(|i| self.sigma_ee[i][i].re).sum()
    }
}

type CMat = [[Complex64; 3]; 3];

fn zero_mat() -> CMat {
    [[Complex64::new(0.0, 0.0); 3]; 3]
}

fn mat_mul(a: &CMat, b: &CMat) -> CMat {
    let mut out = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, row) in b.iter().enumerate() {
                acc += a[i][k] * row[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat_vec(a: &CMat, v: &[Complex64; 3]) -> [Complex64; 3] {
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i] += a[i][j] * v[j];
        }
    }
    out
}

fn trace(a: &CMat) -> Complex64 {
    a[0][0] + a[1][1] + a[2][2]
}

/// Inverse by the adjugate; fine for well-conditioned 3x3 systems, and
/// M1 + M2 + 1 here has eigenvalues >= 1 by construction.
fn mat_inv(a: &CMat) -> Option<CMat> {
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if det.norm() < 1e-300 {
        return None;
    }
    let inv_det = det.inv();
    let mut out = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            // transposed cofactor
            out[j][i] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) * inv_det;
        }
    }
    Some(out)
}

/// Driven, damped steady state: with M1 = C C^dag / (Gamma (Gamma/2 + i Delta)),
/// M2 its conjugate-denominator twin and M = (M1 + M2)(M1 + M2 + 1)^{-1},
///
/// sigma_gg = 1 / (1 + Tr M), sigma_ee = sigma_gg M,
/// sigma_eg = i (sigma_gg C - sigma_ee C) / (Gamma/2 - i Delta).
pub fn steady_state(drive: &DriveCoefficients, gamma: f64, detuning: f64) -> SteadyState {
    assert!(gamma > 0.0, "decay rate must be positive");
    let c = drive.c;
    let mut outer = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            outer[i][j] = c[i] * c[j].conj();
        }
    }
    let d1 = Complex64::new(gamma / 2.0, detuning) * gamma;
    let d2 = Complex64::new(gamma / 2.0, -detuning) * gamma;
    let mut sum = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            sum[i][j] = outer[i][j] / d1 + outer[i][j] / d2;
        }
    }
    let mut sum_plus_one = sum;
    for (i, row) in sum_plus_one.iter_mut().enumerate() {
        row[i] += 1.0;
    }
    let inv = mat_inv(&sum_plus_one).expect("M1 + M2 + 1 has eigenvalues >= 1, always invertible");
    let m = mat_mul(&sum, &inv);

    let sigma_gg = 1.0 / (1.0 + trace(&m).re);
    let mut sigma_ee = zero_mat();
    for i in 0..3 {
        for j in 0..3 {
            sigma_ee[i][j] = m[i][j] * sigma_gg;
        }
    }
    let ee_c = mat_vec(&sigma_ee, &c);
    let denom = Complex64::new(gamma / 2.0, -detuning);
    let i_unit = Complex64::new(0.0, 1.0);
    let mut sigma_eg = [Complex64::new(0.0, 0.0); 3];
    for i in 0..3 {
        sigma_eg[i] = i_unit * (sigma_gg * c[i] - ee_c[i]) / denom;
    }

    SteadyState {
        sigma_gg,
        sigma_ee,
        sigma_eg,
    }
}
