//! Shared test support: an independent master-equation integrator for the
//! driven J=0 -> J=1 atom. This is the oracle the closed-form steady state
//! is checked against; it never calls into the steady-state code itself.

use num_complex::Complex64;

pub type Rho = [[Complex64; 4]; 4];

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Right-hand side of the rotating-frame master equation on the basis
/// {g, e_{-1}, e_0, e_{+1}}:
///
///   H = -Delta P_e - sum_i (C_i |e_i><g| + h.c.)
///   drho = -i [H, rho] + Gamma sum_i (s_i rho s_i^+ - 1/2 {s_i^+ s_i, rho})
fn lindblad_rhs(rho: &Rho, c: &[Complex64; 3], gamma: f64, delta: f64) -> Rho {
    let mut h = [[czero(); 4]; 4];
    for i in 0..3 {
        h[1 + i][1 + i] = Complex64::new(-delta, 0.0);
        h[1 + i][0] = -c[i];
        h[0][1 + i] = -c[i].conj();
    }

    let mut out = [[czero(); 4]; 4];
    // -i [H, rho]
    for a in 0..4 {
        for b in 0..4 {
            let mut comm = czero();
            for k in 0..4 {
                comm += h[a][k] * rho[k][b] - rho[a][k] * h[k][b];
            }
            out[a][b] = Complex64::new(0.0, -1.0) * comm;
        }
    }
    // decay: feeding of the ground state and damping of excited blocks
    let mut feed = czero();
    for i in 1..4 {
        feed += rho[i][i];
    }
    out[0][0] += gamma * feed;
    for a in 0..4 {
        for b in 0..4 {
            let excited = usize::from(a > 0) + usize::from(b > 0);
            if excited > 0 {
                out[a][b] -= 0.5 * gamma * excited as f64 * rho[a][b];
            }
        }
    }
    out
}

/// RK4 integration from the ground state to t_end (units of 1/Gamma).
pub fn integrate_master_equation(
    c: &[Complex64; 3],
    gamma: f64,
    delta: f64,
    t_end: f64,
    dt: f64,
) -> Rho {
    let mut rho = [[czero(); 4]; 4];
    rho[0][0] = Complex64::new(1.0, 0.0);
    let steps = (t_end / dt).ceil() as usize;
    let axpy = |r: &Rho, k: &Rho, s: f64| {
        let mut out = *r;
        for a in 0..4 {
            for b in 0..4 {
                out[a][b] += s * k[a][b];
            }
        }
        out
    };
    for _ in 0..steps {
        let k1 = lindblad_rhs(&rho, c, gamma, delta);
        let k2 = lindblad_rhs(&axpy(&rho, &k1, 0.5 * dt), c, gamma, delta);
        let k3 = lindblad_rhs(&axpy(&rho, &k2, 0.5 * dt), c, gamma, delta);
        let k4 = lindblad_rhs(&axpy(&rho, &k3, dt), c, gamma, delta);
        for a in 0..4 {
            for b in 0..4 {
                rho[a][b] += dt / 6.0 * (k1[a][b] + 2.0 * k2[a][b] + 2.0 * k3[a][b] + k4[a][b]);
            }
        }
    }
    rho
}
