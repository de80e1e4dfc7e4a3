use strongfocus::beams::{derive_params, z_in_for_rayleigh, BeamSpec, field_exact};
use strongfocus::modes::CylPoint;
use strongfocus::numerics::QuadratureSpec;
use std::f64::consts::PI;

fn main() {
    let quad = QuadratureSpec::default();
    for &(f, w) in &[(2.5_f64, 0.405_f64), (2.5, 0.3), (5.0, 0.462), (10.0, 0.495), (100.0, 0.854)] {
        let z_r = PI * w * w;
        let z_in = z_in_for_rayleigh(f, z_r).unwrap();
        let spec = BeamSpec::gaussian(1.0, f, z_in).unwrap();
        let params = derive_params(&spec);
        println!(
            "f={f}, w={w}: z_r={:.4} z_0={:.4} z_in={:.4} k*z_in={:.1}",
            params.z_r,
            params.z_0,
            z_in,
            spec.wavenumber() * z_in
        );
        let mut best = (f64::NEG_INFINITY, 0.0);
        let mut line = String::new();
        for i in 0..=60 {
            let z = params.z_0 - 20.0 + 25.0 * i as f64 / 60.0;
            let s = field_exact(&spec, &CylPoint::on_axis(z), &quad).unwrap();
            let a = s.e_plus.norm();
            if a > best.0 {
                best = (a, z);
            }
            if i % 6 == 0 {
                line.push_str(&format!("({z:.2},{a:.3}) "));
            }
        }
        println!("  profile: {line}");
        println!("  window max |E+| = {:.4} at z = {:.3} (z-z0 = {:.3})", best.0, best.1, best.1 - params.z_0);
        // restrict to z > 0.05
        let mut bestpos = (f64::NEG_INFINITY, 0.0);
        for i in 0..=400 {
            let z = 0.05 + (params.z_0 + 5.0 - 0.05) * i as f64 / 400.0;
            let s = field_exact(&spec, &CylPoint::on_axis(z), &quad).unwrap();
            let a = s.e_plus.norm();
            if a > bestpos.0 {
                bestpos = (a, z);
            }
        }
        println!("  z>0 max |E+| = {:.4} at z = {:.3}", bestpos.0, bestpos.1);
        let power = PI * z_in / spec.wavenumber();
        let rs_max = 3.0 / (2.0 * PI) * bestpos.0 * bestpos.0 / power;
        let at_z0 = field_exact(&spec, &CylPoint::on_axis(params.z_0), &quad).unwrap().e_plus.norm();
        let rs_z0 = 3.0 / (2.0 * PI) * at_z0 * at_z0 / power;
        println!("  Rs(at z>0 max) = {rs_max:.4}, Rs(at z0) = {rs_z0:.4}");
    }
}
