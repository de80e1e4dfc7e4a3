use strongfocus::atom::AtomSpec;
use strongfocus::beams::{z_in_for_rayleigh, BeamSpec, ExactBeam, ParaxialBeam};
use strongfocus::numerics::QuadratureSpec;
use strongfocus::scatter::{angular_sweep, PositionPolicy, Scene};
use std::f64::consts::PI;
use std::time::Instant;

fn main() {
    let quad = QuadratureSpec::default();
    let atom = AtomSpec::new(1.0, 1.0, 0.0, 0.0).unwrap();

    let t0 = Instant::now();
    println!("== exact beam, f = 500: K(w), g2_fwd(w), Rs(w) ==");
    for &w in &[0.1_f64, 0.3, 1.0, 1.628, 3.0, 6.0] {
        let z_r = PI * w * w;
        let z_in = z_in_for_rayleigh(500.0, z_r).unwrap();
        let spec = BeamSpec::gaussian(1.0, 500.0, z_in).unwrap();
        let scene = Scene::new(
            Box::new(ExactBeam::new(spec, quad)),
            atom,
            PositionPolicy::AtOnAxisMax,
            1e-3,
        )
        .unwrap();
        let k = scene.k_ratio(50.0).unwrap();
        let g2 = scene
            .g2_zero_delay(&strongfocus::scatter::FarFieldPoint::forward(50.0))
            .unwrap();
        let rs = scene.scattering_ratio().unwrap();
        let zshift = scene.atom().z_atom - scene.source().params().z_0;
        println!(
            "w={w:6.3} z_r={z_r:8.4} z_in={z_in:12.1} |F_a|={:8.2} K={k:12.2} g2={g2:.6} Rs={rs:.5} shift={zshift:8.3}",
            scene.field_at_atom().norm_sqr().sqrt()
        );
    }
    println!("t = {:?}", t0.elapsed());

    println!("== paraxial g2_fwd(w), f = 500 ==");
    for &w in &[0.03_f64, 0.05, 0.07, 0.1, 0.15, 0.2, 0.25, 0.28, 0.3, 0.35, 0.39, 0.45, 0.6, 1.0, 6.0] {
        let z_r = PI * w * w;
        let z_in = z_in_for_rayleigh(500.0, z_r).unwrap();
        let spec = BeamSpec::gaussian(1.0, 500.0, z_in).unwrap();
        let scene = Scene::new(
            Box::new(ParaxialBeam::new(spec).unwrap()),
            atom,
            PositionPolicy::AtOnAxisMax,
            1e-3,
        )
        .unwrap();
        let k = scene.k_ratio(50.0);
        let g2 = scene
            .g2_zero_delay(&strongfocus::scatter::FarFieldPoint::forward(50.0))
            .unwrap();
        println!("w={w:6.3} K={:14.4e} g2={g2:14.6e}", k.map(|v| v).unwrap_or(f64::NAN));
    }

    println!("== angular sweep, exact, Fig3 params (f=500, z_in=3e4) ==");
    let t0 = Instant::now();
    let spec = BeamSpec::gaussian(1.0, 500.0, 3.0e4).unwrap();
    let scene = Scene::new(
        Box::new(ExactBeam::new(spec, quad)),
        atom,
        PositionPolicy::AtOnAxisMax,
        1e-3,
    )
    .unwrap();
    let angles: Vec<f64> = (0..=100).map(|i| 0.5 * PI * i as f64 / 100.0).collect();
    let sweep = angular_sweep(&scene, 50.0, &angles).unwrap();
    for s in sweep.iter().step_by(10) {
        println!(
            "phi/pi={:5.3} I_L={:12.5e} I_d={:12.5e} I_int={:12.5e} g2={:10.4}",
            s.polar_angle / PI,
            s.breakdown.laser,
            s.breakdown.dipole,
            s.breakdown.interference,
            s.g2
        );
    }
    let max_g2 = sweep.iter().cloned().reduce(|a, b| if a.g2 > b.g2 { a } else { b }).unwrap();
    println!("max g2 = {:.3} at phi/pi = {:.3}", max_g2.g2, max_g2.polar_angle / PI);
    println!("sweep t = {:?}", t0.elapsed());

    println!("== Rs sweep over f (max over w) ==");
    let t0 = Instant::now();
    for &f in &[2.5_f64, 5.0, 10.0, 100.0, 500.0, 1000.0] {
        let w_max = (f / (2.0 * PI)).sqrt() * 0.98;
        let mut best = (0.0_f64, 0.0_f64);
        for i in 0..25 {
            let w = 0.05 + (w_max - 0.05) * i as f64 / 24.0;
            let z_r = PI * w * w;
            let z_in = z_in_for_rayleigh(f, z_r).unwrap();
            let spec = BeamSpec::gaussian(1.0, f, z_in).unwrap();
            let scene = Scene::new(
                Box::new(ExactBeam::new(spec, quad)),
                atom,
                PositionPolicy::AtOnAxisMax,
                1e-3,
            )
            .unwrap();
            let rs = scene.scattering_ratio().unwrap();
            if rs > best.0 {
                best = (rs, w);
            }
        }
        println!("f={f:7.1}: max Rs = {:.4} at w = {:.3}", best.0, best.1);
    }
    println!("t = {:?}", t0.elapsed());
}
