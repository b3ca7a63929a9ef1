//! Radial fall to the origin with and without the conformal factor.

use conformal::schwarzschild_interior::{classical_fall_time, radial_geodesic, u_factor, ConformalProfile, RNParams};

fn main() -> conformal::Result<()> {
    let p = RNParams::schwarzschild(1.0)?;
    let plain = radial_geodesic(p, &ConformalProfile::constant(p), 0.0, 1.9, 1e-5)?;
    println!("classical: tau = {:.10} (closed form {:.10})", plain.proper_time.unwrap_or(f64::NAN), classical_fall_time(1.0, 1.9));
    for b in [0.0, 0.5, 1.0, 4.0] {
        let g = radial_geodesic(p, &u_factor(p), b, 1.9, 1e-5)?;
        println!(
            "b = {b}: tau = {:?}, small-r ratio {:.6}, turning point {:?}",
            g.proper_time, g.asymptotic_ratio, g.turning_point
        );
    }
    Ok(())
}
