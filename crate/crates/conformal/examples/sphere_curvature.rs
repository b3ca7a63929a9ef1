//! Scalar curvature of round spheres and of a conformal deformation,
//! by finite differences and by the transformation law.

use std::sync::Arc;

use conformal::curvature::{conformal_scalar, scalar_curvature_fd};
use conformal::models;

fn main() -> conformal::Result<()> {
    for a in [1.0, 2.0] {
        let s = models::sphere4(a, 24)?;
        let r = scalar_curvature_fd(&s)?;
        let mid = r.samples[r.samples.len() / 2];
        println!("S^4 radius {a}: R = {mid:.9} (closed form {})", 12.0 / (a * a));
    }

    let s = models::sphere4(1.0, 24)?;
    let u = |x: f64| 1.0 + 0.3 * x.cos();
    let law = conformal_scalar(&s, &u)?;
    let direct = scalar_curvature_fd(&s.conformal(Arc::new(u))?)?;
    println!("{:>8} {:>14} {:>14}", "chi", "law", "direct");
    for i in (0..law.points.len()).step_by(4) {
        println!("{:>8.4} {:>14.8} {:>14.8}", law.points[i], law.samples[i], direct.samples[i]);
    }
    Ok(())
}
