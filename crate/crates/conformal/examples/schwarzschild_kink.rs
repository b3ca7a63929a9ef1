//! The kinked conformal factor inside the horizon: δ-mass of its
//! Laplacian, the curvature vector and the roots of its determinant.

use conformal::schwarzschild_interior::{determinant_roots, p_eigenvalues, u_factor, weak_delta_check, RNParams};

fn main() -> conformal::Result<()> {
    println!("{:>5} {:>5} {:>12} {:>12} {:>12}", "m", "e", "Delta U", "LB", "4D^2/m^3");
    for (m, e) in [(1.0, 0.0), (1.0, 0.6), (2.0, 1.0)] {
        let p = RNParams::new(m, e)?;
        let w = weak_delta_check(&u_factor(p), p, None)?;
        println!(
            "{m:>5} {e:>5} {:>12.8} {:>12.8} {:>12.8}",
            w.laplacian_coefficient, w.laplace_beltrami_coefficient, w.printed_laplacian
        );
    }
    let p = RNParams::schwarzschild(1.0)?;
    println!("P at r = 1, k = 2: {:?}", p_eigenvalues(p, 2.0, 1.0, 1.0)?);
    for r in determinant_roots(p).roots {
        println!("det P root k = {:>8.5} (x{})", r.k, r.multiplicity);
    }
    Ok(())
}
