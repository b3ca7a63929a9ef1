//! Conformal invariance of the quadratic form, the Einstein–Hilbert
//! comparison and the physical constants.

use std::sync::Arc;

use conformal::constants::PhysicalConstants;
use conformal::models;
use conformal::yamabe_action::{
    cosmological_estimate, curvature_norm, einstein_hilbert_equiv, planck_frequency, yamabe_functional_fn,
};

fn main() -> conformal::Result<()> {
    let k = PhysicalConstants::codata2018();
    let s = models::sphere4(1.0, 48)?;
    let f = |x: f64| 1.0 + 0.2 * x.cos();
    let u = |x: f64| 1.0 + 0.3 * x.cos();
    let y = yamabe_functional_fn(&s, &f)?;
    let y_u = yamabe_functional_fn(&s.conformal(Arc::new(u))?, &|x| f(x) / u(x))?;
    println!("Y[g, f] = {y:.12}\nY[u^2 g, f/u] = {y_u:.12}");

    let eq = einstein_hilbert_equiv(&s, &k)?;
    println!("E/hbar = {:.6e}  Y[g, gamma] = {:.6e}", eq.eh_over_hbar, eq.yamabe_at_gamma);

    println!("||R||_2 = {:.10}, after g -> 9g {:.10}", curvature_norm(&s, 2.0)?, curvature_norm(&s.scaled(9.0), 2.0)?);
    println!("Planck frequency {:.4e} Hz", planck_frequency(&k));
    println!("Lambda * age^2 = {}", cosmological_estimate(1e-35, 4e17)?);
    Ok(())
}
