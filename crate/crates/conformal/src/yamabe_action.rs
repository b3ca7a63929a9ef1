//! The conformally invariant quadratic form, its relation to the
//! Einstein–Hilbert action, and the scale-free curvature norms.
//!
//! ```text
//! Y[g, f] = ½ ∫ ( |df|²_g + ¼ (n−2)/(n−1) R(g) f² ) dvol_g
//! ```
//!
//! `f` is the function attached to a density `φ` of weight `n/2 − 1` by
//! `f = φ / |det g|^{(n−2)/4n}`. On closed manifolds
//! `Y[u^{4/(n−2)} g, u^{-1} f] = Y[g, f]`.

use serde::{Deserialize, Serialize};

use crate::constants::{Dimension, PhysicalConstants};
use crate::curvature::scalar_curvature;
use crate::error::{Error, Result};
use crate::metric::Geometry;

/// `¼ (n−2)/(n−1)`.
pub fn conformal_coupling(n: usize) -> f64 {
    0.25 * (n as f64 - 2.0) / (n as f64 - 1.0)
}

/// `Y[g, f]` for a function of the axis coordinate.
pub fn yamabe_functional_fn(geom: &Geometry, f: &dyn Fn(f64) -> f64) -> Result<f64> {
    let n = geom.dim();
    if n < 3 {
        return Err(Error::Dimension(n));
    }
    let r = scalar_curvature(geom)?;
    let axis = geom.axis();
    let k = conformal_coupling(n);
    let samples = geom
        .grid()
        .points()
        .iter()
        .zip(&r.samples)
        .map(|(&x, rg)| {
            let g = geom.metric().checked_components_at(&geom.point(x))?;
            let fx = f(x);
            let df = geom.derivative(f, x);
            Ok(df * df / g[axis] + k * rg * fx * fx)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(0.5 * geom.integrate_dvol(&samples)?)
}

/// The function `f = φ / |det g|^{(n−2)/4n}` of a density profile `φ`
/// (coordinate values of a weight `n/2 − 1` density along the axis).
pub fn density_to_function<'a>(geom: &'a Geometry, phi: &'a dyn Fn(f64) -> f64) -> impl Fn(f64) -> f64 + 'a {
    let n = geom.dim() as f64;
    let e = (n - 2.0) / (4.0 * n);
    move |x| phi(x) / geom.metric().determinant_at(&geom.point(x)).abs().powf(e)
}

/// `Y[g, φ]` for a density profile of weight `n/2 − 1`.
pub fn yamabe_functional(geom: &Geometry, phi: &dyn Fn(f64) -> f64) -> Result<f64> {
    let f = density_to_function(geom, phi);
    yamabe_functional_fn(geom, &f)
}

/// The two legs of the Einstein–Hilbert / Yamabe comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// `ℰ = ½ κ^{-1} ∫ R dvol`.
    pub einstein_hilbert: f64,
    /// `ħ^{-1} ℰ`.
    pub eh_over_hbar: f64,
    /// `Y[g, γ(g)]`.
    pub yamabe_at_gamma: f64,
    /// `|ħ^{-1}ℰ − Y| / max(1, |ħ^{-1}ℰ|)`.
    pub relative_gap: f64,
    /// `Y / (ħ^{-1}ℰ)` when `ℰ ≠ 0`.
    pub normalization: Option<f64>,
}

/// The constant value of the function attached to `γ(g)`:
/// `((n−2) G h / (n−1))^{-1/2}`.
pub fn gamma_constant(n: usize, k: &PhysicalConstants) -> f64 {
    let nf = n as f64;
    ((nf - 2.0) / (nf - 1.0) * k.g.value * k.h.value).powf(-0.5)
}

/// Compare `ħ^{-1} ℰ(g)` with `Y[g, γ(g)]` on a closed geometry.
pub fn einstein_hilbert_equiv(geom: &Geometry, k: &PhysicalConstants) -> Result<EquivalenceReport> {
    if !geom.grid().is_closed() {
        return Err(Error::Boundary("the comparison needs a closed manifold".into()));
    }
    let n = geom.dim();
    let r = scalar_curvature(geom)?;
    let total = geom.integrate_dvol(&r.samples)?;
    let eh = 0.5 / k.kappa() * total;
    let eh_over_hbar = eh / k.hbar();
    let n_f = n as f64;
    let c = gamma_constant(n, k);
    // γ is the density c·|det g|^{(n−2)/4n}; its function is the constant c
    let e = (n_f - 2.0) / (4.0 * n_f);
    let gamma = |x: f64| c * geom.metric().determinant_at(&geom.point(x)).abs().powf(e);
    let y = yamabe_functional(geom, &gamma)?;
    let relative_gap = (eh_over_hbar - y).abs() / eh_over_hbar.abs().max(1.0);
    let normalization = (eh_over_hbar != 0.0).then(|| y / eh_over_hbar);
    Ok(EquivalenceReport { einstein_hilbert: eh, eh_over_hbar, yamabe_at_gamma: y, relative_gap, normalization })
}

/// The Lagrange-multiplier term `Λ(‖γ‖^{2n/(n−2)} − 1)` with
/// `‖γ‖ = (∫ |γ|^{2n/(n−2)})^{(n−2)/2n}` (coordinate integral of a weight-n density).
pub fn dilaton_constraint(geom: &Geometry, gamma: &dyn Fn(f64) -> f64, lambda: f64) -> Result<f64> {
    let n = geom.dim() as f64;
    let p = 2.0 * n / (n - 2.0);
    let samples: Vec<f64> = geom.grid().points().iter().map(|&x| gamma(x).abs().powf(p)).collect();
    Ok(lambda * (geom.grid().integrate(&samples) - 1.0))
}

/// `(3c⁵ / 2Gh)^{1/2}` in Hz.
pub fn planck_frequency(k: &PhysicalConstants) -> f64 {
    (3.0 * k.c.value.powi(5) / (2.0 * k.g.value * k.h.value)).sqrt()
}

/// Unit of `3c⁵ / 2Gh`.
pub fn planck_frequency_squared_dimension(k: &PhysicalConstants) -> Dimension {
    k.c.dim.powi(5) / (k.g.dim * k.h.dim)
}

/// `[∫ |R|^p dvol]^{1/p}`; fails with [`Error::Divergence`] if halving the
/// resolution moves the value by more than `1e-3` relative.
pub fn curvature_norm(geom: &Geometry, p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!("exponent {p} must be positive")));
    }
    let fine = norm_on(geom, p)?;
    let coarse = norm_on(&geom.with_grid(std::sync::Arc::new(geom.grid().coarsened()?)), p)?;
    if (fine - coarse).abs() > 1e-3 * fine.abs().max(1e-300) && fine != coarse {
        return Err(Error::Divergence(format!(
            "curvature norm not converged under refinement: {coarse} vs {fine}"
        )));
    }
    Ok(fine)
}

fn norm_on(geom: &Geometry, p: f64) -> Result<f64> {
    let r = scalar_curvature(geom)?;
    let pw: Vec<f64> = r.samples.iter().map(|v| v.abs().powf(p)).collect();
    let v = geom.integrate_dvol(&pw)?;
    if !v.is_finite() {
        return Err(Error::Divergence("non-finite curvature integral".into()));
    }
    Ok(v.powf(1.0 / p))
}

/// Both sides of `‖R‖_{n/2} ≥ ‖R f²‖_1 ‖f‖^{-2}_{2n/(n−2)}` and the
/// length scaling of `‖f‖_{2n/(n−2)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachBound {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub f_norm: f64,
    /// `‖f‖` measured in `ρ^{4/(n−2)} g`.
    pub f_norm_rescaled: f64,
    pub rho: f64,
    /// `|f_norm_rescaled / (ρ f_norm) − 1|`.
    pub scaling_error: f64,
}

pub fn mach_bound_report(geom: &Geometry, f: &dyn Fn(f64) -> f64, rho: f64) -> Result<MachBound> {
    let n = geom.dim() as f64;
    for &x in geom.grid().points() {
        if !(f(x) > 0.0) {
            return Err(Error::Positivity { location: format!("axis coordinate {x}") });
        }
    }
    let q = 2.0 * n / (n - 2.0);
    let lhs = norm_on(geom, n / 2.0)?;
    let r = scalar_curvature(geom)?;
    let pts = geom.grid().points();
    let rf2: Vec<f64> = pts.iter().zip(&r.samples).map(|(&x, rg)| (rg * f(x) * f(x)).abs()).collect();
    let fq: Vec<f64> = pts.iter().map(|&x| f(x).powf(q)).collect();
    let f_norm = geom.integrate_dvol(&fq)?.powf(1.0 / q);
    let rhs = geom.integrate_dvol(&rf2)? / (f_norm * f_norm);
    let scaled = geom.scaled(rho.powf(4.0 / (n - 2.0)));
    let f_norm_rescaled = scaled.integrate_dvol(&fq)?.powf(1.0 / q);
    Ok(MachBound {
        lhs,
        rhs,
        holds: lhs >= rhs * (1.0 - 1e-12),
        f_norm,
        f_norm_rescaled,
        rho,
        scaling_error: (f_norm_rescaled / (rho * f_norm) - 1.0).abs(),
    })
}

/// `Λ · age²`, the dimensionless size of the cosmological bound.
pub fn cosmological_estimate(lambda: f64, age: f64) -> Result<f64> {
    if !(lambda >= 0.0) || !(age > 0.0) {
        return Err(Error::Domain(format!("need Λ ≥ 0 and age > 0, got {lambda}, {age}")));
    }
    Ok(lambda * age * age)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planck_frequency_value() {
        let f = planck_frequency(&PhysicalConstants::codata2018());
        assert!((f / 9.07e42 - 1.0).abs() < 5e-3, "{f:e}");
    }

    #[test]
    fn cosmological_numbers() {
        assert!((cosmological_estimate(1e-35, 4e17).unwrap() - 1.6).abs() < 1e-12);
        assert_eq!(cosmological_estimate(0.0, 4e17).unwrap(), 0.0);
        assert!(cosmological_estimate(1e-35, -1.0).is_err());
    }
}
