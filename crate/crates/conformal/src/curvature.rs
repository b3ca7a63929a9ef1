//! Scalar curvature, the conformal transformation law and the radial
//! Laplacian of the Reissner–Nordström family.
//!
//! For `ḡ = u^{4/(n−2)} g` with `u > 0`
//!
//! ```text
//! R(ḡ) = u^{-(n+2)/(n−2)} ( −4(n−1)/(n−2) Δ_g u + R(g) u ),   Δ = div grad
//! ```

use serde::{Deserialize, Serialize};

use crate::diff;
use crate::error::{Error, Result};
use crate::metric::{DiagonalMetric, Geometry, PointFn};

/// Ratio of the radial operator `2 r^{-2} (q f')'` to the Laplace–Beltrami
/// operator of `diag(q/r², −r²/q, −r², −r² sin²φ)` on radial functions,
/// which is `−r^{-2} (q f')'`.
pub const RADIAL_LAPLACIAN_NORMALIZATION: f64 = -2.0;

/// `∫ R dvol = WEYL_BRACKET_SIGN · ∫ g^{ik}(Γ^s_{ts}Γ^t_{ik} − Γ^s_{it}Γ^t_{sk}) dvol`
/// on closed manifolds, with the curvature sign fixed in [`crate::metric`].
pub const WEYL_BRACKET_SIGN: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurvatureMethod {
    Analytic,
    FiniteDifference,
    ConformalLaw,
}

/// Scalar curvature sampled at the nodes of a geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub points: Vec<f64>,
    pub samples: Vec<f64>,
    pub method: CurvatureMethod,
}

impl CurvatureReport {
    pub fn max_abs_deviation(&self, value: f64) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max((s - value).abs()))
    }
}

/// Scalar curvature at every node, closed form when the metric has one.
pub fn scalar_curvature(geom: &Geometry) -> Result<CurvatureReport> {
    if geom.metric().has_analytic_scalar() {
        geom.sqrt_det()?;
        let samples = nodes(geom).map(|x| geom.metric().scalar_curvature_at(&geom.point(x), 0.0)).collect();
        return Ok(CurvatureReport { points: geom.grid().points().to_vec(), samples, method: CurvatureMethod::Analytic });
    }
    scalar_curvature_fd(geom)
}

/// Scalar curvature at every node by nested finite differences.
pub fn scalar_curvature_fd(geom: &Geometry) -> Result<CurvatureReport> {
    geom.sqrt_det()?;
    let samples = nodes(geom)
        .map(|x| {
            let r = geom.metric().scalar_curvature_fd_at(&geom.point(x), geom.step_at(x));
            finite(r, x)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(CurvatureReport { points: geom.grid().points().to_vec(), samples, method: CurvatureMethod::FiniteDifference })
}

fn nodes(geom: &Geometry) -> impl Iterator<Item = f64> + '_ {
    geom.grid().points().iter().copied()
}

fn finite(v: f64, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Singularity { location: format!("axis coordinate {x}") })
    }
}

/// Laplace–Beltrami of a function of the axis coordinate, at every node.
pub fn laplace_beltrami(geom: &Geometry, f: &dyn Fn(f64) -> f64) -> Result<Vec<f64>> {
    geom.sqrt_det()?;
    let axis = geom.axis();
    let g = |p: &[f64]| f(p[axis]);
    nodes(geom)
        .map(|x| finite(geom.metric().laplacian_at(&g, &geom.point(x), geom.step_at(x)), x))
        .collect()
}

/// The radial operator `2 r^{-2} (q f')'` of the `q`-form metrics.
///
/// This is [`RADIAL_LAPLACIAN_NORMALIZATION`] times the Laplace–Beltrami
/// operator of `diag(q/r², −r²/q, −r², −r² sin²φ)`.
pub fn laplace_beltrami_radial(q: &dyn Fn(f64) -> f64, f: &dyn Fn(f64) -> f64, r: f64, h: f64) -> Result<f64> {
    if r == 0.0 {
        return Err(Error::Singularity { location: "r = 0".into() });
    }
    let flux = |s: f64| q(s) * diff::d1(f, s, h);
    finite(2.0 / (r * r) * diff::d1(flux, r, h), r)
}

/// Fail with [`Error::Symmetry`] if `f` changes when the coordinates other
/// than the axis move away from the base point.
pub fn ensure_radial(geom: &Geometry, f: &PointFn, tol: f64) -> Result<()> {
    let shifts = [0.13, -0.27, 0.41];
    for &x in geom.grid().points() {
        let p = geom.point(x);
        let f0 = f(&p);
        for k in (0..geom.dim()).filter(|&k| k != geom.axis()) {
            for s in shifts {
                let mut q = p.clone();
                q[k] += s;
                if (f(&q) - f0).abs() > tol * f0.abs().max(1.0) {
                    return Err(Error::Symmetry(format!("varies along coordinate {k} at axis value {x}")));
                }
            }
        }
    }
    Ok(())
}

/// `R(u^{4/(n−2)} g)` at every node through the transformation law.
pub fn conformal_scalar(geom: &Geometry, u: &dyn Fn(f64) -> f64) -> Result<CurvatureReport> {
    let n = geom.dim();
    if n < 3 {
        return Err(Error::Dimension(n));
    }
    positive_on_nodes(geom, u)?;
    let nf = n as f64;
    let r = scalar_curvature(geom)?;
    let lap = laplace_beltrami(geom, u)?;
    let samples = nodes(geom)
        .zip(r.samples.iter().zip(&lap))
        .map(|(x, (rg, du))| {
            let ux = u(x);
            ux.powf(-(nf + 2.0) / (nf - 2.0)) * (-4.0 * (nf - 1.0) / (nf - 2.0) * du + rg * ux)
        })
        .collect();
    Ok(CurvatureReport { points: geom.grid().points().to_vec(), samples, method: CurvatureMethod::ConformalLaw })
}

fn positive_on_nodes(geom: &Geometry, u: &dyn Fn(f64) -> f64) -> Result<()> {
    for x in nodes(geom) {
        if !(u(x) > 0.0) {
            return Err(Error::Positivity { location: format!("axis coordinate {x}") });
        }
    }
    Ok(())
}

/// Diagonal of `P^i_k = u^{2n/(n−2)} (R^i_k(ḡ) − u^{-4/(n−2)} R^i_k(g))`
/// for `ḡ = u^{4/(n−2)} g`, at axis coordinate `x`.
///
/// With `ḡ = e^{2w} g`, `w = 2/(n−2) log u`:
///
/// ```text
/// P^i_k = u² [ −(n−2)(∇^i∇_k w − ∇^i w ∇_k w) − δ^i_k (Δw + (n−2)|∇w|²) ]
/// ```
pub fn conformal_ricci_p_at(metric: &DiagonalMetric, axis: usize, base: &[f64], u: &dyn Fn(f64) -> f64, x: f64, h: f64) -> Result<Vec<f64>> {
    let n = metric.dim();
    if n < 3 {
        return Err(Error::Dimension(n));
    }
    let ux = u(x);
    if !(ux > 0.0) {
        return Err(Error::Positivity { location: format!("axis coordinate {x}") });
    }
    let mut p = base.to_vec();
    p[axis] = x;
    let g = metric.checked_components_at(&p)?;
    let gam = metric.christoffel_at(&p, h);
    let c = 2.0 / (n as f64 - 2.0);
    let w = |s: f64| c * u(s).ln();
    let w1 = diff::d1(w, x, h);
    let w2 = diff::d2(w, x, h);
    // Hess_ik w = ∂_i∂_k w − Γ^a_{ik} w'  (a = axis)
    for i in 0..n {
        for k in 0..n {
            if i != k && (gam.get(axis, i, k) * w1).abs() > 1e-9 * (1.0 + w1.abs()) {
                return Err(Error::UnsupportedForm(format!("Hessian has off-diagonal entry ({i}, {k})")));
            }
        }
    }
    let hess: Vec<f64> = (0..n)
        .map(|i| {
            let second = if i == axis { w2 } else { 0.0 };
            second - gam.get(axis, i, i) * w1
        })
        .collect();
    let mixed: Vec<f64> = (0..n).map(|i| hess[i] / g[i]).collect();
    let lap: f64 = mixed.iter().sum();
    let grad2 = w1 * w1 / g[axis];
    let nm2 = n as f64 - 2.0;
    Ok((0..n)
        .map(|i| {
            let gw = if i == axis { w1 * w1 / g[axis] } else { 0.0 };
            ux * ux * (-nm2 * (mixed[i] - gw) - (lap + nm2 * grad2))
        })
        .collect())
}

/// [`conformal_ricci_p_at`] at every node of a geometry.
pub fn conformal_ricci_p(geom: &Geometry, u: &dyn Fn(f64) -> f64) -> Result<Vec<Vec<f64>>> {
    nodes(geom)
        .map(|x| conformal_ricci_p_at(geom.metric(), geom.axis(), geom.base(), u, x, geom.step_at(x)))
        .collect()
}

/// The first-order action `∫ g^{ik}(Γ^s_{ts}Γ^t_{ik} − Γ^s_{it}Γ^t_{sk}) dvol`.
pub fn weyl_bracket_integral(geom: &Geometry) -> Result<f64> {
    if !geom.grid().is_closed() {
        return Err(Error::Boundary("the first-order action needs a closed grid".into()));
    }
    let n = geom.dim();
    let samples = nodes(geom)
        .map(|x| {
            let p = geom.point(x);
            let g = geom.metric().checked_components_at(&p)?;
            let gam = geom.metric().christoffel_at(&p, geom.step_at(x));
            let mut s = 0.0;
            for i in 0..n {
                let mut b = 0.0;
                for t in 0..n {
                    b += gam.trace(t) * gam.get(t, i, i);
                    for sidx in 0..n {
                        b -= gam.get(sidx, i, t) * gam.get(t, sidx, i);
                    }
                }
                s += b / g[i];
            }
            Ok(s)
        })
        .collect::<Result<Vec<f64>>>()?;
    geom.integrate_dvol(&samples)
}

/// `WEYL_BRACKET_SIGN · ∫ bracket dvol`, equal to `∫ R dvol` on closed manifolds.
pub fn weyl_action(geom: &Geometry) -> Result<f64> {
    Ok(WEYL_BRACKET_SIGN * weyl_bracket_integral(geom)?)
}

/// Both sides of `∫ R(g) dvol_g = ∫ (φ² R(ḡ) + 4(n−1)/(n−2) |dφ|²_ḡ) dⁿx`
/// for `(ḡ, φ)` the unimodular part and density of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralIdentity {
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs − rhs| / max(1, |lhs|)`.
    pub relative_gap: f64,
}

/// Check the integral identity on a closed grid (integration by parts
/// leaves no boundary term only there).
pub fn yamabe_integral_identity(geom: &Geometry) -> Result<IntegralIdentity> {
    if !geom.grid().is_closed() {
        return Err(Error::Boundary("the integral identity needs a closed grid".into()));
    }
    let n = geom.dim();
    if n < 3 {
        return Err(Error::Dimension(n));
    }
    let nf = n as f64;
    let lhs = geom.integrate_dvol(&scalar_curvature_fd(geom)?.samples)?;
    let unimodular = Geometry::new(geom.metric().unimodular(), geom.grid().clone(), geom.axis(), geom.base().to_vec())?;
    let r_bar = scalar_curvature_fd(&unimodular)?.samples;
    let e = (nf - 2.0) / (4.0 * nf);
    let phi = |x: f64| geom.metric().determinant_at(&geom.point(x)).abs().powf(e);
    let c = 4.0 * (nf - 1.0) / (nf - 2.0);
    let axis = geom.axis();
    let samples = nodes(geom)
        .zip(&r_bar)
        .map(|(x, rb)| {
            let gbar = unimodular.metric().checked_components_at(&unimodular.point(x))?;
            let p = phi(x);
            let dp = geom.derivative(&phi, x);
            Ok(p * p * rb + c * dp * dp / gbar[axis])
        })
        .collect::<Result<Vec<f64>>>()?;
    let rhs = geom.grid().integrate(&samples);
    Ok(IntegralIdentity { lhs, rhs, relative_gap: (lhs - rhs).abs() / lhs.abs().max(1.0) })
}

/// Both sides of `|d(e^{iθ}χ)|² = χ²|dθ|² + |dχ|²` at one node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoldstoneReport {
    /// Largest residual with `d(e^{iθ}χ)` formed from the jets of χ and θ.
    pub algebraic_residual: f64,
    /// Largest residual with `d(e^{iθ}χ)` differenced directly.
    pub differenced_residual: f64,
}

/// Check the Goldstone identity on a Riemannian geometry.
pub fn goldstone_check(geom: &Geometry, chi: &dyn Fn(f64) -> f64, theta: &dyn Fn(f64) -> f64) -> Result<GoldstoneReport> {
    if !geom.metric().is_riemannian() {
        return Err(Error::UnsupportedForm("Goldstone identity is checked for Riemannian metrics".into()));
    }
    let axis = geom.axis();
    let mut alg: f64 = 0.0;
    let mut fd: f64 = 0.0;
    for x in nodes(geom) {
        let h = geom.step_at(x);
        let ginv = 1.0 / geom.metric().checked_components_at(&geom.point(x))?[axis];
        let (c, t) = (chi(x), theta(x));
        let (dc, dt) = (diff::d1(chi, x, h), diff::d1(theta, x, h));
        let rhs = ginv * (c * c * dt * dt + dc * dc);
        // product rule on the jet: d(e^{iθ}χ) = e^{iθ}(dχ + iχ dθ)
        let (re, im) = (t.cos() * dc - t.sin() * c * dt, t.sin() * dc + t.cos() * c * dt);
        let lhs_alg = ginv * (re * re + im * im);
        let dre = diff::d1(|s| chi(s) * theta(s).cos(), x, h);
        let dim = diff::d1(|s| chi(s) * theta(s).sin(), x, h);
        let lhs_fd = ginv * (dre * dre + dim * dim);
        let scale = rhs.abs().max(1.0);
        alg = alg.max((lhs_alg - rhs).abs() / scale);
        fd = fd.max((lhs_fd - rhs).abs() / scale);
    }
    Ok(GoldstoneReport { algebraic_residual: alg, differenced_residual: fd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn sphere4() -> Geometry {
        let grid = RadialGrid::gauss_legendre(0.0, PI, 24).unwrap().with_transverse_volume(2.0 * PI * PI).with_singular(&[0.0, PI]).unwrap();
        Geometry::new(DiagonalMetric::round_sphere(4, 1.0), Arc::new(grid), 0, vec![0.0, PI / 2.0, PI / 2.0, 0.0]).unwrap()
    }

    #[test]
    fn sphere_fd_matches_closed_form() {
        let r = scalar_curvature_fd(&sphere4()).unwrap();
        // the terms cancel like 1/χ² near the poles
        for (x, s) in r.points.iter().zip(&r.samples) {
            let tol = if (0.3..PI - 0.3).contains(x) { 1e-6 } else { 1e-3 };
            assert!((s - 12.0).abs() < tol, "χ={x}: {s}");
        }
    }

    #[test]
    fn conformal_law_matches_direct_curvature() {
        let g = sphere4();
        let u = |x: f64| 1.0 + 0.3 * x.cos();
        let law = conformal_scalar(&g, &u).unwrap();
        let direct = scalar_curvature_fd(&g.conformal(Arc::new(u)).unwrap()).unwrap();
        for ((x, a), b) in law.points.iter().zip(&law.samples).zip(&direct.samples) {
            let tol = if (0.3..PI - 0.3).contains(x) { 1e-6 } else { 1e-3 };
            assert!((a - b).abs() < tol * (1.0 + b.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn non_radial_function_rejected() {
        let g = sphere4();
        let f: PointFn = Arc::new(|p: &[f64]| p[0] + p[1]);
        assert!(matches!(ensure_radial(&g, &f, 1e-12), Err(Error::Symmetry(_))));
    }

    #[test]
    fn nonpositive_u_rejected() {
        let g = sphere4();
        assert!(matches!(conformal_scalar(&g, &|x: f64| x.cos()), Err(Error::Positivity { .. })));
    }

    #[test]
    fn weyl_needs_closed_grid() {
        assert!(matches!(weyl_action(&sphere4()), Err(Error::Boundary(_))));
    }
}
