//! Diagonal metrics given by closures, their finite-difference curvature,
//! and their restriction to a one-parameter family of points.
//!
//! Sign conventions:
//!
//! ```text
//! Γ^a_{bc} = ½ g^{aa} (∂_b g_{ac} + ∂_c g_{ab} − ∂_a g_{bc})
//! R_{bd}   = ∂_a Γ^a_{bd} − ∂_d Γ^a_{ab} + Γ^a_{ae} Γ^e_{bd} − Γ^a_{de} Γ^e_{ab}
//! R        = g^{bd} R_{bd}
//! ```
//!
//! so the unit n-sphere has `R = n(n − 1)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid::RadialGrid;

/// Diagonal components at a coordinate point, written into the slice.
pub type ComponentFn = Arc<dyn Fn(&[f64], &mut [f64]) + Send + Sync>;
/// Scalar function of a coordinate point.
pub type PointFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
/// Scalar function of one coordinate.
pub type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Default finite-difference step for metric derivatives.
pub const DEFAULT_STEP: f64 = 1e-3;

/// A metric `g = diag(g_0(x), …, g_{n−1}(x))` in a fixed chart.
#[derive(Clone)]
pub struct DiagonalMetric {
    dim: usize,
    negatives: usize,
    components: ComponentFn,
    analytic_scalar: Option<PointFn>,
    step: f64,
    label: String,
}

impl fmt::Debug for DiagonalMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiagonalMetric")
            .field("label", &self.label)
            .field("dim", &self.dim)
            .field("negatives", &self.negatives)
            .field("analytic_scalar", &self.analytic_scalar.is_some())
            .finish()
    }
}

/// Christoffel symbols at a point, indexed `[a][b][c]` for `Γ^a_{bc}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    n: usize,
    data: Vec<f64>,
}

impl Christoffel {
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.data[(a * self.n + b) * self.n + c]
    }

    /// Contraction `Γ^a_{ab}`.
    pub fn trace(&self, b: usize) -> f64 {
        (0..self.n).map(|a| self.get(a, a, b)).sum()
    }
}

impl DiagonalMetric {
    /// A metric with `negatives` negative diagonal entries everywhere.
    pub fn new<F>(label: impl Into<String>, dim: usize, negatives: usize, components: F) -> Self
    where
        F: Fn(&[f64], &mut [f64]) + Send + Sync + 'static,
    {
        Self {
            dim,
            negatives,
            components: Arc::new(components),
            analytic_scalar: None,
            step: DEFAULT_STEP,
            label: label.into(),
        }
    }

    /// Attach a closed-form scalar curvature.
    pub fn with_analytic_scalar<F>(mut self, r: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.analytic_scalar = Some(Arc::new(r));
        self
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.step = h;
        self
    }

    /// Flat Euclidean space in Cartesian coordinates.
    pub fn euclidean(n: usize) -> Self {
        Self::new(format!("euclidean R^{n}"), n, 0, |_, g| g.fill(1.0)).with_analytic_scalar(|_| 0.0)
    }

    /// Round n-sphere of radius `a` in hyperspherical coordinates
    /// `(χ, θ_1, …, θ_{n−1})`.
    pub fn round_sphere(n: usize, a: f64) -> Self {
        let a2 = a * a;
        let nf = n as f64;
        Self::new(format!("round S^{n}(a={a})"), n, 0, move |x, g| {
            let mut f = a2;
            for k in 0..g.len() {
                g[k] = f;
                let s = x[k].sin();
                f *= s * s;
            }
        })
        .with_analytic_scalar(move |_| nf * (nf - 1.0) / a2)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn negatives(&self) -> usize {
        self.negatives
    }

    pub fn is_riemannian(&self) -> bool {
        self.negatives == 0
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn has_analytic_scalar(&self) -> bool {
        self.analytic_scalar.is_some()
    }

    pub fn components_at(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.dim];
        (self.components)(x, &mut g);
        g
    }

    /// Components at `x`, checked for finiteness, nondegeneracy and the
    /// declared signature.
    pub fn checked_components_at(&self, x: &[f64]) -> Result<Vec<f64>> {
        let g = self.components_at(x);
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::Singularity { location: format!("{x:?}") });
        }
        if g.contains(&0.0) {
            return Err(Error::Nondegeneracy(format!("zero component at {x:?}")));
        }
        let neg = g.iter().filter(|&&v| v < 0.0).count();
        if neg != self.negatives {
            return Err(Error::Nondegeneracy(format!(
                "signature changes at {x:?}: {neg} negative entries, expected {}",
                self.negatives
            )));
        }
        Ok(g)
    }

    pub fn determinant_at(&self, x: &[f64]) -> f64 {
        self.components_at(x).iter().product()
    }

    fn shifted(x: &[f64], axis: usize, d: f64) -> Vec<f64> {
        let mut y = x.to_vec();
        y[axis] += d;
        y
    }

    /// `∂_k g_{ii}` as `dg[k][i]`, fourth-order central differences.
    fn metric_derivatives(&self, x: &[f64], h: f64) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|k| {
                let m2 = self.components_at(&Self::shifted(x, k, -2.0 * h));
                let m1 = self.components_at(&Self::shifted(x, k, -h));
                let p1 = self.components_at(&Self::shifted(x, k, h));
                let p2 = self.components_at(&Self::shifted(x, k, 2.0 * h));
                (0..self.dim)
                    .map(|i| (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * h))
                    .collect()
            })
            .collect()
    }

    /// Christoffel symbols at `x` with finite-difference step `h`.
    pub fn christoffel_at(&self, x: &[f64], h: f64) -> Christoffel {
        let n = self.dim;
        let g = self.components_at(x);
        let dg = self.metric_derivatives(x, h);
        let mut data = vec![0.0; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // for diagonal g only terms with matching indices survive
                    let mut s = 0.0;
                    if a == c {
                        s += dg[b][a];
                    }
                    if a == b {
                        s += dg[c][a];
                    }
                    if b == c {
                        s -= dg[a][b];
                    }
                    data[(a * n + b) * n + c] = 0.5 * s / g[a];
                }
            }
        }
        Christoffel { n, data }
    }

    /// Ricci tensor `R_{bd}` (lower indices, row-major `n × n`).
    pub fn ricci_at(&self, x: &[f64], h: f64) -> Vec<f64> {
        let n = self.dim;
        let gam = self.christoffel_at(x, h);
        // dgam[c] = ∂_c Γ
        let dgam: Vec<Vec<f64>> = (0..n)
            .map(|c| {
                let m2 = self.christoffel_at(&Self::shifted(x, c, -2.0 * h), h);
                let m1 = self.christoffel_at(&Self::shifted(x, c, -h), h);
                let p1 = self.christoffel_at(&Self::shifted(x, c, h), h);
                let p2 = self.christoffel_at(&Self::shifted(x, c, 2.0 * h), h);
                (0..n * n * n)
                    .map(|k| (m2.data[k] - 8.0 * m1.data[k] + 8.0 * p1.data[k] - p2.data[k]) / (12.0 * h))
                    .collect()
            })
            .collect();
        let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        let mut ric = vec![0.0; n * n];
        for b in 0..n {
            for d in 0..n {
                let mut s = 0.0;
                for a in 0..n {
                    s += dgam[a][idx(a, b, d)] - dgam[d][idx(a, a, b)];
                    for e in 0..n {
                        s += gam.get(a, a, e) * gam.get(e, b, d) - gam.get(a, d, e) * gam.get(e, a, b);
                    }
                }
                ric[b * n + d] = s;
            }
        }
        ric
    }

    /// Mixed Ricci diagonal `R^i_i = g^{ii} R_{ii}`.
    pub fn ricci_mixed_diagonal_at(&self, x: &[f64], h: f64) -> Vec<f64> {
        let n = self.dim;
        let g = self.components_at(x);
        let ric = self.ricci_at(x, h);
        (0..n).map(|i| ric[i * n + i] / g[i]).collect()
    }

    /// Scalar curvature by finite differences.
    pub fn scalar_curvature_fd_at(&self, x: &[f64], h: f64) -> f64 {
        self.ricci_mixed_diagonal_at(x, h).iter().sum()
    }

    /// Scalar curvature, closed form when attached, else finite differences.
    pub fn scalar_curvature_at(&self, x: &[f64], h: f64) -> f64 {
        match &self.analytic_scalar {
            Some(r) => r(x),
            None => self.scalar_curvature_fd_at(x, h),
        }
    }

    /// Laplace–Beltrami `Δf = |g|^{-1/2} ∂_i(|g|^{1/2} g^{ii} ∂_i f)`.
    pub fn laplacian_at(&self, f: &dyn Fn(&[f64]) -> f64, x: &[f64], h: f64) -> f64 {
        let flux = |y: &[f64], i: usize| {
            let g = self.components_at(y);
            let vol: f64 = g.iter().product::<f64>().abs().sqrt();
            let df = crate::diff::d1(|t| f(&Self::shifted(y, i, t - y[i])), y[i], h);
            vol / g[i] * df
        };
        let vol: f64 = self.determinant_at(x).abs().sqrt();
        let div: f64 = (0..self.dim)
            .map(|i| crate::diff::d1(|t| flux(&Self::shifted(x, i, t - x[i]), i), x[i], h))
            .sum();
        div / vol
    }

    /// The metric `c·g` for a constant `c > 0`; the closed-form scalar
    /// curvature (if any) becomes `R/c`.
    pub fn scaled(&self, c: f64) -> Self {
        let comp = self.components.clone();
        let mut out = Self::new(format!("{} * {c}", self.label), self.dim, self.negatives, move |x, g| {
            comp(x, g);
            g.iter_mut().for_each(|v| *v *= c);
        })
        .with_step(self.step);
        if let Some(r) = &self.analytic_scalar {
            let r = r.clone();
            out.analytic_scalar = Some(Arc::new(move |x| r(x) / c));
        }
        out
    }

    /// The metric `|u|^{4/(n−2)} g`; closed-form curvature is dropped.
    pub fn conformal(&self, u: PointFn) -> Result<Self> {
        let n = self.dim;
        if n < 3 {
            return Err(Error::Dimension(n));
        }
        let p = 4.0 / (n as f64 - 2.0);
        let comp = self.components.clone();
        Ok(Self::new(format!("u^{p} {}", self.label), n, self.negatives, move |x, g| {
            comp(x, g);
            let f = u(x).abs().powf(p);
            g.iter_mut().for_each(|v| *v *= f);
        })
        .with_step(self.step))
    }

    /// The unimodular representative `|det g|^{-1/n} g`.
    pub fn unimodular(&self) -> Self {
        let comp = self.components.clone();
        let n = self.dim as f64;
        Self::new(format!("unimodular {}", self.label), self.dim, self.negatives, move |x, g| {
            comp(x, g);
            let d: f64 = g.iter().product::<f64>().abs().powf(-1.0 / n);
            g.iter_mut().for_each(|v| *v *= d);
        })
        .with_step(self.step)
    }
}

/// A metric sampled along one coordinate axis through a base point.
///
/// Fields handled here depend only on the axis coordinate. The transverse
/// part of `√|det g|` must equal 1 at the base point; its integral over the
/// transverse directions is folded into the grid weights.
#[derive(Debug, Clone)]
pub struct Geometry {
    metric: DiagonalMetric,
    grid: Arc<RadialGrid>,
    axis: usize,
    base: Vec<f64>,
}

/// Fraction of the distance to a declared singular value used as the
/// finite-difference step near that value.
const CLEARANCE_FRACTION: f64 = 0.005;

impl Geometry {
    pub fn new(metric: DiagonalMetric, grid: Arc<RadialGrid>, axis: usize, base: Vec<f64>) -> Result<Self> {
        if base.len() != metric.dim() || axis >= metric.dim() {
            return Err(Error::Domain(format!(
                "base point of length {} and axis {axis} for a {}-dimensional metric",
                base.len(),
                metric.dim()
            )));
        }
        Ok(Self { metric, grid, axis, base })
    }

    pub fn metric(&self) -> &DiagonalMetric {
        &self.metric
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    /// Coordinate point with the axis coordinate set to `x`.
    pub fn point(&self, x: f64) -> Vec<f64> {
        let mut p = self.base.clone();
        p[self.axis] = x;
        p
    }

    /// Finite-difference step at axis coordinate `x`.
    pub fn step_at(&self, x: f64) -> f64 {
        self.metric.step().min(CLEARANCE_FRACTION * self.grid.clearance(x))
    }

    /// `√|det g|` at every grid node, with the checks of
    /// [`DiagonalMetric::checked_components_at`].
    pub fn sqrt_det(&self) -> Result<Vec<f64>> {
        self.grid
            .points()
            .iter()
            .map(|&x| {
                let g = self.metric.checked_components_at(&self.point(x))?;
                Ok(g.iter().product::<f64>().abs().sqrt())
            })
            .collect()
    }

    /// `∫ F dvol_g` for samples of a field depending on the axis coordinate.
    pub fn integrate_dvol(&self, samples: &[f64]) -> Result<f64> {
        if samples.len() != self.grid.len() {
            return Err(Error::GridMismatch);
        }
        let vol = self.sqrt_det()?;
        let prod: Vec<f64> = samples.iter().zip(&vol).map(|(a, b)| a * b).collect();
        Ok(self.grid.integrate(&prod))
    }

    /// Same geometry on another grid.
    pub fn with_grid(&self, grid: Arc<RadialGrid>) -> Self {
        Self { grid, ..self.clone() }
    }

    /// Same grid, metric multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        Self { metric: self.metric.scaled(c), ..self.clone() }
    }

    /// Same grid, metric `|u|^{4/(n−2)} g` for `u` depending on the axis.
    pub fn conformal(&self, u: RadialFn) -> Result<Self> {
        let axis = self.axis;
        let metric = self.metric.conformal(Arc::new(move |x: &[f64]| u(x[axis])))?;
        Ok(Self { metric, ..self.clone() })
    }

    /// Axis derivative of a one-variable function at `x`.
    pub fn derivative(&self, f: &dyn Fn(f64) -> f64, x: f64) -> f64 {
        crate::diff::d1(f, x, self.step_at(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_sphere_curvature_by_differences() {
        for n in 2..=4 {
            let s = DiagonalMetric::round_sphere(n, 1.0);
            let x: Vec<f64> = (0..n).map(|k| 0.9 + 0.1 * k as f64).collect();
            let r = s.scalar_curvature_fd_at(&x, 1e-3);
            assert!((r - (n * (n - 1)) as f64).abs() < 1e-7, "n={n}: {r}");
        }
    }

    #[test]
    fn flat_laplacian_of_quadratic() {
        let e = DiagonalMetric::euclidean(3);
        let f = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        assert!((e.laplacian_at(&f, &[0.3, -0.2, 1.1], 1e-3) - 6.0).abs() < 1e-7);
    }

    #[test]
    fn signature_change_is_reported() {
        let g = DiagonalMetric::new("bad", 3, 0, |x, g| {
            g[0] = x[0];
            g[1] = 1.0;
            g[2] = 1.0;
        });
        assert!(g.checked_components_at(&[1.0, 0.0, 0.0]).is_ok());
        assert!(matches!(g.checked_components_at(&[-1.0, 0.0, 0.0]), Err(Error::Nondegeneracy(_))));
    }
}
