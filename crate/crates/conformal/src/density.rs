//! Densities of real weight, the blow-up decomposition of a symmetric
//! form into a unimodular form and a density, and the `L^p`-type norms
//! and pairings of densities.
//!
//! A density of weight `s` on an n-manifold transforms under a change of
//! chart by `|det J|^{s/n}`. For a nondegenerate symmetric form `q`
//!
//! ```text
//! q = |φ|^{4/(n−2)} ḡ,   det ḡ = ±1,   φ = |det q|^{(n−2)/4n}
//! ```
//!
//! and `u ∈ R^×` acts by `(ḡ, φ) ↦ (|u|^{4/(n−2)} ḡ, u^{-1} φ)` leaving `q`
//! fixed.

use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::metric::Geometry;

/// Symmetric entries must agree to this relative level.
const SYMMETRY_TOL: f64 = 1e-12;

/// Nondegenerate symmetric bilinear form on `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricForm {
    matrix: DMatrix<f64>,
    signature: i32,
}

impl SymmetricForm {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::Nondegeneracy("form must be a nonempty square matrix".into()));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::Nondegeneracy("non-finite entry".into()));
        }
        let scale = matrix.amax();
        let n = matrix.nrows();
        for i in 0..n {
            for j in 0..i {
                if (matrix[(i, j)] - matrix[(j, i)]).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::Nondegeneracy(format!("not symmetric at ({i}, {j})")));
                }
            }
        }
        let eig = SymmetricEigen::new(matrix.clone()).eigenvalues;
        let tiny = 1e-13 * scale;
        if eig.iter().any(|l| l.abs() <= tiny) {
            return Err(Error::Nondegeneracy("zero eigenvalue".into()));
        }
        let signature = eig.iter().map(|l| if *l > 0.0 { 1 } else { -1 }).sum();
        Ok(Self { matrix, signature })
    }

    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(entries)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `n_+ − n_−`.
    pub fn signature(&self) -> i32 {
        self.signature
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    /// `c · q` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        Self { matrix: &self.matrix * c, signature: self.signature }
    }

    /// Largest entrywise difference relative to the larger magnitude.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let scale = self.matrix.amax().max(other.matrix.amax());
        (&self.matrix - &other.matrix).amax() / scale
    }
}

/// A point of the blow-up: unimodular form and density value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupPoint {
    pub unimodular: SymmetricForm,
    pub density: f64,
}

impl BlowupPoint {
    /// The form `|φ|^{4/(n−2)} ḡ` this point represents.
    pub fn reconstruct(&self) -> SymmetricForm {
        reconstruct(&self.unimodular, self.density)
    }
}

fn conformal_power(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Dimension(n));
    }
    Ok(4.0 / (n as f64 - 2.0))
}

/// Split `q` into `(|det q|^{-1/n} q, |det q|^{(n−2)/4n})`.
pub fn decompose_form(q: &SymmetricForm) -> Result<BlowupPoint> {
    let n = q.dim();
    conformal_power(n)?;
    let det = q.determinant().abs();
    if det == 0.0 || !det.is_finite() {
        return Err(Error::Nondegeneracy("determinant vanishes".into()));
    }
    let nf = n as f64;
    Ok(BlowupPoint {
        unimodular: q.scaled(det.powf(-1.0 / nf)),
        density: det.powf((nf - 2.0) / (4.0 * nf)),
    })
}

/// `|φ|^{4/(n−2)} g`.
pub fn reconstruct(g: &SymmetricForm, phi: f64) -> SymmetricForm {
    let p = 4.0 / (g.dim() as f64 - 2.0);
    g.scaled(phi.abs().powf(p))
}

/// `(|u|^{4/(n−2)} g, u^{-1} φ)`.
pub fn gauge_act(u: f64, g: &SymmetricForm, phi: f64) -> Result<(SymmetricForm, f64)> {
    let p = conformal_power(g.dim())?;
    if u == 0.0 || !u.is_finite() {
        return Err(Error::Gauge { location: format!("u = {u}") });
    }
    Ok((g.scaled(u.abs().powf(p)), phi / u))
}

/// Sampled density of weight `s` on a grid.
///
/// Samples are coordinate values along the grid axis; the grid weights
/// carry the coordinate measure, so `Σ w_i |φ_i|^{n/s}` is the integral of
/// the weight-n density `|φ|^{n/s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField {
    weight: f64,
    dim: usize,
    samples: Vec<f64>,
    grid: Arc<RadialGrid>,
}

/// Result of a Hölder pairing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pairing {
    /// `∫ φψ` (a density of weight `s + t`).
    pub value: f64,
    /// `‖φψ‖_{s+t}` when `s + t > 0`.
    pub product_norm: f64,
    /// `‖φ‖_s ‖ψ‖_t`.
    pub bound: f64,
    /// Product norm minus the bound; never positive up to rounding.
    pub slack: f64,
}

impl DensityField {
    pub fn new(weight: f64, dim: usize, grid: Arc<RadialGrid>, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        if !weight.is_finite() {
            return Err(Error::WeightRange { weight, dim });
        }
        Ok(Self { weight, dim, samples, grid })
    }

    pub fn from_fn(weight: f64, dim: usize, grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let samples = grid.points().iter().map(|&x| f(x)).collect();
        Self::new(weight, dim, grid, samples)
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    fn check_weight(&self) -> Result<()> {
        if self.weight < 0.0 || self.weight > self.dim as f64 {
            return Err(Error::WeightRange { weight: self.weight, dim: self.dim });
        }
        Ok(())
    }

    /// `‖φ‖_s = (∫|φ|^{n/s})^{s/n}` for `0 < s ≤ n`; the sup norm at `s = 0`.
    pub fn density_norm(&self) -> Result<f64> {
        self.check_weight()?;
        if self.weight == 0.0 {
            return Ok(self.samples.iter().fold(0.0, |m, v| m.max(v.abs())));
        }
        let p = self.dim as f64 / self.weight;
        let pw: Vec<f64> = self.samples.iter().map(|v| v.abs().powf(p)).collect();
        Ok(self.grid.integrate(&pw).powf(1.0 / p))
    }

    /// Pointwise product, a density of weight `s + t`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if !same_grid(&self.grid, &other.grid) || self.dim != other.dim {
            return Err(Error::GridMismatch);
        }
        let samples = self.samples.iter().zip(&other.samples).map(|(a, b)| a * b).collect();
        Self::new(self.weight + other.weight, self.dim, self.grid.clone(), samples)
    }

    /// Multiply by a weight-0 function sampled on the same grid.
    pub fn scaled_by(&self, u: &[f64]) -> Result<Self> {
        if u.len() != self.samples.len() {
            return Err(Error::GridMismatch);
        }
        let samples = self.samples.iter().zip(u).map(|(a, b)| a * b).collect();
        Self::new(self.weight, self.dim, self.grid.clone(), samples)
    }
}

fn same_grid(a: &Arc<RadialGrid>, b: &Arc<RadialGrid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Hölder pairing `ΓR(s) × ΓR(t) → ΓR(s+t)` with `s + t ≤ n`:
/// `‖φψ‖_{s+t} ≤ ‖φ‖_s ‖ψ‖_t`.
pub fn holder_pairing(phi: &DensityField, psi: &DensityField) -> Result<Pairing> {
    phi.check_weight()?;
    psi.check_weight()?;
    let prod = phi.product(psi)?;
    prod.check_weight()?;
    let value = phi.grid.integrate(&prod.samples);
    let product_norm = prod.density_norm()?;
    let bound = phi.density_norm()? * psi.density_norm()?;
    Ok(Pairing { value, product_norm, bound, slack: product_norm - bound })
}

/// The density `sgn(det g) |det g|^{s/2n}` of weight `s` along a geometry.
pub fn star_section(geom: &Geometry, s: f64) -> Result<DensityField> {
    let n = geom.dim();
    let samples = geom
        .grid()
        .points()
        .iter()
        .map(|&x| {
            let g = geom.metric().checked_components_at(&geom.point(x))?;
            let det: f64 = g.iter().product();
            Ok(det.signum() * det.abs().powf(s / (2.0 * n as f64)))
        })
        .collect::<Result<Vec<f64>>>()?;
    DensityField::new(s, n, geom.grid().clone(), samples)
}
