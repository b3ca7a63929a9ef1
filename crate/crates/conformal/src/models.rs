//! Closed reference geometries: round spheres in polar coordinates and
//! 4-tori whose metric depends on one periodic coordinate.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::Result;
use crate::grid::RadialGrid;
use crate::metric::{DiagonalMetric, Geometry, RadialFn};

/// Round `S⁴` of radius `a` along the polar angle, Gauss–Legendre nodes.
pub fn sphere4(a: f64, points: usize) -> Result<Geometry> {
    let grid = RadialGrid::gauss_legendre(0.0, PI, points)?
        .with_transverse_volume(2.0 * PI * PI)
        .with_singular(&[0.0, PI])?
        .with_closed_ends();
    Geometry::new(DiagonalMetric::round_sphere(4, a), Arc::new(grid), 0, vec![0.0, PI / 2.0, PI / 2.0, 0.0])
}

/// Flat 4-torus `(R/2πZ)⁴` sampled along the first coordinate.
pub fn flat_torus(points: usize) -> Result<Geometry> {
    let one: RadialFn = Arc::new(|_| 1.0);
    warped_torus([one.clone(), one.clone(), one], points)
}

/// `diag(a(x), b(x), c(x), 1)` on `(R/2πZ)⁴`, with `a, b, c > 0` periodic in `x`.
pub fn warped_torus([a, b, c]: [RadialFn; 3], points: usize) -> Result<Geometry> {
    let grid = RadialGrid::periodic(0.0, 2.0 * PI, points)?.with_transverse_volume((2.0 * PI).powi(3));
    let metric = DiagonalMetric::new("warped T^4", 4, 0, move |x, g| {
        g[0] = a(x[0]);
        g[1] = b(x[0]);
        g[2] = c(x[0]);
        g[3] = 1.0;
    });
    Geometry::new(metric, Arc::new(grid), 0, vec![0.0; 4])
}

/// A warped torus with curvature that is not a total derivative.
pub fn sample_warped_torus(points: usize) -> Result<Geometry> {
    warped_torus(
        [
            Arc::new(|x: f64| 1.0 + 0.3 * x.sin()),
            Arc::new(|x: f64| 1.0 + 0.2 * (2.0 * x).cos()),
            Arc::new(|x: f64| 1.5 + 0.4 * x.cos()),
        ],
        points,
    )
}

/// The flat torus deformed by `(1 + ε sin x)^{4/(n−2)}`.
pub fn bumped_torus(eps: f64, points: usize) -> Result<Geometry> {
    flat_torus(points)?.conformal(Arc::new(move |x: f64| 1.0 + eps * x.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::scalar_curvature;

    #[test]
    fn sphere_volume() {
        let g = sphere4(1.0, 32).unwrap();
        let v = g.integrate_dvol(&vec![1.0; 32]).unwrap();
        assert!((v - 8.0 * PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn flat_torus_is_flat() {
        let g = flat_torus(16).unwrap();
        assert!(scalar_curvature(&g).unwrap().max_abs_deviation(0.0) < 1e-12);
        assert!((g.integrate_dvol(&[1.0; 16]).unwrap() - (2.0 * PI).powi(4)).abs() < 1e-9);
    }
}
