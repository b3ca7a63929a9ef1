//! One-dimensional sampling grids with volume weights.

use crate::error::{Error, Result};
use crate::quadrature;

/// How the nodes of a [`RadialGrid`] are laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Spacing {
    /// Equally spaced, both ends included, Simpson weights.
    Simpson,
    /// Gauss–Legendre nodes, ends excluded.
    GaussLegendre,
    /// Equally spaced on one period, right end excluded.
    Periodic,
}

/// Sampling grid along one coordinate.
///
/// Weights are quadrature weights multiplied by the transverse coordinate
/// volume, so `Σ w_i F(x_i)` approximates the integral of a field that
/// only depends on this coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    points: Vec<f64>,
    weights: Vec<f64>,
    spacing: Spacing,
    interval: (f64, f64),
    singular: Vec<f64>,
    transverse_volume: f64,
    closed_ends: bool,
}

const MIN_POINTS: usize = 8;

impl RadialGrid {
    /// Equally spaced grid on `[a, b]` with `n` (odd) nodes.
    pub fn simpson(a: f64, b: f64, n: usize) -> Result<Self> {
        check_interval(a, b, n)?;
        let h = (b - a) / (n - 1) as f64;
        let weights = quadrature::simpson_weights(n, h)?;
        let points = (0..n).map(|i| a + i as f64 * h).collect();
        Ok(Self::build(points, weights, Spacing::Simpson, (a, b)))
    }

    /// Gauss–Legendre grid with `n` nodes on `(a, b)`.
    pub fn gauss_legendre(a: f64, b: f64, n: usize) -> Result<Self> {
        check_interval(a, b, n)?;
        let (points, weights) = quadrature::gauss_legendre(n, a, b);
        Ok(Self::build(points, weights, Spacing::GaussLegendre, (a, b)))
    }

    /// Periodic grid on `[a, a + period)` with `n` nodes.
    pub fn periodic(a: f64, period: f64, n: usize) -> Result<Self> {
        check_interval(a, a + period, n)?;
        let h = period / n as f64;
        let points = (0..n).map(|i| a + i as f64 * h).collect();
        Ok(Self::build(points, vec![h; n], Spacing::Periodic, (a, a + period)))
    }

    fn build(points: Vec<f64>, weights: Vec<f64>, spacing: Spacing, interval: (f64, f64)) -> Self {
        Self { points, weights, spacing, interval, singular: Vec::new(), transverse_volume: 1.0, closed_ends: false }
    }

    /// Multiply all weights by the volume of the transverse directions.
    pub fn with_transverse_volume(mut self, volume: f64) -> Self {
        let scale = volume / self.transverse_volume;
        self.weights.iter_mut().for_each(|w| *w *= scale);
        self.transverse_volume = volume;
        self
    }

    /// Declare coordinate values where the geometry is singular.
    ///
    /// Grid nodes must stay off these values.
    pub fn with_singular(mut self, radii: &[f64]) -> Result<Self> {
        for &s in radii {
            if self.points.iter().any(|&x| (x - s).abs() <= 1e-14 * (1.0 + s.abs())) {
                return Err(Error::Grid(format!("node placed on singular radius {s}")));
            }
        }
        self.singular.extend_from_slice(radii);
        Ok(self)
    }

    /// Declare that the manifold closes up at both ends of the interval
    /// (polar coordinates on a sphere), so integrals carry no boundary term.
    pub fn with_closed_ends(mut self) -> Self {
        self.closed_ends = true;
        self
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    /// Periodic, or declared closed at both ends.
    pub fn is_closed(&self) -> bool {
        self.spacing == Spacing::Periodic || self.closed_ends
    }

    pub fn singular(&self) -> &[f64] {
        &self.singular
    }

    pub fn transverse_volume(&self) -> f64 {
        self.transverse_volume
    }

    /// Distance from `x` to the nearest declared singular value.
    pub fn clearance(&self, x: f64) -> f64 {
        self.singular.iter().map(|s| (x - s).abs()).fold(f64::INFINITY, f64::min)
    }

    /// Weighted sum `Σ w_i s_i`.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        debug_assert_eq!(samples.len(), self.len());
        self.weights.iter().zip(samples).map(|(w, s)| w * s).sum()
    }

    /// Same layout with roughly half the nodes (used for convergence checks).
    pub fn coarsened(&self) -> Result<Self> {
        let (a, b) = self.interval;
        let mut g = match self.spacing {
            Spacing::Simpson => Self::simpson(a, b, ((self.len() - 1) / 2 + 1) | 1)?,
            Spacing::GaussLegendre => Self::gauss_legendre(a, b, self.len() / 2)?,
            Spacing::Periodic => Self::periodic(a, b - a, self.len() / 2)?,
        };
        g = g.with_transverse_volume(self.transverse_volume);
        g.singular = self.singular.clone();
        g.closed_ends = self.closed_ends;
        Ok(g)
    }
}

fn check_interval(a: f64, b: f64, n: usize) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && b > a) {
        return Err(Error::Grid(format!("empty or non-finite interval [{a}, {b}]")));
    }
    if n < MIN_POINTS {
        return Err(Error::Grid(format!("need at least {MIN_POINTS} points, got {n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_too_few_points() {
        assert!(RadialGrid::simpson(0.0, 1.0, 5).is_err());
        assert!(RadialGrid::simpson(1.0, 0.0, 9).is_err());
    }

    #[test]
    fn rejects_node_on_singular_radius() {
        let g = RadialGrid::simpson(0.0, 1.0, 9).unwrap();
        assert!(g.clone().with_singular(&[0.5]).is_err());
        assert!(g.with_singular(&[0.51]).is_ok());
    }

    #[test]
    fn transverse_volume_scales_weights() {
        let g = RadialGrid::gauss_legendre(0.0, 1.0, 16).unwrap().with_transverse_volume(3.0);
        let one = vec![1.0; g.len()];
        assert!((g.integrate(&one) - 3.0).abs() < 1e-13);
    }

    #[test]
    fn points_strictly_increase() {
        for g in [
            RadialGrid::simpson(0.0, 1.0, 33).unwrap(),
            RadialGrid::gauss_legendre(0.0, 1.0, 33).unwrap(),
            RadialGrid::periodic(0.0, 1.0, 32).unwrap(),
        ] {
            assert!(g.points().windows(2).all(|w| w[1] > w[0]));
        }
    }
}
