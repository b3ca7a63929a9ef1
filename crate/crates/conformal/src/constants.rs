//! Physical constants (CODATA 2018) with SI dimensions.

use std::ops::{Div, Mul};

use serde::{Deserialize, Serialize};

/// Exponents of (metre, kilogram, second).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimension {
    pub m: i32,
    pub kg: i32,
    pub s: i32,
}

impl Dimension {
    pub const NONE: Self = Self { m: 0, kg: 0, s: 0 };

    pub const fn new(m: i32, kg: i32, s: i32) -> Self {
        Self { m, kg, s }
    }

    pub fn powi(self, k: i32) -> Self {
        Self { m: self.m * k, kg: self.kg * k, s: self.s * k }
    }
}

impl Mul for Dimension {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self { m: self.m + o.m, kg: self.kg + o.kg, s: self.s + o.s }
    }
}

impl Div for Dimension {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Self { m: self.m - o.m, kg: self.kg - o.kg, s: self.s - o.s }
    }
}

/// A value with its unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: f64,
    pub dim: Dimension,
}

/// Gravitational constant, Planck constant and speed of light.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// m³ kg⁻¹ s⁻²
    pub g: Quantity,
    /// J s = kg m² s⁻¹
    pub h: Quantity,
    /// m s⁻¹
    pub c: Quantity,
}

impl PhysicalConstants {
    pub fn codata2018() -> Self {
        Self {
            g: Quantity { value: 6.674_30e-11, dim: Dimension::new(3, -1, -2) },
            h: Quantity { value: 6.626_070_15e-34, dim: Dimension::new(2, 1, -1) },
            c: Quantity { value: 299_792_458.0, dim: Dimension::new(1, 0, -1) },
        }
    }

    /// Same constants with `G` multiplied by `k`.
    pub fn with_g_scaled(mut self, k: f64) -> Self {
        self.g.value *= k;
        self
    }

    /// `ħ = h / 2π`.
    pub fn hbar(&self) -> f64 {
        self.h.value / (2.0 * std::f64::consts::PI)
    }

    /// `κ = 8πG`.
    pub fn kappa(&self) -> f64 {
        8.0 * std::f64::consts::PI * self.g.value
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_algebra() {
        let k = PhysicalConstants::codata2018();
        let d = k.c.dim.powi(5) / (k.g.dim * k.h.dim);
        assert_eq!(d, Dimension::new(0, 0, -2));
    }
}
