//! Radius of convergence from coefficient ratios.
//!
//! For `f = (1 − r/R)^α` the ratios obey `cₖ/cₖ₋₁ = R⁻¹(1 − (1+α)/k)`, so a
//! line fitted to the ratios against `1/k` has intercept `1/R` and slope
//! `−(1+α)/R`.

use serde::{Deserialize, Serialize};

use crate::schwarzschild_interior::linear_fit;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    /// `|cₖ₋₁/cₖ|` for `k = 1..N`.
    pub ratio_test: Vec<f64>,
    /// Extrapolated radius.
    pub radius: Option<f64>,
    /// Fitted exponent `α`.
    pub exponent: Option<f64>,
    /// Coefficient of determination of the fit.
    pub r_squared: Option<f64>,
    /// Fit window `[k_min, k_max]`.
    pub window: (usize, usize),
    /// Set when the ratios change sign inside the window.
    pub inconclusive: bool,
}

/// Domb–Sykes fit over `k ∈ [N/2, N]`.
pub fn radius_estimate(coeffs: &[f64]) -> RadiusEstimate {
    let n = coeffs.len().saturating_sub(1);
    let ratio_test = (1..=n).map(|k| (coeffs[k - 1] / coeffs[k]).abs()).collect();
    let window = ((n / 2).max(1), n);
    let ks: Vec<usize> = (window.0..=window.1).collect();
    let ratios: Vec<f64> = ks.iter().map(|&k| coeffs[k] / coeffs[k - 1]).collect();
    let finite = ratios.iter().all(|r| r.is_finite());
    let same_sign = ratios.windows(2).all(|w| w[0].signum() == w[1].signum());
    if n < 4 || !finite || !same_sign {
        return RadiusEstimate { ratio_test, radius: None, exponent: None, r_squared: None, window, inconclusive: true };
    }
    let x: Vec<f64> = ks.iter().map(|&k| 1.0 / k as f64).collect();
    let (slope, intercept, r2) = linear_fit(&x, &ratios);
    let radius = 1.0 / intercept.abs();
    // sign of the intercept fixes the direction of the nearest singularity
    let exponent = -1.0 - slope / intercept;
    RadiusEstimate {
        ratio_test,
        radius: Some(radius),
        exponent: Some(exponent),
        r_squared: Some(r2),
        window,
        inconclusive: false,
    }
}

/// Taylor coefficients of `(1 − r)^a`.
pub fn binomial_coefficients(a: f64, n: usize) -> Vec<f64> {
    let mut c = vec![1.0];
    for k in 1..=n {
        let prev = c[k - 1];
        c.push(prev * (k as f64 - 1.0 - a) / k as f64);
    }
    c
}
