//! The closed Friedman model.
//!
//! The expansion factor obeys `(dR/dt)² = (R₀ − R)/R`, `R(0) = 0`. In
//! conformal time `dτ = dt/R` this becomes `(dR/dτ)² = (R₀ − R)R`, solved by
//! `R = R₀ sin²(τ/2)`; we integrate the regular second-order form
//! `R'' = (R₀ − 2R)/2`, `R(0) = R'(0) = 0` and recover `t = ∫R dτ`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::diff;
use crate::error::{Error, Result};
use crate::ode::rk4;
use crate::quadrature::{adaptive_simpson, simpson, simpson_richardson};

/// Volume of the unit three-sphere, `2π²`.
pub const VOL_S3: f64 = 2.0 * PI * PI;

/// RK4 substeps per output interval.
const SUBSTEPS: usize = 8;

/// Expansion curve sampled on a uniform conformal-time grid over `[0, π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCurve {
    pub r0: f64,
    pub tau: Vec<f64>,
    pub radius: Vec<f64>,
    pub radius_tau: Vec<f64>,
    /// `t(τ) = ∫_0^τ R`.
    pub time: Vec<f64>,
}

impl ExpansionCurve {
    /// `t₀ = t(π)`, the time of maximal expansion.
    pub fn t0(&self) -> f64 {
        *self.time.last().expect("curve is nonempty")
    }

    pub fn step(&self) -> f64 {
        self.tau[1] - self.tau[0]
    }

    /// Sup-norm distance to `R₀ sin²(τ/2)`.
    pub fn analytic_deviation(&self) -> f64 {
        self.tau
            .iter()
            .zip(&self.radius)
            .map(|(t, r)| (r - analytic_radius(self.r0, *t)).abs())
            .fold(0.0, f64::max)
    }
}

/// `R₀ sin²(τ/2)`.
pub fn analytic_radius(r0: f64, tau: f64) -> f64 {
    let s = (0.5 * tau).sin();
    r0 * s * s
}

fn check_r0(r0: f64) -> Result<()> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::Domain(format!("R0 must be positive, got {r0}")));
    }
    Ok(())
}

/// Integrate the expansion on `n` intervals of `[0, π]` (rounded up to a
/// multiple of 4, at least 64).
pub fn solve_expansion(r0: f64, n: usize) -> Result<ExpansionCurve> {
    check_r0(r0)?;
    if n < 64 {
        return Err(Error::Domain(format!("need at least 64 grid points, got {n}")));
    }
    let n = n.div_ceil(4) * 4;
    let h = PI / n as f64;
    let states = rk4(
        |_, y: &[f64; 3]| [y[1], 0.5 * (r0 - 2.0 * y[0]), y[0]],
        0.0,
        [0.0, 0.0, 0.0],
        h,
        n,
        SUBSTEPS,
    );
    Ok(ExpansionCurve {
        r0,
        tau: (0..=n).map(|i| i as f64 * h).collect(),
        radius: states.iter().map(|s| s[0]).collect(),
        radius_tau: states.iter().map(|s| s[1]).collect(),
        time: states.iter().map(|s| s[2]).collect(),
    })
}

/// `2 · Vol(S³) · ∫_0^{t₀} R³ dt` against a reference value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AeonVolume {
    pub r0: f64,
    pub t0: f64,
    /// Quadrature over the solved curve (Simpson with Richardson).
    pub value: f64,
    /// Plain Simpson on the same samples.
    pub value_simpson: f64,
    /// `(5/4) π³ R₀⁴`, the printed closed form.
    pub printed_closed_form: f64,
    /// `(35/32) π³ R₀⁴ = 2·2π²·B(9/2, 1/2)·R₀⁴`.
    pub beta_closed_form: f64,
    /// `|value − printed| / printed`.
    pub rel_gap: f64,
    /// `|value − beta_closed_form| / beta_closed_form`.
    pub rel_gap_beta: f64,
}

/// `(5/4) π³ R₀⁴`.
pub fn printed_volume(r0: f64) -> f64 {
    1.25 * PI.powi(3) * r0.powi(4)
}

/// `2 · 2π² · B(9/2, 1/2) · R₀⁴ = (35/32) π³ R₀⁴`.
pub fn beta_volume(r0: f64) -> f64 {
    35.0 / 32.0 * PI.powi(3) * r0.powi(4)
}

/// Æon hypervolume by quadrature over the solved curve.
///
/// `∫ R³ dt = ∫ R⁴ dτ` since `dt = R dτ`.
pub fn aeon_volume(r0: f64, n: usize) -> Result<AeonVolume> {
    let curve = solve_expansion(r0, n)?;
    let r4: Vec<f64> = curve.radius.iter().map(|r| r.powi(4)).collect();
    let h = curve.step();
    let integral = simpson_richardson(&r4, h)?;
    let integral_simpson = simpson(&r4, h)?;
    let value = 2.0 * VOL_S3 * integral;
    let printed = printed_volume(r0);
    let beta = beta_volume(r0);
    Ok(AeonVolume {
        r0,
        t0: curve.t0(),
        value,
        value_simpson: 2.0 * VOL_S3 * integral_simpson,
        printed_closed_form: printed,
        beta_closed_form: beta,
        rel_gap: (value - printed).abs() / printed,
        rel_gap_beta: (value - beta).abs() / beta,
    })
}

/// `∫_0^1 w^a (1−w)^{-1/2} dw` by adaptive Simpson after `w = 1 − s²`,
/// which removes the endpoint singularity: the integral becomes
/// `2 ∫_0^1 (1 − s²)^a ds`.
pub fn beta_half(a: f64) -> Result<f64> {
    Ok(adaptive_simpson(|s: f64| 2.0 * (1.0 - s * s).powf(a), 0.0, 1.0, 1e-14)?.value)
}

/// `t₀ = ∫_0^{R₀} (R/(R₀ − R))^{1/2} dR` from the t-form equation, with
/// `R = R₀ sin²θ` to regularize both ends.
pub fn t0_from_t_form(r0: f64) -> Result<f64> {
    check_r0(r0)?;
    // dR = 2R₀ sinθ cosθ dθ, (R/(R₀−R))^{1/2} = tanθ
    Ok(adaptive_simpson(|th: f64| 2.0 * r0 * th.sin().powi(2), 0.0, 0.5 * PI, 1e-14)?.value)
}

/// `∫_0^{t₀} R³ dt` from the t-form, same substitution.
pub fn cube_integral_t_form(r0: f64) -> Result<f64> {
    check_r0(r0)?;
    Ok(adaptive_simpson(|th: f64| 2.0 * r0.powi(4) * th.sin().powi(8), 0.0, 0.5 * PI, 1e-14)?.value)
}

/// Conformal-time consistency along a solved curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileCheck {
    /// `max |dt/dτ − R|` over the grid, `dt/dτ` by finite differences of `t(τ)`.
    pub chain_residual: f64,
    /// `max |(dR/dτ)² − (R₀ − R)R|` along the integrated curve.
    pub ode_residual: f64,
    /// Dilaton `sin²(τ/2)` and its slope at `τ = 0` and `τ = 2π`.
    pub dilaton_ends: [f64; 4],
    /// Dilaton at `τ = π`.
    pub dilaton_mid: f64,
}

pub fn conformal_profile_check(r0: f64, n: usize) -> Result<ProfileCheck> {
    let curve = solve_expansion(r0, n)?;
    let h = curve.step();
    let dt = diff::derivative_samples(&curve.time, h, 1);
    let chain_residual = dt.iter().zip(&curve.radius).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let ode_residual = curve
        .radius
        .iter()
        .zip(&curve.radius_tau)
        .map(|(r, rt)| (rt * rt - (r0 - r) * r).abs())
        .fold(0.0, f64::max);
    let dil = |t: f64| (0.5 * t).sin().powi(2);
    let slope = |t: f64| 0.5 * t.sin();
    Ok(ProfileCheck {
        chain_residual,
        ode_residual,
        dilaton_ends: [dil(0.0), slope(0.0), dil(2.0 * PI), slope(2.0 * PI)],
        dilaton_mid: dil(PI),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_radius_is_half() {
        assert!((analytic_radius(1.0, PI / 2.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn t0_agrees_between_forms() {
        let c = solve_expansion(1.0, 256).unwrap();
        assert!((c.t0() - PI / 2.0).abs() < 1e-8 * PI);
        assert!((t0_from_t_form(1.0).unwrap() - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn beta_integrals() {
        assert!((beta_half(2.5).unwrap() - 5.0 * PI / 16.0).abs() < 1e-10);
        assert!((beta_half(3.5).unwrap() - 35.0 * PI / 128.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(solve_expansion(-1.0, 128).is_err());
        assert!(solve_expansion(1.0, 10).is_err());
    }
}
