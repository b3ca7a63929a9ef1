//! Numerical continuation of the series solution in the coordinate
//! `t = log((1 − r)/r)`, where the equation reads
//!
//! ```text
//! v_tt = (9/4) eᵗ (1 + eᵗ)⁻⁴ v³
//! ```
//!
//! and is regular on the whole line. Units have `m = ½` (horizon at
//! `r = 1`); other masses enter through `r ↦ r/2m`.

use serde::{Deserialize, Serialize};

use super::series::RationalSeries;
use crate::diff::derivative_samples;
use crate::error::{Error, Result};
use crate::ode::rk4_step;
use crate::quadrature::adaptive_simpson;
use crate::schwarzschild_interior::{linear_fit, RNParams};

/// Largest seed radius accepted.
pub const MAX_SEED_RADIUS: f64 = 0.2;
/// Smallest series order accepted for seeding.
pub const MIN_SEED_ORDER: usize = 20;
/// `|v|` beyond which the integration is declared to blow up.
const BLOW_UP: f64 = 1e12;

pub fn t_of_r(r: f64) -> f64 {
    ((1.0 - r) / r).ln()
}

pub fn r_of_t(t: f64) -> f64 {
    1.0 / (1.0 + t.exp())
}

/// `(9/4) eᵗ (1 + eᵗ)⁻⁴ = (9/4) r³ (1 − r)`.
pub fn coupling(t: f64) -> f64 {
    let r = r_of_t(t);
    2.25 * r.powi(3) * (1.0 - r)
}

fn rhs(t: f64, y: &[f64; 2]) -> [f64; 2] {
    [y[1], coupling(t) * y[0].powi(3)]
}

/// Where and how the integration was started.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Seed {
    pub order: usize,
    pub r0: f64,
    pub t0: f64,
    pub v0: f64,
    pub vt0: f64,
}

/// `v`, `v_t` on a uniform increasing `t` grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ODESolution {
    pub t: Vec<f64>,
    pub v: Vec<f64>,
    pub vt: Vec<f64>,
    pub step: f64,
    pub seed: Seed,
}

/// `v(r₀)` and `v_t(r₀) = r(r − 1) v'(r₀)` from the series.
pub fn seed_from_series(series: &RationalSeries, r0: f64) -> Seed {
    let [v, dv, _] = series.eval_v(r0);
    Seed { order: series.order(), r0, t0: t_of_r(r0), v0: v, vt0: r0 * (r0 - 1.0) * dv }
}

/// Integrate from the series seed at `r₀` out to `t_lo` and `t_hi`
/// (`t_lo < t(r₀) < t_hi`) with RK4 steps close to `h`.
pub fn integrate_v(series: &RationalSeries, r0: f64, t_lo: f64, t_hi: f64, h: f64) -> Result<ODESolution> {
    if !(r0 > 0.0 && r0 <= MAX_SEED_RADIUS) {
        return Err(Error::Domain(format!("seed radius {r0} outside (0, {MAX_SEED_RADIUS}]")));
    }
    if series.order() < MIN_SEED_ORDER {
        return Err(Error::Domain(format!("series order {} below {MIN_SEED_ORDER}", series.order())));
    }
    let seed = seed_from_series(series, r0);
    if !(t_lo < seed.t0 && seed.t0 < t_hi && h > 0.0) {
        return Err(Error::Domain(format!("need t_lo < {} < t_hi and h > 0", seed.t0)));
    }
    let n_lo = ((seed.t0 - t_lo) / h).ceil() as usize;
    let n_hi = ((t_hi - seed.t0) / h).ceil() as usize;
    let run = |steps: usize, dir: f64| -> Result<Vec<[f64; 2]>> {
        let mut y = [seed.v0, seed.vt0];
        let mut out = Vec::with_capacity(steps);
        for i in 0..steps {
            let t = seed.t0 + dir * i as f64 * h;
            y = rk4_step(&rhs, t, &y, dir * h);
            if !(y[0].is_finite() && y[0].abs() < BLOW_UP) {
                let tb = t + dir * h;
                return Err(Error::BlowUp { t: tb, r: r_of_t(tb) });
            }
            out.push(y);
        }
        Ok(out)
    };
    let down = run(n_lo, -1.0)?;
    let up = run(n_hi, 1.0)?;
    let start = seed.t0 - n_lo as f64 * h;
    let states: Vec<[f64; 2]> = down.into_iter().rev().chain(std::iter::once([seed.v0, seed.vt0])).chain(up).collect();
    Ok(ODESolution {
        t: (0..states.len()).map(|i| start + i as f64 * h).collect(),
        v: states.iter().map(|s| s[0]).collect(),
        vt: states.iter().map(|s| s[1]).collect(),
        step: h,
        seed,
    })
}

impl ODESolution {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Radii of the grid points (decreasing).
    pub fn radii(&self) -> Vec<f64> {
        self.t.iter().map(|&t| r_of_t(t)).collect()
    }

    /// Cubic Hermite interpolation of `v` at `t`.
    pub fn v_at_t(&self, t: f64) -> Option<f64> {
        let x = (t - self.t[0]) / self.step;
        if !(x >= 0.0 && x <= (self.len() - 1) as f64) {
            return None;
        }
        let i = (x.floor() as usize).min(self.len() - 2);
        let s = x - i as f64;
        let h = self.step;
        let (p0, p1, m0, m1) = (self.v[i], self.v[i + 1], self.vt[i] * h, self.vt[i + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        Some((2.0 * s3 - 3.0 * s2 + 1.0) * p0 + (s3 - 2.0 * s2 + s) * m0 + (-2.0 * s3 + 3.0 * s2) * p1 + (s3 - s2) * m1)
    }

    pub fn v_at_r(&self, r: f64) -> Option<f64> {
        self.v_at_t(t_of_r(r))
    }

    /// `v_tt` by fourth-order differences of `v_t`.
    pub fn vtt_differenced(&self) -> Vec<f64> {
        derivative_samples(&self.vt, self.step, 1)
    }

    /// `max |v_tt − (9/4)eᵗ(1+eᵗ)⁻⁴v³| / max(1, |rhs|)` over the grid.
    pub fn residual(&self) -> f64 {
        self.vtt_differenced()
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let f = coupling(self.t[i]) * self.v[i].powi(3);
                (d - f).abs() / f.abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }

    /// Smallest differenced `v_tt` on the grid.
    pub fn min_vtt(&self) -> f64 {
        self.vtt_differenced().into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Smallest `w = r^{3/2} v` on the grid.
    pub fn min_w(&self) -> f64 {
        self.t.iter().zip(&self.v).map(|(&t, v)| r_of_t(t).powf(1.5) * v).fold(f64::INFINITY, f64::min)
    }
}

/// The critical point `v'(ρ) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub rho: f64,
    pub t: f64,
    pub v: f64,
    /// `w(ρ) = ρ^{3/2} v(ρ)`.
    pub w: f64,
    /// `v_t` left at the refined point.
    pub vt: f64,
    pub sign_changes: usize,
}

/// Locate the unique sign change of `v_t` and refine it by bisection on
/// the length of a single RK4 step from the bracketing node.
pub fn find_rho(sol: &ODESolution) -> Result<CriticalPoint> {
    let idx: Vec<usize> = (0..sol.len() - 1).filter(|&i| (sol.vt[i] > 0.0) != (sol.vt[i + 1] > 0.0)).collect();
    match idx.len() {
        0 => return Err(Error::NoSignChange),
        1 => {}
        count => return Err(Error::Uniqueness { count }),
    }
    let i = idx[0];
    let y0 = [sol.v[i], sol.vt[i]];
    let sign0 = y0[1] > 0.0;
    let (mut a, mut b) = (0.0, sol.step);
    let mut t = sol.t[i];
    while (r_of_t(sol.t[i] + a) - r_of_t(sol.t[i] + b)).abs() > 1e-13 {
        let mid = 0.5 * (a + b);
        let y = rk4_step(&rhs, sol.t[i], &y0, mid);
        if (y[1] > 0.0) == sign0 {
            a = mid;
        } else {
            b = mid;
        }
        t = sol.t[i] + 0.5 * (a + b);
    }
    let y = rk4_step(&rhs, sol.t[i], &y0, t - sol.t[i]);
    let rho = r_of_t(t);
    Ok(CriticalPoint { rho, t, v: y[0], w: rho.powf(1.5) * y[0], vt: y[1], sign_changes: 1 })
}

/// `ṽ = r^{-3/2}(1 − r)^{-1/2}(1 − 2r/3)`.
pub fn vtilde(r: f64) -> f64 {
    r.powf(-1.5) * (1.0 - r).powf(-0.5) * (1.0 - 2.0 * r / 3.0)
}

/// `(7 − √13)/4`, the root of `2r² − 7r + 9/2` in `(0, 1)`.
pub fn rho_tilde_closed() -> f64 {
    (7.0 - 13f64.sqrt()) / 4.0
}

/// Root of `(log ṽ)' = −3/(2r) + 1/(2(1−r)) − 2/(3 − 2r)` by bisection.
pub fn rho_tilde_numeric() -> f64 {
    let g = |r: f64| -1.5 / r + 0.5 / (1.0 - r) - 2.0 / (3.0 - 2.0 * r);
    let (mut a, mut b) = (0.5, 0.99);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if g(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VtildeReport {
    pub rho_tilde: f64,
    pub rho_tilde_closed: f64,
    /// `sup |ṽ − v|/v` on `[0.1, 0.9]`.
    pub sup_relative: f64,
    /// RMS of `(ṽ − v)/v` on `[0.1, 0.9]`.
    pub l2_relative: f64,
    /// `r^{3/2} ṽ` at `r = 10⁻⁸`.
    pub leading_limit: f64,
}

pub fn vtilde_compare(series: &RationalSeries, sol: &ODESolution) -> Result<VtildeReport> {
    let v = |r: f64| -> Result<f64> {
        if r <= sol.seed.r0 {
            Ok(series.eval_v(r)[0])
        } else {
            sol.v_at_r(r).ok_or_else(|| Error::Domain(format!("r = {r} outside the solution")))
        }
    };
    let n = 801;
    let mut sup: f64 = 0.0;
    let mut sq = Vec::with_capacity(n);
    for i in 0..n {
        let r = 0.1 + 0.8 * i as f64 / (n - 1) as f64;
        let vr = v(r)?;
        let d = (vtilde(r) - vr) / vr;
        sup = sup.max(d.abs());
        sq.push(d * d);
    }
    let l2 = (crate::quadrature::simpson(&sq, 0.8 / (n - 1) as f64)? / 0.8).sqrt();
    Ok(VtildeReport {
        rho_tilde: rho_tilde_numeric(),
        rho_tilde_closed: rho_tilde_closed(),
        sup_relative: sup,
        l2_relative: l2,
        leading_limit: 1e-12 * vtilde(1e-8),
    })
}

/// The deformation `V = v/v(ρ)` on `r < ρ`, `V = 1` beyond, at mass `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VDeformation {
    pub m: f64,
    /// Critical point in `m = ½` units.
    pub rho_scaled: f64,
    /// `2m ρ`.
    pub rho: f64,
    pub v_rho: f64,
    pub w_rho: f64,
    /// `V(ρ⁻)`, `V(ρ⁺)`.
    pub value_match: (f64, f64),
    /// `V'(ρ⁻)`, `V'(ρ⁺)`.
    pub slope_match: (f64, f64),
    /// `V''(ρ⁺) − V''(ρ⁻)` in physical units.
    pub second_derivative_jump: f64,
    /// Coupling of `ΔV + ΛV³ = 0` in physical units: `(9/2) v(ρ)² / 4m²`.
    pub lambda: f64,
    /// `6Λ`.
    pub rbar: f64,
    /// `108 m² ρ_s⁻³ w(ρ)²` with `ρ_s` in `m = ½` units.
    pub rbar_printed: f64,
    /// `R(V² g)` inside, from the transformation law with the metric's own
    /// Laplace–Beltrami operator.
    pub rbar_direct: f64,
    /// Radius where `rbar_direct` was evaluated.
    pub rbar_direct_radius: f64,
    pub proper_time: ProperTimeFit,
}

/// `τ(ε) = ∫_ε^ρ V (2m/r − 1)^{-1/2} dr` against `log(1/ε)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProperTimeFit {
    pub epsilons: Vec<f64>,
    pub taus: Vec<f64>,
    pub slope: f64,
    /// `(2m)^{-1/2} ρ^{3/2} w(0) / w(ρ)`.
    pub expected_slope: f64,
    pub relative_error: f64,
    pub r_squared: f64,
}

/// `v` in `m = ½` units, from the series up to the seed radius and from
/// the integrated solution beyond.
pub fn v_scaled(series: &RationalSeries, sol: &ODESolution, r: f64) -> Result<f64> {
    if r <= sol.seed.r0 {
        Ok(series.eval_v(r)[0])
    } else {
        sol.v_at_r(r).ok_or_else(|| Error::Domain(format!("r = {r} outside the solution")))
    }
}

pub fn v_deformation(series: &RationalSeries, sol: &ODESolution, m: f64) -> Result<VDeformation> {
    if !(m > 0.0) {
        return Err(Error::Domain(format!("mass {m} must be positive")));
    }
    let cp = find_rho(sol)?;
    let two_m = 2.0 * m;
    let rho = two_m * cp.rho;
    let v_rho = cp.v;
    let big_v = |r: f64| -> Result<f64> {
        if r >= rho {
            Ok(1.0)
        } else {
            Ok(v_scaled(series, sol, r / two_m)? / v_rho)
        }
    };
    let lambda = 4.5 * v_rho * v_rho / (two_m * two_m);
    // V'' inside at ρ from (q v')' = −(9/4) r² v³ with v' = 0
    let vrr_inside = 2.25 * cp.rho * v_rho * v_rho / (1.0 - cp.rho) / (two_m * two_m);
    // dV/dr = v_t / (r(r − 1) v(ρ)) in m = ½ units
    let slope_left = cp.vt / (cp.rho * (cp.rho - 1.0) * v_rho * two_m);

    // R(V² g) at an interior radius, series region, true Laplacian of the metric
    let r_probe = two_m * (0.5 * cp.rho).min(0.15);
    let metric = RNParams::schwarzschild(m)?.metric();
    let vfun = |x: &[f64]| series.eval_v(x[1] / two_m)[0] / v_rho;
    let x = [0.0, r_probe, 1.1, 0.4];
    let lap = metric.laplacian_at(&vfun, &x, 1e-3 * r_probe);
    let vp = vfun(&x);
    let rbar_direct = vp.powi(-3) * (-6.0 * lap);

    let proper_time = proper_time_fit(series, sol, m, cp)?;
    Ok(VDeformation {
        m,
        rho_scaled: cp.rho,
        rho,
        v_rho,
        w_rho: cp.w,
        value_match: (big_v(rho * (1.0 - 1e-14))?, 1.0),
        slope_match: (slope_left, 0.0),
        second_derivative_jump: -vrr_inside,
        lambda,
        rbar: 6.0 * lambda,
        rbar_printed: 108.0 * m * m * cp.rho.powi(-3) * cp.w * cp.w,
        rbar_direct,
        rbar_direct_radius: r_probe,
        proper_time,
    })
}

fn proper_time_fit(series: &RationalSeries, sol: &ODESolution, m: f64, cp: CriticalPoint) -> Result<ProperTimeFit> {
    let two_m = 2.0 * m;
    let rho = two_m * cp.rho;
    let epsilons: Vec<f64> = (4..=9).map(|j| 10f64.powi(-j)).collect();
    // r = eˣ
    let integrand = |x: f64| {
        let r = x.exp();
        let v = v_scaled(series, sol, r / two_m).unwrap_or(f64::NAN) / cp.v;
        v * r / (two_m / r - 1.0).sqrt()
    };
    let taus: Vec<f64> = epsilons
        .iter()
        .map(|&e| adaptive_simpson(integrand, e.ln(), rho.ln(), 1e-11).map(|q| q.value))
        .collect::<Result<_>>()?;
    let xs: Vec<f64> = epsilons.iter().map(|e| (1.0 / e).ln()).collect();
    let (slope, _, r2) = linear_fit(&xs, &taus);
    let expected = two_m.powf(-0.5) * rho.powf(1.5) / cp.w;
    Ok(ProperTimeFit {
        epsilons,
        taus,
        slope,
        expected_slope: expected,
        relative_error: (slope / expected - 1.0).abs(),
        r_squared: r2,
    })
}

/// `u_Λ = 3 (2Λ)^{-1/2} v`.
pub fn u_lambda(lambda: f64, v: f64) -> f64 {
    3.0 / (2.0 * lambda).sqrt() * v
}

/// Pointwise check of `Δu + Λu³ = 0`, `Δ = 2r⁻²(r(r−1)u')'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FullSolutionCheck {
    pub lambda: f64,
    pub prefactor: f64,
    /// Worst `|Δu + Λu³| / (Λ|u|³)` on the series segment `[0.01, r₀]`.
    pub series_residual: f64,
    /// Same on the integrated segment, `u_tt` by differences.
    pub ode_residual: f64,
    pub max_residual: f64,
}

pub fn full_solution_check(series: &RationalSeries, sol: &ODESolution, lambda: f64) -> Result<FullSolutionCheck> {
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!("Λ = {lambda} must be positive")));
    }
    let p = u_lambda(lambda, 1.0);
    let rel = |lap: f64, u: f64| (lap + lambda * u.powi(3)).abs() / (lambda * u.abs().powi(3));
    let n = 64;
    let mut series_residual: f64 = 0.0;
    for i in 0..=n {
        let r = 0.01 + (sol.seed.r0 - 0.01) * i as f64 / n as f64;
        let [v, dv, ddv] = series.eval_v(r);
        let q = r * (r - 1.0);
        let lap = 2.0 / (r * r) * ((2.0 * r - 1.0) * dv + q * ddv) * p;
        series_residual = series_residual.max(rel(lap, p * v));
    }
    let vtt = sol.vtt_differenced();
    let mut ode_residual: f64 = 0.0;
    for i in 0..sol.len() {
        let r = r_of_t(sol.t[i]);
        // (q u')' = −u_tt / (r(1 − r))
        let lap = -2.0 * p * vtt[i] / (r.powi(3) * (1.0 - r));
        ode_residual = ode_residual.max(rel(lap, p * sol.v[i]));
    }
    Ok(FullSolutionCheck {
        lambda,
        prefactor: p,
        series_residual,
        ode_residual,
        max_residual: series_residual.max(ode_residual),
    })
}

/// Default grid used by the command-line experiment and the examples.
pub fn default_solution(series: &RationalSeries, r0: f64, h: f64) -> Result<ODESolution> {
    integrate_v(series, r0, t_of_r(0.995), t_of_r(0.01), h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yamabe_ode::series::{rational, w_recurrence};

    fn solution(order: usize, r0: f64, h: f64) -> (RationalSeries, ODESolution) {
        let s = w_recurrence(order);
        let sol = default_solution(&s, r0, h).unwrap();
        (s, sol)
    }

    #[test]
    fn seeds_agree_across_orders() {
        let (a, sa) = solution(30, 0.1, 1e-3);
        let (b, sb) = solution(40, 0.1, 1e-3);
        let (x, y) = (seed_from_series(&a, 0.1), seed_from_series(&b, 0.1));
        assert!((x.v0 - y.v0).abs() < 1e-12 && (x.vt0 - y.vt0).abs() < 1e-12);
        let sup = sa.v.iter().zip(&sb.v).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        assert!(sup < 1e-9, "{sup}");
    }

    #[test]
    fn solution_is_convex_and_accurate() {
        let (_, sol) = solution(60, 0.1, 1e-3);
        assert!(sol.residual() < 1e-8);
        assert!(sol.min_vtt() > 0.0);
        assert!(sol.min_w() > 0.0);
    }

    #[test]
    fn series_and_integration_agree() {
        let (s, sol) = solution(60, 0.1, 1e-3);
        for i in 0..=28 {
            let r = 0.02 + 0.01 * i as f64;
            let a = s.eval_v(r)[0];
            let b = sol.v_at_r(r).unwrap();
            assert!((a / b - 1.0).abs() < 1e-8, "{r}: {a} {b}");
        }
    }

    #[test]
    fn critical_point_is_stable() {
        let (_, base) = solution(60, 0.1, 1e-3);
        let rho = find_rho(&base).unwrap().rho;
        // step halving agrees to 1e-8, coarser steps to 1e-6
        for (order, r0, h, tol) in [(40, 0.1, 1e-3, 1e-8), (60, 0.2, 1e-3, 1e-8), (60, 0.1, 5e-4, 1e-8), (60, 0.05, 2e-3, 1e-6)] {
            let (_, sol) = solution(order, r0, h);
            let other = find_rho(&sol).unwrap().rho;
            assert!((rho - other).abs() < tol, "{order} {r0} {h}: {other}");
        }
        assert!((rho - rho_tilde_closed()).abs() < 0.10);
    }

    #[test]
    fn rejects_bad_seeds() {
        let s = w_recurrence(60);
        assert!(integrate_v(&s, 0.3, -3.0, 3.0, 1e-3).is_err());
        assert!(integrate_v(&w_recurrence(10), 0.1, -3.0, 3.0, 1e-3).is_err());
    }

    #[test]
    fn no_critical_point_on_short_range() {
        let s = w_recurrence(30);
        let sol = integrate_v(&s, 0.1, t_of_r(0.5), t_of_r(0.05), 1e-3).unwrap();
        assert_eq!(find_rho(&sol), Err(Error::NoSignChange));
    }

    #[test]
    fn vtilde_root() {
        assert!((rho_tilde_numeric() - rho_tilde_closed()).abs() < 1e-10);
        assert!((1e-12 * vtilde(1e-8) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn deformation_matches_at_rho() {
        let (s, sol) = solution(60, 0.1, 1e-3);
        let d = v_deformation(&s, &sol, 0.5).unwrap();
        assert!((d.value_match.0 - 1.0).abs() < 1e-12);
        assert!(d.slope_match.0.abs() < 1e-9);
        assert!((d.rbar - d.rbar_printed).abs() < 1e-6 * d.rbar);
        assert!((d.rbar - 27.0 * d.v_rho * d.v_rho).abs() < 1e-9);
        assert!(d.proper_time.relative_error < 0.02);
        // the metric's own Laplacian gives R(V²g) = −3Λ
        assert!((d.rbar_direct + 3.0 * d.lambda).abs() < 1e-5 * d.lambda);
    }

    #[test]
    fn lambda_scaling_is_exact() {
        let (s, sol) = solution(30, 0.1, 1e-3);
        assert_eq!(u_lambda(4.5, 1.2345), 1.2345);
        for &v in sol.v.iter().step_by(97) {
            assert_eq!(u_lambda(4.0, v), 0.5 * u_lambda(1.0, v));
        }
        for lambda in [1.0, 4.0] {
            assert!(full_solution_check(&s, &sol, lambda).unwrap().max_residual < 1e-8);
        }
    }

    #[test]
    fn corrupted_series_is_detected() {
        let (s, sol) = solution(30, 0.1, 1e-3);
        let bad = s.with_coefficient(1, s.coefficients()[1].clone() + rational(1, 1000));
        assert!(full_solution_check(&bad, &sol, 1.0).unwrap().series_residual > 1e-6);
        assert!(matches!(default_solution(&bad, 0.1, 1e-3), Err(Error::BlowUp { .. })));
    }
}
