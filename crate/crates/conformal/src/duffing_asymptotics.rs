//! The interior equation in Duffing form,
//!
//! ```text
//! x'' + δ₁ x' + δ₀² x = (9/4) x³,
//! δ₁ = (3eᵗ + 2 − e⁻ᵗ)/(eᵗ + 2 + e⁻ᵗ) = 3 − 4r,
//! δ₀² = (9eᵗ + 2 + e⁻ᵗ)/(4(eᵗ + 2 + e⁻ᵗ)) = (9 − 16r + 8r²)/4,
//! ```
//!
//! with `r = 1/(1 + eᵗ)`, and the asymptotic expansion `y ∼ Σ yₖ t⁻ᵏ` of
//! `x = ⅔ δ₀ y`. Writing `F(y) = Ly + y − y³` with
//! `L = δ₀⁻³(∂ + δ₁)∂δ₀`, each correction solves `(2 − L) y_{n+1} = E_{n+1}`
//! where `E_{n+1} = t^{n+1} F(y(n))`.
//!
//! Functions with limits at both ends are sampled on `[−T, T]`. Near
//! `t = 0` the powers `t⁻ᵏ` are multiplied by a smooth cutoff that vanishes
//! for `|t| ≤ 2` and equals one for `|t| ≥ 6`.

use serde::{Deserialize, Serialize};

use crate::banded::BandedMatrix;
use crate::diff::{derivative_samples, uniform_stencil};
use crate::error::{Error, Result};
use crate::schwarzschild_interior::linear_fit;
use crate::yamabe_ode::shoot::ODESolution;

/// Cutoff radii for `t⁻ᵏ`.
pub const CUTOFF_INNER: f64 = 2.0;
pub const CUTOFF_OUTER: f64 = 6.0;
/// Window `|t| ∈ [20, 40]` for residual slopes.
pub const FIT_WINDOW: (f64, f64) = (20.0, 40.0);

/// `r = 1/(1 + eᵗ)` and `1 − r`, each without cancellation.
pub fn radius_pair(t: f64) -> (f64, f64) {
    (1.0 / (1.0 + t.exp()), 1.0 / (1.0 + (-t).exp()))
}

/// `δ₁(t) = 3 − 4r`.
pub fn delta1(t: f64) -> f64 {
    let (r, rc) = radius_pair(t);
    // 3 − 4r = 3rc − r
    3.0 * rc - r
}

/// `δ₀², δ₀, δ₀', δ₀''` at `t`.
pub fn delta0_jet(t: f64) -> [f64; 4] {
    let (r, rc) = radius_pair(t);
    // 9 − 16r + 8r² = 9rc² + 2r rc + r²
    let s = 0.25 * (9.0 * rc * rc + 2.0 * r * rc + r * r);
    let s1 = 4.0 * r * rc * rc;
    let s2 = -4.0 * r * rc * rc * (1.0 - 3.0 * r);
    let d = s.sqrt();
    [s, d, s1 / (2.0 * d), s2 / (2.0 * d) - s1 * s1 / (4.0 * d * d * d)]
}

/// `ε₁ = 2δ₀' + δ₁δ₀`, `ε₀ = δ₀'' + δ₁δ₀'`.
pub fn epsilons(t: f64) -> (f64, f64) {
    let [_, d, d1, d2] = delta0_jet(t);
    let e1 = delta1(t);
    (2.0 * d1 + e1 * d, d2 + e1 * d1)
}

/// `v₀ = ⅓(1 + 8(1 + e⁻ᵗ)⁻²)^{1/2}`.
pub fn v0(t: f64) -> f64 {
    (1.0 + 8.0 * (1.0 + (-t).exp()).powi(-2)).sqrt() / 3.0
}

/// `v₀` in the radial form `⅓(1 + 8(1 − r)²)^{1/2}`.
pub fn v0_radial(r: f64) -> f64 {
    (1.0 + 8.0 * (1.0 - r).powi(2)).sqrt() / 3.0
}

/// `x₀ = ⅔ δ₀`.
pub fn x0(t: f64) -> f64 {
    2.0 / 3.0 * delta0_jet(t)[1]
}

/// Smooth step, `0` for `s ≤ a`, `1` for `s ≥ b`.
pub fn cutoff(s: f64) -> f64 {
    let bump = |x: f64| if x > 0.0 { (-1.0 / x).exp() } else { 0.0 };
    let x = (s.abs() - CUTOFF_INNER) / (CUTOFF_OUTER - CUTOFF_INNER);
    let a = bump(x);
    let b = bump(1.0 - x);
    if a + b == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

/// Uniform grid on `[−T, T]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TGrid {
    pub t: Vec<f64>,
    pub h: f64,
    pub half_width: f64,
}

impl TGrid {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width > 0.0) || points < 16 {
            return Err(Error::Grid(format!("need T > 0 and at least 16 points, got {half_width}, {points}")));
        }
        let h = 2.0 * half_width / (points - 1) as f64;
        Ok(Self { t: (0..points).map(|i| -half_width + i as f64 * h).collect(), h, half_width })
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.t.iter().map(|&t| f(t)).collect()
    }

    /// Indices with `|t|` in the outer tenth of the grid, per side.
    fn outer(&self) -> (Vec<usize>, Vec<usize>) {
        let cut = 0.9 * self.half_width;
        let left = (0..self.len()).filter(|&i| self.t[i] <= -cut).collect();
        let right = (0..self.len()).filter(|&i| self.t[i] >= cut).collect();
        (left, right)
    }
}

/// Evidence that sampled data behave like a function with limits at both
/// ends and rapidly decaying derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayCertificate {
    /// `max(|f(−T) − ℓ₋|, |f(T) − ℓ₊|)`.
    pub edge_gap: f64,
    /// `sup |f'|` on the outer tenth.
    pub outer_derivative_sup: f64,
    /// `|f'|` non-increasing outward on the outer tenth (above `1e−12`).
    pub monotone_decay: bool,
    pub pass: bool,
}

/// Samples with declared limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ACFunction {
    pub samples: Vec<f64>,
    /// `(ℓ₋, ℓ₊)`.
    pub limits: (f64, f64),
    pub certificate: DecayCertificate,
}

const EDGE_TOL: f64 = 1e-6;
const NOISE: f64 = 1e-12;

impl ACFunction {
    pub fn new(grid: &TGrid, samples: Vec<f64>, limits: (f64, f64)) -> Self {
        let d = derivative_samples(&samples, grid.h, 1);
        let (left, right) = grid.outer();
        let n = samples.len();
        let edge_gap = (samples[0] - limits.0).abs().max((samples[n - 1] - limits.1).abs());
        let outer_derivative_sup = left.iter().chain(&right).map(|&i| d[i].abs()).fold(0.0, f64::max);
        // outward: decreasing index on the left, increasing on the right
        let mono = |idx: &[usize], outward_up: bool| {
            idx.windows(2).all(|w| {
                let (inner, outer) = if outward_up { (w[0], w[1]) } else { (w[1], w[0]) };
                d[outer].abs() <= d[inner].abs() * (1.0 + 1e-9) || d[outer].abs() < NOISE
            })
        };
        let monotone_decay = mono(&left, false) && mono(&right, true);
        let pass = edge_gap <= EDGE_TOL && monotone_decay;
        Self { samples, limits, certificate: DecayCertificate { edge_gap, outer_derivative_sup, monotone_decay, pass } }
    }

    /// Limits read off the edge samples.
    pub fn from_samples(grid: &TGrid, samples: Vec<f64>) -> Self {
        let limits = (samples[0], samples[samples.len() - 1]);
        Self::new(grid, samples, limits)
    }
}

/// `δ₁` and `δ₀²` with their limits `(−1, 3)` and `(1/4, 9/4)`.
pub fn duffing_coefficients(grid: &TGrid) -> Result<(ACFunction, ACFunction)> {
    if grid.half_width < 40.0 {
        return Err(Error::Grid(format!("need T >= 40, got {}", grid.half_width)));
    }
    Ok((
        ACFunction::new(grid, grid.sample(delta1), (-1.0, 3.0)),
        ACFunction::new(grid, grid.sample(|t| delta0_jet(t)[0]), (0.25, 2.25)),
    ))
}

pub fn v0_profile(grid: &TGrid) -> ACFunction {
    ACFunction::new(grid, grid.sample(v0), (1.0 / 3.0, 1.0))
}

pub fn x0_stationary(grid: &TGrid) -> ACFunction {
    ACFunction::new(grid, grid.sample(x0), (1.0 / 3.0, 1.0))
}

/// `max |δ₀² x₀ − (9/4) x₀³|` on the grid.
pub fn stationary_balance(grid: &TGrid) -> f64 {
    grid.t
        .iter()
        .map(|&t| {
            let s = delta0_jet(t)[0];
            let x = x0(t);
            (s * x - 2.25 * x.powi(3)).abs()
        })
        .fold(0.0, f64::max)
}

/// `Ly` through the factored form `δ₀⁻³(∂ + δ₁)∂(δ₀ y)`, all derivatives
/// by differences.
pub fn l_apply_factored(grid: &TGrid, y: &[f64]) -> Vec<f64> {
    let d0: Vec<f64> = grid.sample(|t| delta0_jet(t)[1]);
    let p: Vec<f64> = d0.iter().zip(y).map(|(a, b)| a * b).collect();
    let p1 = derivative_samples(&p, grid.h, 1);
    let p2 = derivative_samples(&p1, grid.h, 1);
    (0..y.len()).map(|i| (p2[i] + delta1(grid.t[i]) * p1[i]) / d0[i].powi(3)).collect()
}

/// `Ly = δ₀⁻³(δ₀ y'' + ε₁ y' + ε₀ y)` with closed-form coefficients.
pub fn l_apply(grid: &TGrid, y: &[f64]) -> Vec<f64> {
    let y1 = derivative_samples(y, grid.h, 1);
    let y2 = derivative_samples(y, grid.h, 2);
    (0..y.len())
        .map(|i| {
            let t = grid.t[i];
            let d = delta0_jet(t)[1];
            let (e1, e0) = epsilons(t);
            (d * y2[i] + e1 * y1[i] + e0 * y[i]) / d.powi(3)
        })
        .collect()
}

/// `F(1 + z) = δ₀⁻³ε₀ + (L − 2)z − 3z² − z³`.
pub fn residual_of_perturbation(grid: &TGrid, z: &[f64]) -> Vec<f64> {
    let lz = l_apply(grid, z);
    (0..z.len())
        .map(|i| {
            let t = grid.t[i];
            let (_, e0) = epsilons(t);
            let d = delta0_jet(t)[1];
            e0 / d.powi(3) + lz[i] - 2.0 * z[i] - 3.0 * z[i] * z[i] - z[i].powi(3)
        })
        .collect()
}

/// Solve `(2 − L) y = e` with `y' = 0` at both ends.
pub fn solve_two_minus_l(grid: &TGrid, e: &[f64]) -> Result<Vec<f64>> {
    let n = grid.len();
    if e.len() != n {
        return Err(Error::GridMismatch);
    }
    let mut a = BandedMatrix::zeros(n, 4, 4);
    let mut b = e.to_vec();
    for i in 0..n {
        if i == 0 || i == n - 1 {
            let (s, w) = uniform_stencil(i, n, grid.h, 1);
            for k in 0..5 {
                a.set(i, s + k, w[k]);
            }
            b[i] = 0.0;
            continue;
        }
        let t = grid.t[i];
        let d = delta0_jet(t)[1];
        let (e1, e0) = epsilons(t);
        let c3 = d.powi(3);
        let (s1, w1) = uniform_stencil(i, n, grid.h, 1);
        let (s2, w2) = uniform_stencil(i, n, grid.h, 2);
        a.add(i, i, 2.0 - e0 / c3);
        for k in 0..5 {
            a.add(i, s1 + k, -e1 / c3 * w1[k]);
            a.add(i, s2 + k, -d / c3 * w2[k]);
        }
    }
    a.solve(&b)
}

/// The partial sum `y(n) = 1 + Σ χ(t) yₖ t⁻ᵏ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSeries {
    pub grid: TGrid,
    /// `y₁ … y_n` (`y₀ = 1` is implicit).
    pub corrections: Vec<ACFunction>,
}

/// One step of the induction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub n: usize,
    /// Slope of `log|F(y(n))|` against `log|t|` on the left and right windows.
    pub slopes: (f64, f64),
    pub r_squared: (f64, f64),
    /// `max |F(y(n))|` on the fit windows.
    pub window_sup: f64,
    pub bound: f64,
    pub pass: bool,
    pub inconclusive: bool,
}

impl AsymptoticSeries {
    pub fn leading(grid: TGrid) -> Self {
        Self { grid, corrections: Vec::new() }
    }

    pub fn order(&self) -> usize {
        self.corrections.len()
    }

    /// `z = y(n) − 1`.
    pub fn perturbation(&self) -> Vec<f64> {
        let mut z = vec![0.0; self.grid.len()];
        for (k, yk) in self.corrections.iter().enumerate() {
            let p = (k + 1) as i32;
            for (i, &t) in self.grid.t.iter().enumerate() {
                let c = cutoff(t);
                if c != 0.0 {
                    z[i] += c * yk.samples[i] * t.powi(-p);
                }
            }
        }
        z
    }

    /// `F(y(n))`.
    pub fn residual(&self) -> Vec<f64> {
        residual_of_perturbation(&self.grid, &self.perturbation())
    }

    /// `E_{n+1} = t^{n+1} F(y(n))`.
    pub fn error_coefficient(&self) -> Vec<f64> {
        let p = (self.order() + 1) as i32;
        self.residual().iter().zip(&self.grid.t).map(|(f, t)| f * t.powi(p)).collect()
    }

    /// Append `y_{n+1} = (2 − L)⁻¹ E_{n+1}`.
    pub fn correction_step(&self) -> Result<Self> {
        let e = self.error_coefficient();
        let y = solve_two_minus_l(&self.grid, &e)?;
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::Step(format!("non-finite correction at order {}", self.order() + 1)));
        }
        let mut next = self.clone();
        next.corrections.push(ACFunction::from_samples(&self.grid, y));
        Ok(next)
    }

    /// Same series with correction `k` (1-based) scaled by `1 + rel`.
    pub fn perturbed(&self, k: usize, rel: f64) -> Self {
        let mut s = self.clone();
        for v in &mut s.corrections[k - 1].samples {
            *v *= 1.0 + rel;
        }
        s
    }

    /// Fit `log|F|` against `log|t|` on `|t| ∈ [20, 40]` at both ends.
    pub fn residual_decay(&self) -> Result<StepReport> {
        let (lo, hi) = FIT_WINDOW;
        if self.grid.half_width - hi < 10.0 {
            return Err(Error::Grid(format!("fit window needs T >= {}", hi + 10.0)));
        }
        let f = self.residual();
        let fit = |sign: f64| {
            let (xs, ys): (Vec<f64>, Vec<f64>) = self
                .grid
                .t
                .iter()
                .zip(&f)
                .filter(|(t, v)| sign * **t >= lo && sign * **t <= hi && v.abs() > 0.0)
                .map(|(t, v)| (t.abs().ln(), v.abs().ln()))
                .unzip();
            let (s, _, r2) = linear_fit(&xs, &ys);
            (s, r2)
        };
        let (sl, rl) = fit(-1.0);
        let (sr, rr) = fit(1.0);
        let window_sup = self
            .grid
            .t
            .iter()
            .zip(&f)
            .filter(|(t, _)| t.abs() >= lo && t.abs() <= hi)
            .map(|(_, v)| v.abs())
            .fold(0.0, f64::max);
        let n = self.order();
        let bound = -(n as f64 + 1.0) + 0.3;
        let inconclusive = rl < 0.95 || rr < 0.95;
        Ok(StepReport {
            n,
            slopes: (sl, sr),
            r_squared: (rl, rr),
            window_sup,
            bound,
            pass: sl <= bound && sr <= bound && !inconclusive,
            inconclusive,
        })
    }
}

/// How the extracted `E₁` compares with `t(δ₀'' + δ₁δ₀')`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct E1Comparison {
    /// `max |E₁ − tε₀| / max |tε₀|` on `|t| ≤ 20`.
    pub without_prefactor: f64,
    /// `max |E₁ − tδ₀⁻³ε₀| / max |tδ₀⁻³ε₀|` on `|t| ≤ 20`.
    pub with_prefactor: f64,
}

/// `E₁` from the factored (differenced) `L` applied to `1`.
pub fn e1_comparison(grid: &TGrid) -> E1Comparison {
    let ones = vec![1.0; grid.len()];
    let l1 = l_apply_factored(grid, &ones);
    let idx: Vec<usize> = (0..grid.len()).filter(|&i| grid.t[i].abs() <= 20.0).collect();
    let cmp = |g: &dyn Fn(f64) -> f64| {
        let (num, den) = idx.iter().fold((0.0f64, 0.0f64), |(a, b), &i| {
            let t = grid.t[i];
            let e = t * l1[i];
            (a.max((e - g(t)).abs()), b.max(g(t).abs()))
        });
        num / den
    };
    E1Comparison {
        without_prefactor: cmp(&|t| t * epsilons(t).1),
        with_prefactor: cmp(&|t| t * epsilons(t).1 / delta0_jet(t)[1].powi(3)),
    }
}

/// `max |x'' + δ₁x' + δ₀²x − (9/4)x³|` for `x = r^{3/2}(1−r)^{1/2} v` built
/// from an integrated `v`, derivatives by differences in `t`.
pub fn transplant_residual(sol: &ODESolution) -> f64 {
    let x: Vec<f64> = sol
        .t
        .iter()
        .zip(&sol.v)
        .map(|(&t, &v)| {
            let (r, rc) = radius_pair(t);
            r.powf(1.5) * rc.sqrt() * v
        })
        .collect();
    let x1 = derivative_samples(&x, sol.step, 1);
    let x2 = derivative_samples(&x, sol.step, 2);
    (0..x.len())
        .map(|i| {
            let t = sol.t[i];
            (x2[i] + delta1(t) * x1[i] + delta0_jet(t)[0] * x[i] - 2.25 * x[i].powi(3)).abs()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_values() {
        assert!((delta1(0.0) - 1.0).abs() < 1e-15);
        assert!((delta0_jet(0.0)[0] - 0.75).abs() < 1e-15);
        let e = (1.3f64).exp();
        let printed1 = (3.0 * e + 2.0 - 1.0 / e) / (e + 2.0 + 1.0 / e);
        let printed0 = (9.0 * e + 2.0 + 1.0 / e) / (4.0 * (e + 2.0 + 1.0 / e));
        assert!((delta1(1.3) - printed1).abs() < 1e-14);
        assert!((delta0_jet(1.3)[0] - printed0).abs() < 1e-14);
    }

    #[test]
    fn jet_matches_differences() {
        for t in [-3.0, -0.5, 0.0, 0.7, 4.0] {
            let [_, _, d1, d2] = delta0_jet(t);
            let f = |s: f64| delta0_jet(s)[1];
            assert!((crate::diff::d1(f, t, 1e-3) - d1).abs() < 1e-11);
            assert!((crate::diff::d2(f, t, 1e-3) - d2).abs() < 1e-8);
        }
    }

    #[test]
    fn cutoff_shape() {
        assert_eq!(cutoff(1.0), 0.0);
        assert_eq!(cutoff(-2.0), 0.0);
        assert_eq!(cutoff(7.0), 1.0);
        assert!((cutoff(4.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn v0_values() {
        assert!((v0(0.0) - 3f64.sqrt() / 3.0).abs() < 1e-15);
        for i in 0..20 {
            let t = -9.5 + i as f64;
            let (r, _) = radius_pair(t);
            assert!((v0(t) - v0_radial(r)).abs() < 1e-12);
            assert!((v0(t) - x0(t)).abs() < 1e-12);
        }
    }
}
