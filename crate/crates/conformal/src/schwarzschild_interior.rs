//! Reissner–Nordström interior: the harmonic conformal family, the kinked
//! factor `U`, its distributional curvature, the conformal Ricci
//! eigenvalues and radial geodesics.
//!
//! Coordinates are `(t, r, φ, θ)` with
//!
//! ```text
//! g = diag(q/r², −r²/q, −r², −r² sin²φ),   q = r² − 2mr + e² = (r − m − D)(r − m + D)
//! ```
//!
//! Region II is `m − D < r < m + D`, where `q < 0` and `r` is timelike.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curvature::RADIAL_LAPLACIAN_NORMALIZATION;
use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::metric::{DiagonalMetric, Geometry};
use crate::quadrature::adaptive_simpson;

/// Mass and charge, `m > 0`, `m² > e²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RNParams {
    m: f64,
    e: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// `r > m + D`
    I,
    /// `m − D < r < m + D`
    II,
    /// `0 < r < m − D`
    III,
    /// `r` on a horizon
    Horizon,
}

impl RNParams {
    pub fn new(m: f64, e: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite() && e.is_finite()) {
            return Err(Error::Domain(format!("need m > 0, got m = {m}, e = {e}")));
        }
        if e * e >= m * m {
            return Err(Error::Discriminant);
        }
        Ok(Self { m, e })
    }

    pub fn schwarzschild(m: f64) -> Result<Self> {
        Self::new(m, 0.0)
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    /// `D = (m² − e²)^{1/2}`.
    pub fn d(&self) -> f64 {
        ((self.m - self.e) * (self.m + self.e)).sqrt()
    }

    /// `(m − D, m + D)`.
    pub fn horizons(&self) -> (f64, f64) {
        (self.m - self.d(), self.m + self.d())
    }

    pub fn q(&self, r: f64) -> f64 {
        let (a, b) = self.horizons();
        (r - a) * (r - b)
    }

    pub fn q_prime(&self, r: f64) -> f64 {
        2.0 * (r - self.m)
    }

    pub fn region(&self, r: f64) -> Region {
        let (a, b) = self.horizons();
        if r == a || r == b {
            Region::Horizon
        } else if r > a && r < b {
            Region::II
        } else if r > b {
            Region::I
        } else {
            Region::III
        }
    }

    fn off_horizon(&self, r: f64) -> Result<()> {
        let (a, b) = self.horizons();
        let tol = 1e-12 * self.m;
        if (r - a).abs() <= tol || (r - b).abs() <= tol {
            return Err(Error::Domain(format!("r = {r} is on a horizon")));
        }
        if r <= 0.0 {
            return Err(Error::Domain(format!("r = {r} is not positive")));
        }
        Ok(())
    }

    /// The metric as a [`DiagonalMetric`] in `(t, r, φ, θ)`, `R = 0`.
    pub fn metric(&self) -> DiagonalMetric {
        let p = *self;
        DiagonalMetric::new(format!("Reissner-Nordstrom m={} e={}", p.m, p.e), 4, 3, move |x, g| {
            let r = x[1];
            let q = p.q(r);
            let s = x[2].sin();
            g[0] = q / (r * r);
            g[1] = -r * r / q;
            g[2] = -r * r;
            g[3] = -r * r * s * s;
        })
        .with_analytic_scalar(|_| 0.0)
    }

    /// Radial geometry on `[a, b]` (nodes off `0` and both horizons).
    /// The transverse volume is `4π` (sphere) times unit coordinate time.
    pub fn geometry(&self, a: f64, b: f64, n: usize) -> Result<Geometry> {
        let (h1, h2) = self.horizons();
        let grid = RadialGrid::gauss_legendre(a, b, n)?
            .with_transverse_volume(4.0 * std::f64::consts::PI)
            .with_singular(&[0.0, h1, h2])?;
        Geometry::new(self.metric(), Arc::new(grid), 1, vec![0.0, 0.0, std::f64::consts::FRAC_PI_2, 0.0])
    }
}

/// Smoothness of a profile at its matching radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Smoothness {
    C0,
    C1,
    CInf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
enum ProfileKind {
    Harmonic { k: f64, c: f64 },
    Kinked,
    Constant,
}

/// A positive radial conformal factor, possibly piecewise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConformalProfile {
    params: RNParams,
    kind: ProfileKind,
    /// Radius where the pieces meet, if any.
    pub matching_radius: Option<f64>,
    pub smoothness: Smoothness,
    /// `f'(r₀⁺) − f'(r₀⁻)` for a C⁰ match.
    pub declared_jump: f64,
}

impl ConformalProfile {
    /// `u ≡ 1`.
    pub fn constant(params: RNParams) -> Self {
        Self { params, kind: ProfileKind::Constant, matching_radius: None, smoothness: Smoothness::CInf, declared_jump: 0.0 }
    }

    pub fn value(&self, r: f64) -> f64 {
        let p = &self.params;
        match self.kind {
            ProfileKind::Constant => 1.0,
            ProfileKind::Harmonic { k, c } => c + k / (2.0 * p.d()) * log_ratio(p, r),
            ProfileKind::Kinked => {
                if r < p.m {
                    1.0 + p.d() / p.m * log_ratio(p, r)
                } else {
                    1.0
                }
            }
        }
    }

    /// Closed-form derivative (one-sided from the left at the match).
    pub fn derivative(&self, r: f64) -> f64 {
        let p = &self.params;
        match self.kind {
            ProfileKind::Constant => 0.0,
            ProfileKind::Harmonic { k, .. } => k / p.q(r),
            ProfileKind::Kinked => {
                if r <= p.m {
                    2.0 * p.d() * p.d() / (p.m * p.q(r))
                } else {
                    0.0
                }
            }
        }
    }

    /// `(q f')'` with the closed-form `f'` and a central difference of the flux.
    /// Proportional to the radial Laplacian; zero for harmonic profiles.
    pub fn flux_divergence(&self, r: f64, h: f64) -> f64 {
        crate::diff::d1(|s| self.params.q(s) * self.derivative(s), r, h)
    }

    /// One-sided derivatives at the matching radius by fourth-order
    /// one-sided differences: `(left, right, right − left)`.
    pub fn measured_jump(&self, h: f64) -> Option<(f64, f64, f64)> {
        let r0 = self.matching_radius?;
        let f = |x: f64| self.value(x);
        let w = [25.0 / 12.0, -4.0, 3.0, -4.0 / 3.0, 0.25];
        let left = (0..5).map(|i| w[i] * f(r0 - i as f64 * h)).sum::<f64>() / h;
        let right = -(0..5).map(|i| w[i] * f(r0 + i as f64 * h)).sum::<f64>() / h;
        Some((left, right, right - left))
    }
}

fn log_ratio(p: &RNParams, r: f64) -> f64 {
    let (a, b) = p.horizons();
    ((r - b) / (r - a)).abs().ln()
}

/// `u = c + (k/2D) log|(r − m − D)/(r − m + D)|`, so `u' = k/q`.
pub fn harmonic_u(params: RNParams, k: f64, c: f64) -> ConformalProfile {
    ConformalProfile {
        params,
        kind: ProfileKind::Harmonic { k, c },
        matching_radius: None,
        smoothness: Smoothness::CInf,
        declared_jump: 0.0,
    }
}

/// Evaluate a harmonic profile, refusing horizons.
pub fn harmonic_value(params: RNParams, k: f64, c: f64, r: f64) -> Result<f64> {
    params.off_horizon(r)?;
    Ok(harmonic_u(params, k, c).value(r))
}

/// `U = 1 + (D/m) log|(r − m − D)/(r − m + D)|` on `(m − D, m)`, `U = 1` for `r ≥ m`.
pub fn u_factor(params: RNParams) -> ConformalProfile {
    ConformalProfile {
        params,
        kind: ProfileKind::Kinked,
        matching_radius: Some(params.m),
        smoothness: Smoothness::C0,
        // U'(m⁻) = 2D²/(m q(m)) = −2/m, U'(m⁺) = 0
        declared_jump: 2.0 / params.m,
    }
}

/// Polynomial bump `(1 − s²)⁴`, `s = (r − m)/w`, with its first two derivatives.
fn bump(r: f64, m: f64, w: f64) -> (f64, f64, f64) {
    let s = (r - m) / w;
    if s.abs() >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    let a = 1.0 - s * s;
    let v = a.powi(4);
    let d1 = -8.0 * s * a.powi(3) / w;
    let d2 = (-8.0 * a.powi(3) + 48.0 * s * s * a * a) / (w * w);
    (v, d1, d2)
}

/// δ coefficients of `ΔU` and of the conformal scalar curvature at `r = m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeakDelta {
    pub bump_width: f64,
    /// `c` in `ΔU = c δ_m` for the operator `2r⁻²(q f')'`, δ taken in the
    /// radial coordinate against `dvol = r² dr Ω dt`.
    pub laplacian_coefficient: f64,
    /// `−6 × laplacian_coefficient`, from `R̄ = −6 u⁻³ Δu` at `u(m) = 1`.
    pub curvature_coefficient: f64,
    /// The same coefficients for the Laplace–Beltrami operator.
    pub laplace_beltrami_coefficient: f64,
    pub laplace_beltrami_curvature_coefficient: f64,
    /// `4 m⁻³ D²`, the printed Laplacian coefficient.
    pub printed_laplacian: f64,
    /// `−24 m⁻³ D²`, the printed curvature coefficient.
    pub printed_curvature: f64,
}

/// Pair `ΔU` with a bump `ψ` centred at `m`: `⟨ΔU, ψ⟩ = ∫ U · 2(qψ')' dr`,
/// then normalize by `m² ψ(m)`.
pub fn weak_delta_check(profile: &ConformalProfile, params: RNParams, width: Option<f64>) -> Result<WeakDelta> {
    let (m, d) = (params.m, params.d());
    let w = width.unwrap_or(0.25 * d);
    let (h1, h2) = params.horizons();
    if !(w > 0.0) || m - w <= h1 || m + w >= h2 {
        return Err(Error::Support(format!("bump of half-width {w} around {m} reaches a horizon")));
    }
    let integrand = |r: f64| {
        let (_, d1, d2) = bump(r, m, w);
        profile.value(r) * 2.0 * (params.q_prime(r) * d1 + params.q(r) * d2)
    };
    let left = adaptive_simpson(integrand, m - w, m, 1e-13)?.value;
    let right = adaptive_simpson(integrand, m, m + w, 1e-13)?.value;
    let c = (left + right) / (m * m);
    let lb = c / RADIAL_LAPLACIAN_NORMALIZATION;
    let scale = d * d / m.powi(3);
    Ok(WeakDelta {
        bump_width: w,
        laplacian_coefficient: c,
        curvature_coefficient: -6.0 * c,
        laplace_beltrami_coefficient: lb,
        laplace_beltrami_curvature_coefficient: -6.0 * lb,
        printed_laplacian: 4.0 * scale,
        printed_curvature: -24.0 * scale,
    })
}

/// Diagonal of `P^i_k` for `u' = k/q`:
/// `k r⁻² q⁻¹ q' u [1,−1,0,0] + 2k r⁻³ u [−1,−1,1,1] + k² r⁻² q⁻¹ [1,−3,1,1]`.
pub fn p_eigenvalues(params: RNParams, k: f64, u: f64, r: f64) -> Result<[f64; 4]> {
    params.off_horizon(r)?;
    let q = params.q(r);
    let qp = params.q_prime(r);
    let a = k * qp * u / (r * r * q);
    let b = 2.0 * k * u / r.powi(3);
    let c = k * k / (r * r * q);
    Ok([a - b + c, -a - b - 3.0 * c, b + c, b + c])
}

/// A real root of `det P^i_k` at `r = m`, `u = 1`, viewed as a polynomial in `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KRoot {
    pub k: f64,
    pub multiplicity: usize,
}

/// Roots of the determinant in `k`, with the printed root flagged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeterminantRoots {
    pub roots: Vec<KRoot>,
    /// `2D²/m`.
    pub printed_root: f64,
    pub printed_root_present: bool,
    /// Number of distinct nonzero roots; the text claims one.
    pub distinct_nonzero: usize,
    pub unique: bool,
    /// `max |det P(k)|` at the reported roots, relative to the scale of the entries.
    pub max_residual: f64,
}

/// At `r = m`: `q = −D²`, `q' = 0`, and each diagonal entry is
/// `α k + β k²`, so its roots are `0` and `−α/β`. The `δ` cutoff term is
/// excluded from the count.
pub fn determinant_roots(params: RNParams) -> DeterminantRoots {
    let (m, d) = (params.m, params.d());
    let d2 = d * d;
    // entries: α k + β k²
    let coeffs = [
        (-2.0 / m.powi(3), -1.0 / (m * m * d2)),
        (-2.0 / m.powi(3), 3.0 / (m * m * d2)),
        (2.0 / m.powi(3), -1.0 / (m * m * d2)),
        (2.0 / m.powi(3), -1.0 / (m * m * d2)),
    ];
    let mut roots: Vec<KRoot> = vec![KRoot { k: 0.0, multiplicity: 4 }];
    for (a, b) in coeffs {
        let k = -a / b;
        match roots.iter_mut().find(|r| (r.k - k).abs() <= 1e-12 * k.abs().max(1.0)) {
            Some(r) => r.multiplicity += 1,
            None => roots.push(KRoot { k, multiplicity: 1 }),
        }
    }
    roots.sort_by(|a, b| a.k.total_cmp(&b.k));
    let printed = 2.0 * d2 / m;
    let max_residual = roots
        .iter()
        .map(|r| {
            let p = p_eigenvalues(params, r.k, 1.0, m).expect("r = m is off the horizons");
            let scale = (2.0 * r.k.abs() / m.powi(3) + r.k * r.k / (m * m * d2)).max(1e-300);
            p.iter().product::<f64>().abs() / scale.powi(4)
        })
        .fold(0.0, f64::max);
    let distinct_nonzero = roots.iter().filter(|r| r.k != 0.0).count();
    DeterminantRoots {
        printed_root_present: roots.iter().any(|r| (r.k - printed).abs() <= 1e-12 * printed),
        roots,
        printed_root: printed,
        distinct_nonzero,
        unique: distinct_nonzero == 1,
        max_residual,
    }
}

/// Proper time along a radial timelike geodesic down to `r → 0⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicReport {
    pub r_start: f64,
    pub b: f64,
    /// Total proper time from `r_start` to the origin, if no turning point.
    pub proper_time: Option<f64>,
    /// Radius where `b² + (2m/r − 1)U²` first vanishes, if any.
    pub turning_point: Option<f64>,
    /// `(dτ/dr) / ((2m)^{-1/2} r^{1/2} U)` at `r_probe`.
    pub asymptotic_ratio: f64,
    /// `τ(0 → r_probe) / ∫_0^{r_probe} (2m)^{-1/2} r^{1/2} U dr`.
    pub integrated_ratio: f64,
    pub r_probe: f64,
}

/// `dτ/dr = U² / (b² + (2m/r − 1)U²)^{1/2}`; Schwarzschild case only.
pub fn radial_geodesic(params: RNParams, profile: &ConformalProfile, b: f64, r_start: f64, r_probe: f64) -> Result<GeodesicReport> {
    if params.e != 0.0 {
        return Err(Error::Domain("radial geodesics are implemented for e = 0".into()));
    }
    let m = params.m;
    if !(r_start > 0.0 && r_start < 2.0 * m) {
        return Err(Error::Domain(format!("start radius {r_start} outside region II (0, {})", 2.0 * m)));
    }
    let bracket = |r: f64| {
        let u = profile.value(r);
        b * b + (2.0 * m / r - 1.0) * u * u
    };
    let rate = |r: f64| {
        let u = profile.value(r);
        u * u / bracket(r).sqrt()
    };
    // scan for a turning point on (0, r_start]
    let scan = 4000;
    let mut turning_point = None;
    for i in (1..=scan).rev() {
        let r = r_start * i as f64 / scan as f64;
        if !(bracket(r) > 0.0) {
            turning_point = Some(r);
            break;
        }
    }
    // r = σ²: dτ = 2σ rate(σ²) dσ, regular at σ = 0
    let integrand = |s: f64| if s == 0.0 { 0.0 } else { 2.0 * s * rate(s * s) };
    let proper_time = match turning_point {
        Some(_) => None,
        None => Some(adaptive_simpson(integrand, 0.0, r_start.sqrt(), 1e-12)?.value),
    };
    let law = |r: f64| (2.0 * m).powf(-0.5) * r.sqrt() * profile.value(r);
    let asymptotic_ratio = rate(r_probe) / law(r_probe);
    let num = adaptive_simpson(integrand, 0.0, r_probe.sqrt(), 1e-16)?.value;
    let den = adaptive_simpson(|s: f64| if s == 0.0 { 0.0 } else { 2.0 * s * law(s * s) }, 0.0, r_probe.sqrt(), 1e-16)?.value;
    Ok(GeodesicReport { r_start, b, proper_time, turning_point, asymptotic_ratio, integrated_ratio: num / den, r_probe })
}

/// Classical interior fall time from `r` to `0` with `U ≡ 1`, `b = 0`:
/// `2m (arcsin √(r/2m) − √(r/2m) √(1 − r/2m))`.
pub fn classical_fall_time(m: f64, r: f64) -> f64 {
    let x = (r / (2.0 * m)).sqrt();
    2.0 * m * (x.asin() - x * (1.0 - x * x).sqrt())
}

/// Integrability of a harmonic factor and of its gradient on region II.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LebesgueReport {
    pub epsilons: Vec<f64>,
    /// `∫ |u|⁴ r² dr` over `[m−D+ε, m+D−ε]`.
    pub l4_integrals: Vec<f64>,
    /// `∫ |u'|²_g r² dr = ∫ k²/|q| dr` over the same range.
    pub gradient_integrals: Vec<f64>,
    /// Slope of the gradient integral against `log(1/ε)`.
    pub gradient_log_slope: f64,
    /// Expected slope `k²/D` (two horizons, `|q| ≈ 2D|r − r_h|`).
    pub expected_log_slope: f64,
    pub u_in_l4: bool,
    pub grad_u_in_l2_globally: bool,
}

/// Integrate `f` over `[a+ε, b−ε]` with logarithmic variables at both ends.
fn integrate_to_horizons(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let half = mid - a;
    let left = adaptive_simpson(|s: f64| { let t = s.exp(); f(a + t) * t }, eps.ln(), half.ln(), 1e-10)?.value;
    let right = adaptive_simpson(|s: f64| { let t = s.exp(); f(b - t) * t }, eps.ln(), half.ln(), 1e-10)?.value;
    Ok(left + right)
}

pub fn lebesgue_class_report(params: RNParams, k: f64) -> Result<LebesgueReport> {
    let (a, b) = params.horizons();
    let u = harmonic_u(params, k, 1.0);
    let epsilons: Vec<f64> = (2..=8).map(|j| 10f64.powi(-j) * params.d()).collect();
    let l4: Vec<f64> = epsilons
        .iter()
        .map(|&e| integrate_to_horizons(&|r| u.value(r).powi(4) * r * r, a, b, e))
        .collect::<Result<_>>()?;
    let grad: Vec<f64> = epsilons
        .iter()
        .map(|&e| integrate_to_horizons(&|r| k * k / params.q(r).abs(), a, b, e))
        .collect::<Result<_>>()?;
    let xs: Vec<f64> = epsilons.iter().map(|e| (1.0 / e).ln()).collect();
    let (slope, _, _) = linear_fit(&xs, &grad);
    // L⁴: increments shrink monotonically and the last is negligible
    let inc: Vec<f64> = l4.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let l4_converges = inc.last().copied().unwrap_or(0.0) <= 1e-3 * l4.last().unwrap().abs().max(1e-300)
        && inc.windows(2).all(|w| w[1] < w[0] || w[1] < 1e-12);
    let expected = k * k / params.d();
    Ok(LebesgueReport {
        epsilons,
        l4_integrals: l4,
        gradient_integrals: grad,
        gradient_log_slope: slope,
        expected_log_slope: expected,
        u_in_l4: l4_converges,
        grad_u_in_l2_globally: !(slope > 1e-9 && k != 0.0),
    })
}

/// Least squares `y ≈ a x + c`; returns `(a, c, R²)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let syy: f64 = y.iter().map(|b| (b - my) * (b - my)).sum();
    let a = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (a, my - a * mx, r2)
}

/// `|g_{(v,w,θ,φ)}|^{1/2} · (dv∧dw / dr∧dt) − r² sin φ` at `(r, φ)`.
///
/// `v − w = 2 r*`, `r*' = r²/q`, so `dv∧dw = 2 r*' dr∧dt`, and the `(v, w)`
/// block of the metric is `q/(2r²)` off the diagonal.
pub fn null_volume_residual(params: RNParams, r: f64, phi: f64) -> Result<f64> {
    params.off_horizon(r)?;
    let q = params.q(r);
    // r*' by differencing r* = ∫ r²/q from a fixed base point in the same region
    let base = r - 0.1 * (r - params.horizons().0).abs().min((params.horizons().1 - r).abs());
    let rstar = |x: f64| adaptive_simpson(|s: f64| s * s / params.q(s), base, x, 1e-14).map(|v| v.value).unwrap_or(f64::NAN);
    let h = 1e-4 * (r - base).abs();
    let drstar = crate::diff::d1(rstar, r, h);
    let block = q / (2.0 * r * r);
    let sqrt_det = block.abs() * r * r * phi.sin();
    Ok((sqrt_det * 2.0 * drstar.abs() - r * r * phi.sin()).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_classifier() {
        let p = RNParams::new(1.0, 0.6).unwrap();
        assert!((p.d() - 0.8).abs() < 1e-15);
        assert_eq!(p.region(1.0), Region::II);
        assert_eq!(p.region(0.1), Region::III);
        assert_eq!(p.region(2.0), Region::I);
        assert!((p.q(1.0) + 0.64).abs() < 1e-15);
        assert_eq!(RNParams::new(1.0, 1.0), Err(Error::Discriminant));
    }

    #[test]
    fn u_factor_reference_point() {
        let p = RNParams::schwarzschild(1.0).unwrap();
        let r = 2.0 / (1.0 + std::f64::consts::E);
        assert!((u_factor(p).value(r) - 2.0).abs() < 1e-14);
        assert_eq!(u_factor(p).value(1.5), 1.0);
    }

    #[test]
    fn p_vector_at_reference_point() {
        let p = RNParams::schwarzschild(1.0).unwrap();
        let v = p_eigenvalues(p, 2.0, 1.0, 1.0).unwrap();
        assert_eq!(v, [-8.0, 8.0, 0.0, 0.0]);
    }

    #[test]
    fn classical_fall_time_at_horizon() {
        assert!((classical_fall_time(1.0, 2.0) - std::f64::consts::PI).abs() < 1e-14);
    }
}

#[cfg(test)]
mod oracle_tests {
    use super::*;
    use crate::curvature::{conformal_ricci_p_at, laplace_beltrami_radial};

    #[test]
    fn harmonic_profile_is_harmonic() {
        let p = RNParams::new(1.0, 0.6).unwrap();
        let u = harmonic_u(p, 0.7, 2.0);
        let q = |r: f64| p.q(r);
        let f = |r: f64| u.value(r);
        for r in [0.4, 0.8, 1.0, 1.3, 1.6] {
            assert!(u.flux_divergence(r, 1e-3).abs() < 1e-8);
            // fully numerical operator, fourth order in h
            assert!(laplace_beltrami_radial(&q, &f, r, 1e-3).unwrap().abs() < 1e-7);
            assert!((crate::diff::d1(f, r, 1e-4) - 0.7 / p.q(r)).abs() < 1e-9);
        }
        assert!(crate::diff::d2(f, 1.0, 1e-3).abs() < 1e-9);
    }

    #[test]
    fn u_factor_is_a_harmonic_branch() {
        let p = RNParams::new(1.3, 0.5).unwrap();
        let h = harmonic_u(p, 2.0 * p.d() * p.d() / p.m(), 1.0);
        let u = u_factor(p);
        let (a, _) = p.horizons();
        for i in 1..20 {
            let r = a + (p.m() - a) * i as f64 / 20.0;
            assert_eq!(u.value(r), h.value(r));
        }
    }

    #[test]
    fn measured_jump_matches_declared() {
        for (m, e) in [(1.0, 0.0), (1.0, 0.6), (2.0, 1.0)] {
            let p = RNParams::new(m, e).unwrap();
            let u = u_factor(p);
            let (l, r, j) = u.measured_jump(1e-4).unwrap();
            assert!((l + 2.0 / m).abs() < 1e-8, "{l}");
            assert!(r.abs() < 1e-8);
            assert!((j - u.declared_jump).abs() < 1e-8);
        }
    }

    #[test]
    fn weak_delta_coefficient() {
        let p = RNParams::new(1.0, 0.6).unwrap();
        let w = weak_delta_check(&u_factor(p), p, None).unwrap();
        // operator 2r⁻²(qψ')' gives −4m⁻³D²; Laplace–Beltrami gives +2m⁻³D²
        assert!((w.laplacian_coefficient + 2.56).abs() < 1e-8, "{}", w.laplacian_coefficient);
        assert!((w.laplace_beltrami_coefficient - 1.28).abs() < 1e-8);
        assert!((w.curvature_coefficient + 6.0 * w.laplacian_coefficient).abs() < 1e-12);
        assert!((w.laplacian_coefficient.abs() - w.printed_laplacian).abs() < 1e-8);
        let smooth = weak_delta_check(&harmonic_u(p, 0.4, 1.0), p, None).unwrap();
        assert!(smooth.laplacian_coefficient.abs() < 1e-9);
        let flat = weak_delta_check(&ConformalProfile::constant(p), p, None).unwrap();
        assert!(flat.laplacian_coefficient.abs() < 1e-12);
    }

    #[test]
    fn weak_delta_rejects_wide_bump() {
        let p = RNParams::new(1.0, 0.6).unwrap();
        assert!(matches!(weak_delta_check(&u_factor(p), p, Some(0.9)), Err(Error::Support(_))));
    }

    #[test]
    fn determinant_roots_in_k() {
        let p = RNParams::new(1.0, 0.6).unwrap();
        let d = determinant_roots(p);
        let d2 = 0.64;
        let ks: Vec<f64> = d.roots.iter().map(|r| r.k).collect();
        let expect = [-2.0 * d2, 0.0, 2.0 * d2 / 3.0, 2.0 * d2];
        for (a, b) in ks.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(d.roots.iter().map(|r| r.multiplicity).collect::<Vec<_>>(), vec![1, 4, 1, 2]);
        assert!(d.printed_root_present);
        assert!(!d.unique);
        assert!(d.max_residual < 1e-12);
    }

    #[test]
    fn p_vector_matches_finite_differences() {
        let p = RNParams::new(1.0, 0.6).unwrap();
        let metric = p.metric();
        let base = [0.0, 0.0, 1.1, 0.3];
        for (k, c) in [(0.3, 2.0), (-0.5, 3.0), (1.28, 1.0)] {
            let h = harmonic_u(p, k, c);
            let u = |r: f64| h.value(r);
            for r in [0.6, 1.0, 1.4] {
                let fd = conformal_ricci_p_at(&metric, 1, &base, &u, r, 1e-3).unwrap();
                let an = p_eigenvalues(p, k, u(r), r).unwrap();
                for i in 0..4 {
                    assert!((fd[i] - an[i]).abs() < 1e-6 * (1.0 + an[i].abs()), "{r} {i} {} {}", fd[i], an[i]);
                }
            }
        }
    }

    #[test]
    fn classical_geodesic() {
        let p = RNParams::schwarzschild(1.0).unwrap();
        let g = radial_geodesic(p, &ConformalProfile::constant(p), 0.0, 1.5, 1e-5).unwrap();
        let tau = g.proper_time.unwrap();
        assert!((tau - classical_fall_time(1.0, 1.5)).abs() < 1e-9, "{tau}");
        assert!((g.asymptotic_ratio - 1.0).abs() < 1e-2);
    }

    #[test]
    fn deformed_geodesic_is_finite() {
        let p = RNParams::schwarzschild(1.0).unwrap();
        let g = radial_geodesic(p, &u_factor(p), 1.0, 1.9, 1e-5).unwrap();
        assert!(g.turning_point.is_none());
        assert!(g.proper_time.unwrap().is_finite() && g.proper_time.unwrap() > 0.0);
        assert!((g.asymptotic_ratio - 1.0).abs() < 1e-2, "{}", g.asymptotic_ratio);
        assert!((g.integrated_ratio - 1.0).abs() < 1e-2, "{}", g.integrated_ratio);
    }

    #[test]
    fn large_b_limit() {
        let p = RNParams::schwarzschild(1.0).unwrap();
        let u = u_factor(p);
        let b = 1e6;
        let g = radial_geodesic(p, &u, b, 1.5, 1e-5).unwrap();
        let oracle = crate::quadrature::adaptive_simpson(|r| u.value(r).powi(2) / b, 1e-12, 1.5, 1e-16).unwrap().value;
        assert!((g.proper_time.unwrap() / oracle - 1.0).abs() < 1e-4);
    }

    #[test]
    fn lebesgue_classification() {
        for e in [0.0, 0.6] {
            let p = RNParams::new(1.0, e).unwrap();
            let rep = lebesgue_class_report(p, 1.0).unwrap();
            assert!(rep.u_in_l4);
            assert!(!rep.grad_u_in_l2_globally);
            assert!((rep.gradient_log_slope / rep.expected_log_slope - 1.0).abs() < 1e-3, "{}", rep.gradient_log_slope);
        }
        let rep = lebesgue_class_report(RNParams::new(1.0, 0.0).unwrap(), 0.0).unwrap();
        assert!(rep.u_in_l4 && rep.grad_u_in_l2_globally);
    }

    #[test]
    fn null_volume_identity() {
        let p = RNParams::new(1.0, 0.6).unwrap();
        for r in [0.1, 0.5, 1.0, 1.7, 2.5] {
            assert!(null_volume_residual(p, r, 0.8).unwrap() < 1e-8);
        }
    }
}
