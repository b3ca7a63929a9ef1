//! One-dimensional quadrature: composite Simpson with Richardson
//! extrapolation, adaptive Simpson, Gauss–Legendre and the periodic
//! trapezoid rule.

use crate::error::{Error, Result};

/// Composite Simpson weights for `n` equally spaced nodes with spacing `h`.
///
/// `n` must be odd and at least 3.
pub fn simpson_weights(n: usize, h: f64) -> Result<Vec<f64>> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Grid(format!("Simpson needs an odd node count >= 3, got {n}")));
    }
    let mut w = vec![0.0; n];
    for (i, wi) in w.iter_mut().enumerate() {
        *wi = if i == 0 || i == n - 1 {
            h / 3.0
        } else if i % 2 == 1 {
            4.0 * h / 3.0
        } else {
            2.0 * h / 3.0
        };
    }
    Ok(w)
}

/// Composite Simpson sum of equally spaced samples.
pub fn simpson(samples: &[f64], h: f64) -> Result<f64> {
    let w = simpson_weights(samples.len(), h)?;
    Ok(w.iter().zip(samples).map(|(a, b)| a * b).sum())
}

/// Simpson on the full grid and on every second node, combined by one
/// Richardson step (error order 4 → 6 for smooth integrands).
///
/// Needs `samples.len() - 1` divisible by 4.
pub fn simpson_richardson(samples: &[f64], h: f64) -> Result<f64> {
    let n = samples.len();
    if n < 5 || (n - 1) % 4 != 0 {
        return Err(Error::Grid(format!(
            "Richardson-Simpson needs 4k+1 nodes, got {n}"
        )));
    }
    let fine = simpson(samples, h)?;
    let coarse: Vec<f64> = samples.iter().step_by(2).copied().collect();
    let coarse = simpson(&coarse, 2.0 * h)?;
    Ok(fine + (fine - coarse) / 15.0)
}

/// Result of an adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Adaptive Simpson with the Lyness correction on each accepted panel.
///
/// Fails with [`Error::Divergence`] if the recursion depth is exhausted
/// without meeting `tol`, or if the integrand is not finite.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    const MAX_DEPTH: u32 = 100;
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut evals = 3;
    let mut err = 0.0;
    if !(fa.is_finite() && fb.is_finite() && fm.is_finite()) {
        return Err(Error::Divergence(format!("integrand not finite on [{a}, {b}]")));
    }
    let value = step(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH, &mut evals, &mut err)?;
    if !value.is_finite() {
        return Err(Error::Divergence("non-finite quadrature value".into()));
    }
    Ok(Quadrature { value, error_estimate: err, evaluations: evals })
}

#[allow(clippy::too_many_arguments)]
fn step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    evals: &mut usize,
    err: &mut f64,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    *evals += 2;
    if !flm.is_finite() || !frm.is_finite() {
        return Err(Error::Divergence(format!("integrand not finite near {m}")));
    }
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // below this the difference is rounding noise in the panel sums
    let noise = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if delta.abs() <= 15.0 * tol.max(noise) || (b - a).abs() < 1e-15 * (1.0 + a.abs()) {
        *err += delta.abs() / 15.0;
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Divergence(format!(
            "adaptive Simpson did not converge on [{a}, {b}]"
        )));
    }
    let l = step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals, err)?;
    let r = step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals, err)?;
    Ok(l + r)
}

/// Gauss–Legendre nodes and weights on `[a, b]`.
///
/// Nodes come from Newton iteration on the Legendre recurrence, seeded by
/// the Tricomi approximation; accurate to rounding for n up to a few hundred.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = mid - half * z;
        x[n - 1 - i] = mid + half * z;
        w[i] = half * wi;
        w[n - 1 - i] = half * wi;
    }
    (x, w)
}

fn legendre(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Periodic trapezoid sum over one period sampled at `n` nodes.
pub fn periodic_trapezoid(samples: &[f64], period: f64) -> f64 {
    let h = period / samples.len() as f64;
    h * samples.iter().sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_is_exact_on_cubics() {
        let h = 0.25;
        let s: Vec<f64> = (0..9).map(|i| (i as f64 * h).powi(3)).collect();
        // ∫_0^2 x^3 dx = 4
        assert!((simpson(&s, h).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn richardson_beats_plain_simpson() {
        let n = 33;
        let h = PI / (n - 1) as f64;
        let s: Vec<f64> = (0..n).map(|i| (i as f64 * h).sin()).collect();
        let plain = (simpson(&s, h).unwrap() - 2.0).abs();
        let rich = (simpson_richardson(&s, h).unwrap() - 2.0).abs();
        assert!(rich < plain / 10.0);
    }

    #[test]
    fn adaptive_simpson_handles_sqrt_endpoint() {
        let q = adaptive_simpson(|x: f64| x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((q.value - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn gauss_legendre_integrates_degree_2n_minus_1() {
        let (x, w) = gauss_legendre(6, -1.0, 2.0);
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(11)).sum();
        let exact = (2.0f64.powi(12) - 1.0) / 12.0;
        assert!((v - exact).abs() < 1e-10 * exact);
        assert!((w.iter().sum::<f64>() - 3.0).abs() < 1e-13);
    }

    #[test]
    fn periodic_trapezoid_is_spectral() {
        let n = 32;
        let s: Vec<f64> = (0..n)
            .map(|i| (2.0 * PI * i as f64 / n as f64).cos().exp())
            .collect();
        // 2π I0(1)
        let exact = 2.0 * PI * 1.266_065_877_752_008_4;
        assert!((periodic_trapezoid(&s, 2.0 * PI) - exact).abs() < 1e-13);
    }
}
