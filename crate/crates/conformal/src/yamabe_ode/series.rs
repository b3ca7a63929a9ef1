//! Exact power series for `w`, where `v = r^{-3/2} w` and
//!
//! ```text
//! 4r²(r−1) w'' + 4r(2−r) w' + 3(r−3) w + 9 w³ = 0,   w(0) = 1.
//! ```
//!
//! Matching `rⁿ` gives
//!
//! ```text
//! (−4n² + 12n + 18) wₙ + (4(n−1)(n−2) − 4(n−1) + 3) wₙ₋₁ + 9 Cₙ = 0
//! ```
//!
//! with `Cₙ` the part of `(w³)ₙ` free of `wₙ`. The leading factor has
//! irrational roots, so every `wₙ` is determined.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `w₂` as printed alongside the series: `−165/26²`.
pub fn printed_w2() -> BigRational {
    rational(-165, 676)
}

pub fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `r^α (w₀ + w₁ r + … + w_N r^N)` with exact coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSeries {
    exponent: BigRational,
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    /// A series from given coefficients (used for controls and mutations).
    pub fn from_coefficients(exponent: BigRational, coeffs: Vec<BigRational>) -> Self {
        Self { exponent, coeffs }
    }

    pub fn exponent(&self) -> &BigRational {
        &self.exponent
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> Option<&BigRational> {
        self.coeffs.get(k)
    }

    pub fn coefficients_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Same series with coefficient `k` replaced.
    pub fn with_coefficient(&self, k: usize, value: BigRational) -> Self {
        let mut s = self.clone();
        s.coeffs[k] = value;
        s
    }

    /// `w(r), w'(r), w''(r)` of the polynomial part, by Horner.
    pub fn eval(&self, r: f64) -> [f64; 3] {
        let c = self.coefficients_f64();
        let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
        for &a in c.iter().rev() {
            ddp = ddp * r + 2.0 * dp;
            dp = dp * r + p;
            p = p * r + a;
        }
        [p, dp, ddp]
    }

    /// `v = r^α w`, and `dv/dr`, `d²v/dr²`.
    pub fn eval_v(&self, r: f64) -> [f64; 3] {
        let a = self.exponent.to_f64().unwrap_or(f64::NAN);
        let [w, w1, w2] = self.eval(r);
        let p = r.powf(a);
        [
            p * w,
            p * (w1 + a * w / r),
            p * (w2 + 2.0 * a * w1 / r + a * (a - 1.0) * w / (r * r)),
        ]
    }
}

/// Coefficients `w₀ … w_N` by the recurrence, with an `O(N²)` running
/// square `S = w²`.
pub fn w_recurrence(n: usize) -> RationalSeries {
    let mut w: Vec<BigRational> = vec![BigRational::one()];
    let mut sq: Vec<BigRational> = vec![BigRational::one()];
    for k in 1..=n {
        let ki = k as i64;
        // S_k without the 2 w_k w_0 term
        let mut s_rest = BigRational::zero();
        for i in 1..k {
            s_rest += &w[i] * &w[k - i];
        }
        // (w³)_k = w_k + (s_rest + 2 w_k) + Σ_{j=1}^{k−1} S_j w_{k−j}
        let mut c = s_rest.clone();
        for j in 1..k {
            c += &sq[j] * &w[k - j];
        }
        let prev = rational(4 * (ki - 1) * (ki - 2) - 4 * (ki - 1) + 3, 1);
        let lead = rational(-4 * ki * ki + 12 * ki + 18, 1);
        let wk = -(prev * &w[k - 1] + rational(9, 1) * c) / lead;
        sq.push(s_rest + rational(2, 1) * &wk);
        w.push(wk);
    }
    RationalSeries { exponent: rational(-3, 2), coeffs: w }
}

/// Lowest order at which the truncated series fails the equation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualOrder {
    /// `None` if the substituted polynomial vanishes identically.
    pub order: Option<usize>,
    /// Coefficient at that order, as `"p/q"`.
    pub coefficient: Option<String>,
}

/// Substitute the polynomial part into the w-equation term by term with
/// full (untruncated) products. Works on integer numerators over a common
/// denominator `L`, so the residual is `L⁻³` times an integer polynomial.
pub fn w_equation_residual(series: &RationalSeries) -> ResidualOrder {
    let l = series.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let w: Vec<BigInt> = series.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let n = w.len();
    let deg = 3 * (n - 1) + 1;
    let mut lin = vec![BigInt::zero(); deg + 1];
    for (k, c) in w.iter().enumerate() {
        let ki = k as i64;
        // 4r³w'' − 4r²w''
        if k >= 2 {
            let t = c * (4 * ki * (ki - 1));
            lin[k + 1] += &t;
            lin[k] -= &t;
        }
        // 8r w' − 4r² w'
        if k >= 1 {
            lin[k] += c * (8 * ki);
            lin[k + 1] -= c * (4 * ki);
        }
        // 3r w − 9 w
        lin[k + 1] += c * 3;
        lin[k] -= c * 9;
    }
    let l2 = &l * &l;
    let mut res: Vec<BigInt> = lin.iter().map(|c| c * &l2).collect();
    let mut sq = vec![BigInt::zero(); 2 * n - 1];
    for i in 0..n {
        for j in 0..n {
            sq[i + j] += &w[i] * &w[j];
        }
    }
    for (i, s) in sq.iter().enumerate() {
        for (j, c) in w.iter().enumerate() {
            res[i + j] += s * c * 9;
        }
    }
    match res.iter().position(|c| !c.is_zero()) {
        Some(k) => {
            let c = BigRational::new(res[k].clone(), &l2 * &l);
            ResidualOrder { order: Some(k), coefficient: Some(format_rational(&c)) }
        }
        None => ResidualOrder { order: None, coefficient: None },
    }
}

/// `w₂` from the order-2 equation alone: `26 w₂ − w₁ + 27 w₁² = 0`.
pub fn w2_from_order_two(w1: &BigRational) -> BigRational {
    (w1 - rational(27, 1) * w1 * w1) / rational(26, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        let s = w_recurrence(4);
        assert_eq!(s.coefficients()[0], rational(1, 1));
        assert_eq!(s.coefficients()[1], rational(-3, 26));
        assert_eq!(s.coefficients()[2], rational(-321, 17576));
        assert_eq!(w2_from_order_two(&rational(-3, 26)), rational(-321, 17576));
        assert_ne!(s.coefficients()[2], printed_w2());
    }

    #[test]
    fn constant_series_residual() {
        let s = RationalSeries::from_coefficients(rational(-3, 2), vec![rational(1, 1)]);
        let r = w_equation_residual(&s);
        assert_eq!(r.order, Some(1));
        assert_eq!(r.coefficient.as_deref(), Some("3"));
    }

    #[test]
    fn perturbed_w1_residual() {
        let s = w_recurrence(5);
        let bad = s.with_coefficient(1, rational(-3, 26) + rational(1, 1000));
        let r = w_equation_residual(&bad);
        assert_eq!(r.order, Some(1));
        assert_eq!(r.coefficient.as_deref(), Some("13/500"));
    }

    #[test]
    fn printed_w2_fails_at_order_two() {
        let s = w_recurrence(2).with_coefficient(2, printed_w2());
        assert_eq!(w_equation_residual(&s).order, Some(2));
    }

    #[test]
    fn evaluation_matches_coefficients() {
        let s = w_recurrence(30);
        let [w, w1, w2] = s.eval(0.0);
        assert_eq!(w, 1.0);
        assert!((w1 + 3.0 / 26.0).abs() < 1e-16);
        assert!((w2 + 2.0 * 321.0 / 17576.0).abs() < 1e-16);
    }
}
