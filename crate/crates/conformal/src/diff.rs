//! Finite-difference stencils.

/// Fornberg weights for the derivatives `0..=order` at `x0` from nodes `xs`.
///
/// Row `k` of the result holds the weights for the k-th derivative.
pub fn fornberg(x0: f64, xs: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Fourth-order central first derivative of a closure.
pub fn d1<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Fourth-order central second derivative of a closure.
pub fn d2<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}

/// Five-point stencil for derivative `order` at node `i` of a uniform grid
/// with `n` nodes: `(first node, weights)`. Central in the interior,
/// shifted near the ends.
pub fn uniform_stencil(i: usize, n: usize, h: f64, order: usize) -> (usize, [f64; 5]) {
    assert!(n >= 5, "uniform stencil needs at least five nodes");
    let start = i.saturating_sub(2).min(n - 5);
    let xs: Vec<f64> = (0..5).map(|k| (start + k) as f64 * h).collect();
    let w = fornberg(i as f64 * h, &xs, order);
    let mut out = [0.0; 5];
    out.copy_from_slice(&w[order]);
    (start, out)
}

/// Derivative of order 1 or 2 of uniformly spaced samples, fourth order
/// everywhere (shifted stencils at the ends).
pub fn derivative_samples(y: &[f64], h: f64, order: usize) -> Vec<f64> {
    let n = y.len();
    (0..n)
        .map(|i| {
            let (s, w) = uniform_stencil(i, n, h, order);
            (0..5).map(|k| w[k] * y[s + k]).sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fornberg_reproduces_central_weights() {
        let w = fornberg(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0], 2);
        let d1 = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
        let d2 = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
        for k in 0..5 {
            assert!((w[1][k] - d1[k]).abs() < 1e-14);
            assert!((w[2][k] - d2[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn closure_derivatives_of_sine() {
        let x = 0.7;
        assert!((d1(f64::sin, x, 1e-3) - x.cos()).abs() < 1e-12);
        assert!((d2(f64::sin, x, 1e-3) + x.sin()).abs() < 1e-8);
    }

    #[test]
    fn sampled_derivative_is_fourth_order_at_the_ends() {
        let n = 101;
        let h = 1.0 / (n - 1) as f64;
        let y: Vec<f64> = (0..n).map(|i| (i as f64 * h).exp()).collect();
        let d = derivative_samples(&y, h, 1);
        for (i, di) in d.iter().enumerate() {
            assert!((di - (i as f64 * h).exp()).abs() < 1e-7);
        }
    }
}
