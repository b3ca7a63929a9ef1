//! Classical fourth-order Runge–Kutta on a fixed step.

/// One RK4 step for an autonomous-in-form system `y' = f(t, y)`.
pub fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &[f64; N], h: f64) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &k1));
    let k3 = f(t + 0.5 * h, &axpy(y, 0.5 * h, &k2));
    let k4 = f(t + h, &axpy(y, h, &k3));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn axpy<const N: usize>(y: &[f64; N], a: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

/// Integrate from `t0` over `steps` output intervals of size `h`, taking
/// `substeps` RK4 steps per interval. Returns the `steps + 1` output states.
pub fn rk4<const N: usize, F>(
    f: F,
    t0: f64,
    y0: [f64; N],
    h: f64,
    steps: usize,
    substeps: usize,
) -> Vec<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let sub = substeps.max(1);
    let hs = h / sub as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push(y);
    for i in 0..steps {
        let mut t = t0 + i as f64 * h;
        for _ in 0..sub {
            y = rk4_step(&f, t, &y, hs);
            t += hs;
        }
        out.push(y);
    }
    out
}
