//! J-function by adaptive Simpson integration of the consistent-Gaussian
//! LLR density.

use std::f64::consts::{LN_2, PI};

fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt(f: &impl Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson over `[a, b]`, started from `panels` equal pieces.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, tol: f64) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let (x0, x1) = (a + p as f64 * h, a + (p + 1) as f64 * h);
        let xm = 0.5 * (x0 + x1);
        let (f0, fm, f1) = (f(x0), f(xm), f(x1));
        let whole = simpson(x0, x1, f0, fm, f1);
        total += adapt(&f, x0, x1, f0, fm, f1, whole, tol / panels as f64, 40);
    }
    total
}

/// `1 - E[log2(1 + e^-L)]` for `L ~ N(sigma^2/2, sigma^2)`, integrated over
/// twelve standard deviations either side of the mean.
pub fn j_quadrature(sigma: f64) -> f64 {
    if sigma <= 0.0 {
        return 0.0;
    }
    let mean = 0.5 * sigma * sigma;
    let norm = 1.0 / (sigma * (2.0 * PI).sqrt());
    let f = |x: f64| {
        let z = (x - mean) / sigma;
        norm * (-0.5 * z * z).exp() * softplus(-x) / LN_2
    };
    1.0 - integrate(f, mean - 12.0 * sigma, mean + 12.0 * sigma, 48, 1e-14)
}

/// Inverse of [`j_quadrature`] by plain bisection on `sigma in [0, 60]`.
pub fn j_inverse_bisect(mi: f64) -> f64 {
    assert!((0.0..1.0).contains(&mi), "mutual information must lie in [0, 1)");
    let (mut lo, mut hi) = (0.0f64, 60.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if j_quadrature(mid) < mi {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    0.5 * (lo + hi)
}
