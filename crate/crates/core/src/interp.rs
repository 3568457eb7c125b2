//! Piecewise cubic Hermite interpolation helpers shared by the tabulated-CDF
//! distribution and the product-chain grids.

/// Cubic Hermite basis evaluation on [x0, x1].
pub(crate) fn hermite_eval(x0: f64, x1: f64, y0: f64, y1: f64, m0: f64, m1: f64, x: f64) -> f64 {
    let h = x1 - x0;
    let t = (x - x0) / h;
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    h00 * y0 + h10 * h * m0 + h01 * y1 + h11 * h * m1
}

/// Derivative of the cubic Hermite interpolant at x.
pub(crate) fn hermite_deriv(x0: f64, x1: f64, y0: f64, y1: f64, m0: f64, m1: f64, x: f64) -> f64 {
    let h = x1 - x0;
    let t = (x - x0) / h;
    let t2 = t * t;
    let d00 = (6.0 * t2 - 6.0 * t) / h;
    let d10 = 3.0 * t2 - 4.0 * t + 1.0;
    let d01 = (-6.0 * t2 + 6.0 * t) / h;
    let d11 = 3.0 * t2 - 2.0 * t;
    d00 * y0 + d10 * m0 + d01 * y1 + d11 * m1
}

/// Finite-difference slopes for tabulated data (three-point at interior
/// nodes, one-sided at the ends).
pub(crate) fn fd_slopes(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut m = vec![0.0; n];
    if n == 1 {
        return m;
    }
    m[0] = (ys[1] - ys[0]) / (xs[1] - xs[0]);
    m[n - 1] = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
    for i in 1..n - 1 {
        let hl = xs[i] - xs[i - 1];
        let hr = xs[i + 1] - xs[i];
        let sl = (ys[i] - ys[i - 1]) / hl;
        let sr = (ys[i + 1] - ys[i]) / hr;
        // Weighted harmonic-style average; plain centered slope is fine for
        // the smooth data we interpolate, but keep it shape-aware.
        m[i] = (sl * hr + sr * hl) / (hl + hr);
    }
    m
}

/// Fritsch-Carlson limiter: clamps Hermite slopes so the interpolant of
/// monotone data stays monotone.
pub(crate) fn monotone_clamp(xs: &[f64], ys: &[f64], slopes: &mut [f64]) {
    let n = xs.len();
    for i in 0..n - 1 {
        let s = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        if s == 0.0 {
            slopes[i] = 0.0;
            slopes[i + 1] = 0.0;
            continue;
        }
        let a = slopes[i] / s;
        let b = slopes[i + 1] / s;
        if a < 0.0 {
            slopes[i] = 0.0;
        }
        if b < 0.0 {
            slopes[i + 1] = 0.0;
        }
        let r = a * a + b * b;
        if r > 9.0 {
            let tau = 3.0 / r.sqrt();
            slopes[i] = tau * a * s;
            slopes[i + 1] = tau * b * s;
        }
    }
}

/// Index of the segment [xs[i], xs[i+1]] containing x; assumes
/// xs[0] <= x <= xs[last].
pub(crate) fn segment_of(xs: &[f64], x: f64) -> usize {
    match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
        Ok(i) => i.min(xs.len() - 2),
        Err(i) => i.saturating_sub(1).min(xs.len() - 2),
    }
}
