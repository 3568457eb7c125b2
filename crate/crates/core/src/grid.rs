//! Tabulated monotone CDFs on a fixed grid in (0, 1).
//!
//! `GridCdf` is the numeric carrier for product-distribution results: CDF
//! values plus densities on a Chebyshev-spaced grid, interpolated by a
//! monotone cubic Hermite. Boundary segments are anchored at (0, 0) and
//! (1, 1) so evaluation is defined on all of [0, 1].

use crate::error::{Error, Result};
use crate::interp;

/// `n` Chebyshev points of the first kind mapped to (0, 1), strictly
/// increasing and clustered at both endpoints.
pub fn chebyshev_points(n: usize) -> Vec<f64> {
    let nn = n as f64;
    (0..n)
        .map(|j| 0.5 * (1.0 - (std::f64::consts::PI * (2.0 * j as f64 + 1.0) / (2.0 * nn)).cos()))
        .collect()
}

/// A monotone numeric CDF tabulated on a strictly increasing grid in (0, 1),
/// carrying the densities used as interpolation slopes and the tolerance it
/// was built to.
#[derive(Debug, Clone)]
pub struct GridCdf {
    xs: Vec<f64>,
    ps: Vec<f64>,
    /// Raw density values at the grid points.
    ds: Vec<f64>,
    /// Monotonicity-clamped Hermite slopes for CDF interpolation.
    cdf_slopes: Vec<f64>,
    /// Finite-difference slopes for density interpolation.
    pdf_slopes: Vec<f64>,
    tolerance: f64,
}

impl GridCdf {
    pub fn new(xs: Vec<f64>, ps: Vec<f64>, ds: Vec<f64>, tolerance: f64) -> Result<Self> {
        if xs.len() < 2 || xs.len() != ps.len() || xs.len() != ds.len() {
            return Err(Error::domain(
                "grid CDF needs equal-length xs/ps/ds with at least 2 points",
            ));
        }
        if !(tolerance > 0.0) {
            return Err(Error::domain(format!(
                "grid CDF tolerance must be positive, got {tolerance}"
            )));
        }
        for w in xs.windows(2) {
            if !(w[0] > 0.0 && w[1] < 1.0 && w[1] > w[0]) {
                return Err(Error::domain(
                    "grid abscissae must be strictly increasing inside (0, 1)",
                ));
            }
        }
        let slack = tolerance.max(1e-9) * 10.0;
        for w in ps.windows(2) {
            if w[1] < w[0] - slack {
                return Err(Error::domain(format!(
                    "grid CDF values must be nondecreasing ({} after {})",
                    w[1], w[0]
                )));
            }
        }
        if ps[0] < -slack || ps[ps.len() - 1] > 1.0 + slack {
            return Err(Error::domain("grid CDF values must stay in [0, 1]"));
        }

        // Sanitize tiny quadrature negatives / overshoots, then enforce
        // monotone data exactly.
        let mut ps = ps;
        let mut run_max = 0.0f64;
        for p in ps.iter_mut() {
            run_max = run_max.max(p.clamp(0.0, 1.0));
            *p = run_max;
        }
        let mut ds = ds;
        for d in ds.iter_mut() {
            if *d < 0.0 {
                *d = 0.0;
            }
        }

        let mut cdf_slopes = ds.clone();
        interp::monotone_clamp(&xs, &ps, &mut cdf_slopes);
        let pdf_slopes = interp::fd_slopes(&xs, &ds);
        Ok(GridCdf {
            xs,
            ps,
            ds,
            cdf_slopes,
            pdf_slopes,
            tolerance,
        })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ps(&self) -> &[f64] {
        &self.ps
    }

    pub fn densities(&self) -> &[f64] {
        &self.ds
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Interpolated CDF value; defined on all of [0, 1] via the anchored
    /// boundary segments, clamped monotone into [0, 1].
    pub fn cdf(&self, x: f64) -> f64 {
        let m = self.xs.len();
        if x <= 0.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        let v = if x < self.xs[0] {
            interp::hermite_eval(0.0, self.xs[0], 0.0, self.ps[0], self.ds[0], self.ds[0], x)
        } else if x > self.xs[m - 1] {
            interp::hermite_eval(
                self.xs[m - 1],
                1.0,
                self.ps[m - 1],
                1.0,
                self.ds[m - 1],
                self.ds[m - 1],
                x,
            )
        } else {
            let i = interp::segment_of(&self.xs, x);
            interp::hermite_eval(
                self.xs[i],
                self.xs[i + 1],
                self.ps[i],
                self.ps[i + 1],
                self.cdf_slopes[i],
                self.cdf_slopes[i + 1],
                x,
            )
        };
        v.clamp(0.0, 1.0)
    }

    /// Interpolated density; constant extension on the boundary segments.
    pub fn pdf(&self, x: f64) -> f64 {
        let m = self.xs.len();
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        let v = if x < self.xs[0] {
            self.ds[0]
        } else if x > self.xs[m - 1] {
            self.ds[m - 1]
        } else {
            let i = interp::segment_of(&self.xs, x);
            interp::hermite_eval(
                self.xs[i],
                self.xs[i + 1],
                self.ds[i],
                self.ds[i + 1],
                self.pdf_slopes[i],
                self.pdf_slopes[i + 1],
                x,
            )
        };
        v.max(0.0)
    }
}
