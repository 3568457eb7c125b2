//! Products of independent order statistics on (0, 1).
//!
//! For an iid base on (0, 1), the product of the k-th order statistic of an
//! independent size n-1 sample with the maximum of an independent size n
//! sample has CDF
//!
//! ```text
//! P(Y Z <= y) = F_{k:n-1}(y) + int_y^1 F(y/u)^n f_{k:n-1}(u) du
//! ```
//!
//! For power function bases this equals `F_{k:n}` exactly; that identity,
//! its closed form, the product-of-maxima chain, and the H-functional whose
//! constancy characterizes power bases all live here.

use crate::dist::ContinuousDist;
use crate::error::{Error, Result};
use crate::grid::{chebyshev_points, GridCdf};
use crate::quadrature::{integrate_with_breakpoints, QuadratureConfig};
use crate::special::{betainc, ln_gamma, xlog};

/// Default Chebyshev grid size for chain products.
pub const DEFAULT_CHAIN_GRID: usize = 513;

/// Smallest x at which the H-residual is evaluated; below this the
/// functional is numerically dominated by the 1/F(x) blow-up of H for
/// non-power bases.
pub const RESIDUAL_MIN_X: f64 = 1e-6;

/// A product chain X_{[k:k]} X_{[k+1:k+1]} ... X_{[n:n]} of independent
/// maxima with a common base distribution.
#[derive(Clone, Copy)]
pub struct ProductChainSpec<'a> {
    k: usize,
    n: usize,
    base: &'a dyn ContinuousDist,
}

impl<'a> ProductChainSpec<'a> {
    pub fn new(k: usize, n: usize, base: &'a dyn ContinuousDist) -> Result<Self> {
        if k < 1 || k > n {
            return Err(Error::domain(format!(
                "chain indices must satisfy 1 <= k <= n, got k={k}, n={n}"
            )));
        }
        require_unit_support(base)?;
        Ok(ProductChainSpec { k, n, base })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &'a dyn ContinuousDist {
        self.base
    }
}

fn require_unit_support(base: &dyn ContinuousDist) -> Result<()> {
    let s = base.support();
    if !s.is_unit() {
        return Err(Error::domain(format!(
            "{}: support extremities must be 0 and 1, got ({}, {})",
            base.label(),
            s.left,
            s.right
        )));
    }
    Ok(())
}

fn check_unit_interval(what: &str, y: f64) -> Result<()> {
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::domain(format!("{what} must lie in (0, 1), got {y}")));
    }
    Ok(())
}

/// Density of the k-th of m order statistics as a plain closure; evaluation
/// errors surface as NaN so quadrature can report them.
fn os_density<'a>(base: &'a dyn ContinuousDist, k: usize, m: usize) -> impl Fn(f64) -> f64 + 'a {
    let ln_coeff = ln_gamma(m as f64 + 1.0) - ln_gamma(k as f64) - ln_gamma((m - k + 1) as f64);
    move |u: f64| {
        let (fu, du) = match (base.cdf(u), base.pdf(u)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return f64::NAN,
        };
        (ln_coeff + xlog(k - 1, fu.ln()) + xlog(m - k, f64::ln_1p(-fu))).exp() * du
    }
}

/// CDF at y of the product Y_{k:n-1} Z_{n:n} of independent order statistics
/// from `base`: the exact first term plus the adaptive quadrature of the
/// tail integral.
pub fn product_cdf(
    k: usize,
    n: usize,
    base: &dyn ContinuousDist,
    y: f64,
    q: &QuadratureConfig,
) -> Result<f64> {
    if k < 1 || k + 1 > n {
        return Err(Error::domain(format!(
            "product identity needs 1 <= k <= n-1, got k={k}, n={n}"
        )));
    }
    require_unit_support(base)?;
    check_unit_interval("product evaluation point", y)?;

    let p_y = base.cdf(y)?;
    let first = betainc(k as f64, (n - k) as f64, p_y)?;

    let fk = os_density(base, k, n - 1);
    let npow = n as i32;
    let integrand = move |u: f64| {
        let fyu = match base.cdf((y / u).min(1.0)) {
            Ok(v) => v,
            Err(_) => return f64::NAN,
        };
        fyu.powi(npow) * fk(u)
    };
    let quad = integrate_with_breakpoints(integrand, y, 1.0, &[], q)?;
    Ok((first + quad.value).clamp(0.0, 1.0))
}

/// Closed-form CDF of Y_{k:n-1} Z_{n:n} when the base is Pow(alpha):
/// `F_{k:n-1}(x) + (n-1)!/((k-1)!(n-k)!) x^{alpha n} (x^{-alpha} - 1)^{n-k}`,
/// which collapses to `F_{k:n}(x)`.
pub fn power_product_closed_form(k: usize, n: usize, alpha: f64, x: f64) -> Result<f64> {
    if k < 1 || k + 1 > n {
        return Err(Error::domain(format!(
            "closed form needs 1 <= k <= n-1, got k={k}, n={n}"
        )));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!(
            "power shape must be positive, got {alpha}"
        )));
    }
    check_unit_interval("closed-form evaluation point", x)?;

    let p = x.powf(alpha);
    let first = betainc(k as f64, (n - k) as f64, p)?;

    let ln_coeff =
        ln_gamma(n as f64) - ln_gamma(k as f64) - ln_gamma((n - k + 1) as f64);
    // (x^-alpha - 1)^(n-k) in log form; exp_m1 keeps precision near x = 1 and
    // the z > 40 branch avoids spurious overflow for tiny x.
    let z = -alpha * x.ln();
    let ln_em1 = if z > 40.0 { z } else { f64::exp_m1(z).ln() };
    let tail = (ln_coeff + alpha * n as f64 * x.ln() + (n - k) as f64 * ln_em1).exp();
    Ok(first + tail)
}

enum ChainAccum<'a> {
    /// The single starting factor X_{[order:order]}, evaluated analytically.
    Analytic {
        order: i32,
        base: &'a dyn ContinuousDist,
    },
    Grid(GridCdf),
}

impl ChainAccum<'_> {
    fn cdf(&self, x: f64) -> f64 {
        match self {
            ChainAccum::Analytic { order, base } => match base.cdf(x.clamp(0.0, 1.0)) {
                Ok(p) => p.powi(*order),
                Err(_) => f64::NAN,
            },
            ChainAccum::Grid(g) => g.cdf(x),
        }
    }

    fn pdf(&self, x: f64) -> f64 {
        match self {
            ChainAccum::Analytic { order, base } => match (base.cdf(x), base.pdf(x)) {
                (Ok(p), Ok(f)) => *order as f64 * p.powi(order - 1) * f,
                _ => f64::NAN,
            },
            ChainAccum::Grid(g) => g.pdf(x),
        }
    }
}

/// Tabulates the CDF of the chain product on a Chebyshev grid by pairwise
/// left-to-right convolution in the product semigroup: each step integrates
/// the accumulated CDF and density against the analytic next factor.
pub fn chain_product_grid(
    spec: &ProductChainSpec<'_>,
    grid_points: usize,
    q: &QuadratureConfig,
) -> Result<GridCdf> {
    if grid_points < 16 {
        return Err(Error::domain(format!(
            "chain grid needs at least 16 points, got {grid_points}"
        )));
    }
    let base = spec.base;
    let xs = chebyshev_points(grid_points);

    if spec.k == spec.n {
        let order = spec.n as i32;
        let mut ps = Vec::with_capacity(xs.len());
        let mut ds = Vec::with_capacity(xs.len());
        for &x in &xs {
            let p = base.cdf(x)?;
            ps.push(p.powi(order));
            ds.push(order as f64 * p.powi(order - 1) * base.pdf(x)?);
        }
        return GridCdf::new(xs, ps, ds, q.abs_tol);
    }

    let mut accum = ChainAccum::Analytic {
        order: spec.k as i32,
        base,
    };
    for i in (spec.k + 1)..=(spec.n) {
        let order = i as i32;
        let factor_pdf = move |s: f64| -> f64 {
            match (base.cdf(s), base.pdf(s)) {
                (Ok(p), Ok(f)) => order as f64 * p.powi(order - 1) * f,
                _ => f64::NAN,
            }
        };

        let mut ps = Vec::with_capacity(xs.len());
        let mut ds = Vec::with_capacity(xs.len());
        for (j, &y) in xs.iter().enumerate() {
            // Substituted so the interpolation knots of the accumulated grid
            // are the breakpoints: v = y/t maps the factor integral onto
            // (y, 1) in t.
            let knots: &[f64] = match &accum {
                ChainAccum::Grid(_) => &xs[j + 1..],
                ChainAccum::Analytic { .. } => &[],
            };
            let acc = &accum;
            // Clamp the factor argument strictly inside (0, 1): y/t can round
            // to 1.0 when t is barely above y, where the density is not
            // defined.
            let s_of = move |t: f64| (y / t).min(1.0 - f64::EPSILON);
            let cdf_integrand = move |t: f64| acc.cdf(t) * factor_pdf(s_of(t)) * y / (t * t);
            let quad = integrate_with_breakpoints(cdf_integrand, y, 1.0, knots, q)?;
            let fb = base.cdf(y)?.powi(order);
            ps.push((fb + quad.value).clamp(0.0, 1.0));

            let pdf_integrand = move |t: f64| acc.pdf(t) * factor_pdf(s_of(t)) / t;
            let dquad = integrate_with_breakpoints(pdf_integrand, y, 1.0, knots, q)?;
            ds.push(dquad.value.max(0.0));
        }
        accum = ChainAccum::Grid(GridCdf::new(xs.clone(), ps, ds, q.abs_tol)?);
    }

    match accum {
        ChainAccum::Grid(g) => Ok(g),
        ChainAccum::Analytic { .. } => unreachable!("chain with k < n always steps"),
    }
}

/// CDF at y of the product of independent maxima X_{[k:k]} ... X_{[n:n]}.
///
/// Builds the full chain grid on each call; batch evaluations should reuse
/// [`chain_product_grid`].
pub fn chain_product_cdf(spec: &ProductChainSpec<'_>, y: f64, q: &QuadratureConfig) -> Result<f64> {
    check_unit_interval("chain evaluation point", y)?;
    let grid = chain_product_grid(spec, DEFAULT_CHAIN_GRID, q)?;
    Ok(grid.cdf(y))
}

/// The functional H(x) = x f(x) / F(x). Constant in x exactly when the base
/// is a power function distribution, where it equals the shape alpha.
pub fn h_function(base: &dyn ContinuousDist, x: f64) -> Result<f64> {
    let f = base.pdf(x)?;
    let cf = base.cdf(x)?;
    if cf <= 0.0 {
        return Err(Error::domain(format!(
            "H undefined where F(x) = 0 (x = {x})"
        )));
    }
    Ok(x * f / cf)
}

/// Signed residual of the averaging identity behind the power
/// characterization:
///
/// ```text
/// int_x^1 F(x/u)^n [H(x) - H(x/u)] f_{k:n-1}(u) du
/// ```
///
/// Identically zero in x exactly when H is constant, i.e. when the base is a
/// power function distribution. Evaluation is restricted to
/// x >= [`RESIDUAL_MIN_X`].
pub fn h_residual(
    base: &dyn ContinuousDist,
    k: usize,
    n: usize,
    x: f64,
    q: &QuadratureConfig,
) -> Result<f64> {
    if k < 1 || k + 1 > n {
        return Err(Error::domain(format!(
            "residual needs 1 <= k <= n-1, got k={k}, n={n}"
        )));
    }
    require_unit_support(base)?;
    check_unit_interval("residual evaluation point", x)?;
    if x < RESIDUAL_MIN_X {
        return Err(Error::domain(format!(
            "residual evaluated on [{RESIDUAL_MIN_X}, 1) only, got {x}"
        )));
    }

    let hx = h_function(base, x)?;
    let fk = os_density(base, k, n - 1);
    let npow = n as i32;
    let integrand = move |u: f64| {
        let s = (x / u).min(1.0 - f64::EPSILON);
        let (fs, dens) = match (base.cdf(s), base.pdf(s)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return f64::NAN,
        };
        if fs <= 0.0 {
            return f64::NAN;
        }
        let hs = s * dens / fs;
        fs.powi(npow) * (hx - hs) * fk(u)
    };
    let quad = integrate_with_breakpoints(integrand, x, 1.0, &[], q)?;
    Ok(quad.value)
}
