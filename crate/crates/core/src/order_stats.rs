//! Exact distributions and samplers for ordinary order statistics, plus the
//! generalized-order-statistics joint density.
//!
//! For a base CDF F, the k-th of n order statistics has CDF
//! `I_{F(x)}(k, n-k+1)` (regularized incomplete beta) and density
//! `n!/((k-1)!(n-k)!) F^{k-1} (1-F)^{n-k} f`. Sampling goes through one
//! Beta(k, n-k+1) quantile per replicate, so the cost is independent of n.

use crate::dist::ContinuousDist;
use crate::error::{Error, Result};
use crate::rng::{next_open01, stream_rng, McConfig};
use crate::special::{betainc, betainc_inv, ln_gamma, xlog};

/// Largest supported sample size; binomial factors are evaluated through
/// log-gamma so this stays overflow-safe.
pub const MAX_SAMPLE_SIZE: usize = 1_000_000;

/// The law of the k-th order statistic from an iid sample of size n.
#[derive(Clone, Copy)]
pub struct OrderStatisticLaw<'a> {
    k: usize,
    n: usize,
    base: &'a dyn ContinuousDist,
}

impl<'a> OrderStatisticLaw<'a> {
    pub fn new(k: usize, n: usize, base: &'a dyn ContinuousDist) -> Result<Self> {
        if k < 1 || k > n {
            return Err(Error::domain(format!(
                "order statistic rank must satisfy 1 <= k <= n, got k={k}, n={n}"
            )));
        }
        if n > MAX_SAMPLE_SIZE {
            return Err(Error::domain(format!(
                "sample size {n} exceeds supported maximum {MAX_SAMPLE_SIZE}"
            )));
        }
        Ok(OrderStatisticLaw { k, n, base })
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

    /// P(X_{k:n} <= x) for x in the closed support.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let p = self.base.cdf(x)?;
        betainc(self.k as f64, (self.n - self.k + 1) as f64, p)
    }

    /// Density of X_{k:n} at x in the open support.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        let p = self.base.cdf(x)?;
        let f = self.base.pdf(x)?;
        let (k, n) = (self.k, self.n);
        let ln_coeff =
            ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64) - ln_gamma((n - k + 1) as f64);
        let t = ln_coeff + xlog(k - 1, p.ln()) + xlog(n - k, f64::ln_1p(-p));
        Ok(t.exp() * f)
    }

    /// `cfg.n` iid replicates of X_{k:n} via the Beta(k, n-k+1) quantile
    /// transform of the deterministic uniform stream.
    pub fn sample(&self, cfg: &McConfig) -> Result<Vec<f64>> {
        cfg.require_replicates(1)?;
        let mut rng = stream_rng(cfg.seed, cfg.stream);
        let a = self.k as f64;
        let b = (self.n - self.k + 1) as f64;
        let mut out = Vec::with_capacity(cfg.n);
        for _ in 0..cfg.n {
            let u = next_open01(&mut rng);
            let beta = beta_quantile(a, b, u)?;
            out.push(self.base.quantile(beta)?);
        }
        Ok(out)
    }
}

impl std::fmt::Debug for OrderStatisticLaw<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OrderStatisticLaw({}:{} of {})", self.k, self.n, self.base.label())
    }
}

/// Beta(a, b) quantile; closed form for the boundary-rank cases, Newton
/// inversion of the incomplete beta otherwise.
pub fn beta_quantile(a: f64, b: f64, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain(format!(
            "beta quantile argument {u} outside (0, 1)"
        )));
    }
    if b == 1.0 {
        return Ok(u.powf(1.0 / a));
    }
    if a == 1.0 {
        return Ok(-f64::exp_m1(f64::ln_1p(-u) / b));
    }
    betainc_inv(a, b, u)
}

// ---------------------------------------------------------------------------
// Generalized order statistics
// ---------------------------------------------------------------------------

/// Parameters of the generalized-order-statistics model with a common
/// m_i = m: sample size n, contraction parameter m, and positive k.
///
/// The coefficients are gamma_i = k + n - i + M_i with
/// M_i = sum_{j=i}^{n-1} m_j = (n - i) m, the definition under which m = 0,
/// k = 1 reduces the joint density to n! prod f(x_i) on the ordered region,
/// i.e. to ordinary order statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GosParams {
    n: usize,
    m: f64,
    k_gos: f64,
}

impl GosParams {
    pub fn new(n: usize, m: f64, k_gos: f64) -> Result<Self> {
        if n < 1 || n > MAX_SAMPLE_SIZE {
            return Err(Error::domain(format!(
                "GOS sample size must be in [1, {MAX_SAMPLE_SIZE}], got {n}"
            )));
        }
        if !(k_gos > 0.0) || !k_gos.is_finite() {
            return Err(Error::domain(format!(
                "GOS parameter k must be positive, got {k_gos}"
            )));
        }
        if !m.is_finite() {
            return Err(Error::domain(format!("GOS parameter m must be finite, got {m}")));
        }
        let params = GosParams { n, m, k_gos };
        for i in 1..n {
            let g = params.gamma(i);
            if !(g > 0.0) {
                return Err(Error::domain(format!(
                    "GOS coefficient gamma_{i} = {g} must be positive"
                )));
            }
        }
        Ok(params)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn k_gos(&self) -> f64 {
        self.k_gos
    }

    /// gamma_i = k + n - i + (n - i) m for 1 <= i <= n - 1.
    pub fn gamma(&self, i: usize) -> f64 {
        debug_assert!(i >= 1 && i < self.n.max(2));
        self.k_gos + (self.n - i) as f64 * (1.0 + self.m)
    }
}

/// Joint density of the n generalized order statistics at the ordered point
/// `xs`:
///
/// k (prod gamma_j) (prod (1-F(x_i))^m f(x_i)) (1-F(x_n))^{k-1} f(x_n).
pub fn gos_joint_density(
    params: &GosParams,
    base: &dyn ContinuousDist,
    xs: &[f64],
) -> Result<f64> {
    if xs.len() != params.n {
        return Err(Error::domain(format!(
            "expected {} coordinates, got {}",
            params.n,
            xs.len()
        )));
    }
    for w in xs.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::domain(format!(
                "coordinates must be strictly increasing, got {} after {}",
                w[1], w[0]
            )));
        }
    }

    let mut value = params.k_gos;
    for j in 1..params.n {
        value *= params.gamma(j);
    }
    let last = params.n - 1;
    for (i, &x) in xs.iter().enumerate() {
        let sf = 1.0 - base.cdf(x)?;
        let f = base.pdf(x)?;
        if i < last {
            value *= sf.powf(params.m) * f;
        } else {
            value *= sf.powf(params.k_gos - 1.0) * f;
        }
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Pow;
    use approx::assert_relative_eq;

    #[test]
    fn cdf_examples() {
        let uni = Pow::uniform();
        let pow2 = Pow::new(2.0).unwrap();
        // min of two uniforms: 1 - (1-x)^2
        let law = OrderStatisticLaw::new(1, 2, &uni).unwrap();
        assert_relative_eq!(law.cdf(0.5).unwrap(), 0.75, epsilon = 1e-14);
        // max of two pow(2): F(x)^2 = (x^2)^2
        let law = OrderStatisticLaw::new(2, 2, &pow2).unwrap();
        assert_relative_eq!(law.cdf(0.5).unwrap(), 0.0625, epsilon = 1e-14);
        // median of three uniforms at 1/2 by symmetry
        let law = OrderStatisticLaw::new(2, 3, &uni).unwrap();
        assert_relative_eq!(law.cdf(0.5).unwrap(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn cdf_closed_forms_for_extreme_ranks() {
        let pow2 = Pow::new(2.0).unwrap();
        for n in 1..=12usize {
            for j in 1..=19 {
                let x = j as f64 / 20.0;
                let p = pow2.cdf(x).unwrap();
                let min = OrderStatisticLaw::new(1, n, &pow2).unwrap();
                assert_relative_eq!(
                    min.cdf(x).unwrap(),
                    1.0 - (1.0 - p).powi(n as i32),
                    epsilon = 1e-13
                );
                let max = OrderStatisticLaw::new(n, n, &pow2).unwrap();
                assert_relative_eq!(max.cdf(x).unwrap(), p.powi(n as i32), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn pdf_examples() {
        let uni = Pow::uniform();
        let pow2 = Pow::new(2.0).unwrap();
        let law = OrderStatisticLaw::new(2, 3, &uni).unwrap();
        assert_relative_eq!(law.pdf(0.5).unwrap(), 1.5, epsilon = 1e-13);
        let law = OrderStatisticLaw::new(1, 1, &uni).unwrap();
        for x in [0.1, 0.5, 0.9] {
            assert_relative_eq!(law.pdf(x).unwrap(), 1.0, epsilon = 1e-13);
        }
        // 2 (1 - x^2) f(x) at x = 0.5 with f(0.5) = 1
        let law = OrderStatisticLaw::new(1, 2, &pow2).unwrap();
        assert_relative_eq!(law.pdf(0.5).unwrap(), 1.5, epsilon = 1e-13);
    }

    #[test]
    fn rank_validation() {
        let uni = Pow::uniform();
        assert!(OrderStatisticLaw::new(0, 3, &uni).is_err());
        assert!(OrderStatisticLaw::new(4, 3, &uni).is_err());
        assert!(OrderStatisticLaw::new(1, MAX_SAMPLE_SIZE + 1, &uni).is_err());
        let law = OrderStatisticLaw::new(1, 2, &uni).unwrap();
        assert!(law.cdf(-0.5).is_err());
        assert!(law.pdf(1.0).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_in_support() {
        let uni = Pow::uniform();
        let law = OrderStatisticLaw::new(1, 1, &uni).unwrap();
        let cfg = McConfig::new(5, 7, 0);
        let a = law.sample(&cfg).unwrap();
        let b = law.sample(&cfg).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.iter().all(|&x| x > 0.0 && x < 1.0));
        assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn beta_quantile_matches_newton_on_boundary_ranks() {
        for &(a, b) in &[(3.0, 1.0), (1.0, 4.0)] {
            for &u in &[0.05, 0.4, 0.95] {
                let fast = beta_quantile(a, b, u).unwrap();
                let slow = crate::special::betainc_inv(a, b, u).unwrap();
                assert_relative_eq!(fast, slow, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn gos_density_reduces_to_factorial_for_ordinary_case() {
        let uni = Pow::uniform();
        let p2 = GosParams::new(2, 0.0, 1.0).unwrap();
        assert_relative_eq!(
            gos_joint_density(&p2, &uni, &[0.3, 0.7]).unwrap(),
            2.0,
            epsilon = 1e-13
        );
        let p3 = GosParams::new(3, 0.0, 1.0).unwrap();
        assert_relative_eq!(
            gos_joint_density(&p3, &uni, &[0.1, 0.5, 0.9]).unwrap(),
            6.0,
            epsilon = 1e-13
        );
        let pow2 = Pow::new(2.0).unwrap();
        // 2! f(0.3) f(0.7) = 2 * 0.6 * 1.4
        assert_relative_eq!(
            gos_joint_density(&p2, &pow2, &[0.3, 0.7]).unwrap(),
            1.68,
            epsilon = 1e-13
        );
    }

    #[test]
    fn gos_rejects_unordered_points_and_bad_params() {
        let uni = Pow::uniform();
        let p = GosParams::new(2, 0.0, 1.0).unwrap();
        assert!(gos_joint_density(&p, &uni, &[0.7, 0.3]).is_err());
        assert!(gos_joint_density(&p, &uni, &[0.3]).is_err());
        assert!(gos_joint_density(&p, &uni, &[0.3, 1.5]).is_err());
        assert!(GosParams::new(3, 0.0, 0.0).is_err());
        // gamma_i <= 0: k + (n-i)(1+m) with m very negative
        assert!(GosParams::new(3, -3.0, 1.0).is_err());
    }

    #[test]
    fn gos_gamma_reduction() {
        // at m = 0, k = 1 the coefficient product telescopes to n!
        let p = GosParams::new(4, 0.0, 1.0).unwrap();
        let prod: f64 = (1..4).map(|i| p.gamma(i)).product::<f64>() * p.k_gos();
        assert_relative_eq!(prod, 24.0, epsilon = 1e-12);
    }
}
