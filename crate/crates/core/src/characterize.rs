//! Executable forms of the power-function characterization: numeric identity
//! distance, Monte Carlo two-sample tests, shape estimation, and an alpha-free
//! goodness-of-fit verdict.
//!
//! The underlying fact: with three independent iid sets from a common F on
//! (0, 1), `X_{k:n} =d Y_{k:n-1} Z_{n:n}` holds if and only if F is a power
//! function distribution. The numeric test measures the sup distance between
//! the two CDFs; the Monte Carlo tests compare sampled replicates of the two
//! sides by a two-sample KS statistic.

use serde::{Deserialize, Serialize};

use crate::dist::ContinuousDist;
use crate::error::{Error, Result};
use crate::ks::{ks_two_sample_critical, ks_two_sample_with_argmax};
use crate::order_stats::OrderStatisticLaw;
use crate::product::product_cdf;
use crate::quadrature::QuadratureConfig;
use crate::rng::{derive_stream, next_open01, stream_rng, shuffle, McConfig};

/// Minimum number of block triples for the goodness-of-fit test; keeps the
/// asymptotic KS critical value in its validity regime.
pub const MIN_GOF_BLOCKS: usize = 100;

/// Baseline numeric acceptance threshold; the effective threshold is
/// `max(NUMERIC_TOL, 100 * abs_tol)`.
pub const NUMERIC_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

/// One evaluation point with the two compared values: grid point with
/// lhs/rhs CDFs for numeric checks, pooled sample point with the two ECDFs
/// for Monte Carlo checks.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Diagnostic {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of an identity check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdentityReport {
    pub k: usize,
    pub n: usize,
    /// Sup distance between the compared curves (for Monte Carlo checks this
    /// is the KS statistic).
    pub sup_distance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_statistic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ks_critical: Option<f64>,
    /// The acceptance threshold the verdict was formed against.
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<f64>,
    pub verdict: Verdict,
    /// Worst offending evaluation points, largest gap first.
    pub diagnostics: Vec<Diagnostic>,
}

impl IdentityReport {
    pub fn is_consistent(&self) -> bool {
        self.verdict == Verdict::Consistent
    }
}

fn verdict(below: bool) -> Verdict {
    if below {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    }
}

/// Uniform interior grid j/(grid_size+1), j = 1..=grid_size.
pub fn interior_grid(grid_size: usize) -> Vec<f64> {
    (1..=grid_size)
        .map(|j| j as f64 / (grid_size + 1) as f64)
        .collect()
}

/// Compares `F_{k:n}` with the product CDF on an interior grid and accepts
/// when the sup distance stays below `max(1e-6, 100 * abs_tol)`.
pub fn verify_identity_numeric(
    base: &dyn ContinuousDist,
    k: usize,
    n: usize,
    grid_size: usize,
    q: &QuadratureConfig,
) -> Result<IdentityReport> {
    if grid_size < 16 {
        return Err(Error::domain(format!(
            "numeric verification grid must have at least 16 points, got {grid_size}"
        )));
    }
    let law = OrderStatisticLaw::new(k, n, base)?;
    let mut diagnostics = Vec::with_capacity(grid_size);
    let mut sup = 0.0f64;
    for x in interior_grid(grid_size) {
        let lhs = law.cdf(x)?;
        let rhs = product_cdf(k, n, base, x, q)?;
        sup = sup.max((lhs - rhs).abs());
        diagnostics.push(Diagnostic { x, lhs, rhs });
    }
    diagnostics.sort_by(|a, b| {
        let da = (a.lhs - a.rhs).abs();
        let db = (b.lhs - b.rhs).abs();
        db.partial_cmp(&da).unwrap()
    });
    diagnostics.truncate(5);

    let threshold = NUMERIC_TOL.max(100.0 * q.abs_tol);
    Ok(IdentityReport {
        k,
        n,
        sup_distance: sup,
        ks_statistic: None,
        ks_critical: None,
        threshold,
        level: None,
        verdict: verdict(sup <= threshold),
        diagnostics,
    })
}

fn mc_report(
    k: usize,
    n: usize,
    lhs: &[f64],
    rhs: &[f64],
    level: f64,
) -> Result<IdentityReport> {
    let (d, at, fx, fy) = ks_two_sample_with_argmax(lhs, rhs)?;
    let crit = ks_two_sample_critical(lhs.len(), rhs.len(), level)?;
    Ok(IdentityReport {
        k,
        n,
        sup_distance: d,
        ks_statistic: Some(d),
        ks_critical: Some(crit),
        threshold: crit,
        level: Some(level),
        verdict: verdict(d <= crit),
        diagnostics: vec![Diagnostic {
            x: at,
            lhs: fx,
            rhs: fy,
        }],
    })
}

/// Samples both sides of `X_{k:n} =d Y_{k:n-1} Z_{n:n}` on independent
/// derived streams and compares them with a two-sample KS test.
pub fn verify_identity_mc(
    base: &dyn ContinuousDist,
    k: usize,
    n: usize,
    cfg: &McConfig,
    level: f64,
) -> Result<IdentityReport> {
    if k < 1 || k + 1 > n {
        return Err(Error::domain(format!(
            "identity needs 1 <= k <= n-1, got k={k}, n={n}"
        )));
    }
    cfg.require_replicates(100)?;

    let xs = OrderStatisticLaw::new(k, n, base)?.sample(&McConfig {
        n: cfg.n,
        seed: cfg.seed,
        stream: derive_stream(cfg.stream, &[0]),
    })?;
    let ys = OrderStatisticLaw::new(k, n - 1, base)?.sample(&McConfig {
        n: cfg.n,
        seed: cfg.seed,
        stream: derive_stream(cfg.stream, &[1]),
    })?;
    let zs = OrderStatisticLaw::new(n, n, base)?.sample(&McConfig {
        n: cfg.n,
        seed: cfg.seed,
        stream: derive_stream(cfg.stream, &[2]),
    })?;
    let prod: Vec<f64> = ys.iter().zip(&zs).map(|(y, z)| y * z).collect();
    mc_report(k, n, &xs, &prod, level)
}

/// Samples `X_{k:n}` against the product of independent maxima
/// X_{[k:k]} ... X_{[n:n]} (one derived stream per chain factor) and compares
/// by two-sample KS. With k = n the chain is the single maximum and the two
/// laws coincide.
pub fn verify_maxima_chain(
    base: &dyn ContinuousDist,
    k: usize,
    n: usize,
    cfg: &McConfig,
    level: f64,
) -> Result<IdentityReport> {
    if k < 1 || k > n {
        return Err(Error::domain(format!(
            "chain needs 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    cfg.require_replicates(100)?;

    let xs = OrderStatisticLaw::new(k, n, base)?.sample(&McConfig {
        n: cfg.n,
        seed: cfg.seed,
        stream: derive_stream(cfg.stream, &[0]),
    })?;

    let mut prod = vec![1.0f64; cfg.n];
    for i in k..=n {
        let mut rng = stream_rng(cfg.seed, derive_stream(cfg.stream, &[1 + (i - k) as u64]));
        let inv = 1.0 / i as f64;
        for p in prod.iter_mut() {
            let u = next_open01(&mut rng);
            *p *= base.quantile(u.powf(inv))?;
        }
    }
    mc_report(k, n, &xs, &prod, level)
}

/// Maximum likelihood estimate of the power shape: N / sum(-ln x_i).
pub fn estimate_alpha(sample: &[f64]) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::InsufficientData(
            "shape estimation requires a nonempty sample".into(),
        ));
    }
    let mut neg_log_sum = 0.0;
    for (i, &x) in sample.iter().enumerate() {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::domain(format!(
                "sample value {x} at index {i} outside (0, 1)"
            )));
        }
        neg_log_sum -= x.ln();
    }
    Ok(sample.len() as f64 / neg_log_sum)
}

/// Alpha-free goodness-of-fit test for "is the sample from a power function
/// distribution?".
///
/// The sample is shuffled (seeded) and cut into disjoint block triples of
/// sizes (n, n-1, n) mirroring the three independent sets of the identity;
/// each triple contributes one draw of X_{k:n} and one of Y_{k:n-1} Z_{n:n},
/// and the two derived samples are compared by two-sample KS. No shape
/// parameter is estimated, and the verdict is invariant under monotone power
/// transforms x -> x^c of the whole sample.
pub fn power_gof(
    sample: &[f64],
    k: usize,
    n: usize,
    cfg: &McConfig,
    level: f64,
) -> Result<IdentityReport> {
    if k < 1 || k + 1 > n {
        return Err(Error::domain(format!(
            "goodness of fit needs 1 <= k <= n-1, got k={k}, n={n}"
        )));
    }
    for (i, &x) in sample.iter().enumerate() {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::domain(format!(
                "sample value {x} at index {i} outside (0, 1)"
            )));
        }
    }
    let triple = 3 * n - 1;
    let blocks = sample.len() / triple;
    if blocks < MIN_GOF_BLOCKS {
        return Err(Error::InsufficientData(format!(
            "need at least {MIN_GOF_BLOCKS} block triples of size {triple} \
             ({} values), got {} values",
            MIN_GOF_BLOCKS * triple,
            sample.len()
        )));
    }

    let mut data = sample.to_vec();
    let mut rng = stream_rng(cfg.seed, cfg.stream);
    shuffle(&mut rng, &mut data);

    let mut lhs = Vec::with_capacity(blocks);
    let mut rhs = Vec::with_capacity(blocks);
    let mut scratch: Vec<f64> = Vec::with_capacity(n);
    for b in 0..blocks {
        let at = b * triple;
        let kth = |vals: &mut Vec<f64>, k: usize| -> f64 {
            vals.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            vals[k - 1]
        };
        scratch.clear();
        scratch.extend_from_slice(&data[at..at + n]);
        let x_kn = kth(&mut scratch, k);

        scratch.clear();
        scratch.extend_from_slice(&data[at + n..at + 2 * n - 1]);
        let y_kn1 = kth(&mut scratch, k);

        let z_nn = data[at + 2 * n - 1..at + 3 * n - 1]
            .iter()
            .fold(f64::MIN, |m, &v| m.max(v));

        lhs.push(x_kn);
        rhs.push(y_kn1 * z_nn);
    }
    mc_report(k, n, &lhs, &rhs, level)
}
