//! One- and two-sample Kolmogorov-Smirnov statistics with asymptotic
//! critical values.

use crate::error::{Error, Result};

/// Asymptotic KS coefficient c(level) = sqrt(-ln(level/2) / 2), e.g.
/// c(0.05) = 1.358, c(0.01) = 1.628.
pub fn ks_coefficient(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain(format!(
            "significance level must lie in (0, 1), got {level}"
        )));
    }
    Ok((-(level / 2.0).ln() / 2.0).sqrt())
}

/// Two-sample critical value c(level) * sqrt((n + m)/(n m)); for n = m this
/// is c(level) * sqrt(2/n).
pub fn ks_two_sample_critical(n: usize, m: usize, level: f64) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(Error::InsufficientData(
            "KS test requires nonempty samples".into(),
        ));
    }
    Ok(ks_coefficient(level)? * ((n + m) as f64 / (n as f64 * m as f64)).sqrt())
}

/// One-sample critical value c(level) / sqrt(n).
pub fn ks_one_sample_critical(n: usize, level: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InsufficientData(
            "KS test requires a nonempty sample".into(),
        ));
    }
    Ok(ks_coefficient(level)? / (n as f64).sqrt())
}

fn sorted_copy(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Two-sample KS statistic: sup over the pooled sample of the ECDF gap.
///
/// Ties are handled by right-continuous steps on the pooled sorted sample:
/// the gap is measured only after all copies of a value are consumed.
pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InsufficientData(
            "KS test requires nonempty samples".into(),
        ));
    }
    let xs = sorted_copy(xs);
    let ys = sorted_copy(ys);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut sup: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] == v {
            i += 1;
        }
        while j < ys.len() && ys[j] == v {
            j += 1;
        }
        sup = sup.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(sup)
}

/// Like [`ks_two_sample`] but also returns the pooled point attaining the
/// supremum together with both ECDF values there.
pub fn ks_two_sample_with_argmax(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64, f64)> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InsufficientData(
            "KS test requires nonempty samples".into(),
        ));
    }
    let xs = sorted_copy(xs);
    let ys = sorted_copy(ys);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut best = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] == v {
            i += 1;
        }
        while j < ys.len() && ys[j] == v {
            j += 1;
        }
        let (fx, fy) = (i as f64 / n, j as f64 / m);
        if (fx - fy).abs() > best.0 {
            best = ((fx - fy).abs(), v, fx, fy);
        }
    }
    Ok(best)
}

/// One-sample KS statistic of `xs` against the hypothesized CDF.
pub fn ks_one_sample<F: Fn(f64) -> f64>(xs: &[f64], cdf: F) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::InsufficientData(
            "KS test requires a nonempty sample".into(),
        ));
    }
    let xs = sorted_copy(xs);
    let n = xs.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let c = cdf(x);
        sup = sup.max((c - i as f64 / n).abs());
        sup = sup.max(((i + 1) as f64 / n - c).abs());
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn coefficients_match_textbook_values() {
        assert_relative_eq!(ks_coefficient(0.05).unwrap(), 1.358, epsilon = 1e-3);
        assert_relative_eq!(ks_coefficient(0.01).unwrap(), 1.628, epsilon = 1e-3);
        assert!(ks_coefficient(0.0).is_err());
    }

    #[test]
    fn identical_samples_have_zero_statistic() {
        let xs = [0.1, 0.4, 0.4, 0.9];
        assert_eq!(ks_two_sample(&xs, &xs).unwrap(), 0.0);
    }

    #[test]
    fn disjoint_samples_have_statistic_one() {
        let xs = [0.1, 0.2, 0.3];
        let ys = [0.7, 0.8, 0.9];
        assert_eq!(ks_two_sample(&xs, &ys).unwrap(), 1.0);
    }

    #[test]
    fn hand_computed_two_sample_case() {
        // xs ECDF jumps at 1,2,3; ys at 2,3,4. After consuming value 1:
        // |1/3 - 0| = 1/3 is the sup.
        let xs = [1.0, 2.0, 3.0];
        let ys = [2.0, 3.0, 4.0];
        assert_relative_eq!(ks_two_sample(&xs, &ys).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn ties_across_samples_use_pooled_steps() {
        let xs = [1.0, 1.0, 2.0];
        let ys = [1.0, 2.0, 2.0];
        // after value 1: |2/3 - 1/3| = 1/3; after value 2: 0.
        assert_relative_eq!(ks_two_sample(&xs, &ys).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn one_sample_against_uniform() {
        let xs = [0.25, 0.5, 0.75];
        // D = max over jump edges: |0.25 - 0|, |1/3-0.25|, ..., |1 - 0.75|
        assert_relative_eq!(ks_one_sample(&xs, |x| x).unwrap(), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn argmax_variant_agrees_with_statistic() {
        let xs = [0.12, 0.5, 0.61, 0.8];
        let ys = [0.3, 0.42, 0.77, 0.95];
        let d = ks_two_sample(&xs, &ys).unwrap();
        let (dd, _v, fx, fy) = ks_two_sample_with_argmax(&xs, &ys).unwrap();
        assert_relative_eq!(d, dd, epsilon = 1e-15);
        assert_relative_eq!((fx - fy).abs(), dd, epsilon = 1e-15);
    }
}
