//! Statistical contracts of the ranked-set schemes: marginal laws per
//! column, independence across cells, agreement of the two sampling paths,
//! and the chain reconstruction against direct order-statistic sampling.

use powprod::ks::{ks_one_sample, ks_one_sample_critical, ks_two_sample, ks_two_sample_critical};
use powprod::{
    generate_rss, maxima_chain_reconstruct, ContinuousDist, McConfig, OrderStatisticLaw, Pow,
    RssScheme, SamplePath, SinShape,
};

#[test]
fn maxima_columns_match_their_power_laws_for_most_seeds() {
    // Column i of the maxima scheme is the maximum of i uniforms: CDF x^i.
    // One-sample KS at the 1% level, 20 fixed seeds, >= 18 accepts per column.
    let uni = Pow::uniform();
    let scheme = RssScheme::maxima(4, 10_000).unwrap();
    let mut accepted = [0usize; 4];
    for seed in 0..20u64 {
        let m = generate_rss(&scheme, &uni, &McConfig::new(0, seed, 0), SamplePath::BetaTransform)
            .unwrap();
        for (i, acc) in accepted.iter_mut().enumerate() {
            let col = m.column(i);
            let power = (i + 1) as i32;
            let d = ks_one_sample(&col, |x| x.powi(power)).unwrap();
            if d <= ks_one_sample_critical(col.len(), 0.01).unwrap() {
                *acc += 1;
            }
        }
    }
    for (i, acc) in accepted.iter().enumerate() {
        assert!(*acc >= 18, "column {i}: only {acc}/20 accepted");
    }
}

#[test]
fn standard_scheme_column_means_for_uniform() {
    // E[X_{i:n}] = i/(n+1) for the uniform base; 3 standard errors of slack.
    let uni = Pow::uniform();
    for n in 2..=5usize {
        let cycles = 10_000;
        let scheme = RssScheme::standard(n, cycles).unwrap();
        let m = generate_rss(&scheme, &uni, &McConfig::new(0, 5, 0), SamplePath::BetaTransform)
            .unwrap();
        for i in 0..n {
            let col = m.column(i);
            let mean: f64 = col.iter().sum::<f64>() / col.len() as f64;
            let expect = (i + 1) as f64 / (n + 1) as f64;
            // Var X_{i:n} = i(n-i+1)/((n+1)^2(n+2)) for uniform order stats.
            let var = ((i + 1) * (n - i)) as f64 / (((n + 1) * (n + 1) * (n + 2)) as f64);
            let se = (var / cycles as f64).sqrt();
            assert!(
                (mean - expect).abs() <= 3.0 * se,
                "n={n} col {i}: mean {mean} vs {expect} (se {se})"
            );
        }
    }
}

fn lag1_autocorrelation(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    let cov: f64 = xs
        .windows(2)
        .map(|w| (w[0] - mean) * (w[1] - mean))
        .sum::<f64>()
        / (n - 1.0);
    cov / var
}

#[test]
fn matrix_cells_show_no_serial_correlation() {
    let uni = Pow::uniform();
    let cycles = 10_000;
    let scheme = RssScheme::standard(4, cycles).unwrap();
    let m = generate_rss(&scheme, &uni, &McConfig::new(0, 8, 0), SamplePath::DrawAndSort).unwrap();
    let bound = 4.0 / (cycles as f64).sqrt();
    // Down each column (cycle to cycle).
    for i in 0..4 {
        let rho = lag1_autocorrelation(&m.column(i));
        assert!(rho.abs() <= bound, "column {i}: lag-1 rho {rho}");
    }
    // Along the row-major flattening (adjacent cells within a cycle). The
    // columns have different marginals, so standardize per column first;
    // otherwise the alternating means masquerade as serial correlation.
    let mut standardized = Vec::with_capacity(m.values().len());
    let mut stats = Vec::new();
    for i in 0..4 {
        let col = m.column(i);
        let mean = col.iter().sum::<f64>() / col.len() as f64;
        let sd = (col.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>()
            / col.len() as f64)
            .sqrt();
        stats.push((mean, sd));
    }
    for c in 0..cycles {
        for i in 0..4 {
            let (mean, sd) = stats[i];
            standardized.push((m.get(c, i) - mean) / sd);
        }
    }
    let rho = lag1_autocorrelation(&standardized);
    assert!(rho.abs() <= bound, "row-major lag-1 rho {rho}");
}

#[test]
fn literal_and_transform_paths_agree_in_distribution() {
    let pow2 = Pow::new(2.0).unwrap();
    let scheme = RssScheme::standard(3, 10_000).unwrap();
    let a = generate_rss(&scheme, &pow2, &McConfig::new(0, 3, 0), SamplePath::BetaTransform)
        .unwrap();
    let b = generate_rss(&scheme, &pow2, &McConfig::new(0, 4, 1), SamplePath::DrawAndSort).unwrap();
    for i in 0..3 {
        let d = ks_two_sample(&a.column(i), &b.column(i)).unwrap();
        let crit = ks_two_sample_critical(a.cycles(), b.cycles(), 0.01).unwrap();
        assert!(d <= crit, "column {i}: D={d} crit={crit}");
    }
}

#[test]
fn chain_reconstruction_matches_order_statistic_for_power_base() {
    // Products over maxima rows k..n ~ X_{k:n} when the base is uniform;
    // two-sample KS at 5% over 20 fixed seeds.
    let uni = Pow::uniform();
    let (k, n) = (1usize, 3usize);
    let law = OrderStatisticLaw::new(k, n, &uni).unwrap();
    let cycles = 100_000;
    let mut accepted = 0;
    for seed in 0..20u64 {
        let chain = maxima_chain_reconstruct(&uni, k, n, &McConfig::new(cycles, seed, 4)).unwrap();
        let direct = law.sample(&McConfig::new(cycles, seed, 5)).unwrap();
        let d = ks_two_sample(&chain, &direct).unwrap();
        if d <= ks_two_sample_critical(cycles, cycles, 0.05).unwrap() {
            accepted += 1;
        }
    }
    assert!(accepted >= 18, "only {accepted}/20 accepted");
}

#[test]
fn chain_reconstruction_rejects_non_power_base() {
    let (k, n) = (1usize, 3usize);
    let law = OrderStatisticLaw::new(k, n, &SinShape).unwrap();
    let cycles = 100_000;
    let mut rejected = 0;
    for seed in 0..20u64 {
        let chain =
            maxima_chain_reconstruct(&SinShape, k, n, &McConfig::new(cycles, seed, 0)).unwrap();
        let direct = law.sample(&McConfig::new(cycles, seed, 1)).unwrap();
        let d = ks_two_sample(&chain, &direct).unwrap();
        if d > ks_two_sample_critical(cycles, cycles, 0.05).unwrap() {
            rejected += 1;
        }
    }
    assert!(rejected >= 18, "only {rejected}/20 rejected");
}

#[test]
fn single_row_reconstruction_is_the_maximum_itself() {
    let pow2 = Pow::new(2.0).unwrap();
    let n = 4usize;
    let chain = maxima_chain_reconstruct(&pow2, n, n, &McConfig::new(20_000, 2, 0)).unwrap();
    let law = OrderStatisticLaw::new(n, n, &pow2).unwrap();
    let d = ks_one_sample(&chain, |x| law.cdf(x).unwrap()).unwrap();
    let crit = ks_one_sample_critical(chain.len(), 0.01).unwrap();
    assert!(d <= crit, "D={d} crit={crit}");
}
