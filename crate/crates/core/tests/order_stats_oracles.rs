//! Independent oracles for the order-statistic layer: exponential-spacings
//! sampling, finite-difference density checks, closed-form KS targets, and
//! simplex normalization of the generalized joint density.

use powprod::ks::{ks_one_sample_critical, ks_two_sample, ks_two_sample_critical};
use powprod::rng::{derive_stream, next_open01, stream_rng};
use powprod::{
    gos_joint_density, integrate, ks, ContinuousDist, GosParams, McConfig, OrderStatisticLaw, Pow,
    QuadratureConfig,
};

#[test]
fn os_cdf_monotone_with_correct_boundaries() {
    let bases = [Pow::uniform(), Pow::new(0.5).unwrap()];
    for base in &bases {
        for n in 1..=12usize {
            for k in 1..=n {
                let law = OrderStatisticLaw::new(k, n, base).unwrap();
                assert_eq!(law.cdf(0.0).unwrap(), 0.0);
                assert!((law.cdf(1.0).unwrap() - 1.0).abs() < 1e-12);
                let mut last = 0.0;
                for j in 1..=25 {
                    let x = j as f64 / 26.0;
                    let v = law.cdf(x).unwrap();
                    assert!(v >= last - 1e-14, "k={k} n={n} at {x}");
                    last = v;
                }
            }
        }
    }
}

#[test]
fn central_difference_of_cdf_matches_pdf() {
    // (F(x+h) - F(x-h)) / 2h vs f(x) at h = 1e-5 on a 50-point grid.
    let uni = Pow::uniform();
    let pow2 = Pow::new(2.0).unwrap();
    let exps = powprod::ExpShape;
    let cases: [(&dyn powprod::ContinuousDist, usize, usize); 4] = [
        (&uni, 2, 3),
        (&pow2, 1, 4),
        (&pow2, 4, 4),
        (&exps, 2, 5),
    ];
    let h = 1e-5;
    for (base, k, n) in cases {
        let law = OrderStatisticLaw::new(k, n, base).unwrap();
        for j in 1..=50 {
            let x = j as f64 / 51.0;
            let fd = (law.cdf(x + h).unwrap() - law.cdf(x - h).unwrap()) / (2.0 * h);
            let an = law.pdf(x).unwrap();
            assert!(
                (fd - an).abs() <= 1e-6,
                "{} k={k} n={n} x={x}: fd {fd} vs pdf {an}",
                base.label()
            );
        }
    }
}

#[test]
fn sampled_minimum_matches_closed_form_cdf() {
    let uni = Pow::uniform();
    let law = OrderStatisticLaw::new(1, 2, &uni).unwrap();
    let xs = law.sample(&McConfig::new(100_000, 12, 0)).unwrap();
    let d = ks::ks_one_sample(&xs, |x| 1.0 - (1.0 - x) * (1.0 - x)).unwrap();
    let crit = ks_one_sample_critical(xs.len(), 0.01).unwrap();
    assert!(d <= crit, "D={d} crit={crit}");
}

#[test]
fn renyi_spacings_oracle_for_power_order_statistics() {
    // -ln X_{k:n} for a Pow(alpha) base is distributed as
    // sum_{i=k}^n E_i / (alpha i) with iid standard exponentials E_i.
    // Compare both constructions by two-sample KS at the 1% level over 20
    // fixed seeds; the null is true so at least 18 must accept.
    let n_rep = 100_000;
    for &(alpha, k, n) in &[(1.0f64, 1usize, 3usize), (2.0, 2, 5)] {
        let base = Pow::new(alpha).unwrap();
        let law = OrderStatisticLaw::new(k, n, &base).unwrap();
        let mut accepted = 0;
        for seed in 0..20u64 {
            let xs = law
                .sample(&McConfig::new(n_rep, seed, derive_stream(77, &[0])))
                .unwrap();
            let neg_logs: Vec<f64> = xs.iter().map(|x| -x.ln()).collect();

            let mut rng = stream_rng(seed, derive_stream(77, &[1]));
            let mut sums = Vec::with_capacity(n_rep);
            for _ in 0..n_rep {
                let mut s = 0.0;
                for i in k..=n {
                    let e = -next_open01(&mut rng).ln();
                    s += e / (alpha * i as f64);
                }
                sums.push(s);
            }

            let d = ks_two_sample(&neg_logs, &sums).unwrap();
            let crit = ks_two_sample_critical(n_rep, n_rep, 0.01).unwrap();
            if d <= crit {
                accepted += 1;
            }
        }
        assert!(
            accepted >= 18,
            "alpha={alpha} k={k} n={n}: only {accepted}/20 accepted"
        );
    }
}

#[test]
fn gos_density_integrates_to_one_over_the_ordered_region() {
    // Nested adaptive quadrature of the m = 0, k = 1 joint density over
    // x_1 < ... < x_n for n = 2, 3.
    let bases = [Pow::uniform(), Pow::new(2.0).unwrap()];
    for base in &bases {
        let p2 = GosParams::new(2, 0.0, 1.0).unwrap();
        // Bounded smooth integrands: no endpoint slicing, so inner bounds
        // never collide with quadrature nodes under rounding.
        let inner_cfg = QuadratureConfig {
            abs_tol: 1e-11,
            max_depth: 60,
            singularity_split: false,
        };
        let outer_cfg = QuadratureConfig {
            abs_tol: 1e-9,
            singularity_split: false,
            ..inner_cfg
        };
        let mass2 = integrate(
            |x1| {
                integrate(
                    |x2| gos_joint_density(&p2, base, &[x1, x2]).unwrap_or(f64::NAN),
                    x1,
                    1.0,
                    &inner_cfg,
                )
                .map(|q| q.value)
                .unwrap_or(f64::NAN)
            },
            0.0,
            1.0,
            &outer_cfg,
        )
        .unwrap()
        .value;
        assert!(
            (mass2 - 1.0).abs() <= 1e-6,
            "{} n=2: mass {mass2}",
            base.label()
        );

        let p3 = GosParams::new(3, 0.0, 1.0).unwrap();
        let in3 = QuadratureConfig {
            abs_tol: 1e-11,
            singularity_split: false,
            ..inner_cfg
        };
        let mid3 = QuadratureConfig {
            abs_tol: 1e-10,
            singularity_split: false,
            ..inner_cfg
        };
        let out3 = QuadratureConfig {
            abs_tol: 1e-8,
            singularity_split: false,
            ..inner_cfg
        };
        let mass3 = integrate(
            |x1| {
                integrate(
                    |x2| {
                        integrate(
                            |x3| gos_joint_density(&p3, base, &[x1, x2, x3]).unwrap_or(f64::NAN),
                            x2,
                            1.0,
                            &in3,
                        )
                        .map(|q| q.value)
                        .unwrap_or(f64::NAN)
                    },
                    x1,
                    1.0,
                    &mid3,
                )
                .map(|q| q.value)
                .unwrap_or(f64::NAN)
            },
            0.0,
            1.0,
            &out3,
        )
        .unwrap()
        .value;
        assert!(
            (mass3 - 1.0).abs() <= 1e-6,
            "{} n=3: mass {mass3}",
            base.label()
        );
    }
}
