//! Sampler validation: radial goodness-of-fit against the exact laws, the
//! uniform Youden analogue against the Eulerian law, and the Monte-Carlo
//! cross-check of the walk vertex-count formula.

use num_bigint::BigInt;
use num_rational::BigRational;
use sylvtypes::comb::{eulerian, factorial};
use sylvtypes::mc::{
    estimate, sample, uniform_youden_rank, wilson_interval, McConfig, RngStream,
};
use sylvtypes::models::{IncrementLaw, ModelSpec};
use sylvtypes::types::big_rational_to_f64;

// --- regularized incomplete beta, the CDF oracle for the radial laws ---

fn ln_gamma_local(z: f64) -> f64 {
    // Lanczos g=7; independent copy so the oracle does not share the
    // library's implementation path
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.5203681218851,
        -1259.1392167224028,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507343278686905,
        -0.13857109526572012,
        9.984_369_578_019_572e-6,
        1.5056327351493116e-7,
    ];
    if z < 0.5 {
        return (std::f64::consts::PI / (std::f64::consts::PI * z).sin()).ln()
            - ln_gamma_local(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = C[0];
    for (i, c) in C.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    // Lentz continued fraction for the incomplete beta
    let tiny = 1e-300;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < tiny {
        d = tiny;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..300 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-14 {
            break;
        }
    }
    h
}

fn inc_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front =
        ln_gamma_local(a + b) - ln_gamma_local(a) - ln_gamma_local(b) + a * x.ln() + b * (1.0 - x).ln();
    if x < (a + 1.0) / (a + b + 2.0) {
        ln_front.exp() * beta_cf(a, b, x) / a
    } else {
        1.0 - ln_front.exp() * beta_cf(b, a, 1.0 - x) / b
    }
}

/// One-sample Kolmogorov statistic scaled by sqrt(n).
fn ks_lambda(mut values: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len() as f64;
    let mut d = 0.0f64;
    for (i, v) in values.iter().enumerate() {
        let f = cdf(*v);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i as f64 + 1.0) / n - f).abs());
    }
    d * n.sqrt()
}

/// sqrt(n)-scaled KS threshold for p-value 1e-4 (two-term Kolmogorov tail).
const KS_LAMBDA_CRIT: f64 = 2.2414;

fn radii_squared(model: &ModelSpec, draws: usize, seed: u64) -> Vec<f64> {
    let mut rng = RngStream { seed, stream: 0 }.rng();
    let mut out = Vec::with_capacity(draws);
    while out.len() < draws {
        let cloud = sample(model, &mut rng);
        out.push(cloud.points[0].iter().map(|x| x * x).sum::<f64>());
    }
    out
}

#[test]
fn beta_radial_law_matches_density() {
    // with X = R U, R^2 ~ Beta(d/2, beta+1)
    let (d, beta) = (3u32, 0.7f64);
    let values = radii_squared(&ModelSpec::Beta { d, beta }, 100_000, 21);
    let lambda = ks_lambda(values, |t| inc_beta(d as f64 / 2.0, beta + 1.0, t));
    assert!(
        lambda < KS_LAMBDA_CRIT,
        "beta radial KS sqrt(n) D = {lambda} exceeds the p=1e-4 threshold"
    );
}

#[test]
fn beta_prime_radial_law_matches_density() {
    // R^2 ~ BetaPrime(d/2, beta - d/2); CDF(t) = I_{t/(1+t)}(d/2, beta - d/2)
    let (d, beta) = (3u32, 2.0f64);
    let values = radii_squared(&ModelSpec::BetaPrime { d, beta }, 100_000, 22);
    let a = d as f64 / 2.0;
    let b = beta - d as f64 / 2.0;
    let lambda = ks_lambda(values, |t| inc_beta(a, b, t / (1.0 + t)));
    assert!(
        lambda < KS_LAMBDA_CRIT,
        "beta-prime radial KS sqrt(n) D = {lambda} exceeds the p=1e-4 threshold"
    );
}

#[test]
fn half_sphere_projection_gives_the_cauchy_radial_law() {
    // gnomonic projection of the uniform upper half-sphere is the Cauchy
    // law, i.e. beta-prime with beta = (d+1)/2
    let d = 3u32;
    let values = radii_squared(&ModelSpec::HalfSphere { d }, 100_000, 23);
    let a = d as f64 / 2.0;
    let b = 0.5;
    let lambda = ks_lambda(values, |t| inc_beta(a, b, t / (1.0 + t)));
    assert!(
        lambda < KS_LAMBDA_CRIT,
        "half-sphere radial KS sqrt(n) D = {lambda} exceeds the p=1e-4 threshold"
    );
}

#[test]
fn sphere_sampler_has_unit_radius() {
    let values = radii_squared(&ModelSpec::Sphere { d: 4 }, 1000, 24);
    for v in values {
        assert!((v - 1.0).abs() < 1e-12);
    }
}

#[test]
fn uniform_youden_matches_the_eulerian_law() {
    // P[rank = i] = <n+1, i> / (n+1)!
    let samples = 100_000u64;
    for n in 2..=6u32 {
        let mut rng = RngStream { seed: 25, stream: n as u64 }.rng();
        let mut counts = vec![0u64; n as usize + 1];
        for _ in 0..samples {
            counts[uniform_youden_rank(n, &mut rng) as usize] += 1;
        }
        let fact = factorial(n as u64 + 1);
        for (i, &c) in counts.iter().enumerate() {
            let target = big_rational_to_f64(&BigRational::new(
                eulerian(n as u64 + 1, i as i64),
                fact.clone(),
            ));
            let (lo, hi) = wilson_interval(c, samples, 4.0);
            assert!(
                lo <= target && target <= hi,
                "n={n} rank {i}: target {target} outside [{lo}, {hi}]"
            );
        }
    }
}

#[test]
fn planar_walk_vertex_count_matches_the_formula() {
    // E f_0 of the hull of a 3-step planar walk is 11/3: the hull has 3
    // vertices when one point lands inside (type 0) and 4 otherwise.
    let model = ModelSpec::ConvRw {
        d: 2,
        increments: IncrementLaw::Gaussian,
    };
    let report = estimate(&model, 400_000, 26, 4, &McConfig::default());
    let valid = (report.samples - report.degenerate) as f64;
    let e_f0 = (3 * report.counts[&0] + 4 * report.counts[&1]) as f64 / valid;
    // 4-sigma band on p_0 translated to E f_0 = 4 - p_0
    let (lo, hi) = wilson_interval(report.counts[&0], report.samples - report.degenerate, 4.0);
    assert!(
        4.0 - hi <= 11.0 / 3.0 && 11.0 / 3.0 <= 4.0 - lo,
        "E f_0 = {e_f0}, band [{}, {}] does not contain 11/3",
        4.0 - hi,
        4.0 - lo
    );
    assert_eq!(
        sylvtypes::models::expected_f_walk(3, 2, 0),
        BigRational::new(BigInt::from(11), BigInt::from(3))
    );
}

#[test]
fn reports_are_reproducible_and_consistent() {
    let model = ModelSpec::Wendel { d: 3 };
    let a = estimate(&model, 100_000, 27, 3, &McConfig::default());
    let b = estimate(&model, 100_000, 27, 1, &McConfig::default());
    assert_eq!(a.counts, b.counts);
    assert_eq!(a.degenerate, b.degenerate);
    let total: u64 = a.counts.values().sum();
    assert_eq!(total + a.degenerate, a.samples);
    assert!(a.healthy);
    for est in a.estimates.values() {
        assert!(est.lo >= 0.0 && est.hi <= 1.0 && est.lo <= est.p_hat && est.p_hat <= est.hi);
    }
}

#[test]
fn beta_continuation_range_matches_simulation() {
    // the quadrature formula extends below beta = -1/2 by analytic
    // continuation; Monte Carlo is the independent check on that range
    let (d, beta) = (3u32, -0.75f64);
    let reference = sylvtypes::models::beta_type_probs_with_tol(d, beta, 1e-10).unwrap();
    let report = estimate(
        &ModelSpec::Beta { d, beta },
        200_000,
        29,
        4,
        &McConfig::default(),
    );
    for (m, target) in reference.iter() {
        let (lo, hi) = sylvtypes::mc::wilson_at(&report, m, 4.0);
        assert!(
            lo <= *target && *target <= hi,
            "m={m}: quadrature {target} outside MC band [{lo}, {hi}]"
        );
    }
}

#[test]
fn incomplete_beta_oracle_sanity() {
    // closed forms: I_x(1, b) = 1 - (1-x)^b and I_x(a, 1) = x^a
    for &x in &[0.1, 0.4, 0.8] {
        assert!((inc_beta(1.0, 2.5, x) - (1.0 - (1.0 - x).powf(2.5))).abs() < 1e-12);
        assert!((inc_beta(1.5, 1.0, x) - x.powf(1.5)).abs() < 1e-12);
        // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
        assert!((inc_beta(2.0, 3.0, x) + inc_beta(3.0, 2.0, 1.0 - x) - 1.0).abs() < 1e-12);
    }
}
