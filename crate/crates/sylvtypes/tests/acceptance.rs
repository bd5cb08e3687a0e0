//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::{Duration, Instant};

use sylvtypes::mc::WILSON_Z99;
use sylvtypes::verify::{
    check_beta_prime_tables, check_beta_tables, check_clt_trend, check_euler_frobenius_symmetry,
    check_exact_pipeline, check_frobenius_identities, check_gaussian_youden, check_kingman,
    check_mc_coverage, check_oracle_agreement, check_orthogonality, check_row_sums_and_symmetry,
    check_vanishing_integrals, coverage_models, CheckResult,
};

const MC_SEED: u64 = 7;

fn report(criterion: &str, results: &[CheckResult]) {
    let pass = results.iter().all(|r| r.passed);
    println!(
        "acceptance {criterion}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    for r in results {
        println!(
            "    [{}] {} - {}",
            if r.passed { "pass" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name.as_str())
        .collect();
    assert!(pass, "criterion {criterion} failed: {failed:?}");
}

fn assert_runtime(criterion: &str, elapsed: Duration, budget: Duration) {
    println!("acceptance {criterion}: runtime {elapsed:.1?} (budget {budget:?})");
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its runtime budget: {elapsed:?} > {budget:?}"
    );
}

#[test]
fn criterion_01_beta_and_sphere_tables() {
    let start = Instant::now();
    let results = check_beta_tables();
    report("1 (beta/sphere tables)", &results);
    assert_runtime("1", start.elapsed(), Duration::from_secs(300));
}

#[test]
fn criterion_02_beta_prime_tables() {
    let start = Instant::now();
    let results = check_beta_prime_tables();
    report("2 (Cauchy/beta-prime tables)", &results);
    assert_runtime("2", start.elapsed(), Duration::from_secs(300));
}

#[test]
fn criterion_03_kingman_consistency() {
    report("3 (Kingman consistency)", &[check_kingman()]);
}

#[test]
fn criterion_04_gaussian_youden_equivalence() {
    report("4 (Gaussian-Youden equivalence)", &check_gaussian_youden());
}

#[test]
fn criterion_05_vanishing_integrals() {
    report("5 (vanishing-integral suite)", &check_vanishing_integrals());
}

#[test]
fn criterion_06_exact_pipeline_equalities() {
    report("6 (exact pipeline equalities)", &check_exact_pipeline());
}

#[test]
fn criterion_07_combinatorial_identities() {
    let mut results = check_frobenius_identities();
    results.push(check_euler_frobenius_symmetry());
    results.extend(check_row_sums_and_symmetry());
    results.extend(check_orthogonality());
    report("7 (combinatorial identity suite)", &results);
}

#[test]
fn criterion_08_monte_carlo_coverage() {
    let start = Instant::now();
    let results = check_mc_coverage(
        &coverage_models(),
        1_000_000,
        MC_SEED,
        4,
        WILSON_Z99,
        1e-5,
    );
    report("8 (Monte-Carlo coverage)", &results);
    assert_runtime("8", start.elapsed(), Duration::from_secs(600));
}

#[test]
fn criterion_09_oracle_agreement() {
    report(
        "9 (Radon type vs facet-count oracle)",
        &[check_oracle_agreement(10_000, MC_SEED)],
    );
}

#[test]
fn criterion_10_clt_trend() {
    report("10 (CLT trend)", &check_clt_trend());
}
