//! Closed-form type distributions for every supported random model.
//!
//! Continuous models (Gaussian, beta, beta-prime, half-sphere/Cauchy, the
//! Youden order-statistics probability and the simplex angle sums) evaluate
//! line integrals through the scaled-phi / G machinery; discrete models
//! (walk hulls, Wendel cones, positive hulls of walks and bridges) are exact
//! rationals built from the combinatorial triangles. The expected-f-vector
//! deficit feeders for each discrete family are exposed so the triangular
//! solver can be cross-checked against the closed forms in exact arithmetic.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::comb::{
    b_eulerian, b_stirling_first_row, b_stirling_second, binomial, eulerian, factorial,
    stirling_first_row, stirling_second,
};
use crate::quad::{integrate_line, QuadratureError};
use crate::special::{
    ln_c_const, ln_c_tilde_const, ln_cosh, ln_gamma, scaled_phi, GEvaluator, GKind, SpecialError,
};
use crate::types::{
    big_rational_to_f64, eta, max_type_index, DeficitVector, Setting, TypeDistribution,
};

#[derive(Debug, Clone)]
pub enum ModelError {
    Domain(String),
    Quadrature(QuadratureError),
    Special(SpecialError),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Domain(msg) => write!(f, "unsupported parameters: {msg}"),
            ModelError::Quadrature(e) => write!(f, "{e}"),
            ModelError::Special(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ModelError {}

impl From<QuadratureError> for ModelError {
    fn from(e: QuadratureError) -> Self {
        ModelError::Quadrature(e)
    }
}

impl From<SpecialError> for ModelError {
    fn from(e: SpecialError) -> Self {
        ModelError::Special(e)
    }
}

/// Increment law for the walk and bridge samplers. `ScaleMixture`
/// multiplies an i.i.d. Gaussian stretch by one common random scale per
/// cloud, which keeps exchangeability (and sign symmetry) while breaking
/// independence from the Gaussian case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IncrementLaw {
    #[default]
    Gaussian,
    ScaleMixture,
}

/// A random model treated by the library.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Gaussian { d: u32 },
    Beta { d: u32, beta: f64 },
    BetaPrime { d: u32, beta: f64 },
    Sphere { d: u32 },
    HalfSphere { d: u32 },
    ConvRw { d: u32, increments: IncrementLaw },
    Wendel { d: u32 },
    PosWalk { d: u32, increments: IncrementLaw },
    PosBridge { d: u32, increments: IncrementLaw },
}

impl ModelSpec {
    pub fn d(&self) -> u32 {
        match *self {
            ModelSpec::Gaussian { d }
            | ModelSpec::Beta { d, .. }
            | ModelSpec::BetaPrime { d, .. }
            | ModelSpec::Sphere { d }
            | ModelSpec::HalfSphere { d }
            | ModelSpec::ConvRw { d, .. }
            | ModelSpec::Wendel { d }
            | ModelSpec::PosWalk { d, .. }
            | ModelSpec::PosBridge { d, .. } => d,
        }
    }

    pub fn setting(&self) -> Setting {
        match self {
            ModelSpec::Wendel { .. } | ModelSpec::PosWalk { .. } | ModelSpec::PosBridge { .. } => {
                Setting::Conic
            }
            _ => Setting::Affine,
        }
    }

    /// Models whose distribution is an exact rational.
    pub fn is_exact(&self) -> bool {
        matches!(
            self,
            ModelSpec::ConvRw { .. }
                | ModelSpec::Wendel { .. }
                | ModelSpec::PosWalk { .. }
                | ModelSpec::PosBridge { .. }
        )
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Gaussian { d } => write!(f, "gaussian(d={d})"),
            ModelSpec::Beta { d, beta } => write!(f, "beta(d={d}, beta={beta})"),
            ModelSpec::BetaPrime { d, beta } => write!(f, "betaprime(d={d}, beta={beta})"),
            ModelSpec::Sphere { d } => write!(f, "sphere(d={d})"),
            ModelSpec::HalfSphere { d } => write!(f, "halfsphere(d={d})"),
            ModelSpec::ConvRw { d, .. } => write!(f, "convrw(d={d})"),
            ModelSpec::Wendel { d } => write!(f, "wendel(d={d})"),
            ModelSpec::PosWalk { d, .. } => write!(f, "poswalk(d={d})"),
            ModelSpec::PosBridge { d, .. } => write!(f, "posbridge(d={d})"),
        }
    }
}

/// Default quadrature tolerance by dimension.
pub fn default_tol(d: u32) -> f64 {
    if d <= 8 {
        1e-10
    } else {
        1e-8
    }
}

fn rational(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn eta_big(d: u32, m: i32) -> BigRational {
    BigRational::from(BigInt::from(eta(d, m).unwrap()))
}

// ---------------------------------------------------------------------------
// discrete models (exact)
// ---------------------------------------------------------------------------

/// Convex hull of a d-step exchangeable random walk in R^d (d+2 points):
/// `p_m = eta_{d,m} <d+1, m> / (d+1)!`.
pub fn conv_rw_type_probs(d: u32) -> TypeDistribution<BigRational> {
    let fact = factorial(d as u64 + 1);
    let probs = (0..=max_type_index(d))
        .map(|m| eta_big(d, m) * rational(eulerian(d as u64 + 1, m as i64), fact.clone()))
        .collect();
    TypeDistribution::new(d, Setting::Affine, probs).unwrap()
}

/// Cone over d+2 sign-symmetric vectors in R^{d+1}:
/// `q_m = eta_{d,m} C(d+2, m+1) / 2^{d+2}`.
pub fn wendel_type_probs(d: u32) -> TypeDistribution<BigRational> {
    let denom = BigInt::one() << (d + 2);
    let probs = (-1..=max_type_index(d))
        .map(|m| eta_big(d, m) * rational(binomial(d as u64 + 2, m as i64 + 1), denom.clone()))
        .collect();
    TypeDistribution::new(d, Setting::Conic, probs).unwrap()
}

/// Positive hull of a random bridge with d+3 exchangeable increments:
/// `q_m = eta_{d,m} <d+3, m+1> / (d+3)!`.
pub fn pos_bridge_type_probs(d: u32) -> TypeDistribution<BigRational> {
    let fact = factorial(d as u64 + 3);
    let probs = (-1..=max_type_index(d))
        .map(|m| eta_big(d, m) * rational(eulerian(d as u64 + 3, m as i64 + 1), fact.clone()))
        .collect();
    TypeDistribution::new(d, Setting::Conic, probs).unwrap()
}

/// Positive hull of a symmetric random walk with d+2 increments:
/// `q_m = eta_{d,m} B<d+2, m+1> / (2^{d+2} (d+2)!)`.
pub fn pos_walk_type_probs(d: u32) -> TypeDistribution<BigRational> {
    let denom = (BigInt::one() << (d + 2)) * factorial(d as u64 + 2);
    let probs = (-1..=max_type_index(d))
        .map(|m| eta_big(d, m) * rational(b_eulerian(d as u64 + 2, m as i64 + 1), denom.clone()))
        .collect();
    TypeDistribution::new(d, Setting::Conic, probs).unwrap()
}

// ---------------------------------------------------------------------------
// expected f-vectors and deficits of the discrete models
// ---------------------------------------------------------------------------

/// Expected number of l-faces of the convex hull of an n-step exchangeable
/// walk in R^d (n+1 points), `2 l!/n! sum_j c(n+1, d-2j) S(d-2j, l+1)`.
pub fn expected_f_walk(n: u32, d: u32, l: i32) -> BigRational {
    assert!(n >= d && d >= 1 && l >= 0 && (l as u32) < d);
    let srow1 = stirling_first_row(n as u64 + 1);
    let mut acc = BigInt::zero();
    let mut i = d as i64;
    while i >= 0 {
        if (i as usize) < srow1.len() {
            acc += &srow1[i as usize] * stirling_second(i as u64, l as i64 + 1);
        }
        i -= 2;
    }
    rational(BigInt::from(2) * factorial(l as u64) * acc, factorial(n as u64))
}

/// Complementary form: `C(n+1, l+1) - E f_l`, via the tail of the same
/// Stirling convolution.
pub fn walk_deficit(n: u32, d: u32, l: i32) -> BigRational {
    assert!(n >= d && d >= 1 && l >= 0 && (l as u32) < d);
    let srow1 = stirling_first_row(n as u64 + 1);
    let mut acc = BigInt::zero();
    let mut i = d as i64 + 2;
    while (i as usize) < srow1.len() {
        acc += &srow1[i as usize] * stirling_second(i as u64, l as i64 + 1);
        i += 2;
    }
    rational(BigInt::from(2) * factorial(l as u64) * acc, factorial(n as u64))
}

/// Walk deficit vector for the d+2 point case (n = d+1), feeding the
/// affine solver.
pub fn walk_deficit_vector(d: u32) -> DeficitVector<BigRational> {
    let values = (0..=max_type_index(d))
        .map(|l| walk_deficit(d + 1, d, l))
        .collect();
    DeficitVector::new(d, Setting::Affine, values).unwrap()
}

/// Donoho-Tanner deficit `C(n,j) - E f_j` of the cone over n sign-symmetric
/// vectors in R^{d+1}: `2^{-(n-j-1)} C(n,j) sum_{r=0}^{n-d-2} C(n-j-1, r)`.
pub fn wendel_deficit(n: u32, d: u32, j: i32) -> BigRational {
    assert!(n >= d + 2 && j >= 0 && (j as u32) <= d);
    let mut tail = BigInt::zero();
    for r in 0..=(n - d - 2) as i64 {
        tail += binomial(n as u64 - j as u64 - 1, r);
    }
    rational(
        binomial(n as u64, j as i64) * tail,
        BigInt::one() << (n - j as u32 - 1),
    )
}

/// Expected face count of the Wendel cone, `C(n,j)` minus the deficit.
pub fn expected_f_wendel(n: u32, d: u32, j: i32) -> BigRational {
    BigRational::from(binomial(n as u64, j as i64)) - wendel_deficit(n, d, j)
}

/// Probability that n sign-symmetric vectors positively span R^{d+1}:
/// `2^{-(n-1)} sum_{r=d+1}^{n-1} C(n-1, r)`.
pub fn wendel_full_sphere_prob(n: u32, d: u32) -> BigRational {
    let mut acc = BigInt::zero();
    for r in (d as i64 + 1)..=(n as i64 - 1) {
        acc += binomial(n as u64 - 1, r);
    }
    rational(acc, BigInt::one() << (n - 1))
}

/// Wendel deficit vector for n = d+2 generating vectors (spherical index,
/// entry l corresponds to face dimension l of the spherical polytope).
pub fn wendel_deficit_vector(d: u32) -> DeficitVector<BigRational> {
    let values = (-1..=max_type_index(d))
        .map(|l| wendel_deficit(d + 2, d, l + 1))
        .collect();
    DeficitVector::new(d, Setting::Conic, values).unwrap()
}

/// Expected j-faces of the positive hull of an n-increment random bridge in
/// R^{d+1}: `2 (j+1)!/n! sum_r c(n, d+1-2r) S(d+1-2r, j+1)`.
pub fn expected_f_conic_bridge(n: u32, d: u32, j: i32) -> BigRational {
    assert!(n >= d + 2 && j >= 0 && (j as u32) <= d);
    let srow1 = stirling_first_row(n as u64);
    let mut acc = BigInt::zero();
    let mut i = d as i64 + 1;
    while i >= 0 {
        if (i as usize) < srow1.len() {
            acc += &srow1[i as usize] * stirling_second(i as u64, j as i64 + 1);
        }
        i -= 2;
    }
    rational(
        BigInt::from(2) * factorial(j as u64 + 1) * acc,
        factorial(n as u64),
    )
}

/// `C(n-1, j) - E f_j` for the bridge cone, via the complementary tail.
pub fn conic_bridge_deficit(n: u32, d: u32, j: i32) -> BigRational {
    assert!(n >= d + 2 && j >= 0 && (j as u32) <= d);
    let srow1 = stirling_first_row(n as u64);
    let mut acc = BigInt::zero();
    let mut i = d as i64 + 3;
    while (i as usize) < srow1.len() {
        acc += &srow1[i as usize] * stirling_second(i as u64, j as i64 + 1);
        i += 2;
    }
    rational(
        BigInt::from(2) * factorial(j as u64 + 1) * acc,
        factorial(n as u64),
    )
}

/// Expected j-faces of the positive hull of an n-increment symmetric walk
/// in R^{d+1}: `2 * 2^j j! / (2^n n!) sum_r c_B(n, d-2r) S_B(d-2r, j)`.
pub fn expected_f_conic_walk(n: u32, d: u32, j: i32) -> BigRational {
    assert!(n > d && j >= 0 && (j as u32) <= d);
    let brow1 = b_stirling_first_row(n as u64);
    let mut acc = BigInt::zero();
    let mut i = d as i64;
    while i >= 0 {
        if (i as usize) < brow1.len() {
            acc += &brow1[i as usize] * b_stirling_second(i as u64, j as i64);
        }
        i -= 2;
    }
    let num = BigInt::from(2) * (BigInt::one() << j as u32) * factorial(j as u64) * acc;
    rational(num, (BigInt::one() << n) * factorial(n as u64))
}

/// `C(n, j) - E f_j` for the walk cone, via the complementary tail.
pub fn conic_walk_deficit(n: u32, d: u32, j: i32) -> BigRational {
    assert!(n > d && j >= 0 && (j as u32) <= d);
    let brow1 = b_stirling_first_row(n as u64);
    let mut acc = BigInt::zero();
    let mut i = d as i64 + 2;
    while (i as usize) < brow1.len() {
        acc += &brow1[i as usize] * b_stirling_second(i as u64, j as i64);
        i += 2;
    }
    let num = BigInt::from(2) * (BigInt::one() << j as u32) * factorial(j as u64) * acc;
    rational(num, (BigInt::one() << n) * factorial(n as u64))
}

/// Bridge deficit vector for n = d+3 increments (d+2 distinct generators).
pub fn bridge_deficit_vector(d: u32) -> DeficitVector<BigRational> {
    let values = (-1..=max_type_index(d))
        .map(|l| conic_bridge_deficit(d + 3, d, l + 1))
        .collect();
    DeficitVector::new(d, Setting::Conic, values).unwrap()
}

/// Walk-cone deficit vector for n = d+2 increments.
pub fn pos_walk_deficit_vector(d: u32) -> DeficitVector<BigRational> {
    let values = (-1..=max_type_index(d))
        .map(|l| conic_walk_deficit(d + 2, d, l + 1))
        .collect();
    DeficitVector::new(d, Setting::Conic, values).unwrap()
}

// ---------------------------------------------------------------------------
// Gaussian model and Youden probabilities
// ---------------------------------------------------------------------------

/// `(1/sqrt(2 pi)) * integral of psi_+^a psi_-^b (x; n) dx`; requires
/// `a + b = n` so the product carries the full Gaussian weight.
fn gaussian_core_integral(n: u32, a: u32, b: u32, tol: f64) -> Result<f64, ModelError> {
    debug_assert_eq!(a + b, n);
    let result = integrate_line(
        |x| {
            let plus = scaled_phi(x, n, 1);
            let minus = plus.conj();
            plus.powu(a) * minus.powu(b)
        },
        n as f64,
        tol,
    )?;
    Ok(result.value.re / (2.0 * PI).sqrt())
}

/// Type distribution of d+2 i.i.d. standard Gaussian points in R^d.
pub fn gaussian_type_probs_with_tol(
    d: u32,
    tol: f64,
) -> Result<TypeDistribution<f64>, ModelError> {
    if !(2..=12).contains(&d) {
        return Err(ModelError::Domain(format!(
            "gaussian model supports 2 <= d <= 12, got {d}"
        )));
    }
    let n = d + 2;
    let mut probs = Vec::new();
    for m in 0..=max_type_index(d) {
        let core = gaussian_core_integral(n, m as u32 + 1, d + 1 - m as u32, tol)?;
        let value = eta(d, m).unwrap() as f64
            * big_rational_to_f64(&BigRational::from(binomial(n as u64, m as i64 + 1)))
            * core;
        probs.push(value.max(0.0));
    }
    Ok(TypeDistribution::new(d, Setting::Affine, probs).unwrap())
}

pub fn gaussian_type_probs(d: u32) -> Result<TypeDistribution<f64>, ModelError> {
    gaussian_type_probs_with_tol(d, default_tol(d))
}

/// Youden probability `P(n, k)` that a standard normal sample mean falls
/// between the k-th and (k+1)-st order statistics.
///
/// Stated for `k in 1..=n-1`; for `k in {0, n}` the same integral
/// representation evaluates to 0 and is returned as computed.
pub fn youden_with_tol(n: u32, k: i32, tol: f64) -> Result<f64, ModelError> {
    if n < 2 || k < 0 || k as u32 > n {
        return Err(ModelError::Domain(format!(
            "youden probability needs n >= 2 and 0 <= k <= n, got n={n}, k={k}"
        )));
    }
    let core = gaussian_core_integral(n, k as u32, n - k as u32, tol)?;
    Ok(big_rational_to_f64(&BigRational::from(binomial(n as u64, k as i64))) * core)
}

pub fn youden(n: u32, k: i32) -> Result<f64, ModelError> {
    youden_with_tol(n, k, default_tol(n.saturating_sub(2)))
}

// ---------------------------------------------------------------------------
// angle sums
// ---------------------------------------------------------------------------

/// Expected internal angle sum of a simplex at its (k-1)-dimensional faces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSum {
    pub n: u32,
    pub k: u32,
    pub value: f64,
}

/// Angle sum of the regular simplex with n vertices at its k-vertex faces:
/// `C(n,k)/sqrt(2 pi) * int psi_+^{n-k}(x; n) e^{-k x^2/(2n)} dx`.
pub fn angle_sum_gauss(n: u32, k: u32, tol: f64) -> Result<AngleSum, ModelError> {
    if n < 2 || k == 0 || k > n {
        return Err(ModelError::Domain(format!(
            "angle sum needs n >= 2 and 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let result = integrate_line(
        |x| {
            let y2 = x * x / n as f64;
            scaled_phi(x, n, 1).powu(n - k) * (-0.5 * k as f64 * y2).exp()
        },
        (n - k).max(2) as f64,
        tol,
    )?;
    let c = big_rational_to_f64(&BigRational::from(binomial(n as u64, k as i64)));
    Ok(AngleSum {
        n,
        k,
        value: c * result.value.re / (2.0 * PI).sqrt(),
    })
}

/// Parameters of a beta-family outer integral in log form.
struct BetaOuter {
    evaluator: GEvaluator,
    ln_c_outer: f64,
    outer_weight: f64,
    x_max: f64,
}

fn beta_outer(d_plus_2: u32, alpha: f64, kind: GKind, tol: f64) -> Result<BetaOuter, ModelError> {
    let n = d_plus_2 as f64;
    let (outer_weight, ln_c_outer, decay_rate) = match kind {
        GKind::Beta => (
            alpha * n + 2.0,
            ln_c_const(alpha * n / 2.0)?,
            2.0f64,
        ),
        GKind::BetaPrime => {
            let w = alpha * n - 1.0;
            // net exponential decay of the balanced integrand
            let rate = if alpha >= 1.0 { n - 1.0 } else { alpha * n - 1.0 };
            (w, ln_c_tilde_const(alpha * n / 2.0)?, rate)
        }
    };
    if decay_rate <= 1e-3 {
        return Err(ModelError::Domain(format!(
            "integrand decay rate {decay_rate:e} too small to truncate reliably"
        )));
    }
    // truncation point: integrand falls below tol * 1e-4 well before x_max,
    // with room for the tail probes of the line integrator at 2T
    let x_needed = ((1.0 / tol).ln() + 14.0) / decay_rate + 12.0;
    let x_max = 2.0 * x_needed + 8.0;
    let evaluator = GEvaluator::new(kind, alpha, x_max)?;
    Ok(BetaOuter {
        evaluator,
        ln_c_outer,
        outer_weight,
        x_max,
    })
}

/// Real part of
/// `int c (cosh x)^{-w} G^{g_power}(x) e^{i phase...} dx` for a pure G power.
fn beta_power_integral(outer: &BetaOuter, g_power: u32, tol: f64) -> Result<f64, ModelError> {
    let BetaOuter {
        evaluator,
        ln_c_outer,
        outer_weight,
        x_max,
    } = outer;
    let result = integrate_line(
        |x| {
            if x.abs() >= *x_max {
                return Complex64::ZERO;
            }
            let g = evaluator.evaluate(x).expect("inside tabulated range");
            let exponent = g_power as f64 * g.ln_abs - outer_weight * ln_cosh(x) + ln_c_outer;
            if exponent < -745.0 {
                return Complex64::ZERO;
            }
            Complex64::from_polar(exponent.exp(), g_power as f64 * g.arg)
        },
        2.0,
        tol,
    )?;
    Ok(result.value.re)
}

/// Angle sums of the beta simplex: `J_{n,k}(b)` with `alpha = 2b + n - 1`.
pub fn angle_sum_beta(n: u32, k: u32, b: f64, tol: f64) -> Result<AngleSum, ModelError> {
    if n < 3 || k == 0 || k > n {
        return Err(ModelError::Domain(format!(
            "beta angle sum needs n >= 3 and 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let alpha = 2.0 * b + n as f64 - 1.0;
    if alpha < n as f64 - 3.0 {
        return Err(ModelError::Domain(format!(
            "beta angle sum requires alpha >= n - 3 (b >= -1), got alpha={alpha}"
        )));
    }
    let outer = beta_outer(n, alpha, GKind::Beta, tol)?;
    let integral = beta_power_integral(&outer, n - k, tol)?;
    let c = big_rational_to_f64(&BigRational::from(binomial(n as u64, k as i64)));
    Ok(AngleSum {
        n,
        k,
        value: c * integral,
    })
}

/// Angle sums of the beta-prime simplex: `J~_{n,k}(b)` with
/// `alpha = 2b - n + 1 > 1/n`.
pub fn angle_sum_beta_prime(n: u32, k: u32, b: f64, tol: f64) -> Result<AngleSum, ModelError> {
    if n < 2 || k == 0 || k > n {
        return Err(ModelError::Domain(format!(
            "beta-prime angle sum needs n >= 2 and 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let alpha = 2.0 * b - n as f64 + 1.0;
    if alpha <= 1.0 / n as f64 {
        return Err(ModelError::Domain(format!(
            "beta-prime angle sum requires alpha > 1/n, got alpha={alpha}"
        )));
    }
    let outer = beta_outer(n, alpha, GKind::BetaPrime, tol)?;
    let integral = beta_power_integral(&outer, n - k, tol)?;
    let c = big_rational_to_f64(&BigRational::from(binomial(n as u64, k as i64)));
    Ok(AngleSum {
        n,
        k,
        value: c * integral,
    })
}

// ---------------------------------------------------------------------------
// beta and beta-prime type distributions
// ---------------------------------------------------------------------------

fn beta_family_probs(
    d: u32,
    alpha: f64,
    kind: GKind,
    tol: f64,
) -> Result<TypeDistribution<f64>, ModelError> {
    let n = d + 2;
    let outer = beta_outer(n, alpha, kind, tol)?;
    let BetaOuter {
        evaluator,
        ln_c_outer,
        outer_weight,
        x_max,
    } = &outer;
    let mut probs = Vec::new();
    for m in 0..=max_type_index(d) {
        // G^{d+1-m} (1-G)^{m+1} + (-1)^m G^{d+2}
        //   = |G|^{d+2} (e^{i(d-2m) arg} + (-1)^m e^{i(d+2) arg})
        let phase_mixed = (d as i32 - 2 * m) as f64;
        let phase_pure = (d + 2) as f64;
        let parity = if m % 2 == 0 { 1.0 } else { -1.0 };
        let result = integrate_line(
            |x| {
                if x.abs() >= *x_max {
                    return Complex64::ZERO;
                }
                let g = evaluator.evaluate(x).expect("inside tabulated range");
                let exponent = n as f64 * g.ln_abs - outer_weight * ln_cosh(x) + ln_c_outer;
                if exponent < -745.0 {
                    return Complex64::ZERO;
                }
                let mag = exponent.exp();
                let bracket = Complex64::from_polar(1.0, phase_mixed * g.arg)
                    + parity * Complex64::from_polar(1.0, phase_pure * g.arg);
                mag * bracket
            },
            2.0,
            tol,
        )?;
        let coeff = eta(d, m).unwrap() as f64
            * big_rational_to_f64(&BigRational::from(binomial(n as u64, m as i64 + 1)));
        probs.push((coeff * result.value.re).max(0.0));
    }
    Ok(TypeDistribution::new(d, Setting::Affine, probs).unwrap())
}

/// Type distribution of d+2 i.i.d. beta-distributed points (density
/// proportional to `(1 - |x|^2)^beta` on the unit ball); `beta = -1` is the
/// uniform distribution on the sphere.
pub fn beta_type_probs_with_tol(
    d: u32,
    beta: f64,
    tol: f64,
) -> Result<TypeDistribution<f64>, ModelError> {
    if d < 2 {
        return Err(ModelError::Domain(format!(
            "beta model needs d >= 2, got {d}"
        )));
    }
    if !(-1.0..=10.0).contains(&beta) {
        return Err(ModelError::Domain(format!(
            "beta model supports beta in [-1, 10], got {beta}"
        )));
    }
    beta_family_probs(d, 2.0 * beta + d as f64, GKind::Beta, tol)
}

pub fn beta_type_probs(d: u32, beta: f64) -> Result<TypeDistribution<f64>, ModelError> {
    beta_type_probs_with_tol(d, beta, default_tol(d))
}

/// Type distribution of d+2 i.i.d. beta-prime points (density proportional
/// to `(1 + |x|^2)^{-beta}`); `beta = (d+1)/2` is the Cauchy distribution,
/// equivalently uniform points on the upper half-sphere via gnomonic
/// projection.
pub fn beta_prime_type_probs_with_tol(
    d: u32,
    beta: f64,
    tol: f64,
) -> Result<TypeDistribution<f64>, ModelError> {
    if d < 2 {
        return Err(ModelError::Domain(format!(
            "beta-prime model needs d >= 2, got {d}"
        )));
    }
    let alpha = 2.0 * beta - d as f64;
    if alpha <= 1.0 / (d as f64 + 2.0) {
        return Err(ModelError::Domain(format!(
            "beta-prime model requires 2 beta > d + 1/(d+2), got beta={beta}, d={d}"
        )));
    }
    if alpha > 20.0 {
        return Err(ModelError::Domain(format!(
            "beta-prime model supports 2 beta - d <= 20, got {alpha}"
        )));
    }
    beta_family_probs(d, alpha, GKind::BetaPrime, tol)
}

pub fn beta_prime_type_probs(d: u32, beta: f64) -> Result<TypeDistribution<f64>, ModelError> {
    beta_prime_type_probs_with_tol(d, beta, default_tol(d))
}

/// Deficit `C(d+2, l+1) - E f_l` of the beta polytope, as twice the angle
/// sum `J_{d+2, l+1}(beta - 1/2)`; used to cross-check the solver pipeline
/// against the direct formula.
pub fn beta_deficit(d: u32, beta: f64, l: i32, tol: f64) -> Result<f64, ModelError> {
    let sum = angle_sum_beta(d + 2, l as u32 + 1, beta - 0.5, tol)?;
    Ok(2.0 * sum.value)
}

// ---------------------------------------------------------------------------
// Kingman's ellipsoid simplex probability
// ---------------------------------------------------------------------------

/// `ln C(a, b)` for real arguments via log-Gamma.
fn ln_choose(a: f64, b: f64) -> f64 {
    ln_gamma(a + 1.0) - ln_gamma(b + 1.0) - ln_gamma(a - b + 1.0)
}

/// Probability that d+2 uniform points in the d-ball (or any ellipsoid)
/// fail to be in convex position, i.e. form a simplex:
/// `(d+2) 2^{-d} C(d+1, (d+1)/2)^{d+1} / C((d+1)^2, (d+1)^2/2)`,
/// with half-integer binomials read in Gamma form.
pub fn kingman_simplex_prob(d: u32) -> f64 {
    let dp1 = d as f64 + 1.0;
    let ln_p = (d as f64 + 2.0).ln() - d as f64 * f64::ln(2.0)
        + dp1 * ln_choose(dp1, dp1 / 2.0)
        - ln_choose(dp1 * dp1, dp1 * dp1 / 2.0);
    ln_p.exp()
}

// ---------------------------------------------------------------------------
// central limit profiles for the exact models
// ---------------------------------------------------------------------------

/// One row of a CLT convergence table.
#[derive(Debug, Clone)]
pub struct CltRow {
    pub d: u32,
    pub t: f64,
    /// Exact cumulative probability of types with `m >= d/2 - t sqrt(d/c)`.
    pub cumulative: BigRational,
    pub cumulative_f64: f64,
    /// The limit `2 Phi_0(t) - 1`.
    pub limit: f64,
    pub gap: f64,
}

/// Exact models admitting a CLT profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactModel {
    ConvRw,
    Wendel,
    PosBridge,
    PosWalk,
}

impl ExactModel {
    pub fn distribution(self, d: u32) -> TypeDistribution<BigRational> {
        match self {
            ExactModel::ConvRw => conv_rw_type_probs(d),
            ExactModel::Wendel => wendel_type_probs(d),
            ExactModel::PosBridge => pos_bridge_type_probs(d),
            ExactModel::PosWalk => pos_walk_type_probs(d),
        }
    }

    /// Variance scale in the threshold `m(d) = d/2 - t sqrt(d/scale)`.
    pub fn threshold_scale(self) -> f64 {
        match self {
            ExactModel::Wendel => 4.0,
            _ => 12.0,
        }
    }
}

/// Cumulative probability of types `m >= threshold` in exact arithmetic.
pub fn cumulative_above(dist: &TypeDistribution<BigRational>, threshold: f64) -> BigRational {
    let mut acc = BigRational::zero();
    for (m, p) in dist.iter() {
        if (m as f64) >= threshold {
            acc += p;
        }
    }
    acc
}

/// CLT convergence row for an exact model at threshold
/// `m(d) = d/2 - t sqrt(d/scale)`.
pub fn clt_row(model: ExactModel, d: u32, t: f64) -> CltRow {
    let dist = model.distribution(d);
    let threshold = d as f64 / 2.0 - t * (d as f64 / model.threshold_scale()).sqrt();
    let cumulative = cumulative_above(&dist, threshold);
    let cumulative_f64 = big_rational_to_f64(&cumulative);
    let limit = 2.0 * std_normal_cdf(t) - 1.0;
    CltRow {
        d,
        t,
        gap: (cumulative_f64 - limit).abs(),
        cumulative,
        cumulative_f64,
        limit,
    }
}

/// Standard normal distribution function, accurate to ~1e-14.
pub fn std_normal_cdf(t: f64) -> f64 {
    0.5 * (1.0 + erf(t / std::f64::consts::SQRT_2))
}

fn erf(z: f64) -> f64 {
    if z < 0.0 {
        return -erf(-z);
    }
    if z <= 2.0 {
        // Maclaurin series; alternating but well conditioned on this range
        let z2 = z * z;
        let mut term = z;
        let mut acc = z;
        let mut k = 0u32;
        loop {
            k += 1;
            term *= -z2 / k as f64;
            let add = term / (2 * k + 1) as f64;
            acc += add;
            if add.abs() < 1e-18 * acc.abs() || k > 200 {
                break;
            }
        }
        2.0 / PI.sqrt() * acc
    } else if z < 6.5 {
        1.0 - erfc_cf(z)
    } else {
        1.0
    }
}

/// Complementary error function by the Lentz continued fraction
/// `sqrt(pi) e^{z^2} erfc(z) = 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))`.
fn erfc_cf(z: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = tiny;
    let mut c = f;
    let mut d = 0.0;
    for i in 0..200 {
        let (a, b) = if i == 0 {
            (1.0, z)
        } else {
            (i as f64 / 2.0, z)
        };
        d = b + a * d;
        if d == 0.0 {
            d = tiny;
        }
        c = b + a / c;
        if c == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-z * z).exp() / PI.sqrt() * f
}

// ---------------------------------------------------------------------------
// reference distributions for verification
// ---------------------------------------------------------------------------

/// The closed-form (or quadrature) distribution a Monte-Carlo run of the
/// given model should reproduce.
pub fn reference_distribution(
    model: &ModelSpec,
    tol: f64,
) -> Result<TypeDistribution<f64>, ModelError> {
    let to_float = |dist: TypeDistribution<BigRational>| {
        let probs = dist.probs().iter().map(big_rational_to_f64).collect();
        TypeDistribution::new(dist.d, dist.setting, probs).unwrap()
    };
    match *model {
        ModelSpec::Gaussian { d } => gaussian_type_probs_with_tol(d, tol),
        ModelSpec::Beta { d, beta } => beta_type_probs_with_tol(d, beta, tol),
        ModelSpec::Sphere { d } => beta_type_probs_with_tol(d, -1.0, tol),
        ModelSpec::BetaPrime { d, beta } => beta_prime_type_probs_with_tol(d, beta, tol),
        ModelSpec::HalfSphere { d } => {
            beta_prime_type_probs_with_tol(d, (d as f64 + 1.0) / 2.0, tol)
        }
        ModelSpec::ConvRw { d, .. } => Ok(to_float(conv_rw_type_probs(d))),
        ModelSpec::Wendel { d } => Ok(to_float(wendel_type_probs(d))),
        ModelSpec::PosWalk { d, .. } => Ok(to_float(pos_walk_type_probs(d))),
        ModelSpec::PosBridge { d, .. } => Ok(to_float(pos_bridge_type_probs(d))),
    }
}
