//! Combinatorics of the types `T_m^d` and the linear solver relating
//! expected-f-vector deficits to type probabilities.
//!
//! A simplicial d-polytope with at most d+2 vertices belongs to one of the
//! combinatorial types `T_0^d, ..., T_{floor(d/2)}^d`; the conic (spherical)
//! setting adds `T_{-1}^d` for the full sphere. Given the deficit vector
//! `y_l = C(d+2, l+1) - E f_l`, the type distribution is the image under an
//! explicit triangular inverse. The solver is generic over the scalar so
//! exact-rational and floating-point inputs share one code path.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::comb::binomial;

/// Affine hulls index types by `m in 0..=d/2`; conic hulls start at `m = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Setting {
    Affine,
    Conic,
}

impl Setting {
    pub fn min_m(self) -> i32 {
        match self {
            Setting::Affine => 0,
            Setting::Conic => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeAlgebraError {
    OutOfRange(String),
    NegativeProbability { m: i32, value: f64 },
    ShapeMismatch(String),
}

impl fmt::Display for TypeAlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeAlgebraError::OutOfRange(msg) => write!(f, "argument out of range: {msg}"),
            TypeAlgebraError::NegativeProbability { m, value } => {
                write!(f, "solved probability for type m={m} is negative ({value:e})")
            }
            TypeAlgebraError::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
        }
    }
}

impl std::error::Error for TypeAlgebraError {}

/// Largest admissible type index for dimension `d`.
pub fn max_type_index(d: u32) -> i32 {
    (d / 2) as i32
}

/// Doubling factor: 2 unless `m = d/2`, which pairs with itself.
pub fn eta(d: u32, m: i32) -> Result<u32, TypeAlgebraError> {
    if m < -1 || m > max_type_index(d) {
        return Err(TypeAlgebraError::OutOfRange(format!(
            "eta: m={m} not in -1..={} for d={d}",
            max_type_index(d)
        )));
    }
    Ok(if 2 * m == d as i32 { 1 } else { 2 })
}

/// Number of k-faces of `T_m^d`:
/// `C(d+2, k+1) - C(d-m+1, d-k+1) - C(m+1, d-k+1)`.
pub fn face_count(d: u32, m: i32, k: i32) -> Result<BigInt, TypeAlgebraError> {
    if m < 0 || m > max_type_index(d) {
        return Err(TypeAlgebraError::OutOfRange(format!(
            "face_count: m={m} not in 0..={} for d={d}",
            max_type_index(d)
        )));
    }
    if k < 0 || k >= d as i32 {
        return Err(TypeAlgebraError::OutOfRange(format!(
            "face_count: k={k} not in 0..={} for d={d}",
            d - 1
        )));
    }
    let di = d as i64;
    let mi = m as i64;
    let ki = k as i64;
    Ok(binomial(d as u64 + 2, ki + 1)
        - binomial((di - mi + 1) as u64, di - ki + 1)
        - binomial((mi + 1) as u64, di - ki + 1))
}

/// Scalars the solver can run over: exact rationals or floats.
///
/// `check_probability` implements the per-scalar policy for slightly
/// negative solved entries: exact scalars admit no slack, floats clamp
/// within `NEGATIVE_CLAMP` and fail loudly below it.
pub trait SolverScalar: Clone + PartialEq + fmt::Debug {
    fn scalar_zero() -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Ok(clamped?) for admissible values, Err(float image) when fatally negative.
    fn check_probability(&self) -> Result<Option<Self>, f64>;
    fn to_f64_lossy(&self) -> f64;
}

/// Entries in `[-NEGATIVE_CLAMP, 0)` from float solves are clamped to zero.
pub const NEGATIVE_CLAMP: f64 = 1e-9;

impl SolverScalar for BigRational {
    fn scalar_zero() -> Self {
        Zero::zero()
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn check_probability(&self) -> Result<Option<Self>, f64> {
        if self.is_negative() {
            Err(self.to_f64_lossy())
        } else {
            Ok(None)
        }
    }
    fn to_f64_lossy(&self) -> f64 {
        big_rational_to_f64(self)
    }
}

impl SolverScalar for f64 {
    fn scalar_zero() -> Self {
        0.0
    }
    fn from_rational(q: &BigRational) -> Self {
        big_rational_to_f64(q)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn check_probability(&self) -> Result<Option<Self>, f64> {
        if *self >= 0.0 {
            Ok(None)
        } else if *self >= -NEGATIVE_CLAMP {
            Ok(Some(0.0))
        } else {
            Err(*self)
        }
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

/// `BigRational -> f64` that stays finite for operands far beyond the f64
/// exponent range (the CLT profiles produce 400-digit numerators).
pub fn big_rational_to_f64(q: &BigRational) -> f64 {
    if q.numer().is_zero() {
        return 0.0;
    }
    let negative = q.numer().is_negative();
    let num = q.numer().abs().to_biguint().unwrap();
    let den = q.denom().abs().to_biguint().unwrap();
    let bn = num.bits() as i64;
    let bd = den.bits() as i64;
    let sn = (bn - 80).max(0) as u64;
    let sd = (bd - 80).max(0) as u64;
    let nf = (num >> sn).to_f64().unwrap();
    let df = (den >> sd).to_f64().unwrap();
    let mut val = nf / df;
    let shift = sn as i64 - sd as i64;
    if shift != 0 {
        val *= 2f64.powi(shift.clamp(-1074, 1024) as i32);
    }
    if negative {
        -val
    } else {
        val
    }
}

/// Deficit vector `y_l = C(d+2, l+1) - E f_l`, indexed from `min_m` of the
/// setting up to `floor(d/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeficitVector<S> {
    pub d: u32,
    pub setting: Setting,
    values: Vec<S>,
}

impl<S: SolverScalar> DeficitVector<S> {
    pub fn new(d: u32, setting: Setting, values: Vec<S>) -> Result<Self, TypeAlgebraError> {
        let expected = (max_type_index(d) - setting.min_m() + 1) as usize;
        if values.len() != expected {
            return Err(TypeAlgebraError::ShapeMismatch(format!(
                "deficit vector for d={d} needs {expected} entries, got {}",
                values.len()
            )));
        }
        Ok(DeficitVector { d, setting, values })
    }

    pub fn value(&self, l: i32) -> &S {
        &self.values[(l - self.setting.min_m()) as usize]
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> + '_ {
        self.setting.min_m()..=max_type_index(self.d)
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }
}

/// Probabilities of the types `T_m^d`, indexed like the deficit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeDistribution<S> {
    pub d: u32,
    pub setting: Setting,
    probs: Vec<S>,
}

impl<S: SolverScalar> TypeDistribution<S> {
    pub fn new(d: u32, setting: Setting, probs: Vec<S>) -> Result<Self, TypeAlgebraError> {
        let expected = (max_type_index(d) - setting.min_m() + 1) as usize;
        if probs.len() != expected {
            return Err(TypeAlgebraError::ShapeMismatch(format!(
                "distribution for d={d} needs {expected} entries, got {}",
                probs.len()
            )));
        }
        Ok(TypeDistribution { d, setting, probs })
    }

    pub fn prob(&self, m: i32) -> &S {
        &self.probs[(m - self.setting.min_m()) as usize]
    }

    pub fn probs(&self) -> &[S] {
        &self.probs
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> + '_ {
        self.setting.min_m()..=max_type_index(self.d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &S)> + '_ {
        self.indices().zip(self.probs.iter())
    }

    pub fn sum(&self) -> S {
        let mut acc = S::scalar_zero();
        for p in &self.probs {
            acc = acc.add(p);
        }
        acc
    }
}

/// Solver output: the distribution plus the indices whose slightly negative
/// float entries were clamped to zero.
#[derive(Debug, Clone)]
pub struct Solution<S> {
    pub distribution: TypeDistribution<S>,
    pub clamped: Vec<i32>,
}

fn solve_impl<S: SolverScalar>(
    deficits: &DeficitVector<S>,
) -> Result<Solution<S>, TypeAlgebraError> {
    let d = deficits.d;
    let lo = deficits.setting.min_m();
    let hi = max_type_index(d);
    let mut probs = Vec::with_capacity((hi - lo + 1) as usize);
    let mut clamped = Vec::new();
    for m in lo..=hi {
        // p_m = (eta_{d,m}/2) * sum_l (-1)^{m+l} C(d-l+1, d-m+1) y_l
        let half_eta = BigRational::new(BigInt::from(eta(d, m).unwrap()), BigInt::from(2));
        let mut acc = S::scalar_zero();
        for l in lo..=m {
            let c = binomial((d as i64 - l as i64 + 1) as u64, d as i64 - m as i64 + 1);
            let coeff = BigRational::from(c) * &half_eta;
            let term = deficits.value(l).mul(&S::from_rational(&coeff));
            if (m + l).rem_euclid(2) == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        match acc.check_probability() {
            Ok(None) => probs.push(acc),
            Ok(Some(repl)) => {
                clamped.push(m);
                probs.push(repl);
            }
            Err(value) => return Err(TypeAlgebraError::NegativeProbability { m, value }),
        }
    }
    Ok(Solution {
        distribution: TypeDistribution {
            d,
            setting: deficits.setting,
            probs,
        },
        clamped,
    })
}

/// Solve an affine deficit vector for the type distribution.
pub fn solve_affine<S: SolverScalar>(
    deficits: &DeficitVector<S>,
) -> Result<Solution<S>, TypeAlgebraError> {
    if deficits.setting != Setting::Affine {
        return Err(TypeAlgebraError::ShapeMismatch(
            "solve_affine expects an affine-shaped deficit vector".into(),
        ));
    }
    solve_impl(deficits)
}

/// Solve a conic deficit vector (indexed from `m = -1`).
pub fn solve_conic<S: SolverScalar>(
    deficits: &DeficitVector<S>,
) -> Result<Solution<S>, TypeAlgebraError> {
    if deficits.setting != Setting::Conic {
        return Err(TypeAlgebraError::ShapeMismatch(
            "solve_conic expects a conic-shaped deficit vector".into(),
        ));
    }
    solve_impl(deficits)
}

/// Forward map: expected-f deficits of the mixture of types,
/// `y_j = sum_m (C(d-m+1, j-m) + [j=m=d/2]) p_m`.
pub fn forward_f<S: SolverScalar>(dist: &TypeDistribution<S>) -> DeficitVector<S> {
    let d = dist.d;
    let lo = dist.setting.min_m();
    let hi = max_type_index(d);
    let mut values = Vec::with_capacity((hi - lo + 1) as usize);
    for j in lo..=hi {
        let mut acc = S::scalar_zero();
        for m in lo..=j {
            let mut a = binomial((d as i64 - m as i64 + 1) as u64, (j - m) as i64);
            if j == m && 2 * m == d as i32 {
                a += BigInt::one();
            }
            let coeff = S::from_rational(&BigRational::from(a));
            acc = acc.add(&dist.prob(m).mul(&coeff));
        }
        values.push(acc);
    }
    DeficitVector {
        d,
        setting: dist.setting,
        values,
    }
}
