//! Monte-Carlo oracles: samplers for every model, combinatorial-type
//! detection from the sign pattern of the unique linear/affine dependence,
//! a brute-force facet-count cross-check, Youden rank simulation, and a
//! deterministic parallel estimator with Wilson confidence intervals.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // negated comparisons also reject NaN

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::models::{IncrementLaw, ModelSpec};
use crate::types::{max_type_index, Setting};

/// Reproducible stream: identical (seed, stream) yields the identical
/// sample sequence on every platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// d+2 sampled points (length-d rows, affine models) or generating vectors
/// (length d+1, conic models).
#[derive(Debug, Clone)]
pub struct PointCloud {
    pub d: u32,
    pub setting: Setting,
    pub points: Vec<Vec<f64>>,
}

/// A draw too close to degeneracy to classify; callers count and resample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degenerate;

impl fmt::Display for Degenerate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degenerate draw")
    }
}

/// Thresholds for the degeneracy tests.
#[derive(Debug, Clone, Copy)]
pub struct McConfig {
    /// Smallest acceptable ratio of extreme pivots in the orthogonal
    /// factorization.
    pub pivot_rel_tol: f64,
    /// Dependence coefficients below this fraction of the largest one
    /// signal degeneracy.
    pub zero_rel_tol: f64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            pivot_rel_tol: 1e-9,
            zero_rel_tol: 1e-9,
        }
    }
}

// ---------------------------------------------------------------------------
// samplers
// ---------------------------------------------------------------------------

fn standard_normal_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

fn unit_sphere_vec(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    loop {
        let v = standard_normal_vec(rng, len);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-100 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn increments(
    rng: &mut ChaCha8Rng,
    law: IncrementLaw,
    count: usize,
    dim: usize,
) -> Vec<Vec<f64>> {
    let scale = match law {
        IncrementLaw::Gaussian => 1.0,
        // one common log-normal scale per cloud keeps exchangeability and
        // sign symmetry without being i.i.d. Gaussian
        IncrementLaw::ScaleMixture => {
            let z: f64 = rng.sample(StandardNormal);
            z.exp()
        }
    };
    (0..count)
        .map(|_| {
            standard_normal_vec(rng, dim)
                .into_iter()
                .map(|x| scale * x)
                .collect()
        })
        .collect()
}

fn partial_sums(increments: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let dim = increments[0].len();
    let mut acc = vec![0.0; dim];
    increments
        .iter()
        .map(|inc| {
            for (a, x) in acc.iter_mut().zip(inc) {
                *a += x;
            }
            acc.clone()
        })
        .collect()
}

/// One draw of the model: d+2 points or generating vectors.
pub fn sample(model: &ModelSpec, rng: &mut ChaCha8Rng) -> PointCloud {
    let d = model.d() as usize;
    let n = d + 2;
    let points = match *model {
        ModelSpec::Gaussian { .. } => (0..n).map(|_| standard_normal_vec(rng, d)).collect(),
        ModelSpec::Sphere { .. } => (0..n).map(|_| unit_sphere_vec(rng, d)).collect(),
        ModelSpec::Beta { beta, .. } => {
            let g_shape = Gamma::new(d as f64 / 2.0, 1.0).unwrap();
            let g_beta = Gamma::new(beta + 1.0, 1.0).unwrap();
            (0..n)
                .map(|_| {
                    // radius: R^2 ~ Beta(d/2, beta+1) via a Gamma ratio
                    let a = g_shape.sample(rng);
                    let b = g_beta.sample(rng);
                    let r = (a / (a + b)).sqrt();
                    unit_sphere_vec(rng, d).into_iter().map(|x| r * x).collect()
                })
                .collect()
        }
        ModelSpec::BetaPrime { beta, .. } => {
            let g_num = Gamma::new(d as f64 / 2.0, 1.0).unwrap();
            let g_den = Gamma::new(beta - d as f64 / 2.0, 1.0).unwrap();
            (0..n)
                .map(|_| {
                    // radius: R^2 ~ BetaPrime(d/2, beta - d/2)
                    let r = (g_num.sample(rng) / g_den.sample(rng)).sqrt();
                    unit_sphere_vec(rng, d).into_iter().map(|x| r * x).collect()
                })
                .collect()
        }
        ModelSpec::HalfSphere { .. } => (0..n)
            .map(|_| {
                // uniform on the upper half-sphere of S^d, then gnomonic
                // projection to R^d (the Cauchy law)
                let u = unit_sphere_vec(rng, d + 1);
                let sign = if u[0] < 0.0 { -1.0 } else { 1.0 };
                (1..=d).map(|i| sign * u[i] / (sign * u[0])).collect()
            })
            .collect(),
        ModelSpec::ConvRw { increments: law, .. } => {
            let inc = increments(rng, law, d + 1, d);
            let mut pts = vec![vec![0.0; d]];
            pts.extend(partial_sums(&inc));
            pts
        }
        ModelSpec::Wendel { .. } => (0..n).map(|_| unit_sphere_vec(rng, d + 1)).collect(),
        ModelSpec::PosWalk { increments: law, .. } => {
            let inc = increments(rng, law, d + 2, d + 1);
            partial_sums(&inc)
        }
        ModelSpec::PosBridge { increments: law, .. } => {
            let raw = increments(rng, law, d + 3, d + 1);
            let mut mean = vec![0.0; d + 1];
            for v in &raw {
                for (m, x) in mean.iter_mut().zip(v) {
                    *m += x / (d as f64 + 3.0);
                }
            }
            let centered: Vec<Vec<f64>> = raw
                .iter()
                .map(|v| v.iter().zip(&mean).map(|(x, m)| x - m).collect())
                .collect();
            let mut sums = partial_sums(&centered);
            sums.truncate(d + 2);
            sums
        }
    };
    PointCloud {
        d: model.d(),
        setting: model.setting(),
        points,
    }
}

// ---------------------------------------------------------------------------
// dependence kernel and type detection
// ---------------------------------------------------------------------------

/// Kernel direction of an r x c matrix with r = c - 1, via column-pivoted
/// Householder QR of the transpose; the degeneracy test compares the
/// extreme diagonal pivots.
fn kernel_vector(rows: usize, cols: usize, m: &[f64], cfg: &McConfig) -> Result<Vec<f64>, Degenerate> {
    debug_assert_eq!(rows + 1, cols);
    // a = transpose of m: cols x rows (tall)
    let (ar, ac) = (cols, rows);
    let mut a = vec![0.0f64; ar * ac];
    for i in 0..rows {
        for j in 0..cols {
            a[j * ac + i] = m[i * cols + j];
        }
    }
    let mut householders: Vec<Vec<f64>> = Vec::with_capacity(ac);
    let mut pivots: Vec<f64> = Vec::with_capacity(ac);
    let mut col_order: Vec<usize> = (0..ac).collect();
    for k in 0..ac {
        // pivot: remaining column with the largest sub-norm
        let mut best = k;
        let mut best_norm = -1.0;
        for j in k..ac {
            let norm: f64 = (k..ar).map(|i| a[i * ac + j] * a[i * ac + j]).sum();
            if norm > best_norm {
                best_norm = norm;
                best = j;
            }
        }
        if best != k {
            for i in 0..ar {
                a.swap(i * ac + k, i * ac + best);
            }
            col_order.swap(k, best);
        }
        // Householder vector annihilating a[k+1.., k]
        let mut v: Vec<f64> = (k..ar).map(|i| a[i * ac + k]).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Degenerate);
        }
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            // apply H = I - 2 v v^T / |v|^2 to the remaining columns
            for j in k..ac {
                let dot: f64 = (k..ar).map(|i| a[i * ac + j] * v[i - k]).sum();
                let f = 2.0 * dot / vnorm2;
                for i in k..ar {
                    a[i * ac + j] -= f * v[i - k];
                }
            }
        }
        pivots.push(alpha.abs());
        householders.push(v);
    }
    let p_max = pivots.iter().cloned().fold(0.0, f64::max);
    let p_min = pivots.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(p_min > cfg.pivot_rel_tol * p_max) {
        return Err(Degenerate);
    }
    // kernel = Q e_last = H_1 (H_2 (... (H_ac e_last)))
    let mut q = vec![0.0; ar];
    q[ar - 1] = 1.0;
    for k in (0..ac).rev() {
        let v = &householders[k];
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let dot: f64 = (k..ar).map(|i| q[i] * v[i - k]).sum();
        let f = 2.0 * dot / vnorm2;
        for i in k..ar {
            q[i] -= f * v[i - k];
        }
    }
    Ok(q)
}

fn sign_counts(lambda: &[f64], cfg: &McConfig) -> Result<(usize, usize), Degenerate> {
    let max_abs = lambda.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max_abs == 0.0 {
        return Err(Degenerate);
    }
    let mut pos = 0;
    let mut neg = 0;
    for &x in lambda {
        if x.abs() < cfg.zero_rel_tol * max_abs {
            return Err(Degenerate);
        }
        if x > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    Ok((pos, neg))
}

/// Combinatorial type of d+2 affine points from the sign pattern of their
/// unique affine dependence: `m = min(#pos, #neg) - 1`.
pub fn radon_type(cloud: &PointCloud, cfg: &McConfig) -> Result<i32, Degenerate> {
    debug_assert_eq!(cloud.setting, Setting::Affine);
    let d = cloud.d as usize;
    let (rows, cols) = (d + 1, d + 2);
    let mut m = vec![0.0; rows * cols];
    for (j, p) in cloud.points.iter().enumerate() {
        for i in 0..d {
            m[i * cols + j] = p[i];
        }
        m[d * cols + j] = 1.0;
    }
    let lambda = kernel_vector(rows, cols, &m, cfg)?;
    let (pos, neg) = sign_counts(&lambda, cfg)?;
    if pos == 0 || neg == 0 {
        // impossible for an affine dependence (coefficients sum to zero)
        return Err(Degenerate);
    }
    Ok(pos.min(neg) as i32 - 1)
}

/// Combinatorial type of the spherical polytope spanned by d+2 vectors in
/// R^{d+1}: all dependence signs equal means the positive hull is
/// everything (`m = -1`), otherwise `m = min(#pos, #neg) - 1`.
pub fn conic_type(cloud: &PointCloud, cfg: &McConfig) -> Result<i32, Degenerate> {
    debug_assert_eq!(cloud.setting, Setting::Conic);
    let d = cloud.d as usize;
    let (rows, cols) = (d + 1, d + 2);
    let mut m = vec![0.0; rows * cols];
    for (j, p) in cloud.points.iter().enumerate() {
        for i in 0..=d {
            m[i * cols + j] = p[i];
        }
    }
    let lambda = kernel_vector(rows, cols, &m, cfg)?;
    let (pos, neg) = sign_counts(&lambda, cfg)?;
    Ok(pos.min(neg) as i32 - 1)
}

/// Dispatch on the model's setting.
pub fn classify(model: &ModelSpec, cloud: &PointCloud, cfg: &McConfig) -> Result<i32, Degenerate> {
    match model.setting() {
        Setting::Affine => radon_type(cloud, cfg),
        Setting::Conic => conic_type(cloud, cfg),
    }
}

fn det_with_scale(mat: &mut [f64], n: usize) -> (f64, f64) {
    // returns (determinant, Hadamard row-norm product) after partial-pivot LU
    let mut scale = 1.0;
    for i in 0..n {
        let norm: f64 = (0..n).map(|j| mat[i * n + j] * mat[i * n + j]).sum::<f64>().sqrt();
        scale *= norm;
    }
    let mut det = 1.0;
    for k in 0..n {
        let mut p = k;
        for i in (k + 1)..n {
            if mat[i * n + k].abs() > mat[p * n + k].abs() {
                p = i;
            }
        }
        if p != k {
            for j in 0..n {
                mat.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = mat[k * n + k];
        if pivot == 0.0 {
            return (0.0, scale);
        }
        det *= pivot;
        for i in (k + 1)..n {
            let f = mat[i * n + k] / pivot;
            for j in k..n {
                mat[i * n + j] -= f * mat[k * n + j];
            }
        }
    }
    (det, scale)
}

/// Brute-force facet count of the hull of d+2 affine points: the number of
/// d-subsets whose affine hull has both remaining points strictly on one
/// side. Equals `(m+1)(d-m+1)` for a cloud of type m. Cost grows like
/// `C(d+2, 2)` determinant evaluations, intended for d <= 5.
pub fn facet_count_oracle(cloud: &PointCloud, cfg: &McConfig) -> Result<u32, Degenerate> {
    let d = cloud.d as usize;
    assert!(d <= 5, "facet_count_oracle is intended for d <= 5");
    let n = d + 2;
    let pts = &cloud.points;
    let mut facets = 0u32;
    // enumerate the complement pair {u, v}
    for u in 0..n {
        for v in (u + 1)..n {
            let base: Vec<usize> = (0..n).filter(|&i| i != u && i != v).collect();
            let side = |z: usize| -> Result<f64, Degenerate> {
                let mut mat = vec![0.0; d * d];
                for (r, &i) in base.iter().skip(1).enumerate() {
                    for c in 0..d {
                        mat[r * d + c] = pts[i][c] - pts[base[0]][c];
                    }
                }
                for c in 0..d {
                    mat[(d - 1) * d + c] = pts[z][c] - pts[base[0]][c];
                }
                let (det, scale) = det_with_scale(&mut mat, d);
                if det.abs() < cfg.zero_rel_tol * scale.max(1e-300) {
                    return Err(Degenerate);
                }
                Ok(det)
            };
            if side(u)? * side(v)? > 0.0 {
                facets += 1;
            }
        }
    }
    Ok(facets)
}

// ---------------------------------------------------------------------------
// Youden ranks
// ---------------------------------------------------------------------------

/// Number of values below the sample mean in an i.i.d. standard normal
/// sample of size n; distributed according to the Youden probabilities.
pub fn youden_rank(n: u32, rng: &mut ChaCha8Rng) -> u32 {
    let sample = standard_normal_vec(rng, n as usize);
    let mean = sample.iter().sum::<f64>() / n as f64;
    sample.iter().filter(|&&x| x < mean).count() as u32
}

/// Rank of `(0 + sum U + 1)/(n+2)` among the order statistics of n i.i.d.
/// uniforms with the boundary conventions `U_{0:n} = 0`, `U_{n+1:n} = 1`.
pub fn uniform_youden_rank(n: u32, rng: &mut ChaCha8Rng) -> u32 {
    let sample: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    let t = (sample.iter().sum::<f64>() + 1.0) / (n as f64 + 2.0);
    sample.iter().filter(|&&x| x <= t).count() as u32
}

// ---------------------------------------------------------------------------
// estimation
// ---------------------------------------------------------------------------

/// Wilson score interval for `count` successes out of `total` at z-score z.
pub fn wilson_interval(count: u64, total: u64, z: f64) -> (f64, f64) {
    if total == 0 {
        return (0.0, 1.0);
    }
    let n = total as f64;
    let p = count as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// z-score of the two-sided 99% interval.
pub const WILSON_Z99: f64 = 2.5758293035489004;

/// Point estimate with a Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub p_hat: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Aggregated Monte-Carlo run.
#[derive(Debug, Clone)]
pub struct McReport {
    pub model: ModelSpec,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    /// Per-type counts over all admissible m (zero counts included).
    pub counts: BTreeMap<i32, u64>,
    pub degenerate: u64,
    /// Wilson 99% intervals on count / (samples - degenerate).
    pub estimates: BTreeMap<i32, McEstimate>,
    /// False when the degenerate fraction exceeds 1e-3.
    pub healthy: bool,
}

const BATCH: u64 = 16384;

fn run_batch(model: &ModelSpec, stream: RngStream, take: u64, cfg: &McConfig) -> (Vec<u64>, u64) {
    let lo = model.setting().min_m();
    let hi = max_type_index(model.d());
    let mut counts = vec![0u64; (hi - lo + 1) as usize];
    let mut degenerate = 0u64;
    let mut rng = stream.rng();
    for _ in 0..take {
        let cloud = sample(model, &mut rng);
        match classify(model, &cloud, cfg) {
            Ok(m) => counts[(m - lo) as usize] += 1,
            Err(Degenerate) => degenerate += 1,
        }
    }
    (counts, degenerate)
}

/// Deterministic parallel estimate: the sample space is split into fixed
/// batches, batch i drawing from stream i of the seed, so the result is
/// bit-identical for any worker count.
pub fn estimate(
    model: &ModelSpec,
    samples: u64,
    seed: u64,
    workers: usize,
    cfg: &McConfig,
) -> McReport {
    assert!(samples >= 1, "estimate requires at least one sample");
    let lo = model.setting().min_m();
    let hi = max_type_index(model.d());
    let n_batches = samples.div_ceil(BATCH);
    let batches: Vec<(u64, u64)> = (0..n_batches)
        .map(|b| (b, BATCH.min(samples - b * BATCH)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let (counts, degenerate) = pool.install(|| {
        use rayon::prelude::*;
        batches
            .par_iter()
            .map(|&(b, take)| run_batch(model, RngStream { seed, stream: b }, take, cfg))
            .reduce(
                || (vec![0u64; (hi - lo + 1) as usize], 0u64),
                |(mut c1, d1), (c2, d2)| {
                    for (a, b) in c1.iter_mut().zip(&c2) {
                        *a += b;
                    }
                    (c1, d1 + d2)
                },
            )
    });
    let valid = samples - degenerate;
    let mut count_map = BTreeMap::new();
    let mut estimates = BTreeMap::new();
    for (i, &c) in counts.iter().enumerate() {
        let m = lo + i as i32;
        count_map.insert(m, c);
        let (lo_ci, hi_ci) = wilson_interval(c, valid, WILSON_Z99);
        estimates.insert(
            m,
            McEstimate {
                p_hat: if valid > 0 { c as f64 / valid as f64 } else { 0.0 },
                lo: lo_ci,
                hi: hi_ci,
            },
        );
    }
    McReport {
        model: *model,
        samples,
        seed,
        workers,
        counts: count_map,
        degenerate,
        estimates,
        healthy: (degenerate as f64) <= 1e-3 * samples as f64,
    }
}

/// Wilson interval at an arbitrary z for coverage tests.
pub fn wilson_at(report: &McReport, m: i32, z: f64) -> (f64, f64) {
    let valid = report.samples - report.degenerate;
    wilson_interval(report.counts[&m], valid, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cloud(d: u32, setting: Setting, pts: &[&[f64]]) -> PointCloud {
        PointCloud {
            d,
            setting,
            points: pts.iter().map(|p| p.to_vec()).collect(),
        }
    }

    fn cfg() -> McConfig {
        McConfig::default()
    }

    #[test]
    fn square_is_type_one() {
        let c = cloud(
            2,
            Setting::Affine,
            &[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]],
        );
        assert_eq!(radon_type(&c, &cfg()).unwrap(), 1);
        assert_eq!(facet_count_oracle(&c, &cfg()).unwrap(), 4);
    }

    #[test]
    fn triangle_with_interior_point_is_type_zero() {
        let c = cloud(
            2,
            Setting::Affine,
            &[&[0.0, 0.0], &[3.0, 0.0], &[0.0, 3.0], &[1.0, 1.0]],
        );
        assert_eq!(radon_type(&c, &cfg()).unwrap(), 0);
        assert_eq!(facet_count_oracle(&c, &cfg()).unwrap(), 3);
    }

    #[test]
    fn conic_sign_patterns() {
        let full = cloud(
            2,
            Setting::Conic,
            &[
                &[1.0, 0.0, 0.0],
                &[0.0, 1.0, 0.0],
                &[0.0, 0.0, 1.0],
                &[-1.0, -1.0, -1.0],
            ],
        );
        assert_eq!(conic_type(&full, &cfg()).unwrap(), -1);
        let simplex = cloud(
            2,
            Setting::Conic,
            &[
                &[1.0, 0.0, 0.0],
                &[0.0, 1.0, 0.0],
                &[0.0, 0.0, 1.0],
                &[1.0, 1.0, 1.0],
            ],
        );
        assert_eq!(conic_type(&simplex, &cfg()).unwrap(), 0);
    }

    #[test]
    fn degenerate_cloud_is_flagged() {
        // three collinear points force a rank drop
        let c = cloud(
            2,
            Setting::Affine,
            &[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0], &[0.5, 0.9]],
        );
        assert!(radon_type(&c, &cfg()).is_err());
    }

    #[test]
    fn gaussian_d4_facet_counts_are_admissible() {
        let model = ModelSpec::Gaussian { d: 4 };
        let mut rng = RngStream { seed: 11, stream: 0 }.rng();
        for _ in 0..300 {
            let c = sample(&model, &mut rng);
            let f = facet_count_oracle(&c, &cfg()).unwrap();
            assert!(
                f == 5 || f == 8 || f == 9,
                "facet count {f} is not (m+1)(5-m) for any m"
            );
            let m = radon_type(&c, &cfg()).unwrap();
            assert_eq!(f, ((m + 1) * (4 - m + 1)) as u32);
        }
    }

    #[test]
    fn bridge_increments_center_to_zero() {
        let mut rng = RngStream { seed: 5, stream: 0 }.rng();
        for _ in 0..50 {
            let raw = increments(&mut rng, IncrementLaw::Gaussian, 6, 4);
            let mut mean = vec![0.0; 4];
            for v in &raw {
                for (m, x) in mean.iter_mut().zip(v) {
                    *m += x / 6.0;
                }
            }
            let mut closure = vec![0.0; 4];
            for v in &raw {
                for (c, (x, m)) in closure.iter_mut().zip(v.iter().zip(&mean)) {
                    *c += x - m;
                }
            }
            for c in closure {
                assert!(c.abs() < 1e-12, "bridge does not close: {c:e}");
            }
        }
        let model = ModelSpec::PosBridge {
            d: 3,
            increments: IncrementLaw::Gaussian,
        };
        let c = sample(&model, &mut rng);
        assert_eq!(c.points.len(), 5);
        assert!(c.points.iter().all(|p| p.len() == 4));
    }

    #[test]
    fn youden_rank_small_cases() {
        let mut rng = RngStream { seed: 3, stream: 0 }.rng();
        for _ in 0..100 {
            assert_eq!(youden_rank(2, &mut rng), 1);
        }
        for _ in 0..100 {
            let k = uniform_youden_rank(4, &mut rng);
            assert!(k <= 4);
        }
    }

    #[test]
    fn wilson_interval_basics() {
        let (lo, hi) = wilson_interval(50, 100, WILSON_Z99);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!(lo > 0.0 && hi < 1.0);
        let (lo, hi) = wilson_interval(0, 100, WILSON_Z99);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.15);
        let (lo, hi) = wilson_interval(100, 100, WILSON_Z99);
        assert!(lo > 0.85);
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn estimate_is_deterministic_across_worker_counts() {
        let model = ModelSpec::ConvRw {
            d: 2,
            increments: IncrementLaw::Gaussian,
        };
        let a = estimate(&model, 40_000, 123, 1, &cfg());
        let b = estimate(&model, 40_000, 123, 4, &cfg());
        assert_eq!(a.counts, b.counts);
        assert_eq!(a.degenerate, b.degenerate);
        let c = estimate(&model, 40_000, 123, 4, &cfg());
        assert_eq!(b.counts, c.counts);
    }

    #[test]
    fn estimate_covers_exact_walk_distribution() {
        let model = ModelSpec::ConvRw {
            d: 3,
            increments: IncrementLaw::Gaussian,
        };
        let report = estimate(&model, 200_000, 7, 2, &cfg());
        assert!(report.healthy);
        let total: u64 = report.counts.values().sum();
        assert_eq!(total + report.degenerate, report.samples);
        // exact targets 1/12, 11/12 within 4-sigma Wilson bands
        for (m, target) in [(0, 1.0 / 12.0), (1, 11.0 / 12.0)] {
            let (lo, hi) = wilson_at(&report, m, 4.0);
            assert!(
                lo <= target && target <= hi,
                "m={m}: target {target} outside [{lo}, {hi}]"
            );
        }
    }

    #[test]
    fn scale_mixture_increments_keep_the_law() {
        let model = ModelSpec::ConvRw {
            d: 2,
            increments: IncrementLaw::ScaleMixture,
        };
        let report = estimate(&model, 150_000, 19, 2, &cfg());
        for (m, target) in [(0, 1.0 / 3.0), (1, 2.0 / 3.0)] {
            let (lo, hi) = wilson_at(&report, m, 4.0);
            assert!(
                lo <= target && target <= hi,
                "m={m}: target {target} outside [{lo}, {hi}]"
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Permuting the points permutes the dependence but not the type;
        /// a global positive rescaling changes neither.
        #[test]
        fn affine_type_invariances(seed in 0u64..5000, scale in 0.1f64..10.0, rot in 0usize..24) {
            let model = ModelSpec::Gaussian { d: 3 };
            let mut rng = RngStream { seed, stream: 0 }.rng();
            let cloud = sample(&model, &mut rng);
            let base = radon_type(&cloud, &cfg());
            prop_assume!(base.is_ok());
            let mut permuted = cloud.clone();
            let len = permuted.points.len();
            permuted.points.rotate_left(rot % len);
            prop_assert_eq!(base, radon_type(&permuted, &cfg()));
            let scaled = PointCloud {
                d: cloud.d,
                setting: cloud.setting,
                points: cloud
                    .points
                    .iter()
                    .map(|p| p.iter().map(|x| scale * x).collect())
                    .collect(),
            };
            prop_assert_eq!(base, radon_type(&scaled, &cfg()));
        }

        /// Conic types are additionally invariant under positive rescaling
        /// of any single generating vector.
        #[test]
        fn conic_type_invariances(seed in 0u64..5000, scale in 0.05f64..20.0, which in 0usize..5) {
            let model = ModelSpec::Wendel { d: 3 };
            let mut rng = RngStream { seed, stream: 0 }.rng();
            let cloud = sample(&model, &mut rng);
            let base = conic_type(&cloud, &cfg());
            prop_assume!(base.is_ok());
            let mut scaled = cloud.clone();
            let idx = which % scaled.points.len();
            for x in &mut scaled.points[idx] {
                *x *= scale;
            }
            prop_assert_eq!(base, conic_type(&scaled, &cfg()));
        }
    }
}
