//! Special functions: the normal distribution function on the imaginary
//! axis in overflow-safe scaled form, Gamma-ratio constants, and the inner
//! functions G / G-tilde of the beta and beta-prime integral formulas.
//!
//! The recurring primitive is `psi(x; n) = e^{-x^2/(2n)} Phi(i x / sqrt n)`.
//! Direct evaluation of `Phi(i y)` overflows near `|y| ~ 38`, but products
//! of d+2 psi factors reconstruct `e^{-x^2/2} Phi^a Phi^b` exactly, so all
//! integrands downstream are built from psi. Likewise G grows like
//! `(cosh x)^alpha / alpha` and is kept as (log-magnitude, phase).

#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)] // negated comparisons also reject NaN

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub enum SpecialError {
    Domain(String),
    OutOfRange(String),
    AccuracyNotMet(String),
}

impl fmt::Display for SpecialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialError::Domain(msg) => write!(f, "domain violation: {msg}"),
            SpecialError::OutOfRange(msg) => write!(f, "argument out of range: {msg}"),
            SpecialError::AccuracyNotMet(msg) => write!(f, "accuracy not met: {msg}"),
        }
    }
}

impl std::error::Error for SpecialError {}

// --- log-Gamma ---

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
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

/// Natural log of the Gamma function for positive real arguments.
pub fn ln_gamma(z: f64) -> f64 {
    assert!(z > 0.0, "ln_gamma requires a positive argument, got {z}");
    if z < 0.5 {
        // reflection keeps the Lanczos sum well conditioned near zero
        return (PI / (PI * z).sin()).ln() - ln_gamma(1.0 - z);
    }
    let z = z - 1.0;
    let mut x = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

// --- growth integral of the Gaussian character ---

/// `H(y) = int_0^y e^{t^2/2} dt`, by its positive-term Maclaurin series.
///
/// Overflows only where `e^{y^2/2}` itself does (|y| ~ 38); callers needing
/// larger arguments must use the scaled form [`scaled_growth`].
pub fn erfi_like(y: f64) -> f64 {
    let y2 = y * y;
    let mut u = y; // y^{2k+1} / (2^k k!)
    let mut acc = y;
    let mut k = 0u32;
    loop {
        k += 1;
        u *= y2 / (2.0 * k as f64);
        let term = u / (2 * k + 1) as f64;
        acc += term;
        if term.abs() <= 1e-18 * acc.abs() || k > 4000 {
            return acc;
        }
    }
}

const GROWTH_SERIES_CUTOFF: f64 = 15.0;

/// `F(y) = e^{-y^2/2} H(y)`, finite for every real `y` (decays like 1/y).
///
/// Below the cutoff the series for H is multiplied by the Gaussian weight;
/// beyond it the asymptotic expansion `sum_k (2k-1)!!/y^{2k+1}` reaches
/// machine accuracy long before its divergent tail.
pub fn scaled_growth(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    let a = y.abs();
    if a <= GROWTH_SERIES_CUTOFF {
        return (-0.5 * y * y).exp() * erfi_like(y);
    }
    let inv2 = 1.0 / (y * y);
    let mut term = 1.0 / y;
    let mut acc = term;
    let mut k = 0u32;
    loop {
        k += 1;
        let next = term * (2.0 * k as f64 - 1.0) * inv2;
        if next.abs() >= term.abs() || next.abs() <= 1e-18 * acc.abs() || k > 200 {
            if next.abs() < term.abs() {
                acc += next;
            }
            return acc;
        }
        term = next;
        acc += term;
    }
}

/// Scaled normal distribution function on the imaginary axis:
/// `psi_sign(x; n) = e^{-x^2/(2n)} Phi(sign * i x / sqrt n)`.
///
/// Since `Phi(iy) = 1/2 + i H(y)/sqrt(2 pi)`, the real part is
/// `e^{-y^2/2}/2` and the imaginary part is `sign * F(y)/sqrt(2 pi)`;
/// neither can overflow. Products with exponents summing to `n`
/// reconstruct `e^{-x^2/2} Phi^a(ix/sqrt n) Phi^b(-ix/sqrt n)` exactly.
pub fn scaled_phi(x: f64, n: u32, sign: i32) -> Complex64 {
    assert!(n >= 2, "scaled_phi requires n >= 2");
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    let y = x / (n as f64).sqrt();
    Complex64::new(
        0.5 * (-0.5 * y * y).exp(),
        sign as f64 * scaled_growth(y) / (2.0 * PI).sqrt(),
    )
}

// --- Gamma-ratio constants ---

/// `ln` of the one-dimensional beta normalizer `c_beta`.
pub fn ln_c_const(beta: f64) -> Result<f64, SpecialError> {
    if beta <= -1.0 {
        return Err(SpecialError::Domain(format!(
            "c_beta requires beta > -1, got {beta}"
        )));
    }
    Ok(ln_gamma(beta + 1.5) - 0.5 * PI.ln() - ln_gamma(beta + 1.0))
}

/// `c_beta = Gamma(beta + 3/2) / (sqrt(pi) Gamma(beta + 1))`.
pub fn c_const(beta: f64) -> Result<f64, SpecialError> {
    ln_c_const(beta).map(f64::exp)
}

/// `ln` of the one-dimensional beta-prime normalizer `c~_beta`.
pub fn ln_c_tilde_const(beta: f64) -> Result<f64, SpecialError> {
    if beta <= 0.5 {
        return Err(SpecialError::Domain(format!(
            "c~_beta requires beta > 1/2, got {beta}"
        )));
    }
    Ok(ln_gamma(beta) - 0.5 * PI.ln() - ln_gamma(beta - 0.5))
}

/// `c~_beta = Gamma(beta) / (sqrt(pi) Gamma(beta - 1/2))`.
pub fn c_tilde_const(beta: f64) -> Result<f64, SpecialError> {
    ln_c_tilde_const(beta).map(f64::exp)
}

/// d-dimensional beta density normalizer
/// `c_{d,beta} = Gamma(d/2 + beta + 1) / (pi^{d/2} Gamma(beta + 1))`.
pub fn c_ball(d: u32, beta: f64) -> Result<f64, SpecialError> {
    if beta <= -1.0 {
        return Err(SpecialError::Domain(format!(
            "c_{{d,beta}} requires beta > -1, got {beta}"
        )));
    }
    let hd = d as f64 / 2.0;
    Ok((ln_gamma(hd + beta + 1.0) - hd * PI.ln() - ln_gamma(beta + 1.0)).exp())
}

/// d-dimensional beta-prime density normalizer
/// `c~_{d,beta} = Gamma(beta) / (pi^{d/2} Gamma(beta - d/2))`.
pub fn c_tilde_ball(d: u32, beta: f64) -> Result<f64, SpecialError> {
    let hd = d as f64 / 2.0;
    if beta <= hd {
        return Err(SpecialError::Domain(format!(
            "c~_{{d,beta}} requires beta > d/2, got beta={beta}, d={d}"
        )));
    }
    Ok((ln_gamma(beta) - hd * PI.ln() - ln_gamma(beta - hd)).exp())
}

// --- complex values in log-magnitude / phase form ---

/// A complex number stored as (log-magnitude, phase); survives magnitudes
/// far beyond the f64 exponent range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarComplex {
    pub ln_abs: f64,
    pub arg: f64,
}

impl PolarComplex {
    pub fn to_complex(self) -> Complex64 {
        let r = self.ln_abs.exp();
        Complex64::new(r * self.arg.cos(), r * self.arg.sin())
    }
}

/// `ln(cosh x)` without overflow.
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

// --- 15-point Gauss-Legendre rule used for the inner tabulation ---

const GL15_NODES: [f64; 7] = [
    0.201194093997434522300628303394596,
    0.394151347077563369897207370981045,
    0.570972172608538847537226737253911,
    0.724417731360170047416186054613938,
    0.848206583410427216200648320774217,
    0.937273392400705904307758947710209,
    0.987992518020485428489565718586613,
];

const GL15_WEIGHTS: [f64; 8] = [
    0.202578241925561272880620199967519,
    0.198431485327111576456118326443839,
    0.186161000015562211026800561866423,
    0.166269205816993933553200860481209,
    0.139570677926154314447804794511028,
    0.107159220467171935011869546685869,
    0.070366047488108124709267416450667,
    0.030753241996117268354628393577204,
];

/// `int_a^b exp(e * (ln cosh y - ln cosh r)) dy` by 15-point Gauss-Legendre.
///
/// Works in offsets `u = y - r`: at large `y` the rounding of an absolute
/// node position is amplified by the Lipschitz constant `e` of the log
/// integrand, while offsets stay small and node placement exact.
fn gl15_scaled_cosh(a: f64, b: f64, e: f64, r: f64) -> f64 {
    let half = 0.5 * (b - a);
    let center_off = 0.5 * ((a - r) + (b - r));
    let ln1p_r = (-2.0 * r).exp().ln_1p();
    let eval = |u: f64| {
        let diff = u + (-2.0 * (r + u)).exp().ln_1p() - ln1p_r;
        (e * diff).exp()
    };
    let mut acc = GL15_WEIGHTS[0] * eval(center_off);
    for i in 0..7 {
        let du = half * GL15_NODES[i];
        acc += GL15_WEIGHTS[i + 1] * (eval(center_off - du) + eval(center_off + du));
    }
    acc * half
}

/// Same integral with bisection until two refinement levels agree.
fn adaptive_scaled_cosh(a: f64, b: f64, e: f64, r: f64) -> Result<f64, SpecialError> {
    fn rec(a: f64, b: f64, e: f64, r: f64, whole: f64, depth: u32) -> Result<f64, SpecialError> {
        let mid = 0.5 * (a + b);
        let left = gl15_scaled_cosh(a, mid, e, r);
        let right = gl15_scaled_cosh(mid, b, e, r);
        let refined = left + right;
        if (refined - whole).abs() <= 2e-14 * refined.abs().max(1e-300) {
            return Ok(refined);
        }
        if depth >= 28 {
            return Err(SpecialError::AccuracyNotMet(format!(
                "inner cosh-power integral did not settle on [{a}, {b}]"
            )));
        }
        Ok(rec(a, mid, e, r, left, depth + 1)? + rec(mid, b, e, r, right, depth + 1)?)
    }
    let whole = gl15_scaled_cosh(a, b, e, r);
    rec(a, b, e, r, whole, 0)
}

/// Which of the two inner functions the evaluator represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GKind {
    /// `G_alpha(x) = 1/2 + i c_{(alpha-1)/2} int_0^x (cosh y)^alpha dy`
    Beta,
    /// `G~_alpha(x) = 1/2 + i c~_{(alpha+1)/2} int_0^x (cosh y)^{alpha-1} dy`
    BetaPrime,
}

/// Tabulated evaluator for G or G-tilde on `[-x_max, x_max]`.
///
/// The inner integral `J(x) = int_0^x (cosh y)^e dy` is accumulated in the
/// log domain over panels sized so the scaled integrand varies by at most
/// e^2 per panel; G itself is returned as (log-magnitude, phase). Real part
/// of G is identically 1/2, so `|G| = sqrt(1/4 + I^2)` and
/// `arg G = atan2(I, 1/2)` with `I = c_inner J`.
pub struct GEvaluator {
    kind: GKind,
    alpha: f64,
    inner_exponent: f64,
    ln_c_inner: f64,
    x_max: f64,
    bounds: Vec<f64>,
    ln_cum: Vec<f64>,
}

impl GEvaluator {
    pub fn new(kind: GKind, alpha: f64, x_max: f64) -> Result<Self, SpecialError> {
        if !(x_max > 0.0) || !x_max.is_finite() {
            return Err(SpecialError::OutOfRange(format!(
                "x_max must be positive and finite, got {x_max}"
            )));
        }
        let (inner_exponent, ln_c_inner) = match kind {
            GKind::Beta => {
                if alpha <= -1.0 {
                    return Err(SpecialError::Domain(format!(
                        "beta kind requires alpha > -1, got {alpha}"
                    )));
                }
                (alpha, ln_c_const((alpha - 1.0) / 2.0)?)
            }
            GKind::BetaPrime => {
                if alpha <= 0.0 {
                    return Err(SpecialError::Domain(format!(
                        "beta-prime kind requires alpha > 0, got {alpha}"
                    )));
                }
                (alpha - 1.0, ln_c_tilde_const((alpha + 1.0) / 2.0)?)
            }
        };
        let h = (2.0 / inner_exponent.abs().max(1.0)).min(0.5);
        let n_panels = (x_max / h).ceil() as usize;
        if n_panels > 2_000_000 {
            return Err(SpecialError::OutOfRange(format!(
                "tabulation grid too large ({n_panels} panels for x_max={x_max})"
            )));
        }
        let mut bounds = Vec::with_capacity(n_panels + 1);
        for i in 0..=n_panels {
            bounds.push(x_max * i as f64 / n_panels as f64);
        }
        let mut ln_cum = Vec::with_capacity(n_panels + 1);
        ln_cum.push(f64::NEG_INFINITY);
        let mut acc = f64::NEG_INFINITY;
        for i in 0..n_panels {
            let (a, b) = (bounds[i], bounds[i + 1]);
            // scale at the panel end where (cosh)^e is largest
            let ref_point = if inner_exponent >= 0.0 { b } else { a };
            let q = adaptive_scaled_cosh(a, b, inner_exponent, ref_point)?;
            acc = ln_add(acc, q.ln() + inner_exponent * ln_cosh(ref_point));
            ln_cum.push(acc);
        }
        Ok(GEvaluator {
            kind,
            alpha,
            inner_exponent,
            ln_c_inner,
            x_max,
            bounds,
            ln_cum,
        })
    }

    pub fn kind(&self) -> GKind {
        self.kind
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// `ln J(|x|)` where `J(x) = int_0^x (cosh y)^e dy`.
    fn ln_inner_integral(&self, ax: f64) -> Result<f64, SpecialError> {
        if ax == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        let idx = match self
            .bounds
            .binary_search_by(|b| b.total_cmp(&ax))
        {
            Ok(i) => return Ok(self.ln_cum[i]),
            Err(i) => i - 1,
        };
        let a = self.bounds[idx];
        let ref_point = if self.inner_exponent >= 0.0 { ax } else { a };
        let q = adaptive_scaled_cosh(a, ax, self.inner_exponent, ref_point)?;
        Ok(ln_add(
            self.ln_cum[idx],
            q.ln() + self.inner_exponent * ln_cosh(ref_point),
        ))
    }

    /// Evaluate G (or G-tilde) at `x` in log-magnitude/phase form.
    pub fn evaluate(&self, x: f64) -> Result<PolarComplex, SpecialError> {
        let ax = x.abs();
        if ax > self.x_max * (1.0 + 1e-12) {
            return Err(SpecialError::OutOfRange(format!(
                "G evaluation at |x|={ax} outside tabulated range {}",
                self.x_max
            )));
        }
        if ax == 0.0 {
            return Ok(PolarComplex {
                ln_abs: -std::f64::consts::LN_2,
                arg: 0.0,
            });
        }
        let u = self.ln_c_inner + self.ln_inner_integral(ax.min(self.x_max))?;
        let (ln_abs, arg) = if u > 40.0 {
            (
                u + 0.5 * (0.25 * (-2.0 * u).exp()).ln_1p(),
                std::f64::consts::FRAC_PI_2 - (0.5 * (-u).exp()).atan(),
            )
        } else {
            let v = u.exp();
            (0.5 * (0.25 + v * v).ln(), v.atan2(0.5))
        };
        Ok(PolarComplex {
            ln_abs,
            arg: if x < 0.0 { -arg } else { arg },
        })
    }

    /// Evaluate as an ordinary complex number; errors if the magnitude
    /// exceeds the f64 range. The real part is exactly 1/2 by construction
    /// (the inner integral is purely imaginary), so it is reconstructed
    /// directly rather than through the polar form.
    pub fn evaluate_complex(&self, x: f64) -> Result<Complex64, SpecialError> {
        let ax = x.abs();
        if ax > self.x_max * (1.0 + 1e-12) {
            return Err(SpecialError::OutOfRange(format!(
                "G evaluation at |x|={ax} outside tabulated range {}",
                self.x_max
            )));
        }
        if ax == 0.0 {
            return Ok(Complex64::new(0.5, 0.0));
        }
        let u = self.ln_c_inner + self.ln_inner_integral(ax.min(self.x_max))?;
        if u > 700.0 {
            return Err(SpecialError::OutOfRange(format!(
                "|G({x})| = exp({u}) exceeds the f64 range"
            )));
        }
        Ok(Complex64::new(0.5, x.signum() * u.exp()))
    }
}
