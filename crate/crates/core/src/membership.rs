//! The weighted coefficient criterion, the sign-pattern subfamily, distortion
//! and covering bounds, extreme points, and convex structure.
//!
//! The central object is the weighted l1 sum
//!
//! ```text
//! Σ_{n>=1} binom(n+λ-1, λ) n^k [(n-γ)|a_n| + (n+γ)|b_n|] / ((1-γ)(2n-1)(n-1)!)
//! ```
//!
//! with `a_1 = 1`. A value of at most 2 certifies family membership; the
//! boundary of that coefficient body is spanned by the two-term extreme
//! points constructed here, and [`decompose`]/[`reconstruct`] move between a
//! function and its convex weights over those extreme points.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{c_multiplier, factorial_f64, FamilyParams};
use crate::series::{AnalyticSeries, HarmonicFunction};

/// Absolute tolerance on comparisons against the bound 2, so that boundary
/// members (the extreme points) classify as members under rounding.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

/// Weight on `|a_n|` in the criterion sum:
/// `binom(n+λ-1, λ) n^k (n-γ) / ((1-γ)(2n-1)(n-1)!)`.
pub fn weight_a(n: u32, params: &FamilyParams) -> Result<f64> {
    weight(n, params, -params.gamma())
}

/// Weight on `|b_n|`: as [`weight_a`] with `(n+γ)` in place of `(n-γ)`.
pub fn weight_b(n: u32, params: &FamilyParams) -> Result<f64> {
    weight(n, params, params.gamma())
}

fn weight(n: u32, params: &FamilyParams, gamma_shift: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("weight index must be >= 1".into()));
    }
    let mult = c_multiplier(n, params.k(), params.lambda())? as f64;
    let nf = n as f64;
    Ok(mult * (nf + gamma_shift)
        / ((1.0 - params.gamma()) * (2.0 * nf - 1.0) * factorial_f64(n - 1)))
}

/// One weighted term of the criterion sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TermContribution {
    pub n: u32,
    pub value: f64,
}

/// Outcome of evaluating the criterion sum on a concrete function.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    /// The full weighted sum, including the `n = 1` terms.
    pub sum: f64,
    /// Per-index contributions `w_a(n) |a_n|`.
    pub terms_a: Vec<TermContribution>,
    /// Per-index contributions `w_b(n) |b_n|`.
    pub terms_b: Vec<TermContribution>,
    /// `sum <= 2 + tolerance`.
    pub verdict: bool,
    /// `2 - sum`; negative when the criterion fails.
    pub margin: f64,
    /// Estimated magnitude of the first weighted term lost to truncation,
    /// assuming the coefficients continue at their final magnitude.
    pub dropped_tail: f64,
    /// Tolerance used for the verdict.
    pub tolerance: f64,
}

/// Evaluates the criterion sum with the default [`MEMBERSHIP_TOLERANCE`].
pub fn coefficient_sum(f: &HarmonicFunction, params: &FamilyParams) -> Result<MembershipReport> {
    coefficient_sum_with_tolerance(f, params, MEMBERSHIP_TOLERANCE)
}

/// Evaluates the criterion sum. The `n = 1` term contributes exactly
/// `1 + w_b(1) |b_1|` because `a_1 = 1`.
pub fn coefficient_sum_with_tolerance(
    f: &HarmonicFunction,
    params: &FamilyParams,
    tolerance: f64,
) -> Result<MembershipReport> {
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be > 0".into()));
    }
    let truncation = f.truncation();
    let n32 = u32::try_from(truncation)
        .map_err(|_| Error::InvalidParameter("truncation exceeds u32".into()))?;

    let mut terms_a = Vec::with_capacity(truncation);
    let mut terms_b = Vec::with_capacity(truncation);
    let mut sum = 0.0;
    for n in 1..=n32 {
        let ta = weight_a(n, params)? * f.h().coeff(n as usize).norm();
        let tb = weight_b(n, params)? * f.g().coeff(n as usize).norm();
        terms_a.push(TermContribution { n, value: ta });
        terms_b.push(TermContribution { n, value: tb });
        sum += ta + tb;
    }

    // Tail estimate at index N+1; an overflowing weight saturates the estimate.
    let last_a = f.h().coeff(truncation).norm();
    let last_b = f.g().coeff(truncation).norm();
    let tail = |w: Result<f64>, mag: f64| w.map(|w| w * mag).unwrap_or(f64::INFINITY);
    let dropped_tail = tail(weight_a(n32 + 1, params), last_a)
        .max(tail(weight_b(n32 + 1, params), last_b));

    Ok(MembershipReport {
        sum,
        terms_a,
        terms_b,
        verdict: sum <= 2.0 + tolerance,
        margin: 2.0 - sum,
        dropped_tail,
        tolerance,
    })
}

/// Which fixed sign arrangement the subfamily check expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SignConvention {
    /// `a_n` carries sign `(-1)^n`, `b_n` carries sign `(-1)^{n-1}`.
    #[default]
    Alternating,
    /// `a_n <= 0` for n >= 2 and `b_n >= 0` throughout, matching the signs of
    /// the extreme points.
    NegativeH,
}

impl SignConvention {
    pub(crate) fn a_negative(self, n: usize) -> bool {
        match self {
            SignConvention::Alternating => n % 2 == 1,
            SignConvention::NegativeH => true,
        }
    }

    pub(crate) fn b_negative(self, n: usize) -> bool {
        match self {
            SignConvention::Alternating => n.is_multiple_of(2),
            SignConvention::NegativeH => false,
        }
    }
}

/// True iff every coefficient larger than `tol` is real within `tol` and
/// carries the default ([`SignConvention::Alternating`]) sign; zero
/// coefficients always pass.
pub fn has_sign_pattern(f: &HarmonicFunction, tol: f64) -> bool {
    has_sign_pattern_with(f, tol, SignConvention::default())
}

pub fn has_sign_pattern_with(f: &HarmonicFunction, tol: f64, convention: SignConvention) -> bool {
    let check = |c: Complex64, negative: bool| -> bool {
        if c.norm() <= tol {
            return true;
        }
        if c.im.abs() > tol {
            return false;
        }
        negative == (c.re < 0.0)
    };
    for n in 2..=f.truncation() {
        if !check(f.h().coeff(n), convention.a_negative(n)) {
            return false;
        }
    }
    for n in 1..=f.truncation() {
        if !check(f.g().coeff(n), convention.b_negative(n)) {
            return false;
        }
    }
    true
}

/// Subfamily membership: the sign pattern together with the criterion sum.
pub fn is_subclass_member(f: &HarmonicFunction, params: &FamilyParams) -> Result<bool> {
    is_subclass_member_with(f, params, SignConvention::default())
}

pub fn is_subclass_member_with(
    f: &HarmonicFunction,
    params: &FamilyParams,
    convention: SignConvention,
) -> Result<bool> {
    Ok(has_sign_pattern_with(f, MEMBERSHIP_TOLERANCE, convention)
        && coefficient_sum(f, params)?.verdict)
}

fn distortion_quadratic(params: &FamilyParams, b1_abs: f64) -> f64 {
    let gamma = params.gamma();
    let denom =
        2f64.powi(params.k() as i32) * (2.0 - gamma) * (1.0 + params.lambda() as f64);
    (3.0 * (1.0 - gamma) - 3.0 * (1.0 + gamma) * b1_abs) / denom
}

/// Upper envelope for `|f(z)|` on `|z| = r`:
/// `(1+|b_1|) r + (3(1-γ) - 3(1+γ)|b_1|) / (2^k (2-γ)(1+λ)) * r^2`.
pub fn distortion_upper(params: &FamilyParams, b1_abs: f64, r: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&b1_abs));
    debug_assert!((0.0..=1.0).contains(&r));
    (1.0 + b1_abs) * r + distortion_quadratic(params, b1_abs) * r * r
}

/// Lower envelope: `(1-|b_1|) r` minus the same quadratic term.
pub fn distortion_lower(params: &FamilyParams, b1_abs: f64, r: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&b1_abs));
    debug_assert!((0.0..=1.0).contains(&r));
    (1.0 - b1_abs) * r - distortion_quadratic(params, b1_abs) * r * r
}

/// Radius of the disk guaranteed to lie inside the image of the unit disk.
///
/// Computed from its own closed form; it coincides with
/// `distortion_lower(params, b1_abs, 1)`, which the tests verify as an
/// independent route.
pub fn covering_radius(params: &FamilyParams, b1_abs: f64) -> f64 {
    debug_assert!((0.0..1.0).contains(&b1_abs));
    let gamma = params.gamma();
    let two_k = 2f64.powi(params.k() as i32);
    let lam1 = 1.0 + params.lambda() as f64;
    let denom = two_k * (2.0 - gamma) * lam1;
    let constant = (2.0 * two_k * lam1 - 3.0 - (two_k * lam1 - 3.0) * gamma) / denom;
    let slope = (2.0 * two_k * lam1 - 3.0 - (two_k * lam1 + 3.0) * gamma) / denom;
    constant - slope * b1_abs
}

/// The `n`-th analytic extreme point: the identity for `n = 1`, otherwise
/// `z - z^n / w_a(n)`, zero-padded to `truncation`. Its criterion sum is
/// exactly 2.
pub fn extreme_h(n: usize, params: &FamilyParams, truncation: usize) -> Result<HarmonicFunction> {
    if n < 1 || n > truncation {
        return Err(Error::IndexOutOfRange { n, max: truncation });
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); truncation];
    coeffs[0] = Complex64::new(1.0, 0.0);
    if n >= 2 {
        coeffs[n - 1] = Complex64::new(-1.0 / weight_a(n as u32, params)?, 0.0);
    }
    HarmonicFunction::new(
        AnalyticSeries::new(coeffs)?,
        AnalyticSeries::zeros(truncation)?,
    )
}

/// The `n`-th co-analytic extreme point: identity plus `conj(z^n) / w_b(n)`.
///
/// At `n = 1, γ = 0` the coefficient has modulus 1, outside the open
/// constraint on `|b_1|`; the function is still constructed (extreme points
/// may lie on the closure of the family) and flagged as a boundary case so
/// that verification grids can exclude it.
pub fn extreme_g(
    n: usize,
    params: &FamilyParams,
    truncation: usize,
) -> Result<(HarmonicFunction, bool)> {
    if n < 1 || n > truncation {
        return Err(Error::IndexOutOfRange { n, max: truncation });
    }
    let mut h = vec![Complex64::new(0.0, 0.0); truncation];
    h[0] = Complex64::new(1.0, 0.0);
    let mut g = vec![Complex64::new(0.0, 0.0); truncation];
    let coefficient = 1.0 / weight_b(n as u32, params)?;
    g[n - 1] = Complex64::new(coefficient, 0.0);
    let boundary = n == 1 && coefficient >= 1.0 - 1e-12;
    let f = HarmonicFunction::new_on_closure(AnalyticSeries::new(h)?, AnalyticSeries::new(g)?)?;
    Ok((f, boundary))
}

/// Convex weights over the extreme points, indexed `n = 1..N` with entry 0
/// holding the identity weight `X_1`. Serializes with explicit index fields:
/// `{"x": [{"n": 1, "weight": ...}, ...], "y": [...]}`.
#[derive(Debug, Clone)]
pub struct DecompositionWeights {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl DecompositionWeights {
    pub fn truncation(&self) -> usize {
        self.x.len().max(self.y.len())
    }

    pub fn total(&self) -> f64 {
        self.x.iter().sum::<f64>() + self.y.iter().sum::<f64>()
    }

    fn validate(&self) -> Result<()> {
        if self.x.is_empty() {
            return Err(Error::WeightConstraint("x weights are empty".into()));
        }
        for (label, list) in [("X", &self.x), ("Y", &self.y)] {
            for (i, &w) in list.iter().enumerate() {
                if !w.is_finite() || w < -1e-12 {
                    return Err(Error::WeightConstraint(format!(
                        "{label}_{} = {w} must be nonnegative",
                        i + 1
                    )));
                }
            }
        }
        let total = self.total();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::WeightConstraint(format!(
                "weights must sum to 1, got {total}"
            )));
        }
        Ok(())
    }
}

fn indexed(weights: &[f64]) -> Vec<WeightEntry> {
    weights
        .iter()
        .enumerate()
        .map(|(i, &weight)| WeightEntry {
            n: (i + 1) as u32,
            weight,
        })
        .collect()
}

#[derive(Serialize)]
struct WeightEntry {
    n: u32,
    weight: f64,
}

impl Serialize for DecompositionWeights {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("DecompositionWeights", 2)?;
        s.serialize_field("x", &indexed(&self.x))?;
        s.serialize_field("y", &indexed(&self.y))?;
        s.end()
    }
}

/// Reads off the convex weights of `f` over the extreme points, on
/// coefficient magnitudes: `X_n = w_a(n) |a_n|` for `n >= 2`,
/// `Y_n = w_b(n) |b_n|` for `n >= 1`, and `X_1` absorbs the remainder.
///
/// A function outside the coefficient body makes `X_1` negative, which is
/// reported as infeasible.
pub fn decompose(f: &HarmonicFunction, params: &FamilyParams) -> Result<DecompositionWeights> {
    let truncation = f.truncation();
    let mut x = vec![0.0; truncation];
    let mut y = vec![0.0; truncation];
    let mut rest = 0.0;
    for n in 2..=truncation {
        x[n - 1] = weight_a(n as u32, params)? * f.h().coeff(n).norm();
        rest += x[n - 1];
    }
    for n in 1..=truncation {
        y[n - 1] = weight_b(n as u32, params)? * f.g().coeff(n).norm();
        rest += y[n - 1];
    }
    let x1 = 1.0 - rest;
    if x1 < -MEMBERSHIP_TOLERANCE {
        return Err(Error::DecompositionInfeasible { x1 });
    }
    x[0] = x1.max(0.0);
    Ok(DecompositionWeights { x, y })
}

/// The convex combination `Σ X_n h_n + Σ Y_n g_n` of extreme points, padded
/// to `truncation`.
///
/// Carries the extreme points' own signs: negative `h` coefficients,
/// positive `g` coefficients.
pub fn reconstruct(
    weights: &DecompositionWeights,
    params: &FamilyParams,
    truncation: usize,
) -> Result<HarmonicFunction> {
    weights.validate()?;
    if truncation < weights.truncation() {
        return Err(Error::WeightConstraint(format!(
            "truncation {truncation} is below the weight count {}",
            weights.truncation()
        )));
    }
    let mut h = vec![Complex64::new(0.0, 0.0); truncation];
    h[0] = Complex64::new(1.0, 0.0);
    for (i, &w) in weights.x.iter().enumerate().skip(1) {
        let n = i + 1;
        h[i] = Complex64::new(-w.max(0.0) / weight_a(n as u32, params)?, 0.0);
    }
    let mut g = vec![Complex64::new(0.0, 0.0); truncation];
    for (i, &w) in weights.y.iter().enumerate() {
        let n = i + 1;
        g[i] = Complex64::new(w.max(0.0) / weight_b(n as u32, params)?, 0.0);
    }
    HarmonicFunction::new(AnalyticSeries::new(h)?, AnalyticSeries::new(g)?)
}

/// Coefficient-wise convex combination `Σ t_i f_i`.
///
/// Requires `Σ t_i = 1` (within 1e-12) and `t_i ∈ [0, 1]`; the inputs are
/// zero-padded to a common truncation. The leading coefficient is pinned to
/// exactly 1 rather than `Σ t_i`.
pub fn convex_combine(fs: &[HarmonicFunction], ts: &[f64]) -> Result<HarmonicFunction> {
    if fs.is_empty() || fs.len() != ts.len() {
        return Err(Error::WeightConstraint(format!(
            "{} functions with {} weights",
            fs.len(),
            ts.len()
        )));
    }
    for &t in ts {
        if !t.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&t) {
            return Err(Error::WeightConstraint(format!(
                "combination weight {t} outside [0, 1]"
            )));
        }
    }
    let total: f64 = ts.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::WeightConstraint(format!(
            "combination weights must sum to 1, got {total}"
        )));
    }
    let truncation = fs.iter().map(HarmonicFunction::truncation).max().unwrap();
    let mut h = vec![Complex64::new(0.0, 0.0); truncation];
    let mut g = vec![Complex64::new(0.0, 0.0); truncation];
    for (f, &t) in fs.iter().zip(ts) {
        for n in 1..=truncation {
            h[n - 1] += f.h().coeff(n) * t;
            g[n - 1] += f.g().coeff(n) * t;
        }
    }
    h[0] = Complex64::new(1.0, 0.0);
    HarmonicFunction::new(AnalyticSeries::new(h)?, AnalyticSeries::new(g)?)
}
