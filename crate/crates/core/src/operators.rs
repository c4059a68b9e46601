//! Coefficient operators on harmonic mappings.
//!
//! The building blocks are the normalized error-function coefficients
//! `e_n = (-1)^{n-1} / ((2n-1)(n-1)!)`, the derivative-operator multiplier
//! `binom(n+lambda-1, lambda) * n^k`, their composition on both parts of a
//! harmonic pair, and the Bernardi–Libera–Livingston integral operator in
//! coefficient form together with an independent quadrature route used only
//! as a cross-check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{AnalyticSeries, HarmonicFunction};

/// The family parameter triple `(k, lambda, gamma)`.
///
/// The membership criteria require `k >= 1` and `lambda >= 1`; the derivative
/// operator itself also accepts `k = 0` and `lambda = 0` (identity
/// multipliers), which is why [`apply_c_operator`] takes raw integers instead
/// of this type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    k: u32,
    lambda: u32,
    gamma: f64,
}

impl FamilyParams {
    pub fn new(k: u32, lambda: u32, gamma: f64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParameter("k must be >= 1".into()));
        }
        if lambda < 1 {
            return Err(Error::InvalidParameter("lambda must be >= 1".into()));
        }
        if !gamma.is_finite() || !(0.0..1.0).contains(&gamma) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in [0, 1), got {gamma}"
            )));
        }
        Ok(Self { k, lambda, gamma })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

fn factorial_u128(n: u32) -> Option<u128> {
    (2..=n as u128).try_fold(1u128, |acc, i| acc.checked_mul(i))
}

/// `n!` in floating point. Exact up to `n = 18`; later values are rounded but
/// only enter as magnitudes far below every tolerance in this crate.
pub(crate) fn factorial_f64(n: u32) -> f64 {
    match factorial_u128(n) {
        Some(f) => f as f64,
        None => (2..=n as u64).fold(1.0, |acc, i| acc * i as f64),
    }
}

/// Coefficient `e_n` of the normalized error-function series
/// `z + Σ_{n>=2} e_n z^n`, with `e_1 = 1`.
///
/// The value is `(-1)^{n-1} / ((2n-1)(n-1)!)`, computed as a ratio of exact
/// wide integers and converted once.
pub fn error_coefficient(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "error coefficient index must be >= 1".into(),
        ));
    }
    let sign = if (n - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    let odd = 2 * n as u128 - 1;
    match factorial_u128(n - 1).and_then(|f| f.checked_mul(odd)) {
        Some(denom) => Ok(sign / denom as f64),
        // Beyond u128 the magnitude is < 1e-36; accumulate the reciprocal.
        None => {
            let mut recip = 1.0 / odd as f64;
            for i in 2..n as u64 {
                recip /= i as f64;
            }
            Ok(sign * recip)
        }
    }
}

/// Derivative-operator multiplier `binom(n+lambda-1, lambda) * n^k`, exact in
/// 128-bit integers. Rejects parameter combinations that overflow.
pub fn c_multiplier(n: u32, k: u32, lambda: u32) -> Result<u128> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "multiplier index must be >= 1".into(),
        ));
    }
    let overflow = || Error::MultiplierOverflow { n, k, lambda };
    // binom(n-1+i, i) is integral at every step, so the running division is exact.
    let mut binom: u128 = 1;
    for i in 1..=lambda as u128 {
        binom = binom.checked_mul(n as u128 - 1 + i).ok_or_else(overflow)? / i;
    }
    let power = (n as u128).checked_pow(k).ok_or_else(overflow)?;
    binom.checked_mul(power).ok_or_else(overflow)
}

/// Hadamard convolution with the error-function series on both parts:
/// coefficient `n` of `h` and of `g` is scaled by `e_n`.
///
/// `e_1 = 1`, so the normalization of `h` and the `|b_1|` bound carry over.
pub fn apply_error_convolution(f: &HarmonicFunction) -> HarmonicFunction {
    let scale = |s: &AnalyticSeries| {
        s.map_indexed(|n| {
            Complex64::new(
                error_coefficient(n as u32).expect("n >= 1 by construction"),
                0.0,
            )
        })
    };
    HarmonicFunction::from_parts_unchecked(scale(f.h()), scale(f.g()))
}

/// Applies the derivative operator: coefficient `n` of each part is scaled by
/// `binom(n+lambda-1, lambda) * n^k`.
///
/// `k = 0, lambda = 0` is the identity. The multiplier at `n = 1` is always 1,
/// so the normalization carries over.
pub fn apply_c_operator(f: &HarmonicFunction, k: u32, lambda: u32) -> Result<HarmonicFunction> {
    let truncation = f.truncation();
    let mut multipliers = Vec::with_capacity(truncation);
    for n in 1..=truncation {
        let n = u32::try_from(n)
            .map_err(|_| Error::InvalidParameter("truncation exceeds u32".into()))?;
        multipliers.push(c_multiplier(n, k, lambda)? as f64);
    }
    let scale = |s: &AnalyticSeries| s.map_indexed(|n| Complex64::new(multipliers[n - 1], 0.0));
    let out = HarmonicFunction::from_parts_unchecked(scale(f.h()), scale(f.g()));
    for n in 1..=truncation {
        let c = out.h().coeff(n);
        let d = out.g().coeff(n);
        if !c.re.is_finite() || !c.im.is_finite() || !d.re.is_finite() || !d.im.is_finite() {
            return Err(Error::NonFiniteCoefficient { index: n });
        }
    }
    Ok(out)
}

/// The transformed pair defining the family: error convolution followed by
/// the derivative operator.
///
/// Coefficient `n` of `h` becomes
/// `binom(n+lambda-1, lambda) * (-1)^{n-1} n^k / ((2n-1)(n-1)!) * a_n`,
/// and likewise for `g`.
pub fn transformed_series(f: &HarmonicFunction, params: &FamilyParams) -> Result<HarmonicFunction> {
    apply_c_operator(&apply_error_convolution(f), params.k(), params.lambda())
}

/// Bernardi–Libera–Livingston operator in coefficient form: coefficient `n`
/// of both parts is scaled by `(c+1)/(c+n)`.
///
/// The `n = 1` multiplier is 1, so normalization is preserved; every other
/// multiplier is < 1, so coefficient magnitudes never grow.
pub fn bernardi(f: &HarmonicFunction, c: f64) -> Result<HarmonicFunction> {
    if !c.is_finite() || c < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "integral operator order c must be >= 0, got {c}"
        )));
    }
    let scale = |s: &AnalyticSeries| {
        s.map_indexed(|n| Complex64::new((c + 1.0) / (c + n as f64), 0.0))
    };
    Ok(HarmonicFunction::from_parts_unchecked(
        scale(f.h()),
        scale(f.g()),
    ))
}

/// Composite Simpson quadrature of a complex-valued integrand on `[a, b]`
/// with an even number of subintervals.
fn simpson(mut integrand: impl FnMut(f64) -> Complex64, a: f64, b: f64, n: usize) -> Complex64 {
    debug_assert!(n >= 2 && n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut acc = integrand(a) + integrand(b);
    for i in 1..n {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += integrand(a + i as f64 * h) * weight;
    }
    acc * (h / 3.0)
}

/// Quadrature route for the integral operator, used only to cross-check the
/// coefficient form.
///
/// Parameterizing `t = s z` turns `(1+c)/z^c ∫_0^z t^{c-1} f(t) dt` into
/// `(1+c) ∫_0^1 s^{c-1} h(sz) ds` for the analytic part; the co-analytic part
/// is integrated the same way as an analytic series and conjugated afterward.
pub fn bernardi_quadrature_oracle(
    f: &HarmonicFunction,
    c: f64,
    z: Complex64,
    panels: usize,
) -> Result<Complex64> {
    if !c.is_finite() || c < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "integral operator order c must be >= 0, got {c}"
        )));
    }
    if panels < 16 {
        return Err(Error::InvalidParameter(
            "quadrature needs at least 16 panels".into(),
        ));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinitePoint);
    }
    let modulus = z.norm();
    if modulus == 0.0 {
        return Err(Error::InvalidParameter(
            "quadrature point z = 0 rejected; the operator fixes 0".into(),
        ));
    }
    if modulus >= 1.0 {
        return Err(Error::OutsideDomain { modulus });
    }
    let subintervals = panels + panels % 2;

    // s^{c-1} * series(s z) -> s^{c+n-1} termwise, so the s -> 0 limit is 0
    // for c > 0 and (leading coefficient) * z for c = 0.
    let part = |series: &AnalyticSeries| -> Complex64 {
        let limit0 = if c == 0.0 {
            series.coeff(1) * z
        } else {
            Complex64::new(0.0, 0.0)
        };
        let integral = simpson(
            |s| {
                if s == 0.0 {
                    limit0
                } else {
                    series.eval_raw(z * s) * s.powf(c - 1.0)
                }
            },
            0.0,
            1.0,
            subintervals,
        );
        integral * (1.0 + c)
    };

    Ok(part(f.h()) + part(f.g()).conj())
}
