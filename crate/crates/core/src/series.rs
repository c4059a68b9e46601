//! Truncated two-part power series.
//!
//! [`AnalyticSeries`] stores the coefficients `c_1..c_N` of `Σ c_n z^n` (no
//! constant term). [`HarmonicFunction`] pairs two such series `h` and `g` and
//! represents `f = h + conj(g)` on the closed unit disk, normalized so that
//! `h` has leading coefficient exactly 1 and `|g|`'s leading coefficient is
//! below 1. All values are immutable after construction; every operation here
//! is a pure function.

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde::Deserialize;

use crate::error::{Error, Result};

/// Slop admitted when checking `|z| <= 1` so that callers may evaluate on the
/// boundary circle itself.
const DOMAIN_EPS: f64 = 1e-12;

fn check_point(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinitePoint);
    }
    let modulus = z.norm();
    if modulus > 1.0 + DOMAIN_EPS {
        return Err(Error::OutsideDomain { modulus });
    }
    Ok(())
}

/// Coefficients `c_1..c_N` of a truncated power series `Σ_{n=1}^{N} c_n z^n`.
///
/// The truncation order `N` is the length of the coefficient list; index 0 of
/// the backing storage holds `c_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSeries {
    coeffs: Vec<Complex64>,
}

impl AnalyticSeries {
    /// Builds a series from `c_1..c_N`. Rejects empty or non-finite input.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (i, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index: i + 1 });
            }
        }
        Ok(Self { coeffs })
    }

    /// Convenience constructor for real coefficient lists.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// All-zero series of the given truncation.
    pub fn zeros(truncation: usize) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::EmptySeries);
        }
        Ok(Self {
            coeffs: vec![Complex64::new(0.0, 0.0); truncation],
        })
    }

    /// Truncation order `N`; always equals the coefficient count.
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient `c_n` (1-based). Zero for `n = 0` or beyond the truncation.
    pub fn coeff(&self, n: usize) -> Complex64 {
        if n == 0 || n > self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[n - 1]
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Extends with zero coefficients up to `truncation` (no-op if shorter).
    pub fn zero_padded(&self, truncation: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < truncation {
            coeffs.resize(truncation, Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    /// `Σ |c_n|`.
    pub fn magnitude_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Evaluates `Σ c_n z^n` for `|z| <= 1`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_point(z)?;
        Ok(self.eval_raw(z))
    }

    /// Nested (Horner) evaluation without the domain check.
    pub(crate) fn eval_raw(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * z
    }

    /// Term-by-term derivative `Σ n c_n z^{n-1}`.
    ///
    /// The result has a constant term, which does not fit the `c_1`-indexed
    /// layout, so it is returned as a raw 0-indexed [`Polynomial`].
    pub fn derivative(&self) -> Polynomial {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * (i as f64 + 1.0))
                .collect(),
        }
    }

    /// Applies `c_n -> multiplier(n) * c_n` with 1-based `n`.
    pub(crate) fn map_indexed(&self, mut multiplier: impl FnMut(usize) -> Complex64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * multiplier(i + 1))
                .collect(),
        }
    }
}

/// Raw polynomial `Σ_{j=0}^{d} p_j z^j`, 0-indexed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_point(z)?;
        Ok(self.eval_raw(z))
    }

    pub(crate) fn eval_raw(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Hadamard (coefficient-wise) product of two series.
///
/// The shorter operand is zero-padded to the longer truncation first, so the
/// result carries the longer truncation and no information is lost.
pub fn convolve(a: &AnalyticSeries, b: &AnalyticSeries) -> AnalyticSeries {
    let n = a.truncation().max(b.truncation());
    AnalyticSeries {
        coeffs: (1..=n).map(|i| a.coeff(i) * b.coeff(i)).collect(),
    }
}

/// A planar harmonic mapping `f = h + conj(g)` with analytic part `h` and
/// co-analytic part `g`.
///
/// Invariants: `h` and `g` share one truncation (the constructor zero-pads the
/// shorter part), `h`'s leading coefficient is exactly 1 and `|g|`'s leading
/// coefficient is < 1 (sense-preservation at the origin).
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicFunction {
    h: AnalyticSeries,
    g: AnalyticSeries,
}

impl HarmonicFunction {
    pub fn new(h: AnalyticSeries, g: AnalyticSeries) -> Result<Self> {
        let f = Self::paired(h, g);
        let lead = f.h.coeff(1);
        if lead != Complex64::new(1.0, 0.0) {
            return Err(Error::NotNormalized { got: lead });
        }
        let b1 = f.g.coeff(1).norm();
        if b1 >= 1.0 {
            return Err(Error::LeadingCoefficientTooLarge { got: b1 });
        }
        Ok(f)
    }

    /// Admits `|b_1| = 1`: extreme points may sit on the closure of the
    /// coefficient body.
    pub(crate) fn new_on_closure(h: AnalyticSeries, g: AnalyticSeries) -> Result<Self> {
        let f = Self::paired(h, g);
        let lead = f.h.coeff(1);
        if lead != Complex64::new(1.0, 0.0) {
            return Err(Error::NotNormalized { got: lead });
        }
        let b1 = f.g.coeff(1).norm();
        if b1 > 1.0 + DOMAIN_EPS {
            return Err(Error::LeadingCoefficientTooLarge { got: b1 });
        }
        Ok(f)
    }

    /// For operator images whose multiplier at `n = 1` is 1, so the checked
    /// invariants carry over from the input.
    pub(crate) fn from_parts_unchecked(h: AnalyticSeries, g: AnalyticSeries) -> Self {
        Self::paired(h, g)
    }

    fn paired(h: AnalyticSeries, g: AnalyticSeries) -> Self {
        let n = h.truncation().max(g.truncation());
        Self {
            h: h.zero_padded(n),
            g: g.zero_padded(n),
        }
    }

    /// The identity map `f(z) = z` at the given truncation.
    pub fn identity(truncation: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); truncation.max(1)];
        coeffs[0] = Complex64::new(1.0, 0.0);
        Self {
            h: AnalyticSeries { coeffs },
            g: AnalyticSeries::zeros(truncation.max(1)).expect("truncation >= 1"),
        }
    }

    pub fn h(&self) -> &AnalyticSeries {
        &self.h
    }

    pub fn g(&self) -> &AnalyticSeries {
        &self.g
    }

    pub fn truncation(&self) -> usize {
        self.h.truncation()
    }

    /// `|b_1|`, the co-analytic leading coefficient magnitude.
    pub fn b1_abs(&self) -> f64 {
        self.g.coeff(1).norm()
    }

    /// `Σ |a_n| + Σ |b_n|` over both parts.
    pub fn coefficient_magnitude_sum(&self) -> f64 {
        self.h.magnitude_sum() + self.g.magnitude_sum()
    }

    pub fn zero_padded(&self, truncation: usize) -> Self {
        Self {
            h: self.h.zero_padded(truncation),
            g: self.g.zero_padded(truncation),
        }
    }

    /// Evaluates `f(z) = h(z) + conj(g(z))` for `|z| <= 1`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_point(z)?;
        Ok(self.eval_raw(z))
    }

    pub(crate) fn eval_raw(&self, z: Complex64) -> Complex64 {
        self.h.eval_raw(z) + self.g.eval_raw(z).conj()
    }

    /// Jacobian `|h'(z)|^2 - |g'(z)|^2`. Positive where `f` preserves
    /// orientation.
    pub fn jacobian(&self, z: Complex64) -> f64 {
        let hd = self.h.derivative().eval_raw(z);
        let gd = self.g.derivative().eval_raw(z);
        hd.norm_sqr() - gd.norm_sqr()
    }

    /// Serializes to the interchange schema: coefficient lists are arrays of
    /// `[re, im]` pairs and index 0 holds `c_1`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail") + "\n"
    }

    /// Parses the interchange schema and enforces the construction
    /// invariants. An empty `g` array is read as all zeros.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: HarmonicFunctionRepr = serde_json::from_str(text)?;
        let h = AnalyticSeries::new(raw.h.iter().map(|p| Complex64::new(p[0], p[1])).collect())?;
        let g = if raw.g.is_empty() {
            AnalyticSeries::zeros(h.truncation())?
        } else {
            AnalyticSeries::new(raw.g.iter().map(|p| Complex64::new(p[0], p[1])).collect())?
        };
        Self::new(h, g)
    }
}

#[derive(Deserialize)]
struct HarmonicFunctionRepr {
    h: Vec<[f64; 2]>,
    #[serde(default)]
    g: Vec<[f64; 2]>,
}

fn pairs(series: &AnalyticSeries) -> Vec<[f64; 2]> {
    series.coeffs().iter().map(|c| [c.re, c.im]).collect()
}

impl Serialize for HarmonicFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("HarmonicFunction", 2)?;
        s.serialize_field("h", &pairs(&self.h))?;
        s.serialize_field("g", &pairs(&self.g))?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_identity_series() {
        let s = AnalyticSeries::from_real(&[1.0]).unwrap();
        assert_eq!(s.eval(c(0.5, 0.0)).unwrap(), c(0.5, 0.0));
    }

    #[test]
    fn eval_matches_direct_polynomial() {
        let s = AnalyticSeries::from_real(&[1.0, -3.0 / 8.0]).unwrap();
        assert_relative_eq!(s.eval(c(1.0, 0.0)).unwrap().re, 0.625, epsilon = 1e-15);

        let s = AnalyticSeries::from_real(&[1.0, 0.5]).unwrap();
        let v = s.eval(c(0.0, 0.5)).unwrap();
        assert_relative_eq!(v.re, -0.125, epsilon = 1e-15);
        assert_relative_eq!(v.im, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn eval_rejects_bad_points() {
        let s = AnalyticSeries::from_real(&[1.0]).unwrap();
        assert!(matches!(
            s.eval(c(f64::NAN, 0.0)),
            Err(Error::NonFinitePoint)
        ));
        assert!(matches!(
            s.eval(c(1.5, 0.0)),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn construction_rejects_bad_coefficients() {
        assert!(matches!(
            AnalyticSeries::new(vec![]),
            Err(Error::EmptySeries)
        ));
        assert!(matches!(
            AnalyticSeries::new(vec![c(1.0, 0.0), c(f64::INFINITY, 0.0)]),
            Err(Error::NonFiniteCoefficient { index: 2 })
        ));
    }

    #[test]
    fn harmonic_eval_examples() {
        let f = HarmonicFunction::new(
            AnalyticSeries::from_real(&[1.0]).unwrap(),
            AnalyticSeries::from_real(&[0.0]).unwrap(),
        )
        .unwrap();
        assert_eq!(f.eval(c(0.3, 0.4)).unwrap(), c(0.3, 0.4));

        let f = HarmonicFunction::new(
            AnalyticSeries::from_real(&[1.0]).unwrap(),
            AnalyticSeries::from_real(&[0.3]).unwrap(),
        )
        .unwrap();
        let v = f.eval(c(0.0, 1.0)).unwrap();
        assert_relative_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(v.im, 0.7, epsilon = 1e-15);

        let f = HarmonicFunction::new(
            AnalyticSeries::from_real(&[1.0, 0.25]).unwrap(),
            AnalyticSeries::from_real(&[0.0]).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(f.eval(c(1.0, 0.0)).unwrap().re, 1.25, epsilon = 1e-15);
    }

    #[test]
    fn harmonic_invariants_enforced() {
        let err = HarmonicFunction::new(
            AnalyticSeries::from_real(&[0.9]).unwrap(),
            AnalyticSeries::from_real(&[0.0]).unwrap(),
        );
        assert!(matches!(err, Err(Error::NotNormalized { .. })));

        let err = HarmonicFunction::new(
            AnalyticSeries::from_real(&[1.0]).unwrap(),
            AnalyticSeries::from_real(&[1.0]).unwrap(),
        );
        assert!(matches!(err, Err(Error::LeadingCoefficientTooLarge { .. })));
    }

    #[test]
    fn construction_pads_to_common_truncation() {
        let f = HarmonicFunction::new(
            AnalyticSeries::from_real(&[1.0, 0.5, 0.25]).unwrap(),
            AnalyticSeries::from_real(&[0.3]).unwrap(),
        )
        .unwrap();
        assert_eq!(f.truncation(), 3);
        assert_eq!(f.g().truncation(), 3);
        assert_eq!(f.g().coeff(3), c(0.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        let s = AnalyticSeries::from_real(&[1.0]).unwrap();
        assert_eq!(s.derivative().eval(c(0.7, 0.0)).unwrap(), c(1.0, 0.0));

        let s = AnalyticSeries::from_real(&[1.0, -3.0 / 8.0]).unwrap();
        let d = s.derivative();
        let z = c(0.2, 0.0);
        assert_relative_eq!(
            d.eval(z).unwrap().re,
            1.0 - 0.75 * 0.2,
            epsilon = 1e-15
        );

        let s = AnalyticSeries::from_real(&[1.0, 0.0, 0.1]).unwrap();
        let d = s.derivative();
        let z = c(0.5, 0.0);
        assert_relative_eq!(
            d.eval(z).unwrap().re,
            1.0 + 0.3 * 0.25,
            epsilon = 1e-15
        );
    }

    #[test]
    fn jacobian_examples() {
        let id = HarmonicFunction::identity(1);
        assert_relative_eq!(id.jacobian(c(0.3, -0.2)), 1.0, epsilon = 1e-15);

        let f = HarmonicFunction::new(
            AnalyticSeries::from_real(&[1.0]).unwrap(),
            AnalyticSeries::from_real(&[0.3]).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(f.jacobian(c(0.5, 0.5)), 0.91, epsilon = 1e-15);

        let f = HarmonicFunction::new(
            AnalyticSeries::from_real(&[1.0, 0.5]).unwrap(),
            AnalyticSeries::from_real(&[0.0]).unwrap(),
        )
        .unwrap();
        // h'(z) = 1 + z, so |h'(0.5)|^2 = 2.25
        assert_relative_eq!(f.jacobian(c(0.5, 0.0)), 2.25, epsilon = 1e-15);
    }

    #[test]
    fn jacobian_at_origin_from_b1() {
        let f = HarmonicFunction::new(
            AnalyticSeries::from_real(&[1.0, 0.4]).unwrap(),
            AnalyticSeries::from_real(&[0.6, -0.2]).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(f.jacobian(c(0.0, 0.0)), 1.0 - 0.36, epsilon = 1e-15);
    }

    #[test]
    fn convolution_examples() {
        let ones = AnalyticSeries::from_real(&[1.0, 1.0, 1.0]).unwrap();
        let s = AnalyticSeries::from_real(&[1.0, -0.25, 0.125]).unwrap();
        assert_eq!(convolve(&s, &ones), s);

        let a = AnalyticSeries::from_real(&[1.0, 2.0]).unwrap();
        let b = AnalyticSeries::from_real(&[1.0, 3.0]).unwrap();
        assert_eq!(convolve(&a, &b), AnalyticSeries::from_real(&[1.0, 6.0]).unwrap());

        let a = AnalyticSeries::from_real(&[1.0, -1.0 / 3.0, 0.1]).unwrap();
        let b = AnalyticSeries::from_real(&[1.0, 0.0, 5.0]).unwrap();
        assert_eq!(
            convolve(&a, &b),
            AnalyticSeries::from_real(&[1.0, 0.0, 0.5]).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let f = HarmonicFunction::new(
            AnalyticSeries::new(vec![c(1.0, 0.0), c(-0.375, 0.125)]).unwrap(),
            AnalyticSeries::new(vec![c(0.25, -0.1)]).unwrap(),
        )
        .unwrap();
        let text = f.to_json();
        let back = HarmonicFunction::from_json(&text).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn json_empty_g_reads_as_zero() {
        let f = HarmonicFunction::from_json(r#"{"h": [[1.0, 0.0], [0.5, 0.0]], "g": []}"#).unwrap();
        assert_eq!(f.g().magnitude_sum(), 0.0);
        assert_eq!(f.truncation(), 2);
    }

    #[test]
    fn json_enforces_invariants() {
        let err = HarmonicFunction::from_json(r#"{"h": [[1.0, 0.0]], "g": [[1.0, 0.0]]}"#);
        assert!(matches!(err, Err(Error::LeadingCoefficientTooLarge { .. })));
    }
}
