//! C ABI over the core library.
//!
//! Functions are held behind opaque [`HgftFunction`] handles allocated here
//! and released with [`hgft_function_free`]; strings returned to the caller
//! are released with [`hgft_string_free`]. Every fallible call returns an
//! [`HgftStatus`] and writes its results through out-pointers. The matching
//! C header is generated into `include/hgft.h` at build time.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use hgft::membership::coefficient_sum;
use hgft::operators::{apply_c_operator, apply_error_convolution};
use hgft::verification::{
    random_member, random_subclass_member, starlike_functional, verify_analytic_condition,
    GridSpec,
};
use hgft::{bernardi, covering_radius, distortion_lower, distortion_upper, Error, FamilyParams};
use num_complex::Complex64;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgftStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input could not be parsed.
    ParseError = 3,
    /// A construction invariant was violated (normalization, |b1| < 1,
    /// finiteness).
    InvariantViolation = 4,
    /// A parameter was out of range or an operator multiplier overflowed.
    InvalidParameter = 5,
    /// Decomposition infeasible for the given function.
    Infeasible = 6,
    /// Verification inconclusive (pole-proximate samples).
    Inconclusive = 7,
    /// Other numeric failure.
    NumericError = 8,
}

fn status_of(err: &Error) -> HgftStatus {
    match err {
        Error::Json(_) => HgftStatus::ParseError,
        Error::NotNormalized { .. }
        | Error::LeadingCoefficientTooLarge { .. }
        | Error::NonFiniteCoefficient { .. }
        | Error::EmptySeries => HgftStatus::InvariantViolation,
        Error::InvalidParameter(_)
        | Error::MultiplierOverflow { .. }
        | Error::IndexOutOfRange { .. }
        | Error::WeightConstraint(_)
        | Error::GridTooLarge { .. }
        | Error::OutsideDomain { .. }
        | Error::NonFinitePoint => HgftStatus::InvalidParameter,
        Error::DecompositionInfeasible { .. } => HgftStatus::Infeasible,
        Error::Inconclusive { .. } | Error::PoleProximity { .. } => HgftStatus::Inconclusive,
        _ => HgftStatus::NumericError,
    }
}

/// Opaque handle to a harmonic mapping.
pub struct HgftFunction(hgft::HarmonicFunction);

fn params(k: u32, lambda: u32, gamma: f64) -> Result<FamilyParams, Error> {
    FamilyParams::new(k, lambda, gamma)
}

/// Some(&f) if the pointer is non-null.
unsafe fn deref<'a>(f: *const HgftFunction) -> Option<&'a hgft::HarmonicFunction> {
    f.as_ref().map(|w| &w.0)
}

unsafe fn write_handle(
    out: *mut *mut HgftFunction,
    value: Result<hgft::HarmonicFunction, Error>,
) -> HgftStatus {
    if out.is_null() {
        return HgftStatus::NullArgument;
    }
    match value {
        Ok(f) => {
            *out = Box::into_raw(Box::new(HgftFunction(f)));
            HgftStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            status_of(&e)
        }
    }
}

/// Library version as a static C string; do not free.
#[no_mangle]
pub extern "C" fn hgft_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses `{"h": [[re, im], ...], "g": [[re, im], ...]}` into a new handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hgft_function_from_json(
    json: *const c_char,
    out: *mut *mut HgftFunction,
) -> HgftStatus {
    if json.is_null() || out.is_null() {
        return HgftStatus::NullArgument;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(text) => text,
        Err(_) => return HgftStatus::InvalidUtf8,
    };
    write_handle(out, hgft::HarmonicFunction::from_json(text))
}

/// Builds the identity map `f(z) = z` at the given truncation.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hgft_function_identity(
    truncation: usize,
    out: *mut *mut HgftFunction,
) -> HgftStatus {
    if truncation == 0 {
        return HgftStatus::InvalidParameter;
    }
    write_handle(out, Ok(hgft::HarmonicFunction::identity(truncation)))
}

/// Serializes a handle; the result must be released with
/// [`hgft_string_free`]. Returns null on a null handle.
///
/// # Safety
/// `f` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hgft_function_to_json(f: *const HgftFunction) -> *mut c_char {
    match deref(f) {
        Some(f) => CString::new(f.to_json())
            .map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hgft_function_free(f: *mut HgftFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hgft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes the truncation order of the handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_function_truncation(
    f: *const HgftFunction,
    out: *mut usize,
) -> HgftStatus {
    match (deref(f), out.is_null()) {
        (Some(f), false) => {
            *out = f.truncation();
            HgftStatus::Ok
        }
        _ => HgftStatus::NullArgument,
    }
}

/// Evaluates `f(z)` at `z = z_re + i z_im` with `|z| <= 1`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_function_eval(
    f: *const HgftFunction,
    z_re: f64,
    z_im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> HgftStatus {
    let Some(f) = deref(f) else {
        return HgftStatus::NullArgument;
    };
    if out_re.is_null() || out_im.is_null() {
        return HgftStatus::NullArgument;
    }
    match f.eval(Complex64::new(z_re, z_im)) {
        Ok(v) => {
            *out_re = v.re;
            *out_im = v.im;
            HgftStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the Jacobian `|h'(z)|^2 - |g'(z)|^2` at `z`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_function_jacobian(
    f: *const HgftFunction,
    z_re: f64,
    z_im: f64,
    out: *mut f64,
) -> HgftStatus {
    match (deref(f), out.is_null()) {
        (Some(f), false) => {
            *out = f.jacobian(Complex64::new(z_re, z_im));
            HgftStatus::Ok
        }
        _ => HgftStatus::NullArgument,
    }
}

/// Evaluates the weighted coefficient criterion: writes the sum and whether
/// it stays within the membership bound.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_coefficient_sum(
    f: *const HgftFunction,
    k: u32,
    lambda: u32,
    gamma: f64,
    out_sum: *mut f64,
    out_verdict: *mut bool,
) -> HgftStatus {
    let Some(f) = deref(f) else {
        return HgftStatus::NullArgument;
    };
    if out_sum.is_null() || out_verdict.is_null() {
        return HgftStatus::NullArgument;
    }
    let report = match params(k, lambda, gamma).and_then(|p| coefficient_sum(f, &p)) {
        Ok(report) => report,
        Err(e) => return status_of(&e),
    };
    *out_sum = report.sum;
    *out_verdict = report.verdict;
    HgftStatus::Ok
}

/// Writes the lower and upper distortion envelopes at radius `r`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_distortion_bounds(
    k: u32,
    lambda: u32,
    gamma: f64,
    b1_abs: f64,
    r: f64,
    out_lower: *mut f64,
    out_upper: *mut f64,
) -> HgftStatus {
    if out_lower.is_null() || out_upper.is_null() {
        return HgftStatus::NullArgument;
    }
    if !(0.0..1.0).contains(&b1_abs) || !(0.0..=1.0).contains(&r) {
        return HgftStatus::InvalidParameter;
    }
    match params(k, lambda, gamma) {
        Ok(p) => {
            *out_lower = distortion_lower(&p, b1_abs, r);
            *out_upper = distortion_upper(&p, b1_abs, r);
            HgftStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Writes the covering-disk radius.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_covering_radius(
    k: u32,
    lambda: u32,
    gamma: f64,
    b1_abs: f64,
    out: *mut f64,
) -> HgftStatus {
    if out.is_null() {
        return HgftStatus::NullArgument;
    }
    if !(0.0..1.0).contains(&b1_abs) {
        return HgftStatus::InvalidParameter;
    }
    match params(k, lambda, gamma) {
        Ok(p) => {
            *out = covering_radius(&p, b1_abs);
            HgftStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Applies the integral operator in coefficient form, producing a new handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_bernardi(
    f: *const HgftFunction,
    c: f64,
    out: *mut *mut HgftFunction,
) -> HgftStatus {
    let Some(f) = deref(f) else {
        return HgftStatus::NullArgument;
    };
    write_handle(out, bernardi(f, c))
}

/// Applies the error convolution followed by the derivative operator
/// (`k = lambda = 0` is the plain error convolution), producing a new handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_transform(
    f: *const HgftFunction,
    k: u32,
    lambda: u32,
    out: *mut *mut HgftFunction,
) -> HgftStatus {
    let Some(f) = deref(f) else {
        return HgftStatus::NullArgument;
    };
    write_handle(out, apply_c_operator(&apply_error_convolution(f), k, lambda))
}

/// Draws a seeded random member of the coefficient body (`subclass` selects
/// real coefficients with the alternating sign pattern), producing a new
/// handle.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_random_member(
    k: u32,
    lambda: u32,
    gamma: f64,
    truncation: usize,
    slack: f64,
    seed: u64,
    subclass: bool,
    out: *mut *mut HgftFunction,
) -> HgftStatus {
    let drawn = params(k, lambda, gamma).and_then(|p| {
        if subclass {
            random_subclass_member(&p, truncation, slack, seed)
        } else {
            random_member(&p, truncation, slack, seed)
        }
    });
    write_handle(out, drawn)
}

/// Evaluates the angular-derivative functional of the transformed pair at a
/// single point.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hgft_starlike_functional(
    f: *const HgftFunction,
    k: u32,
    lambda: u32,
    gamma: f64,
    z_re: f64,
    z_im: f64,
    out: *mut f64,
) -> HgftStatus {
    let Some(f) = deref(f) else {
        return HgftStatus::NullArgument;
    };
    if out.is_null() {
        return HgftStatus::NullArgument;
    }
    let value = params(k, lambda, gamma)
        .and_then(|p| starlike_functional(f, &p, Complex64::new(z_re, z_im)));
    match value {
        Ok(v) => {
            *out = v;
            HgftStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Sweeps the functional over a polar grid: writes the sampled minimum and
/// whether it stays at or above `gamma` (within the verification cushion).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn hgft_verify_analytic_condition(
    f: *const HgftFunction,
    k: u32,
    lambda: u32,
    gamma: f64,
    r_min: f64,
    r_max: f64,
    radial_count: usize,
    angular_count: usize,
    out_min: *mut f64,
    out_pass: *mut bool,
) -> HgftStatus {
    let Some(f) = deref(f) else {
        return HgftStatus::NullArgument;
    };
    if out_min.is_null() || out_pass.is_null() {
        return HgftStatus::NullArgument;
    }
    let report = params(k, lambda, gamma).and_then(|p| {
        let grid = GridSpec::new(r_min, r_max, radial_count, angular_count)?;
        verify_analytic_condition(f, &p, &grid)
    });
    match report {
        Ok(report) => {
            *out_min = report.functional_min;
            *out_pass = report.pass;
            HgftStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
