//! Harmonic mappings built on the normalized error-function series.
//!
//! The crate models planar harmonic mappings `f = h + conj(g)` as truncated
//! power series, composes them with the error-function convolution and a
//! binomial derivative operator, and works with the one-parameter family cut
//! out by a weighted coefficient criterion: membership checks, distortion and
//! covering bounds, extreme-point decomposition, the Bernardi–Libera–
//! Livingston integral operator, and grid-based numerical verification of
//! each of those properties. A CLI (`hgft`) exposes the same operations over
//! JSON coefficient files.
//!
//! Modules:
//! - [`series`]: truncated series arithmetic, evaluation, Jacobian,
//!   convolution.
//! - [`operators`]: error-function coefficients, the derivative operator,
//!   their composition, and the integral operator with a quadrature
//!   cross-check.
//! - [`membership`]: the weighted criterion sum, sign-pattern subfamily,
//!   distortion/covering bounds, extreme points, convex structure.
//! - [`verification`]: polar-grid verifiers and seeded random members.
//! - [`plot`]: deterministic SVG image curves.
//! - [`cli`], [`config`]: the command-line front end.

pub mod cli;
pub mod config;
mod error;
pub mod membership;
pub mod operators;
pub mod plot;
pub mod series;
pub mod verification;

pub use config::{OutputFormat, RunConfig, CONFIG_ENV_VAR};
pub use error::{Error, Result};
pub use membership::{
    coefficient_sum, convex_combine, covering_radius, decompose, distortion_lower,
    distortion_upper, extreme_g, extreme_h, is_subclass_member, reconstruct,
    DecompositionWeights, MembershipReport, SignConvention,
};
pub use operators::{
    apply_c_operator, apply_error_convolution, bernardi, bernardi_quadrature_oracle,
    c_multiplier, error_coefficient, transformed_series, FamilyParams,
};
pub use series::{convolve, AnalyticSeries, HarmonicFunction, Polynomial};
pub use verification::{
    random_member, random_subclass_member, starlike_functional, verify_analytic_condition,
    verify_injectivity, verify_laplace, verify_sense_preserving, GridSpec, VerificationReport,
};
