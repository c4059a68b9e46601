//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series must contain at least one coefficient")]
    EmptySeries,

    #[error("coefficient c_{index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("leading coefficient of h must be exactly 1, got {got}")]
    NotNormalized { got: Complex64 },

    #[error("leading coefficient of g must satisfy |b1| < 1, got |b1| = {got}")]
    LeadingCoefficientTooLarge { got: f64 },

    #[error("evaluation point is not finite")]
    NonFinitePoint,

    #[error("evaluation point lies outside the closed unit disk: |z| = {modulus}")]
    OutsideDomain { modulus: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operator multiplier overflows at n = {n} (k = {k}, lambda = {lambda})")]
    MultiplierOverflow { n: u32, k: u32, lambda: u32 },

    #[error("transformed series vanishes near z = {z} (|F(z)| = {modulus:.3e})")]
    PoleProximity { z: Complex64, modulus: f64 },

    #[error("verification inconclusive: {excluded} of {samples} grid points are pole-proximate")]
    Inconclusive { excluded: usize, samples: usize },

    #[error("denominator of the radial quotient vanishes at r = {r}")]
    VanishingDenominator { r: f64 },

    #[error("decomposition infeasible: implied identity weight X1 = {x1}")]
    DecompositionInfeasible { x1: f64 },

    #[error("weight constraint violated: {0}")]
    WeightConstraint(String),

    #[error("grid has {points} points, exceeding the pairwise-check limit of {limit}")]
    GridTooLarge { points: usize, limit: usize },

    #[error("finite-difference stencil at {z} exits the unit disk")]
    StencilOutsideDisk { z: Complex64 },

    #[error("index n = {n} out of range 1..={max}")]
    IndexOutOfRange { n: usize, max: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
