//! Static SVG rendering of image curves.
//!
//! Concentric circles and radial rays in the unit disk are pushed through a
//! harmonic mapping and drawn as polylines. Output is deterministic: fixed
//! sampling, fixed float formatting, no timestamps.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::HarmonicFunction;

/// Curve selection and sampling density.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotOptions {
    /// Radii of the source circles, each in (0, 1).
    pub circles: Vec<f64>,
    /// Number of radial rays (angles equally spaced).
    pub rays: usize,
    /// Sample points per curve.
    pub samples: usize,
    /// Covering-disk radius to draw around the origin, if any.
    pub covering_radius: Option<f64>,
}

impl Default for PlotOptions {
    fn default() -> Self {
        Self {
            circles: vec![0.2, 0.4, 0.6, 0.8, 0.95],
            rays: 8,
            samples: 512,
            covering_radius: None,
        }
    }
}

const VIEW: f64 = 640.0;
const MARGIN: f64 = 20.0;
/// Rays start slightly off the origin: the curves stay readable and the
/// sampling avoids the common zero of every mapping.
const RAY_R_MIN: f64 = 0.02;
const RAY_R_MAX: f64 = 0.98;

fn fmt(v: f64) -> String {
    // Fixed four decimals keeps byte-identical output across runs.
    format!("{v:.4}")
}

/// Renders `f`'s image curves as an SVG document.
pub fn render_svg(f: &HarmonicFunction, options: &PlotOptions) -> Result<String> {
    if options.circles.is_empty() && options.rays == 0 {
        return Err(Error::InvalidParameter(
            "nothing to plot: no circles and no rays".into(),
        ));
    }
    for &r in &options.circles {
        if !r.is_finite() || !(0.0..1.0).contains(&r) || r == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "circle radius {r} outside (0, 1)"
            )));
        }
    }
    if options.samples < 2 {
        return Err(Error::InvalidParameter("need at least 2 samples".into()));
    }
    if let Some(radius) = options.covering_radius {
        if !radius.is_finite() || radius < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "covering radius {radius} must be >= 0"
            )));
        }
    }

    let mut circles = Vec::with_capacity(options.circles.len());
    for &r in &options.circles {
        let curve: Vec<Complex64> = (0..=options.samples)
            .map(|t| {
                let theta = std::f64::consts::TAU * t as f64 / options.samples as f64;
                f.eval_raw(Complex64::from_polar(r, theta))
            })
            .collect();
        circles.push(curve);
    }
    let mut rays = Vec::with_capacity(options.rays);
    for j in 0..options.rays {
        let theta = std::f64::consts::TAU * j as f64 / options.rays as f64;
        let curve: Vec<Complex64> = (0..options.samples)
            .map(|t| {
                let r = RAY_R_MIN
                    + (RAY_R_MAX - RAY_R_MIN) * t as f64 / (options.samples - 1) as f64;
                f.eval_raw(Complex64::from_polar(r, theta))
            })
            .collect();
        rays.push(curve);
    }

    // Bounding box over everything drawn.
    let mut lo = Complex64::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |z: Complex64| {
        lo.re = lo.re.min(z.re);
        lo.im = lo.im.min(z.im);
        hi.re = hi.re.max(z.re);
        hi.im = hi.im.max(z.im);
    };
    for curve in circles.iter().chain(rays.iter()) {
        for &z in curve {
            grow(z);
        }
    }
    if let Some(radius) = options.covering_radius {
        grow(Complex64::new(-radius, -radius));
        grow(Complex64::new(radius, radius));
    }
    let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-9);
    let scale = (VIEW - 2.0 * MARGIN) / span;
    let center = (lo + hi) * 0.5;
    let to_px = |z: Complex64| -> (f64, f64) {
        (
            VIEW / 2.0 + (z.re - center.re) * scale,
            // SVG y grows downward.
            VIEW / 2.0 - (z.im - center.im) * scale,
        )
    };
    let polyline = |curve: &[Complex64], stroke: &str| -> String {
        let mut points = String::new();
        for &z in curve {
            let (x, y) = to_px(z);
            let _ = write!(points, "{},{} ", fmt(x), fmt(y));
        }
        format!(
            "  <polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1\" points=\"{}\"/>\n",
            points.trim_end()
        )
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{v}\" height=\"{v}\" viewBox=\"0 0 {v} {v}\">",
        v = VIEW as u32
    );
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for curve in &circles {
        svg.push_str(&polyline(curve, "#1f77b4"));
    }
    for curve in &rays {
        svg.push_str(&polyline(curve, "#d62728"));
    }
    if let Some(radius) = options.covering_radius {
        let (cx, cy) = to_px(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            svg,
            "  <circle fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1\" stroke-dasharray=\"6 4\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            fmt(cx),
            fmt(cy),
            fmt(radius * scale)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
