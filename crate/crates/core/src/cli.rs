//! Command-line front end.
//!
//! Exit codes are a stable contract:
//! 0 pass, 1 failed verdict, 2 usage or parse error, 3 invariant violation,
//! 4 infeasible decomposition, 5 inconclusive verification.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::membership::{
    coefficient_sum_with_tolerance, covering_radius, decompose, distortion_lower, distortion_upper,
};
use crate::operators::{bernardi, transformed_series, FamilyParams};
use crate::plot::{render_svg, PlotOptions};
use crate::series::HarmonicFunction;
use crate::verification::{
    random_member, random_subclass_member, starlike_functional_transformed,
    verify_analytic_condition, verify_injectivity, verify_laplace, verify_sense_preserving,
    GridSpec, VerificationReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;

#[derive(Parser)]
#[command(
    name = "hgft",
    version,
    about = "Harmonic error-function mappings: membership checks, distortion bounds, \
             integral operators, numerical verification, and image-curve plots"
)]
struct Cli {
    /// Truncation order for generated functions (default 16)
    #[arg(long, global = true)]
    truncation: Option<usize>,
    /// Verdict tolerance for membership comparisons (default 1e-9)
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for random generation (default 42)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report format where both are supported
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Derivative-operator power k >= 1
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Derivative-operator order lambda >= 1
    #[arg(long, default_value_t = 1)]
    lambda: u32,
    /// Order gamma in [0, 1)
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma: f64,
}

impl ParamArgs {
    fn build(&self) -> Result<FamilyParams> {
        FamilyParams::new(self.k, self.lambda, self.gamma)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the weighted coefficient criterion on a function file
    Check {
        /// JSON file with {"h": [[re, im], ...], "g": [[re, im], ...]}
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Tabulate the distortion envelopes over a radius grid (CSV)
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
        /// Co-analytic leading magnitude |b1| in [0, 1)
        #[arg(long, default_value_t = 0.0)]
        b1: f64,
        #[arg(long, default_value_t = 0.0)]
        r_start: f64,
        #[arg(long, default_value_t = 0.95)]
        r_stop: f64,
        /// Number of grid intervals (rows = steps + 1)
        #[arg(long, default_value_t = 19)]
        steps: usize,
    },
    /// Express a member as convex weights over the extreme points
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Apply the integral operator in coefficient form
    Bernardi {
        input: PathBuf,
        /// Operator order c >= 0
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
    },
    /// Run the verification suite on a function file
    Verify {
        input: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        /// Radial sample count
        #[arg(long)]
        radial: Option<usize>,
        /// Angular sample count
        #[arg(long)]
        angular: Option<usize>,
    },
    /// Generate a seeded random member of the coefficient body
    Gen {
        #[command(flatten)]
        params: ParamArgs,
        /// Target criterion excess in [0, 1]: the sum lands on 1 + slack
        #[arg(long, default_value_t = 0.5)]
        slack: f64,
        /// Real coefficients with the alternating sign pattern
        #[arg(long)]
        subclass: bool,
    },
    /// Render image curves of circles and rays as SVG
    Plot {
        input: PathBuf,
        /// Comma-separated circle radii in (0, 1)
        #[arg(long, value_delimiter = ',')]
        circles: Option<Vec<f64>>,
        #[arg(long, default_value_t = 8)]
        rays: usize,
        /// Draw the covering disk for the given parameters
        #[arg(long)]
        covering: bool,
        #[command(flatten)]
        params: ParamArgs,
    },
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotNormalized { .. }
        | Error::LeadingCoefficientTooLarge { .. }
        | Error::NonFiniteCoefficient { .. }
        | Error::EmptySeries => EXIT_INVARIANT,
        Error::DecompositionInfeasible { .. } => EXIT_INFEASIBLE,
        Error::Inconclusive { .. } | Error::PoleProximity { .. } => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn read_function(path: &Path) -> Result<HarmonicFunction> {
    HarmonicFunction::from_json(&std::fs::read_to_string(path)?)
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail") + "\n"
}

/// Parses `std::env::args`, runs the command, and returns the process exit
/// code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let config = match load_config(&cli) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("error: {err}");
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli.command, &config) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = RunConfig::from_env()?;
    if let Some(n) = cli.truncation {
        config.truncation = n;
    }
    if let Some(t) = cli.tolerance {
        config.tolerance = t;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(f) = cli.format {
        config.format = f;
    }
    if let Some(path) = &cli.out {
        config.out = Some(path.clone());
    }
    config.validate()?;
    Ok(config)
}

fn dispatch(command: &Command, config: &RunConfig) -> Result<i32> {
    match command {
        Command::Check { input, params } => cmd_check(input, params, config),
        Command::Bounds {
            params,
            b1,
            r_start,
            r_stop,
            steps,
        } => cmd_bounds(params, *b1, *r_start, *r_stop, *steps, config),
        Command::Decompose { input, params } => cmd_decompose(input, params, config),
        Command::Bernardi { input, c } => cmd_bernardi(input, *c, config),
        Command::Verify {
            input,
            params,
            r_min,
            r_max,
            radial,
            angular,
        } => {
            let mut grid = config.grid;
            if let Some(v) = r_min {
                grid.r_min = *v;
            }
            if let Some(v) = r_max {
                grid.r_max = *v;
            }
            if let Some(v) = radial {
                grid.radial_count = *v;
            }
            if let Some(v) = angular {
                grid.angular_count = *v;
            }
            cmd_verify(input, params, &grid, config)
        }
        Command::Gen {
            params,
            slack,
            subclass,
        } => cmd_gen(params, *slack, *subclass, config),
        Command::Plot {
            input,
            circles,
            rays,
            covering,
            params,
        } => cmd_plot(input, circles.clone(), *rays, *covering, params, config),
    }
}

fn cmd_check(input: &Path, params: &ParamArgs, config: &RunConfig) -> Result<i32> {
    let f = read_function(input)?;
    let report = coefficient_sum_with_tolerance(&f, &params.build()?, config.tolerance)?;
    emit(&config.out, &json_line(&report))?;
    Ok(if report.verdict { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_bounds(
    params: &ParamArgs,
    b1: f64,
    r_start: f64,
    r_stop: f64,
    steps: usize,
    config: &RunConfig,
) -> Result<i32> {
    let params = params.build()?;
    if !(0.0..1.0).contains(&b1) {
        return Err(Error::InvalidParameter(format!(
            "|b1| = {b1} outside [0, 1)"
        )));
    }
    if !(0.0 <= r_start && r_start <= r_stop && r_stop <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "radius grid [{r_start}, {r_stop}] outside [0, 1]"
        )));
    }
    if steps < 1 {
        return Err(Error::InvalidParameter("steps must be >= 1".into()));
    }
    let mut table = String::new();
    let _ = writeln!(table, "# covering_radius = {}", covering_radius(&params, b1));
    table.push_str("r,lower,upper\n");
    for i in 0..=steps {
        let r = r_start + (r_stop - r_start) * i as f64 / steps as f64;
        let _ = writeln!(
            table,
            "{r},{},{}",
            distortion_lower(&params, b1, r),
            distortion_upper(&params, b1, r)
        );
    }
    emit(&config.out, &table)?;
    Ok(EXIT_PASS)
}

fn cmd_decompose(input: &Path, params: &ParamArgs, config: &RunConfig) -> Result<i32> {
    let f = read_function(input)?;
    let weights = decompose(&f, &params.build()?)?;
    emit(&config.out, &json_line(&weights))?;
    Ok(EXIT_PASS)
}

fn cmd_bernardi(input: &Path, c: f64, config: &RunConfig) -> Result<i32> {
    let f = read_function(input)?;
    let out = bernardi(&f, c)?;
    emit(&config.out, &out.to_json())?;
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct VerifySummary {
    analytic_condition: VerificationReport,
    sense_preserving: VerificationReport,
    injectivity: VerificationReport,
    laplace: VerificationReport,
    all_pass: bool,
}

/// Interior points for the Laplace check, well away from the boundary so the
/// stencil stays inside and the finite-difference truncation term stays small.
fn laplace_points() -> Vec<Complex64> {
    let mut points = vec![Complex64::new(0.0, 0.0)];
    for &r in &[0.1, 0.2, 0.3, 0.45] {
        for j in 0..12 {
            let theta = std::f64::consts::TAU * j as f64 / 12.0;
            points.push(Complex64::from_polar(r, theta));
        }
    }
    points
}

fn cmd_verify(
    input: &Path,
    params: &ParamArgs,
    grid: &GridSpec,
    config: &RunConfig,
) -> Result<i32> {
    let f = read_function(input)?;
    let params = params.build()?;
    let grid = grid.validate()?;

    // The family is defined through the transformed pair, so
    // sense-preservation and injectivity are certified for that transform;
    // harmonicity is checked on the input itself.
    let transformed = transformed_series(&f, &params)?;
    let analytic_condition = verify_analytic_condition(&f, &params, &grid)?;
    let sense_preserving = verify_sense_preserving(&transformed, &grid)?;
    let injectivity = verify_injectivity(&transformed, &grid)?;
    let laplace = verify_laplace(&f, &laplace_points(), 1e-3)?;

    let all_pass =
        analytic_condition.pass && sense_preserving.pass && injectivity.pass && laplace.pass;

    match config.format {
        OutputFormat::Json => {
            let summary = VerifySummary {
                analytic_condition,
                sense_preserving,
                injectivity,
                laplace,
                all_pass,
            };
            emit(&config.out, &json_line(&summary))?;
        }
        OutputFormat::Csv => {
            // Sample dump of the membership functional over the grid.
            let mut table = String::from("r,theta,value\n");
            let angles = grid.angles();
            for r in grid.radii() {
                for &theta in &angles {
                    let z = Complex64::from_polar(r, theta);
                    let value = starlike_functional_transformed(&transformed, z)
                        .map(|v| v.to_string())
                        .unwrap_or_else(|_| "nan".into());
                    let _ = writeln!(table, "{r},{theta},{value}");
                }
            }
            emit(&config.out, &table)?;
        }
    }
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_gen(params: &ParamArgs, slack: f64, subclass: bool, config: &RunConfig) -> Result<i32> {
    let params = params.build()?;
    let f = if subclass {
        random_subclass_member(&params, config.truncation, slack, config.seed)?
    } else {
        random_member(&params, config.truncation, slack, config.seed)?
    };
    emit(&config.out, &f.to_json())?;
    Ok(EXIT_PASS)
}

fn cmd_plot(
    input: &Path,
    circles: Option<Vec<f64>>,
    rays: usize,
    covering: bool,
    params: &ParamArgs,
    config: &RunConfig,
) -> Result<i32> {
    let f = read_function(input)?;
    let mut options = PlotOptions {
        rays,
        ..PlotOptions::default()
    };
    if let Some(circles) = circles {
        options.circles = circles;
    }
    if covering {
        options.covering_radius = Some(covering_radius(&params.build()?, f.b1_abs()));
    }
    let svg = render_svg(&f, &options)?;
    emit(&config.out, &svg)?;
    Ok(EXIT_PASS)
}
