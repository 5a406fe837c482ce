//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 suite failure or I/O error, 2 numerical-domain error,
//! 3 parse error, 4 calibration failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::calibrate::cmd_calibrate;
use super::config::ExperimentConfig;
use super::format::{parse_matrix_json, parse_reals, sidecar_path, to_json_pretty, write_text};
use super::hexagon::cmd_hexagon;
use super::rate_scan::cmd_rate_scan;
use super::step::{cmd_step, ShiftSource};
use super::verify::{cmd_verify, VerifyOptions};
use crate::error::{Error, Result};
use crate::linalg::SymTridiag;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_CALIBRATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tridiag-shift", version, about = "Shifted QR steps on symmetric tridiagonal matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply one signed step to a matrix.
    Step(StepArgs),
    /// Run seeded random trajectories and emit per-step traces.
    RateScan(RateScanArgs),
    /// Sample the n = 3 phase portrait.
    Hexagon(Common),
    /// Calibrate deflation-neighbourhood radii.
    Calibrate(Common),
    /// Run the property suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Comma-separated eigenvalues, e.g. 1,2,4.
    #[arg(long)]
    spectrum: Option<String>,
    /// rayleigh, wilkinson or mixed:<eps>.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    deflate_tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value file; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated fiber values.
    #[arg(long)]
    fiber_grid: Option<String>,
    #[arg(long)]
    hexagon_grid: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    window: Option<usize>,
    /// Keep stepping after deflation until |b2| drops below this.
    #[arg(long)]
    track_double: Option<f64>,
}

#[derive(Debug, Args)]
struct StepArgs {
    #[command(flatten)]
    common: Common,
    /// Diagonal, comma-separated.
    #[arg(long, requires = "sub", conflicts_with = "matrix")]
    diag: Option<String>,
    /// Subdiagonal, comma-separated.
    #[arg(long, requires = "diag", allow_hyphen_values = true)]
    sub: Option<String>,
    /// JSON file {"diag": [...], "sub": [...]}.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Fixed shift; otherwise the strategy picks one.
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<f64>,
}

#[derive(Debug, Args)]
struct RateScanArgs {
    #[command(flatten)]
    common: Common,
    /// Start on fibers near the strong a.p. witness base (spectrum -1,0,1).
    #[arg(long)]
    witness: bool,
    /// C in the exception count; fitted when absent.
    #[arg(long)]
    cubic_constant: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Replace every suite tolerance (1e-16 demonstrates failures).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Use a step with a sign defect; the equivariance suite should fail.
    #[arg(long)]
    inject_bug: bool,
}

/// Maps an error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidInput(_) => EXIT_PARSE,
        Error::CalibrationFailed(_) => EXIT_CALIBRATION,
        Error::Io(_) => EXIT_SUITE,
        Error::StepFailure { source, .. } => exit_code(source),
        _ => EXIT_NUMERIC,
    }
}

fn load_config(c: &Common) -> Result<ExperimentConfig> {
    let mut cfg = match &c.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            ExperimentConfig::from_key_values(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(s) = &c.spectrum {
        cfg.spectrum = parse_reals(s)?;
    }
    if let Some(s) = &c.strategy {
        cfg.strategy = s.parse()?;
    }
    if let Some(v) = c.seed {
        cfg.seed = v;
    }
    if let Some(v) = c.trials {
        cfg.trials = v;
    }
    if let Some(v) = c.max_steps {
        cfg.max_steps = v;
    }
    if let Some(v) = c.deflate_tol {
        cfg.deflate_tol = Some(v);
    }
    if let Some(v) = &c.out {
        cfg.output = Some(v.clone());
    }
    if let Some(s) = &c.fiber_grid {
        cfg.fiber_grid = parse_reals(s)?;
    }
    if let Some(v) = c.hexagon_grid {
        cfg.hexagon_grid = v;
    }
    if let Some(v) = c.samples {
        cfg.samples = v;
    }
    if let Some(v) = c.window {
        cfg.window = v;
    }
    if let Some(v) = c.track_double {
        cfg.track_double = Some(v);
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Writes `text` to `out`, or stdout without one.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_step(a: &StepArgs) -> Result<i32> {
    let cfg = load_config(&a.common)?;
    let t = match (&a.diag, &a.sub, &a.matrix) {
        (Some(d), Some(s), None) => SymTridiag::new(parse_reals(d)?, parse_reals(s)?)
            .map_err(|e| Error::Parse(e.to_string()))?,
        (None, None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            parse_matrix_json(&text).map_err(|e| Error::Parse(e.to_string()))?
        }
        _ => return Err(Error::Parse("give --diag and --sub, or --matrix".into())),
    };
    let source = match a.shift {
        Some(s) => ShiftSource::Fixed(s),
        None => ShiftSource::Strategy(cfg.strategy),
    };
    let report = cmd_step(&t, source)?;
    print!("{}", report.to_text());
    if let Some(out) = &cfg.output {
        write_text(out, &to_json_pretty(&report)?)?;
    }
    Ok(EXIT_OK)
}

fn run_rate_scan(a: &RateScanArgs) -> Result<i32> {
    let mut cfg = load_config(&a.common)?;
    cfg.witness |= a.witness;
    if let Some(c) = a.cubic_constant {
        cfg.cubic_constant = Some(c);
    }
    cfg.validate()?;
    let scan = cmd_rate_scan(&cfg)?;
    emit(cfg.output.as_deref(), scan.csv.as_str())?;
    if let Some(out) = &cfg.output {
        write_text(&sidecar_path(out), &to_json_pretty(&scan.meta)?)?;
    }
    let m = &scan.meta;
    eprintln!(
        "{} of {} trajectories deflated, {} failed, C = {:.4e}",
        m.deflated, m.trials, m.failures, m.cubic_constant
    );
    if let Some(ep) = &m.best_episode {
        eprintln!(
            "longest quadratic episode: trajectory {}, {} steps from k = {}, ratio2 ≈ {:.4e}, ratio3 grows {:.3e}x",
            ep.trajectory, ep.length, ep.start, ep.ratio2, ep.ratio3_growth
        );
    }
    Ok(EXIT_OK)
}

fn run_hexagon(c: &Common) -> Result<i32> {
    let cfg = load_config(c)?;
    let h = cmd_hexagon(&cfg)?;
    emit(cfg.output.as_deref(), h.csv.as_str())?;
    if let Some(out) = &cfg.output {
        write_text(&sidecar_path(out), &to_json_pretty(&h.summary)?)?;
    }
    let s = &h.summary;
    eprintln!(
        "vertex motion {:.3e}, deflation edges alternate: {}, bottom edge fixed: {}",
        s.max_vertex_motion, s.alternating, s.bottom_edge_fixed
    );
    Ok(EXIT_OK)
}

fn run_calibrate(c: &Common) -> Result<i32> {
    let cfg = load_config(c)?;
    let report = cmd_calibrate(&cfg)?;
    let text = to_json_pretty(&report)? + "\n";
    emit(cfg.output.as_deref(), &text)?;
    Ok(EXIT_OK)
}

fn run_verify(a: &VerifyArgs) -> Result<i32> {
    let cfg = load_config(&a.common)?;
    let opts = VerifyOptions {
        seed: cfg.seed,
        samples: cfg.samples,
        tolerance: a.tolerance,
        inject_bug: a.inject_bug,
    };
    let report = cmd_verify(&opts);
    print!("{}", report.to_text());
    if let Some(out) = &cfg.output {
        write_text(out, &to_json_pretty(&report)?)?;
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_SUITE })
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Step(a) => run_step(a),
        Command::RateScan(a) => run_rate_scan(a),
        Command::Hexagon(c) => run_hexagon(c),
        Command::Calibrate(c) => run_calibrate(c),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
