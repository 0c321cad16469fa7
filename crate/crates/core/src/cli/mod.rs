//! The `sl2r` command line: table reproduction, single densities, sweeps,
//! side-curve dumps and the verification suite.
//!
//! Exit codes: 0 success, 1 numeric failure, 2 usage or validation error.

pub mod checks;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::geodesics::ToleranceConfig;
use crate::packing::{argmax_density, compute_pairs, PackingResult, SweepRow};
use crate::prism::{circle_through, curvature, curve_radius, validate};
use output::{write_rows, Format, OutputRow, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const TABLE1_PAIRS: [(i64, i64); 4] = [(3, 7), (3, 8), (3, 10), (3, 1000)];

pub const TABLE2_PAIRS: [(i64, i64); 26] = [
    (3, 7),
    (3, 8),
    (3, 10),
    (3, 1000),
    (4, 5),
    (4, 6),
    (4, 10),
    (4, 1000),
    (5, 4),
    (5, 5),
    (5, 10),
    (5, 1000),
    (6, 4),
    (6, 5),
    (6, 10),
    (6, 1000),
    (7, 3),
    (7, 4),
    (7, 5),
    (7, 10),
    (7, 1000),
    (8, 3),
    (8, 4),
    (8, 5),
    (8, 10),
    (8, 1000),
];

pub const TABLE3_PAIRS: [(i64, i64); 13] = [
    (10, 3),
    (20, 3),
    (20, 4),
    (20, 5),
    (20, 10),
    (20, 1000),
    (28, 3),
    (29, 3),
    (30, 3),
    (35, 3),
    (40, 3),
    (52, 3),
    (72, 3),
];

pub const DEFAULT_PRECISION: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "sl2r",
    version,
    about = "Geodesic ball packings in SL(2,R)~ prism tilings"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default, Clone)]
pub struct GlobalArgs {
    /// One JSON object per line instead of CSV
    #[arg(long, global = true)]
    pub json: bool,
    /// Decimal places of real-valued columns
    #[arg(long, global = true, value_name = "K")]
    pub precision: Option<usize>,
    /// Relative and absolute tolerance of the geodesic integrator
    #[arg(long, global = true, value_name = "X")]
    pub ode_tol: Option<f64>,
    /// Relative tolerance of the volume quadratures
    #[arg(long, global = true, value_name = "X")]
    pub quad_tol: Option<f64>,
    /// key=value file with tolerances and output settings
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Side-curve curvatures and radii for q-limit rows
    Table1,
    /// Optimal packings for p = 3..8
    Table2,
    /// Optimal packings around the density maximum
    Table3,
    /// Optimal packing for one parameter pair
    Density {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        /// Include solver diagnostics
        #[arg(long)]
        verbose: bool,
    },
    /// Optimal packings for p in a range at fixed q, with the maximum
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, allow_negative_numbers = true)]
        p_from: i64,
        #[arg(long, allow_negative_numbers = true)]
        p_to: i64,
    },
    /// Samples of the side curve of a prism
    Curve {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
    /// Run the verification suite
    Check {
        /// Run only checks whose name contains this text
        #[arg(long)]
        filter: Option<String>,
    },
}

/// Resolved run settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: ToleranceConfig,
    pub precision: usize,
    pub format: Format,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol: ToleranceConfig::default(),
            precision: DEFAULT_PRECISION,
            format: Format::Csv,
        }
    }
}

/// Applies a `key = value` configuration text (`#` starts a comment).
pub fn apply_config(text: &str, settings: &mut Settings) -> Result<(), String> {
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let real = || {
            value
                .parse::<f64>()
                .map_err(|_| format!("line {}: {key} needs a number, got {value:?}", lineno + 1))
        };
        let count = || {
            value
                .parse::<usize>()
                .map_err(|_| format!("line {}: {key} needs a count, got {value:?}", lineno + 1))
        };
        let tol = &mut settings.tol;
        match key {
            "ode_rel_tol" => tol.ode_rel_tol = real()?,
            "ode_abs_tol" => tol.ode_abs_tol = real()?,
            "newton_tol" => tol.newton_tol = real()?,
            "max_newton_iters" => tol.max_newton_iters = count()?,
            "fd_step" => tol.fd_step = real()?,
            "quad_rel_tol" => tol.quad_rel_tol = real()?,
            "precision" => settings.precision = count()?,
            "json" => {
                settings.format = match value {
                    "true" => Format::Json,
                    "false" => Format::Csv,
                    _ => return Err(format!("line {}: json must be true or false", lineno + 1)),
                }
            }
            _ => return Err(format!("line {}: unknown key {key:?}", lineno + 1)),
        }
    }
    Ok(())
}

/// Config file first, then flags on top.
pub fn resolve_settings(g: &GlobalArgs) -> Result<Settings, String> {
    let mut s = Settings::default();
    if let Some(path) = &g.config {
        let text =
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        apply_config(&text, &mut s)?;
    }
    if g.json {
        s.format = Format::Json;
    }
    if let Some(k) = g.precision {
        s.precision = k;
    }
    if let Some(x) = g.ode_tol {
        s.tol.ode_rel_tol = x;
        s.tol.ode_abs_tol = x;
    }
    if let Some(x) = g.quad_tol {
        s.tol.quad_rel_tol = x;
    }
    s.tol.validate().map_err(|e| e.to_string())?;
    Ok(s)
}

pub fn packing_row(r: &PackingResult, verbose: bool) -> OutputRow {
    let row = OutputRow::new()
        .with("p", r.p)
        .with("q", r.q)
        .with("rho_opt", r.rho_opt)
        .with("vol_ball", r.vol_ball)
        .with("vol_prism", r.vol_prism)
        .with("density", r.density);
    if !verbose {
        return row;
    }
    let d = &r.diagnostics;
    row.with("h_opt", r.h_opt)
        .with("t_min", d.t_min)
        .with("psi_min", d.psi_min)
        .with("base_radius", d.base_radius)
        .with("ball_est_error", d.ball_est_error)
}

fn failed_row(p: i64, q: i64) -> OutputRow {
    OutputRow::new()
        .with("p", p)
        .with("q", q)
        .with("rho_opt", Value::Missing)
        .with("vol_ball", Value::Missing)
        .with("vol_prism", Value::Missing)
        .with("density", Value::Missing)
}

fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::InvalidParams { .. })
}

/// Runs a command and returns its exit code. Diagnostics go to `err`.
pub fn execute<W: Write, E: Write>(cli: &Cli, out: &mut W, err: &mut E) -> std::io::Result<i32> {
    let settings = match resolve_settings(&cli.global) {
        Ok(s) => s,
        Err(msg) => {
            writeln!(err, "error: {msg}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let Settings {
        tol,
        precision,
        format,
    } = settings;
    match &cli.command {
        Command::Table1 => {
            let rows: Vec<OutputRow> = TABLE1_PAIRS
                .iter()
                .map(|&(p, q)| {
                    let pp = validate(p, q).expect("table pairs are valid");
                    OutputRow::new()
                        .with("p", p)
                        .with("q", q)
                        .with("curvature", curvature(&pp))
                        .with("radius", curve_radius(&pp))
                })
                .collect();
            write_rows(out, &rows, format, precision)?;
            Ok(EXIT_OK)
        }
        Command::Table2 | Command::Table3 => {
            let pairs: &[(i64, i64)] = if matches!(cli.command, Command::Table2) {
                &TABLE2_PAIRS
            } else {
                &TABLE3_PAIRS
            };
            let rows = compute_pairs(pairs, &tol);
            write_packing_rows(out, err, &rows, format, precision)
        }
        Command::Density { p, q, verbose } => match validate(*p, *q) {
            Err(e) => {
                writeln!(err, "error: {e}")?;
                Ok(EXIT_USAGE)
            }
            Ok(pp) => match crate::packing::packing_density(&pp, &tol) {
                Ok(r) => {
                    write_rows(out, &[packing_row(&r, *verbose)], format, precision)?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    writeln!(err, "error: ({p},{q}): {e}")?;
                    Ok(EXIT_NUMERIC)
                }
            },
        },
        Command::Sweep { q, p_from, p_to } => {
            if p_from > p_to {
                writeln!(err, "error: empty range --p-from {p_from} --p-to {p_to}")?;
                return Ok(EXIT_USAGE);
            }
            let mut pairs = Vec::new();
            for p in *p_from..=*p_to {
                match validate(p, *q) {
                    Ok(_) => pairs.push((p, *q)),
                    Err(e) => writeln!(err, "skipped: {e}")?,
                }
            }
            if pairs.is_empty() {
                writeln!(err, "error: no valid (p,q) pair in the range")?;
                return Ok(EXIT_USAGE);
            }
            let rows = compute_pairs(&pairs, &tol);
            let code = write_packing_rows(out, err, &rows, format, precision)?;
            let ok: Vec<PackingResult> =
                rows.iter().filter_map(|r| r.outcome.clone().ok()).collect();
            match argmax_density(&ok) {
                Ok(best) => {
                    let ties: Vec<String> = best
                        .ties
                        .iter()
                        .map(|t| format!("({},{})", t.p, t.q))
                        .collect();
                    let density = output::format_real(best.best.density, precision);
                    match format {
                        Format::Csv => {
                            write!(
                                out,
                                "# argmax ({},{}) density {density}",
                                best.best.p, best.best.q
                            )?;
                            if !ties.is_empty() {
                                write!(out, " ties {}", ties.join(" "))?;
                            }
                            writeln!(out)?;
                        }
                        Format::Json => {
                            let summary = OutputRow::new()
                                .with("argmax_p", best.best.p)
                                .with("argmax_q", best.best.q)
                                .with("density", best.best.density)
                                .with("ties", Value::Text(ties.join(" ")));
                            writeln!(out, "{}", output::json_object(&summary, precision))?;
                        }
                    }
                    Ok(code)
                }
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    Ok(EXIT_NUMERIC)
                }
            }
        }
        Command::Curve { p, q, samples } => {
            let pp = match validate(*p, *q) {
                Ok(pp) => pp,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_USAGE);
                }
            };
            if *samples < 2 {
                writeln!(err, "error: --samples must be at least 2")?;
                return Ok(EXIT_USAGE);
            }
            let curve = pp.side_curve();
            let ts: Vec<f64> = (0..*samples)
                .map(|i| i as f64 / (*samples - 1) as f64)
                .collect();
            let rows: Vec<OutputRow> = ts
                .iter()
                .map(|&t| {
                    let (y, z) = curve.yz(t);
                    OutputRow::new()
                        .with("t", t)
                        .with("y", y)
                        .with("z", z)
                        .with("r", y.hypot(z).atanh())
                        .with("theta", z.atan2(y))
                })
                .collect();
            write_rows(out, &rows, format, precision)?;
            let fit = circle_through(curve.yz(0.0), curve.yz(0.5), curve.yz(1.0)).map(
                |((cy, cz), radius)| {
                    ts.iter()
                        .map(|&t| {
                            let (y, z) = curve.yz(t);
                            ((y - cy).hypot(z - cz) - radius).abs()
                        })
                        .fold(0.0, f64::max)
                },
            );
            let fit = fit.unwrap_or(f64::INFINITY);
            if format == Format::Csv {
                writeln!(out, "# circle fit residual {fit:.3e}")?;
            } else {
                writeln!(err, "circle fit residual {fit:.3e}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { filter } => {
            let ctx = checks::CheckContext {
                tol,
                ..checks::CheckContext::default()
            };
            let Some(reports) = checks::run_checks(filter.as_deref(), &ctx) else {
                writeln!(
                    err,
                    "error: no check matches {:?}; available: {}",
                    filter.as_deref().unwrap_or(""),
                    checks::CHECK_NAMES.join(", ")
                )?;
                return Ok(EXIT_USAGE);
            };
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {}: {}", r.name, r.detail)?;
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} passed, {failed} failed", reports.len() - failed)?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_NUMERIC })
        }
    }
}

fn write_packing_rows<W: Write, E: Write>(
    out: &mut W,
    err: &mut E,
    rows: &[SweepRow],
    format: Format,
    precision: usize,
) -> std::io::Result<i32> {
    let mut code = EXIT_OK;
    let mut table = Vec::with_capacity(rows.len());
    for row in rows {
        match &row.outcome {
            Ok(r) => table.push(packing_row(r, false)),
            Err(e) => {
                writeln!(err, "failed: ({},{}): {e}", row.p, row.q)?;
                code = if is_usage_error(e) {
                    EXIT_USAGE
                } else {
                    EXIT_NUMERIC
                };
                table.push(failed_row(row.p, row.q));
            }
        }
    }
    write_rows(out, &table, format, precision)?;
    Ok(code)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_NUMERIC
        }
    }
}
