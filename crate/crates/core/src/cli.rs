//! Command-line front end.
//!
//! Exit codes: 0 on success (including errata that behave as documented),
//! 1 when an identity is violated, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bench::run_bench;
use crate::error::{Error, Result};
use crate::gellmann::{rect_gellmann, ORDERING_NAME};
use crate::io::{
    matrix_to_json, matrix_to_text, permutation_to_json, system_to_json, system_to_matrix_market,
    system_to_text, write_matrix_market, OutputFormat,
};
use crate::matrix::DEFAULT_TOL;
use crate::report::full_report;
use crate::tcm::{commutation_matrix, tcm_by_rule, Method};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tensorcomm",
    version,
    about = "Tensor commutation matrices and rectangular Gell-Mann bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print U_{n⊗p} built by one of the three constructions.
    GenTcm {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value = "rule", value_parser = parse_method)]
        method: Method,
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the n×p Gell-Mann system and its padded identity.
    GenGellmann {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every identity over the grid 2..=n-max × 2..=p-max.
    Verify {
        #[arg(long, default_value_t = 4, value_parser = parse_dim)]
        n_max: usize,
        #[arg(long, default_value_t = 4, value_parser = parse_dim)]
        p_max: usize,
        #[arg(long, default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
        tol: f64,
        #[arg(long, default_value = "text", value_parser = parse_report_format)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time dense multiplication against the matrix-free swap.
    Bench {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 1000, value_parser = parse_batch)]
        batch: usize,
        #[arg(long, default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
        tol: f64,
        #[arg(long, default_value = "text", value_parser = parse_report_format)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Shape {
    #[arg(long, value_parser = parse_dim)]
    n: usize,
    #[arg(long, value_parser = parse_dim)]
    p: usize,
}

fn parse_dim(s: &str) -> std::result::Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("{s:?} is not a positive integer"))?;
    if v < 2 {
        return Err(format!("must be >= 2, got {v}"));
    }
    Ok(v)
}

fn parse_batch(s: &str) -> std::result::Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("{s:?} is not a positive integer"))?;
    if v == 0 {
        return Err("must be >= 1".to_owned());
    }
    Ok(v)
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if !(v.is_finite() && v >= 0.0) {
        return Err(format!("tolerance must be finite and >= 0, got {s}"));
    }
    Ok(v)
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|_| "expected one of: rule, elementary, gellmann".to_owned())
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse()
        .map_err(|_| "expected one of: matrix-market, json, text".to_owned())
}

fn parse_report_format(s: &str) -> std::result::Result<OutputFormat, String> {
    match s.parse() {
        Ok(OutputFormat::MatrixMarket) | Err(_) => Err("expected one of: json, text".to_owned()),
        Ok(f) => Ok(f),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e @ Error::Domain(_)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_VIOLATION
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::GenTcm {
            shape: Shape { n, p },
            method,
            format,
            out,
        } => {
            let text = match (format, method) {
                (OutputFormat::Json, Method::Rule) => permutation_to_json(&tcm_by_rule(n, p)?)? + "\n",
                (OutputFormat::Json, _) => matrix_to_json(&commutation_matrix(n, p, method)?)? + "\n",
                (OutputFormat::MatrixMarket, _) => write_matrix_market(
                    &commutation_matrix(n, p, method)?,
                    &[format!("n={n} p={p} method={method} ordering={ORDERING_NAME}")],
                ),
                (OutputFormat::Text, _) => matrix_to_text(&commutation_matrix(n, p, method)?),
            };
            emit(&out, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::GenGellmann {
            shape: Shape { n, p },
            format,
            out,
        } => {
            let sys = rect_gellmann(n, p)?;
            let text = match format {
                OutputFormat::Json => system_to_json(&sys)? + "\n",
                OutputFormat::MatrixMarket => system_to_matrix_market(&sys),
                OutputFormat::Text => system_to_text(&sys),
            };
            emit(&out, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            n_max,
            p_max,
            tol,
            format,
            out,
        } => {
            let report = full_report(n_max, p_max, tol)?;
            let text = match format {
                OutputFormat::Json => report.to_json()? + "\n",
                _ => report.to_text() + "\n",
            };
            emit(&out, &text, stdout)?;
            for rec in report.failures() {
                let _ = writeln!(stderr, "violated: {} ({})", rec.id, rec.identity);
                for cx in rec.counterexamples.iter().take(4) {
                    let _ = writeln!(
                        stderr,
                        "  n={} p={} at {:?}: expected {} computed {}",
                        cx.n, cx.p, cx.indices, cx.expected, cx.computed
                    );
                }
            }
            Ok(report.exit_code())
        }
        Command::Bench {
            shape: Shape { n, p },
            batch,
            tol,
            format,
            out,
        } => {
            let r = run_bench(n, p, batch, tol, 0x5eed)?;
            let text = match format {
                OutputFormat::Json => serde_json::to_string_pretty(&r)? + "\n",
                _ => format!(
                    "n={} p={} batch={}\ndense        {:>12.1} ns/apply\nmatrix-free  {:>12.1} ns/apply\nspeedup      {:>12.2}x\nmax difference {:e}\n",
                    r.n, r.p, r.batch, r.dense_ns_per_apply, r.matrixfree_ns_per_apply, r.speedup, r.max_difference
                ),
            };
            emit(&out, &text, stdout)?;
            Ok(EXIT_OK)
        }
    }
}
