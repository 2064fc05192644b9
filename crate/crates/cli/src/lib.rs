//! Command-line experiments for `gaussdesign`.
//!
//! Every subcommand prints a CSV table (or a JSON document) and exits with
//! 0 when all of its checks pass, 1 when a check fails, and 2 on usage or I/O
//! errors.

// `!(x > 0.0)` is used on purpose so that NaN is rejected as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub mod commands;
pub mod config;
pub mod output;

use config::{resolve, CommonArgs, Density};
use output::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Numerics(#[from] gaussdesign::Error),
}

#[derive(Debug, Parser)]
#[command(name = "gaussdesign", version, about = "Gaussian-ensemble 2-design experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Squeezed-vacuum Fock populations: closed form against quadrature.
    Overlaps {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Invariant measure in (s, θ) and (E, θ) coordinates.
    Measure {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Partial Heisenberg-Weyl twirls of the vacuum over growing disks.
    Twirl {
        #[command(flatten)]
        common: CommonArgs,
        /// Write the largest-radius operator as `row,col,re,im` CSV.
        #[arg(long)]
        dump_operator: Option<PathBuf>,
    },
    /// Ensemble-averaged even-parity spectrum and its flatness.
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
        /// Energy weight on the grid.
        #[arg(long, value_enum)]
        density: Option<Density>,
        /// Report the infinite-squeezing limit instead of a finite ensemble.
        #[arg(long)]
        heterodyne: bool,
    },
    /// Two-copy Schmidt coefficients across the x₊/x₋ split.
    Schmidt {
        #[command(flatten)]
        common: CommonArgs,
        /// Displacement of the coherent fiducial along x.
        #[arg(long)]
        coherent_x: Option<f64>,
    },
}

/// Run a parsed command, writing its output. Returns the report so callers can
/// inspect the checks.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let (cfg, report) = match &cli.command {
        Command::Overlaps { common } => {
            let cfg = resolve(common, None, None)?;
            let r = commands::overlaps(&cfg)?;
            (cfg, r)
        }
        Command::Measure { common } => {
            let cfg = resolve(common, None, None)?;
            let r = commands::measure(&cfg)?;
            (cfg, r)
        }
        Command::Twirl { common, dump_operator } => {
            let cfg = resolve(common, None, None)?;
            let r = commands::twirl(&cfg, dump_operator.as_deref())?;
            (cfg, r)
        }
        Command::Spectrum {
            common,
            density,
            heterodyne,
        } => {
            let cfg = resolve(common, *density, None)?;
            let r = commands::spectrum(&cfg, *heterodyne)?;
            (cfg, r)
        }
        Command::Schmidt { common, coherent_x } => {
            let cfg = resolve(common, None, *coherent_x)?;
            let r = commands::schmidt(&cfg)?;
            (cfg, r)
        }
    };
    let text = report.render(cfg.format);
    match &cfg.out {
        Some(path) => commands::write_file(path, &text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    source: e,
                })?;
        }
    }
    Ok(report)
}

/// Exit status for a finished run.
pub fn exit_code(result: &Result<Report, CliError>) -> i32 {
    match result {
        Ok(r) if r.passed() => 0,
        Ok(_) => 1,
        Err(_) => 2,
    }
}
