//! Run configuration: command-line flags layered over an optional TOML file.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::CliError;

/// Largest per-mode cutoff accepted from users.
pub const MAX_DIM: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Density {
    /// `f(E) = 1`.
    Uniform,
    /// `f(E) = 4`, the invariant measure in energy coordinates.
    Invariant,
}

/// Flags shared by every subcommand. All are optional so that a config file
/// can supply them; anything given on the command line wins.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Fock cutoff d (per mode).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Largest index reported.
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Lower end of the energy grid.
    #[arg(long)]
    pub emin: Option<f64>,
    /// Upper end of the energy grid.
    #[arg(long)]
    pub emax: Option<f64>,
    /// Grid spacing (energy for `spectrum`, squeeze factor for `measure`).
    #[arg(long)]
    pub grid_step: Option<f64>,
    /// Largest twirl radius; the schedule doubles from 1 up to it.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Squeeze factors, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub s: Option<Vec<f64>>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// TOML file with defaults for any of the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Keys accepted in the TOML file; names follow the long flags with `_`.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub dim: Option<usize>,
    pub kmax: Option<usize>,
    pub emin: Option<f64>,
    pub emax: Option<f64>,
    pub grid_step: Option<f64>,
    pub radius: Option<f64>,
    pub s: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub density: Option<Density>,
    pub coherent_x: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved settings; subcommand defaults are filled in by the caller.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub dim: Option<usize>,
    pub kmax: Option<usize>,
    pub emin: Option<f64>,
    pub emax: Option<f64>,
    pub grid_step: Option<f64>,
    pub radius: Option<f64>,
    pub s: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub density: Option<Density>,
    pub coherent_x: Option<f64>,
}

impl Resolved {
    pub fn dim_or(&self, default: usize) -> Result<usize, CliError> {
        let d = self.dim.unwrap_or(default);
        if d == 0 || d > MAX_DIM {
            return Err(CliError::Usage(format!("--dim must lie in 1..={MAX_DIM}, got {d}")));
        }
        Ok(d)
    }

    pub fn kmax_or(&self, default: usize) -> usize {
        self.kmax.unwrap_or(default)
    }
}

fn positive(name: &str, value: Option<f64>) -> Result<(), CliError> {
    match value {
        Some(v) if !(v > 0.0) || !v.is_finite() => {
            Err(CliError::Usage(format!("--{name} must be positive and finite, got {v}")))
        }
        _ => Ok(()),
    }
}

/// Merge flags over the config file (if any) and validate ranges.
pub fn resolve(args: &CommonArgs, density: Option<Density>, coherent_x: Option<f64>) -> Result<Resolved, CliError> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let r = Resolved {
        dim: args.dim.or(file.dim),
        kmax: args.kmax.or(file.kmax),
        emin: args.emin.or(file.emin),
        emax: args.emax.or(file.emax),
        grid_step: args.grid_step.or(file.grid_step),
        radius: args.radius.or(file.radius),
        s: args.s.clone().or(file.s),
        out: args.out.clone().or(file.out),
        format: args.format.or(file.format).unwrap_or(Format::Csv),
        density: density.or(file.density),
        coherent_x: coherent_x.or(file.coherent_x),
    };
    positive("emin", r.emin)?;
    positive("emax", r.emax)?;
    positive("grid-step", r.grid_step)?;
    positive("radius", r.radius)?;
    if let Some(s) = &r.s {
        if s.is_empty() {
            return Err(CliError::Usage("--s needs at least one value".into()));
        }
        for &v in s {
            positive("s", Some(v))?;
        }
    }
    if let Some(x) = r.coherent_x {
        if !x.is_finite() {
            return Err(CliError::Usage(format!("--coherent-x must be finite, got {x}")));
        }
    }
    if r.dim == Some(0) || r.dim.is_some_and(|d| d > MAX_DIM) {
        return Err(CliError::Usage(format!(
            "--dim must lie in 1..={MAX_DIM}, got {}",
            r.dim.unwrap_or(0)
        )));
    }
    Ok(r)
}
