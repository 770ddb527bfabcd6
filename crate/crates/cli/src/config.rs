use std::path::{Path, PathBuf};

use clap::Args;
use fockpt::report::{AlphaGrid, OutputFormat, ScanConfig, Tolerances};
use serde::Deserialize;

use crate::CliError;

/// Scan settings as they appear in a config file. Every key is optional so
/// that flags can fill the gaps.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatConfig {
    pub m_values: Option<Vec<usize>>,
    pub alpha_start: Option<f64>,
    pub alpha_stop: Option<f64>,
    pub alpha_count: Option<usize>,
    pub p: Option<f64>,
    pub eigen_tol: Option<f64>,
    pub symmetry_tol: Option<f64>,
    pub algebra_tol: Option<f64>,
    pub output_format: Option<OutputFormat>,
}

impl FlatConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// TOML file with scan settings; flags override its values
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Degrees to scan, comma separated
    #[arg(long = "m", value_delimiter = ',')]
    pub m_values: Vec<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha_stop: Option<f64>,
    #[arg(long)]
    pub alpha_count: Option<usize>,
    /// Exponent of omega in the ladder operators
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long)]
    pub eigen_tol: Option<f64>,
    #[arg(long)]
    pub symmetry_tol: Option<f64>,
    #[arg(long)]
    pub algebra_tol: Option<f64>,
    /// Run grid points one after another
    #[arg(long)]
    pub sequential: bool,
}

/// Resolution order: flag, then file, then default. `--tol` stands in for
/// the eigenpair tolerance.
pub fn resolve(
    args: &ScanArgs,
    tol: Option<f64>,
    format: Option<OutputFormat>,
) -> Result<ScanConfig, CliError> {
    let file = match &args.config {
        Some(path) => FlatConfig::load(path)?,
        None => FlatConfig::default(),
    };
    let m_values = if args.m_values.is_empty() {
        file.m_values.unwrap_or_default()
    } else {
        args.m_values.clone()
    };
    let start = args
        .alpha_start
        .or(file.alpha_start)
        .ok_or_else(|| CliError::Usage("alpha_start is required".into()))?;
    let stop = args.alpha_stop.or(file.alpha_stop).unwrap_or(start);
    let count = args
        .alpha_count
        .or(file.alpha_count)
        .unwrap_or(if stop == start { 1 } else { 2 });
    let defaults = Tolerances::default();
    Ok(ScanConfig {
        m_values,
        alpha_grid: AlphaGrid { start, stop, count },
        p: args.p.or(file.p).unwrap_or(0.0),
        tolerances: Tolerances {
            eigen: args
                .eigen_tol
                .or(tol)
                .or(file.eigen_tol)
                .unwrap_or(defaults.eigen),
            symmetry: args
                .symmetry_tol
                .or(file.symmetry_tol)
                .unwrap_or(defaults.symmetry),
            algebra: args
                .algebra_tol
                .or(file.algebra_tol)
                .unwrap_or(defaults.algebra),
        },
        output_format: format.or(file.output_format).unwrap_or_default(),
    })
}
