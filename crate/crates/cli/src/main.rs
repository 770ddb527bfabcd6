mod config;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fockpt::error::Error;
use fockpt::exec::Execution;
use fockpt::fock_poly::MAX_DEGREE;
use fockpt::report::{
    algebra_report, eigenfunction_report, run_scan, spectrum_report, symmetry_report,
    OutputFormat, ScanError, Tolerances,
};

use config::ScanArgs;
use output::ScanWriter;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Domain(String),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Domain(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_domain_violation() {
            CliError::Domain(e.to_string())
        } else if matches!(e, Error::InvalidConfig(_) | Error::DegreeTooLarge { .. }) {
            CliError::Usage(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
        }
    }
}

fn finite(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err("must be finite".into())
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x = finite(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err("must be positive".into())
    }
}

fn degree(s: &str) -> Result<usize, String> {
    let m: usize = s.parse().map_err(|e| format!("{e}"))?;
    if m <= MAX_DEGREE {
        Ok(m)
    } else {
        Err(format!("degree must be at most {MAX_DEGREE}"))
    }
}

/// Spectra, PT symmetry and deformed su(2) checks for quadratic two-mode
/// boson operators.
#[derive(Debug, Parser)]
#[command(name = "fockpt", version, about)]
struct Cli {
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Tolerance for the subcommand's pass/fail check
    #[arg(long, global = true, value_parser = positive)]
    tol: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues of 2B(c1, c2, i alpha, i alpha) on degree m
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[arg(long, value_parser = finite)]
        c1: f64,
        #[arg(long, value_parser = finite)]
        c2: f64,
        #[arg(long, value_parser = finite)]
        alpha: f64,
        #[arg(long, value_parser = degree)]
        m: usize,
    },
    /// Partial and global PT verdicts for every eigenfunction
    #[command(allow_negative_numbers = true)]
    Symmetry {
        #[arg(long, value_parser = finite)]
        alpha: f64,
        #[arg(long, value_parser = degree)]
        m: usize,
    },
    /// Commutators, Killing form and Casimir of the deformed algebra
    #[command(allow_negative_numbers = true)]
    AlgebraCheck {
        #[arg(long, value_parser = finite)]
        alpha: f64,
        #[arg(long, value_parser = finite, default_value_t = 0.0)]
        p: f64,
        #[arg(long, value_parser = degree)]
        m: usize,
    },
    /// Gauge-fixed eigenfunction coefficients
    #[command(allow_negative_numbers = true)]
    Eigenfunctions {
        #[arg(long, value_parser = finite)]
        alpha: f64,
        #[arg(long, value_parser = degree)]
        m: usize,
    },
    /// Sweep alpha over a grid for several degrees
    Scan(ScanArgs),
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Usage(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn check_residual(residual: f64, tol: f64) -> Result<(), CliError> {
    if residual < tol {
        Ok(())
    } else {
        Err(Error::ResidualTooLarge { residual, tol }.into())
    }
}

fn note(text: &Option<String>) {
    if let Some(t) = text {
        eprintln!("note: {t}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format.map(OutputFormat::from);
    let csv = format == Some(OutputFormat::Csv);
    let defaults = Tolerances::default();
    match cli.command {
        Command::Spectrum { c1, c2, alpha, m } => {
            let r = spectrum_report(c1, c2, alpha, m)?;
            let mut out = open_out(&cli.out)?;
            if csv {
                output::spectrum_csv(&mut out, &r)?;
            } else {
                output::json(&mut out, &r)?;
            }
            out.flush()?;
            note(&r.note);
            check_residual(r.max_residual, cli.tol.unwrap_or(defaults.eigen))
        }
        Command::Symmetry { alpha, m } => {
            let r = symmetry_report(alpha, m, cli.tol.unwrap_or(defaults.symmetry))?;
            let mut out = open_out(&cli.out)?;
            if csv {
                output::symmetry_csv(&mut out, &r)?;
            } else {
                output::json(&mut out, &r)?;
            }
            out.flush()?;
            note(&r.note);
            Ok(())
        }
        Command::Eigenfunctions { alpha, m } => {
            let r = eigenfunction_report(alpha, m)?;
            let mut out = open_out(&cli.out)?;
            if csv {
                output::eigenfunctions_csv(&mut out, &r)?;
            } else {
                output::json(&mut out, &r)?;
            }
            out.flush()?;
            let worst = r.functions.iter().map(|f| f.residual).fold(0.0, f64::max);
            check_residual(worst, cli.tol.unwrap_or(defaults.eigen))
        }
        Command::AlgebraCheck { alpha, p, m } => {
            let r = algebra_report(alpha, p, m, cli.tol.unwrap_or(defaults.algebra))?;
            if r.undeformed {
                eprintln!("alpha = 0: undeformed su(2)");
            }
            let mut out = open_out(&cli.out)?;
            if csv {
                output::algebra_csv(&mut out, &r)?;
            } else {
                output::json(&mut out, &r)?;
            }
            out.flush()?;
            if r.passed {
                Ok(())
            } else {
                Err(CliError::Numerical(format!(
                    "algebra residual {:e} exceeds tolerance {:e}",
                    r.worst_residual(),
                    r.tolerance
                )))
            }
        }
        Command::Scan(args) => scan(&args, cli.tol, format, &cli.out),
    }
}

fn scan(
    args: &ScanArgs,
    tol: Option<f64>,
    format: Option<OutputFormat>,
    out: &Option<PathBuf>,
) -> Result<(), CliError> {
    let config = config::resolve(args, tol, format)?;
    config.validate()?;
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let out = open_out(out)?;
    let mut writer = match config.output_format {
        OutputFormat::Json => ScanWriter::json(out),
        OutputFormat::Csv => {
            let max_m = config.degrees().last().copied().unwrap_or(0);
            ScanWriter::csv(out, max_m)?
        }
    };
    let summary = run_scan(&config, exec, |r| writer.record(r)).map_err(|e| match e {
        ScanError::Config(e) => CliError::from(e),
        ScanError::Numerical { .. } => {
            if let ScanError::Numerical { source, .. } = &e {
                if source.is_domain_violation() {
                    return CliError::Domain(e.to_string());
                }
            }
            CliError::Numerical(e.to_string())
        }
        ScanError::Io(e) => CliError::Io(e),
    })?;
    if let Some(text) = writer.finish(&summary)? {
        eprint!("{text}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
