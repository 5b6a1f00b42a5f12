//! Command-line front end for `ccrkit`: CCR checks on example or file states,
//! parameter sweeps to CSV and Haar-random audits.

pub mod commands;
pub mod error;
pub mod params;
pub mod statefile;
pub mod sweep;

use std::path::PathBuf;

use ccrkit::{CcrFlavor, Complex64};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::Outcome;
pub use error::CliError;
pub use params::{parse_complex, ParamSet};
pub use statefile::{parse_state_file, serialize_state, LoadedState, StateFileError};
pub use sweep::{run_sweep, Column, Measure, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "ccrkit", version, about = "Complementarity measures and complete complementarity relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one CCR on a factory or file state.
    Check(CheckArgs),
    /// Tabulate measures along a one-parameter family as CSV.
    Sweep(SweepArgs),
    /// Run a CCR over Haar-random pure states and every target.
    Audit(AuditArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Flavor {
    Hs,
    Vn,
    Mixedness,
}

impl From<Flavor> for CcrFlavor {
    fn from(f: Flavor) -> Self {
        match f {
            Flavor::Hs => CcrFlavor::HsPure,
            Flavor::Vn => CcrFlavor::VnPure,
            Flavor::Mixedness => CcrFlavor::HsMixedness,
        }
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a positive number")),
    }
}

/// Per-factory parameters. Complex values use `re:im`.
#[derive(Debug, Clone, Default, Args)]
pub struct FactoryArgs {
    #[arg(long)]
    pub w: Option<f64>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a000: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a111: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda1: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda2: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda3: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda4: Option<Complex64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda5: Option<Complex64>,
}

impl FactoryArgs {
    pub fn to_params(&self) -> ParamSet {
        let mut set = ParamSet::default();
        let reals = [("w", self.w), ("x", self.x), ("p", self.p)];
        for (name, v) in reals {
            if let Some(v) = v {
                set.set(name, v.into());
            }
        }
        let complexes = [
            ("a000", self.a000),
            ("a111", self.a111),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("lambda3", self.lambda3),
            ("lambda4", self.lambda4),
            ("lambda5", self.lambda5),
        ];
        for (name, v) in complexes {
            if let Some(v) = v {
                set.set(name, v);
            }
        }
        set
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub factory: Option<String>,
    /// JSON state file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub target: usize,
    #[arg(long, value_enum, default_value_t = Flavor::Hs)]
    pub flavor: Flavor,
    #[arg(long, env = "CCRKIT_TOLERANCE", default_value_t = 1e-10, value_parser = positive)]
    pub tolerance: f64,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub params: FactoryArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub factory: String,
    /// Parameter to vary; the rest come from the factory flags.
    #[arg(long)]
    pub param: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub start: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub stop: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Comma-separated columns; `a+b` tabulates a sum.
    #[arg(long, value_delimiter = ',', required = true)]
    pub measures: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub target: usize,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub params: FactoryArgs,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Subsystem dimensions, e.g. `2,2,2`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Flavor::Hs)]
    pub flavor: Flavor,
    #[arg(long, env = "CCRKIT_TOLERANCE", default_value_t = 1e-10, value_parser = positive)]
    pub tolerance: f64,
    #[arg(long)]
    pub json: bool,
}

fn load_check_state(args: &CheckArgs) -> Result<ccrkit::DensityOperator64, CliError> {
    match (&args.factory, &args.file) {
        (_, Some(path)) => {
            let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            Ok(parse_state_file(&bytes)?.density())
        }
        (Some(factory), None) => Ok(args.params.to_params().build(factory)?.density()),
        (None, None) => Err(CliError::Input("one of --factory or --file is required".into())),
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Check(args) => {
            let rho = load_check_state(&args)?;
            commands::check(&rho, args.target, args.flavor.into(), args.tolerance, args.json)
        }
        Command::Sweep(args) => {
            let columns = args.measures.iter().map(|m| Column::parse(m)).collect::<Result<Vec<_>, _>>()?;
            let config = SweepConfig {
                factory: args.factory,
                param: args.param,
                start: args.start,
                stop: args.stop,
                points: args.points,
                fixed: args.params.to_params(),
                columns,
                target: args.target,
            };
            let csv = run_sweep(&config)?;
            match args.out {
                Some(path) => {
                    std::fs::write(&path, &csv).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                    Ok(Outcome { output: format!("wrote {} rows to {}\n", config.points, path.display()), passed: true })
                }
                None => Ok(Outcome { output: csv, passed: true }),
            }
        }
        Command::Audit(args) => {
            commands::audit(args.dims, args.count, args.seed, args.flavor.into(), args.tolerance, args.json)
        }
    }
}
