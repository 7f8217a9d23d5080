//! `langparams`: reports on L-group invariants, point counts and tame
//! parameter spaces over finite fields.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use langparams_core::dualgroup::DualError;
use langparams_core::fingrp::FinError;
use langparams_core::kostant::KostantError;
use langparams_core::moduli::ModuliError;
use langparams_core::rootdata::RootError;

#[derive(Parser)]
#[command(
    name = "langparams",
    version,
    about = "Tame Langlands parameter computations"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Opts {
    /// Root datum or algebra label, e.g. GL3, SO8^3, sl3
    #[arg(long = "type", global = true)]
    pub type_spec: Option<String>,
    /// Residue field size
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Residue characteristic (defaults to the prime dividing q)
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Tame ramification index of the splitting field (order of s in W)
    #[arg(long, global = true, default_value_t = 1)]
    pub e: u64,
    /// Residue degree of the splitting field (order of Fr in W)
    #[arg(long, global = true, default_value_t = 1)]
    pub f: u64,
    /// Coefficient characteristic
    #[arg(long, global = true)]
    pub ell: Option<u32>,
    /// Coefficient field degree over F_ell
    #[arg(long, global = true, default_value_t = 1)]
    pub k: u32,
    /// Finite matrix group, e.g. GL2, SL2, Sp4, U3
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// trivial | fr-outer | s-outer (moduli), trivial | outer (kostant)
    #[arg(long, global = true, default_value = "trivial")]
    pub twist: String,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Override the |G|^2 enumeration cap
    #[arg(long, global = true)]
    pub max_pairs: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Twisted characteristic polynomial and Coxeter number
    Chi,
    /// Cyclotomic prefix product up to the twisted Coxeter number
    ChiStar,
    /// Excluded prime sets
    Banal,
    /// Classical excluded set against group-side non-banal primes
    CompareBanal {
        #[arg(long, default_value_t = 100)]
        bound: u64,
    },
    /// Order formula against exhaustive enumeration
    CountPoints,
    /// All tame parameters over the coefficient field with their analysis
    Enumerate,
    /// Tangent dimensions over all tame parameters
    Tangent,
    /// Cocycle group of a torus
    TorusCocycles {
        /// Frobenius action, rows separated by ';', entries by ','
        #[arg(long)]
        a_fr: String,
        /// Inertia action, same format
        #[arg(long)]
        a_s: String,
    },
    /// Tame parameters grouped by inertial class
    Components,
    /// Determinant identity on the centralizer of a principal nilpotent
    Kostant {
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        t: i64,
    },
    /// First cohomology of tame inertia with finite coefficients
    Cohomology {
        /// Invariant factors of A, comma separated
        #[arg(long)]
        invariants: String,
        /// Action of the inertia generator on generators of A
        #[arg(long)]
        sigma: String,
        /// Action of Frobenius on generators of A
        #[arg(long)]
        fr: String,
        /// Order of the inertia action
        #[arg(long)]
        m: u64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("size guard: {0}")]
    Guard(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Guard(_) => 2,
            _ => 1,
        }
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::WeylTooLarge { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<FinError> for CliError {
    fn from(e: FinError) -> Self {
        match e {
            FinError::GroupTooLarge { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<DualError> for CliError {
    fn from(e: DualError) -> Self {
        match e {
            DualError::Root(r) => r.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ModuliError> for CliError {
    fn from(e: ModuliError) -> Self {
        match e {
            ModuliError::TooManyPairs { .. } => CliError::Guard(e.to_string()),
            ModuliError::Fin(f) => f.into(),
            ModuliError::Root(r) => r.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<KostantError> for CliError {
    fn from(e: KostantError) -> Self {
        match e {
            KostantError::Root(r) => r.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!(
                "error: {}",
                msg.lines()
                    .next()
                    .unwrap_or("invalid arguments")
                    .trim_start_matches("error: ")
            );
            return ExitCode::from(1);
        }
    };
    let result = commands::run(&cli.command, &cli.opts)
        .and_then(|report| output::emit(&report, cli.opts.format))
        .and_then(|text| output::write(&text, cli.opts.out.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
