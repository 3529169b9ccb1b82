//! `gkw`: build and cache coefficient tables, reproduce the published
//! tables, evaluate truncated series, run oracle comparisons and write
//! plot data.
//!
//! Exit status is 0 when every requested check passes, 1 when a check
//! fails and 2 on an error.

mod commands;
mod oracle;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gkw_core::Variant;

#[derive(Parser, Debug)]
#[command(
    name = "gkw",
    version,
    about = "Exact recurrences for GKW and Mayer-Ruelle eigenvalue series"
)]
pub struct Cli {
    /// Cache directory for symbolic table entries (created if absent).
    #[arg(long, env = "GKW_CACHE", default_value = ".gkw-cache", global = true)]
    pub cache_dir: PathBuf,

    /// Working precision in bits for floating evaluation.
    #[arg(long, default_value_t = 256, global = true,
          value_parser = clap::value_parser!(u32).range(64..))]
    pub precision: u32,

    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Gkw,
    Mr,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Gkw => Variant::Gkw,
            VariantArg::Mr => Variant::Mr,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the symbolic table through order `max-j` into the cache.
    Build {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        max_j: usize,
    },
    /// Print one of the six published tables, recomputed.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
        /// Rows to print: `j` for tables 1, 3, 4, 6 and `N` for tables 2, 5.
        #[arg(long, value_delimiter = ',')]
        rows: Vec<usize>,
        /// Compare with the golden data; exit 1 on any deviation.
        #[arg(long)]
        check: bool,
        /// Decimal places for tables 2 and 5 (default: as printed).
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Evaluate `S_N(n)` or `L_N(s)`.
    Eval {
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Point for the gkw series.
        #[arg(long)]
        n: Option<u32>,
        /// Point for the mr series: `p/q`, a decimal, or `a+bi`.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long)]
        max_j: usize,
        #[arg(long, default_value_t = 14)]
        digits: usize,
    },
    /// Compare a conjectured value with an independent oracle.
    Oracle {
        #[command(subcommand)]
        kind: oracle::OracleKind,
        #[arg(long, default_value_t = 16, global = true)]
        digits: usize,
    },
    /// Write `<s> <value>` samples of `Lambda_j`, `Psi_j` or a partial sum.
    Plotdata {
        #[arg(long, value_enum)]
        func: plot::PlotFunc,
        #[arg(long)]
        j: usize,
        /// `a:b`, each end `p/q` or a decimal.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 14)]
        digits: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    std::fs::create_dir_all(&cli.cache_dir)?;
    match &cli.command {
        Command::Build { variant, max_j } => commands::build(cli, (*variant).into(), *max_j),
        Command::Table {
            id,
            rows,
            check,
            digits,
        } => commands::table(cli, *id, rows, *check, *digits),
        Command::Eval {
            variant,
            n,
            s,
            max_j,
            digits,
        } => commands::eval(cli, (*variant).into(), *n, s.as_deref(), *max_j, *digits),
        Command::Oracle { kind, digits } => oracle::run(cli, kind, *digits),
        Command::Plotdata {
            func,
            j,
            range,
            samples,
            out,
            digits,
        } => plot::run(cli, *func, *j, range, *samples, out.as_deref(), *digits),
    }
}
