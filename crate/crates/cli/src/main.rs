//! `gralift`: build idempotent-generated ideals of M2(Fp), lift them to
//! Grassmannian codes, and check the distance and weight properties.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gralift::verify::{Fault, DEFAULT_SEED};
use gralift::Side;

/// Environment variable overriding the enumeration budget.
pub const BUDGET_ENV: &str = "GRALIFT_ENUM_BUDGET";
/// Default cap on the number of ring elements an exhaustive command may scan.
pub const DEFAULT_BUDGET: u128 = 10_000;

pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "gralift", version, about)]
#[command(after_help = "Exhaustive commands scan all p^4 elements of M2(Fp); the scan is capped by \
GRALIFT_ENUM_BUDGET (default 10000). Exit status: 0 ok, 1 property violation, 2 bad input, 3 budget exceeded.")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the nontrivial idempotents of M2(Fp) and the ideals they generate.
    Idempotents { p: u64 },

    /// Emit the one-sided ideal generated by (a0 a1; a2 a3) as a code file.
    Ideal {
        p: u64,
        #[arg(value_parser = parse_side)]
        side: Side,
        #[arg(num_args = 4, value_names = ["A0", "A1", "A2", "A3"], allow_negative_numbers = true)]
        entries: Vec<i64>,
        /// Write the code file here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Report size, rho, delta and omega of a rank-metric code file.
    RankcodeInfo { file: PathBuf },

    /// Lift a rank-metric code file to a subspace code and check its parameters.
    Lift {
        file: PathBuf,
        /// Write the subspace code file here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },

    /// Run the full property suite over M2(Fp); exits 1 on any violation.
    Verify {
        p: u64,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Perturb one closed form (test hook).
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
    },

    /// Rank distribution (A0, A1, A2) of M2(Fq).
    Distribution { q: u64 },

    /// Gaussian binomial coefficient [n k]_q.
    Gaussian { n: u32, k: u32, q: u64 },

    /// Order of GL(n, q).
    GlOrder {
        q: u64,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },

    /// Egalitarian and homogeneity analysis of the rank weight on M2(Fp).
    WeightsReport {
        p: u64,
        /// Restrict to one side; both by default.
        #[arg(long, value_parser = parse_side)]
        side: Option<Side>,
    },
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("gralift: {}", e.message);
            ExitCode::from(e.status)
        }
    }
}
