//! `qows`: quasigroup one-way function experiments.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qows_core::inversion::DEFAULT_BUDGET;
use qows_core::LeaderAlphabet;

#[derive(Parser, Debug)]
#[command(
    name = "qows",
    version,
    about = "Quasigroup string transformations, one-way function candidates and their inversion"
)]
pub struct Cli {
    /// Seed for every random choice made by the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Cap on forward evaluations or explored guesses.
    #[arg(long, global = true, env = "QOWS_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct QuasigroupArg {
    /// Quasigroup file (.qg).
    #[arg(long, value_name = "FILE")]
    pub quasigroup: Option<PathBuf>,
    /// Order-4 quasigroup by lexicographic number, 1..=576.
    #[arg(long, value_name = "K")]
    pub index: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[arg(long = "N", default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub max_leader_len: usize,
    #[arg(long, default_value = "constants", value_parser = parse_alphabet)]
    pub alphabet: LeaderAlphabet,
}

#[derive(Args, Debug, Clone)]
pub struct PeriodArgs {
    #[arg(long, default_value_t = 4)]
    pub alpha: usize,
    #[arg(long, default_value_t = 32)]
    pub iterations: usize,
    #[arg(long, default_value_t = 4096)]
    pub width: usize,
    #[arg(long, default_value = "0123")]
    pub motif: String,
    /// Constant leader for the period profile; every symbol when omitted.
    #[arg(long)]
    pub leader: Option<u8>,
}

fn parse_alphabet(s: &str) -> Result<LeaderAlphabet, String> {
    s.parse()
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformFn {
    /// e-transformation with `--leader`.
    E,
    /// Inverse e-transformation with `--leader`.
    Einv,
    /// Leader sequence from `--leaders` (constants only).
    #[value(name = "E")]
    Seq,
    R1,
    R2,
    /// R_N with preprocessing leaders `--leaders`.
    Rn,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    AttackR1,
    AttackR2,
    AttackRn,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchAttack {
    R1,
    R2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply e, E, R1, R2 or R_N to a string.
    Transform {
        #[command(flatten)]
        q: QuasigroupArg,
        #[arg(long = "fn", value_enum)]
        func: TransformFn,
        #[arg(long)]
        input: String,
        #[arg(long)]
        leader: Option<u8>,
        #[arg(long, default_value = "")]
        leaders: String,
    },
    /// Find preimages of an output string.
    Invert {
        #[command(flatten)]
        q: QuasigroupArg,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long, default_value = "")]
        leaders: String,
        /// Output as a packed base-s integer (requires --N).
        #[arg(long, conflicts_with = "output", required_unless_present = "output")]
        output_value: Option<u64>,
        /// Output as a string.
        #[arg(long)]
        output: Option<String>,
        #[arg(long)]
        first_hit: bool,
    },
    /// Preimage counts of every output value of R_N.
    Histogram {
        #[command(flatten)]
        q: QuasigroupArg,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value = "")]
        leaders: String,
        /// Omit the per-value table.
        #[arg(long)]
        summary: bool,
    },
    /// Search for a leader string that makes R_N a permutation.
    Search {
        #[command(flatten)]
        q: QuasigroupArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Classify all 576 order-4 quasigroups and compare with the published list.
    Census {
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        period: PeriodArgs,
        /// Emit JSON instead of the text report.
        #[arg(long)]
        json: bool,
    },
    /// Period-growth classification of one quasigroup.
    Classify {
        #[command(flatten)]
        q: QuasigroupArg,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        period: PeriodArgs,
    },
    /// Draw iterated e-transformations as a pixmap.
    Render {
        #[command(flatten)]
        q: QuasigroupArg,
        #[arg(long, default_value_t = 0)]
        leader: u8,
        #[arg(long, default_value = "0123")]
        motif: String,
        #[arg(long, default_value_t = 600)]
        width: usize,
        #[arg(long, default_value_t = 599)]
        iterations: usize,
        /// Write a P3 text pixmap.
        #[arg(long)]
        text: bool,
    },
    /// Generate a random Latin square from --seed.
    Gen {
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Attack cost over random unstructured order-4 quasigroups.
    Bench {
        #[arg(long, value_enum, default_value = "r1")]
        attack: BenchAttack,
        #[arg(long = "N", default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        first_hit: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(commands::CliError::Usage(msg)) => {
            use clap::CommandFactory;
            Cli::command()
                .error(clap::error::ErrorKind::ArgumentConflict, msg)
                .exit()
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
