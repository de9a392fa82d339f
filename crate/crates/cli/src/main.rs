//! `condmc`: conditional sampling and conditional goodness-of-fit tests
//! from the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical or budget failure.

mod commands;
mod error;
mod io;
mod setup;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use condmc::gof::Family;
use condmc::{Execution, PriorBox};

use crate::io::Format;
use crate::setup::{parse_box, Method, ModelArgs, SamplerArgs};

#[derive(Parser, Debug)]
#[command(name = "condmc", version, about = "Exact conditional Monte Carlo given a statistic")]
struct Cli {
    /// Run every shard on the calling thread. Output is identical either way.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Gamma,
    Invgauss,
    /// Inverse Gaussian and gamma, in that order.
    Both,
}

impl FamilyArg {
    fn families(self) -> Vec<Family> {
        match self {
            FamilyArg::Gamma => vec![Family::Gamma],
            FamilyArg::Invgauss => vec![Family::InvGauss],
            FamilyArg::Both => vec![Family::InvGauss, Family::Gamma],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StatArg {
    Ks,
    Ad,
    Cvm,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sufficient statistics and MLE of a data file.
    Stats {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Draw conditional samples and write them with a metadata sidecar.
    Sample(SampleArgs),
    /// Conditional p-values of D, A2 and W2.
    Gof(GofArgs),
    /// Empirical distribution function of one column of a sample file.
    Ecdf {
        #[arg(long = "in")]
        input: PathBuf,
        /// 1-based column index.
        #[arg(long)]
        col: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run two samplers on the same model and compare one marginal.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    sampler: SamplerArgs,
    /// Defaults to rejection for uniform-sum and normal-range, mh otherwise.
    #[arg(long, value_enum)]
    method: Option<Method>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct GofArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    data: PathBuf,
    #[arg(long, value_enum, default_value_t = StatArg::All)]
    stat: StatArg,
    #[arg(short = 'k', long = "k")]
    k: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    thin: usize,
    #[arg(long, default_value_t = 0)]
    burn_in: usize,
    #[arg(long, default_value_t = 1)]
    chains: usize,
    #[arg(long = "box", value_parser = parse_box, default_value = "0.8,1.25,0.8,1.25")]
    prior: PriorBox,
    /// Report (1 + hits) / (1 + k) instead of hits / k.
    #[arg(long)]
    continuity_correction: bool,
    /// Write the reports as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    sampler: SamplerArgs,
    #[arg(long, value_enum, default_value_t = Method::Mh)]
    method_a: Method,
    #[arg(long, value_enum, default_value_t = Method::Naive)]
    method_b: Method,
    #[arg(long)]
    seed: u64,
    /// Seed for the second sampler; defaults to --seed.
    #[arg(long)]
    seed_b: Option<u64>,
    /// 1-based column whose marginal is compared.
    #[arg(long, default_value_t = 1)]
    col: usize,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let result = match cli.command {
        Command::Stats { family, data, json } => commands::stats(&family.families(), &data, json),
        Command::Sample(a) => commands::sample(&a, exec),
        Command::Gof(a) => commands::gof(&a, exec),
        Command::Ecdf { input, col, out } => commands::ecdf(&input, col, &out),
        Command::Compare(a) => commands::compare(&a, exec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
