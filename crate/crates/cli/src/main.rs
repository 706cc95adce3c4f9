use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvemix::{ChainSpec, DEFAULT_MAX_STATES};

mod commands;
mod failure;
mod render;

use failure::Failure;

#[derive(Debug, Parser)]
#[command(name = "curvemix", version, about = "Sample and analyse switch and Curveball chains on binary matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    /// Instance JSON file, or one of `permutation:<n>`, `regular:<n>:<d>`, `split:<n>`.
    pub instance: String,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Refuse to enumerate more states than this.
    #[arg(long, env = "CURVEMIX_MAX_STATES", default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// Curveball against the KTV switch chain.
    Ktv,
    /// Curveball against the lazy edge-switch chain.
    Edge,
    /// Edge-switch bounds on regular directed instances.
    Regular,
    /// k-Curveball against Curveball.
    Kcurveball,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every matrix of the instance.
    Enumerate {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Run a chain and print the endpoints.
    Sample {
        #[command(flatten)]
        instance: InstanceArgs,
        /// ktv | gamma:<p/q> | curveball | kcurveball:<k> | edge | edge-lazy:<p/q>
        #[arg(long)]
        chain: ChainSpec,
        #[arg(long, default_value_t = 1000)]
        steps: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Starting matrix as a canonical hex key; a fixed realization otherwise.
        #[arg(long)]
        start: Option<String>,
    },
    /// Print the exact transition matrix.
    Matrix {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        chain: ChainSpec,
    },
    /// Eigenvalues and relaxation time of a chain.
    Spectrum {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        chain: ChainSpec,
    },
    /// Check one relaxation-time comparison.
    Compare {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Number of disjoint row pairs for `kcurveball`.
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Exact mixing time against the spectral bounds.
    Mix {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        chain: ChainSpec,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
        /// Give up after this many steps.
        #[arg(long)]
        horizon: Option<usize>,
        /// Also run this many independent chains and compare their endpoints.
        #[arg(long)]
        runs: Option<usize>,
        /// Steps per empirical run; twice the mixing time by default.
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every applicable check on the instance.
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
    },
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Enumerate { instance } => commands::enumerate(&instance),
        Command::Sample { instance, chain, steps, count, seed, start } => {
            commands::sample(&instance, &chain, steps, count, seed, start.as_deref())
        }
        Command::Matrix { instance, chain } => commands::matrix(&instance, &chain),
        Command::Spectrum { instance, chain } => commands::spectrum(&instance, &chain),
        Command::Compare { instance, theorem, k } => commands::compare(&instance, theorem, k),
        Command::Mix { instance, chain, epsilon, horizon, runs, steps, seed } => {
            commands::mix(&instance, &chain, epsilon, horizon, runs, steps, seed)
        }
        Command::Verify { instance, k, epsilon } => commands::verify(&instance, k, epsilon),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = &f.output {
                print!("{out}");
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
