//! `ap4`: build, measure and certify the uniform set with few 4-term
//! progressions, and run the exhaustive searches.
//!
//! Exit status: 0 when every (non-skipped) check passes, 1 when a check
//! fails, 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ap4", version, about)]
struct Cli {
    /// Worker threads for the parallel kernels (speed only; results are identical).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full certification pipeline at one prime.
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Normalized G measurements across several primes.
    Scaling {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The quadratic level set with more 4-APs than a random set.
    DemoQuad {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0.05)]
        c: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the spectrum of a construction as CSV (`r,re,im,abs`).
    Spectrum {
        #[arg(long, value_enum, ignore_case = true)]
        construction: Construction,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        csv: PathBuf,
        #[command(flatten)]
        params: ConstructionParams,
    },
    /// Progression mean of a signal stored as JSON.
    Count {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=5))]
        k: u8,
    },
    /// Exhaustive searches.
    Search {
        #[arg(value_enum)]
        space: Space,
        /// Sequence length (pm1, ternary).
        #[arg(long)]
        n: Option<usize>,
        /// Stop after this many designs (grid; 0 = all).
        #[arg(long, default_value_t = 0)]
        max_results: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a construction as signal JSON.
    Construct {
        #[arg(long, value_enum, ignore_case = true)]
        construction: Construction,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        params: ConstructionParams,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct ConstructionParams {
    /// Sampling seed (A).
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Level-set width (quad-levelset).
    #[arg(long, default_value_t = 0.05)]
    c: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Construction {
    F,
    G,
    P,
    A,
    #[value(alias = "quad_levelset")]
    QuadLevelset,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Space {
    Grid,
    Pm1,
    Ternary,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
