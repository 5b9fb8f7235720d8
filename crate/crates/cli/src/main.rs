//! `sparsecol` — command-line front end for the graph-colouring toolkit.
//!
//! Subcommands: `gen` (graph families to file), `analyze` (sparsity and
//! codegree reports), `sample` (Monte Carlo independent-set statistics),
//! `colour` (iterative list colouring), `strong` (strong edge colouring),
//! `verify` (validate a colouring artifact), `oracle` (exact brute-force
//! references), and `sweep` (parameter grids to CSV/JSON).
//!
//! Every JSON report embeds the resolved parameters and the seed; repeated
//! runs with the same seed are byte-identical apart from the timestamp
//! field. The `COLOUR_THREADS` environment variable caps the worker count
//! (results never depend on it).
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or input error.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::report::CliError;

#[derive(Parser)]
#[command(
    name = "sparsecol",
    version,
    about = "Randomized priority sampling and list colouring on locally sparse graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named graph family to a file or stdout.
    Gen(commands::gen::GenArgs),
    /// Degree, sparsity, and codegree report for a graph.
    Analyze(commands::analyze::AnalyzeArgs),
    /// Monte Carlo statistics of the random independent-set procedure.
    Sample(commands::sample::SampleArgs),
    /// Colour a graph with the iterative list procedure.
    Colour(commands::colour::ColourArgs),
    /// Partition the edges into induced matchings.
    Strong(commands::strong::StrongArgs),
    /// Validate a colouring artifact against a graph.
    Verify(commands::verify::VerifyArgs),
    /// Exact brute-force references on small instances.
    Oracle(commands::oracle::OracleArgs),
    /// Parameter grids, aggregated to CSV and/or JSON.
    Sweep(commands::sweep::SweepArgs),
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => commands::gen::run(args),
        Command::Analyze(args) => commands::analyze::run(args),
        Command::Sample(args) => commands::sample::run(args),
        Command::Colour(args) => commands::colour::run(args),
        Command::Strong(args) => commands::strong::run(args),
        Command::Verify(args) => commands::verify::run(args),
        Command::Oracle(args) => commands::oracle::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Invalid(message)) => {
            eprintln!("sparsecol: {message}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("sparsecol: {err}");
            ExitCode::from(2)
        }
    }
}

/// Honours `COLOUR_THREADS` before any parallel work starts. Invalid or
/// absent values leave the default pool; the cap never changes results.
fn init_thread_pool() {
    if let Ok(value) = std::env::var("COLOUR_THREADS") {
        if let Ok(threads) = value.trim().parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}
