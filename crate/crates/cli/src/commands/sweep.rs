//! `sweep` — run a command over a gamma grid and aggregate to CSV and/or
//! JSON. Grid point `i` derives its seed as `seed + i`, so every point owns
//! a reproducible stream and the whole sweep is deterministic.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use sparsecol::SamplerConfig;

use crate::commands::colour::{build_config, drive, ModeArg};
use crate::commands::sample::{collect, RootReport};
use crate::report::{
    emit, load_graph, parse_float_list, parse_roots, write_text, CliError, FormatArg,
};

#[derive(Args)]
pub struct SweepArgs {
    #[command(subcommand)]
    what: What,
}

#[derive(Subcommand)]
enum What {
    /// Monte Carlo sampling statistics across a gamma grid.
    Sample {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Comma-separated gamma grid, e.g. `1,2,4,8,16`.
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Roots to track: `all` or a comma-separated id list.
        #[arg(long, default_value = "all")]
        roots: String,
        /// Use this degree instead of the measured maximum.
        #[arg(long)]
        delta_override: Option<usize>,
        /// CSV file; stdout when neither --csv nor --json is given.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSON report file.
        #[arg(long = "json", short = 'o')]
        json: Option<PathBuf>,
    },
    /// Iterative colouring across a gamma grid.
    Colour {
        /// Graph file.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Comma-separated gamma grid (every value must exceed 2).
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = 0.3)]
        iota: f64,
        #[arg(long, value_enum, default_value_t = ModeArg::Practical)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        max_retries: u32,
        #[arg(long)]
        codegree: bool,
        /// CSV file; stdout when neither --csv nor --json is given.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSON report file.
        #[arg(long = "json", short = 'o')]
        json: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct SampleSpec {
    graph: String,
    format: Option<FormatArg>,
    gamma: Vec<f64>,
    trials: u64,
    seed: u64,
    roots: Vec<u32>,
    delta_override: Option<usize>,
}

#[derive(Serialize)]
struct SamplePoint {
    gamma: f64,
    seed: u64,
    activation: f64,
    delta_eff: usize,
    roots: Vec<RootReport>,
}

#[derive(Serialize)]
struct ColourSpec {
    graph: String,
    format: Option<FormatArg>,
    gamma: Vec<f64>,
    iota: f64,
    mode: ModeArg,
    seed: u64,
    max_retries: u32,
    codegree: bool,
}

#[derive(Serialize)]
struct ColourPoint {
    gamma: f64,
    seed: u64,
    colour_count: usize,
    budget: f64,
    budget_colours: u64,
    within_budget: bool,
    epsilon: f64,
    rounds: usize,
    nibble_coloured: usize,
    greedy_coloured: usize,
    full_greedy_fallback: bool,
}

#[derive(Serialize)]
struct Points<P: Serialize> {
    points: Vec<P>,
}

pub fn run(args: SweepArgs) -> Result<ExitCode, CliError> {
    match args.what {
        What::Sample {
            graph,
            format,
            gamma,
            trials,
            seed,
            roots,
            delta_override,
            csv,
            json,
        } => {
            let g = load_graph(&graph, format)?;
            let gammas = parse_float_list(&gamma, "--gamma")?;
            let root_ids = parse_roots(&roots, g.vertex_count())?;
            // Grid points run concurrently; collect preserves grid order.
            let points = gammas
                .par_iter()
                .enumerate()
                .map(|(i, &point_gamma)| {
                    let point_seed = seed.wrapping_add(i as u64);
                    let mut cfg = SamplerConfig::new(point_gamma, point_seed);
                    cfg.delta_override = delta_override;
                    let (activation, delta_eff, rows) = collect(&g, &cfg, &root_ids, trials)?;
                    Ok(SamplePoint {
                        gamma: point_gamma,
                        seed: point_seed,
                        activation,
                        delta_eff,
                        roots: rows,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let csv_text = sample_csv(&points);
            let spec = SampleSpec {
                graph: graph.display().to_string(),
                format,
                gamma: gammas,
                trials,
                seed,
                roots: root_ids,
                delta_override,
            };
            deliver("sweep-sample", spec, points, csv_text, csv, json)
        }
        What::Colour {
            graph,
            format,
            gamma,
            iota,
            mode,
            seed,
            max_retries,
            codegree,
            csv,
            json,
        } => {
            let g = load_graph(&graph, format)?;
            let gammas = parse_float_list(&gamma, "--gamma")?;
            // Grid points run concurrently; collect preserves grid order.
            let points = gammas
                .par_iter()
                .enumerate()
                .map(|(i, &point_gamma)| {
                    let point_seed = seed.wrapping_add(i as u64);
                    let cfg = build_config(point_gamma, iota, mode, point_seed, max_retries)?;
                    let run = drive(&g, &cfg, codegree)?;
                    Ok(ColourPoint {
                        gamma: point_gamma,
                        seed: point_seed,
                        colour_count: run.colour_count,
                        budget: run.budget,
                        budget_colours: run.budget_colours,
                        within_budget: run.within_budget,
                        epsilon: run.epsilon,
                        rounds: run.rounds.len(),
                        nibble_coloured: run.nibble_coloured,
                        greedy_coloured: run.greedy_coloured,
                        full_greedy_fallback: run.full_greedy_fallback,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let csv_text = colour_csv(&points);
            let spec = ColourSpec {
                graph: graph.display().to_string(),
                format,
                gamma: gammas,
                iota,
                mode,
                seed,
                max_retries,
                codegree,
            };
            deliver("sweep-colour", spec, points, csv_text, csv, json)
        }
    }
}

/// Routes the aggregates: CSV to --csv (or stdout when nothing else was
/// requested), JSON to --json.
fn deliver<S: Serialize, P: Serialize>(
    command: &'static str,
    spec: S,
    points: Vec<P>,
    csv_text: String,
    csv: Option<PathBuf>,
    json: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    match (&csv, &json) {
        (Some(path), _) => write_text(&csv_text, Some(path))?,
        (None, None) => write_text(&csv_text, None)?,
        (None, Some(_)) => {}
    }
    if json.is_some() {
        emit(command, spec, Points { points }, json.as_deref())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn sample_csv(points: &[SamplePoint]) -> String {
    let mut out = String::from(
        "gamma,seed,activation,delta_eff,root,p_in,stderr_p_in,p_in_formula,e_ir,stderr_e_ir,\
         p_nonempty,stderr_p_nonempty,e_pairs,stderr_e_pairs,e_triples,stderr_e_triples,ratio\n",
    );
    for point in points {
        for row in &point.roots {
            let ratio = row.ratio.map_or(String::new(), |r| r.to_string());
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                point.gamma,
                point.seed,
                point.activation,
                point.delta_eff,
                row.root,
                row.p_in,
                row.stderr_p_in,
                row.p_in_formula,
                row.e_ir,
                row.stderr_e_ir,
                row.p_nonempty,
                row.stderr_p_nonempty,
                row.e_pairs,
                row.stderr_e_pairs,
                row.e_triples,
                row.stderr_e_triples,
                ratio,
            );
        }
    }
    out
}

fn colour_csv(points: &[ColourPoint]) -> String {
    let mut out = String::from(
        "gamma,seed,colour_count,budget,budget_colours,within_budget,epsilon,rounds,\
         nibble_coloured,greedy_coloured,full_greedy_fallback\n",
    );
    for point in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            point.gamma,
            point.seed,
            point.colour_count,
            point.budget,
            point.budget_colours,
            point.within_budget,
            point.epsilon,
            point.rounds,
            point.nibble_coloured,
            point.greedy_coloured,
            point.full_greedy_fallback,
        );
    }
    out
}
