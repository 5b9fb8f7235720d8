//! `colour` — iterative list colouring with the per-round reports and the
//! `{vertex: colour}` interchange map.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use serde::Serialize;
use sparsecol::{
    iterative_colour, iterative_colour_codegree, ColouringRun, ColouringValidation, EpsilonRule,
    ExactRatio, Graph, NibbleConfig, NibbleMode, NibbleReport,
};

use crate::report::{emit, load_graph, CliError, FormatArg, VertexMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Strict,
    Practical,
}

impl From<ModeArg> for NibbleMode {
    fn from(arg: ModeArg) -> Self {
        match arg {
            ModeArg::Strict => NibbleMode::Strict,
            ModeArg::Practical => NibbleMode::Practical,
        }
    }
}

#[derive(Args)]
pub struct ColourArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,

    /// Input encoding (defaults from the file name).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,

    /// Intensity: lists stay near `delta / gamma` colours. Must exceed 2.
    #[arg(long)]
    gamma: f64,

    /// Slack fraction in (0, 1).
    #[arg(long, default_value_t = 0.3)]
    iota: f64,

    /// `strict` uses the literal asymptotic slacks; `practical` the scaled
    /// desk-size defaults.
    #[arg(long, value_enum, default_value_t = ModeArg::Practical)]
    mode: ModeArg,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Total attempts per round before the round keeps its best draw.
    #[arg(long, default_value_t = 64)]
    max_retries: u32,

    /// Drive the savings rate from codegree sparsity instead of
    /// neighbourhood sparsity.
    #[arg(long)]
    codegree: bool,

    /// Report file; stdout when omitted.
    #[arg(long = "json", short = 'o')]
    json: Option<PathBuf>,
}

#[derive(Serialize)]
struct Spec {
    graph: String,
    format: Option<FormatArg>,
    gamma: f64,
    iota: f64,
    mode: ModeArg,
    seed: u64,
    max_retries: u32,
    codegree: bool,
}

#[derive(Serialize)]
struct Payload<'a> {
    colour_count: usize,
    max_colour: Option<u32>,
    delta: usize,
    sigma: ExactRatio,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma_hat: Option<ExactRatio>,
    epsilon: f64,
    epsilon_rule: EpsilonRule,
    budget: f64,
    budget_colours: u64,
    within_budget: bool,
    nibble_coloured: usize,
    greedy_coloured: usize,
    full_greedy_fallback: bool,
    hard_cap: u32,
    rounds: &'a [NibbleReport],
    validation: &'a ColouringValidation,
    colouring: VertexMap<'a>,
}

/// Builds the nibble configuration shared with the sweep command.
pub fn build_config(
    gamma: f64,
    iota: f64,
    mode: ModeArg,
    seed: u64,
    max_retries: u32,
) -> Result<NibbleConfig, CliError> {
    let mut cfg =
        NibbleConfig::new(gamma, iota, seed).map_err(|err| CliError::invalid(err.to_string()))?;
    cfg.mode = mode.into();
    cfg.max_retries = max_retries;
    cfg.validate()
        .map_err(|err| CliError::invalid(err.to_string()))?;
    Ok(cfg)
}

/// Runs the driver in the requested mode; shared with the sweep command.
pub fn drive(g: &Graph, cfg: &NibbleConfig, codegree: bool) -> Result<ColouringRun, CliError> {
    let run = if codegree {
        iterative_colour_codegree(g, cfg)
    } else {
        iterative_colour(g, cfg)
    };
    run.map_err(|err| CliError::invalid(err.to_string()))
}

pub fn run(args: ColourArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&args.graph, args.format)?;
    let cfg = build_config(args.gamma, args.iota, args.mode, args.seed, args.max_retries)?;
    let run = drive(&g, &cfg, args.codegree)?;
    let spec = Spec {
        graph: args.graph.display().to_string(),
        format: args.format,
        gamma: args.gamma,
        iota: args.iota,
        mode: args.mode,
        seed: args.seed,
        max_retries: args.max_retries,
        codegree: args.codegree,
    };
    let payload = Payload {
        colour_count: run.colour_count,
        max_colour: run.max_colour,
        delta: run.delta,
        sigma: run.sigma,
        sigma_hat: run.sigma_hat,
        epsilon: run.epsilon,
        epsilon_rule: run.epsilon_rule,
        budget: run.budget,
        budget_colours: run.budget_colours,
        within_budget: run.within_budget,
        nibble_coloured: run.nibble_coloured,
        greedy_coloured: run.greedy_coloured,
        full_greedy_fallback: run.full_greedy_fallback,
        hard_cap: run.hard_cap,
        rounds: &run.rounds,
        validation: &run.validation,
        colouring: VertexMap(&run.colouring),
    };
    emit("colour", spec, payload, args.json.as_deref())?;
    Ok(if run.validation.passes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
