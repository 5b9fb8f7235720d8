//! `strong` — strong edge colouring with validation and the `"u-v"`-keyed
//! interchange maps.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use serde::Serialize;
use sparsecol::{
    strong_edge_colour, validate_strong, StrongColouring, StrongConfig, StrongReport,
    StrongValidation, DEFAULT_STRONG_EPSILON,
};

use crate::commands::colour::{build_config, ModeArg};
use crate::report::{emit, load_graph, CliError, FormatArg};

#[derive(Args)]
pub struct StrongArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,

    /// Input encoding (defaults from the file name).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,

    /// Core savings constant in [0, 0.3].
    #[arg(long, default_value_t = DEFAULT_STRONG_EPSILON)]
    epsilon: f64,

    /// Intensity of the core colouring rounds.
    #[arg(long, default_value_t = 4.0)]
    gamma: f64,

    /// Slack fraction of the core colouring rounds.
    #[arg(long, default_value_t = 0.3)]
    iota: f64,

    #[arg(long, value_enum, default_value_t = ModeArg::Practical)]
    mode: ModeArg,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, default_value_t = 64)]
    max_retries: u32,

    /// Report file; stdout when omitted.
    #[arg(long = "json", short = 'o')]
    json: Option<PathBuf>,
}

#[derive(Serialize)]
struct Spec {
    graph: String,
    format: Option<FormatArg>,
    epsilon: f64,
    gamma: f64,
    iota: f64,
    mode: ModeArg,
    seed: u64,
    max_retries: u32,
}

#[derive(Serialize)]
struct Payload<'a> {
    #[serde(flatten)]
    report: &'a StrongReport,
    validation: &'a StrongValidation,
    colouring: &'a StrongColouring,
}

pub fn run(args: StrongArgs) -> Result<ExitCode, CliError> {
    let g = load_graph(&args.graph, args.format)?;
    let nibble = build_config(args.gamma, args.iota, args.mode, args.seed, args.max_retries)?;
    let mut cfg = StrongConfig::new(nibble);
    cfg.epsilon = args.epsilon;
    let (colouring, report) =
        strong_edge_colour(&g, &cfg).map_err(|err| CliError::invalid(err.to_string()))?;
    let validation = validate_strong(&g, &colouring);
    let spec = Spec {
        graph: args.graph.display().to_string(),
        format: args.format,
        epsilon: args.epsilon,
        gamma: args.gamma,
        iota: args.iota,
        mode: args.mode,
        seed: args.seed,
        max_retries: args.max_retries,
    };
    let payload = Payload {
        report: &report,
        validation: &validation,
        colouring: &colouring,
    };
    emit("strong", spec, payload, args.json.as_deref())?;
    Ok(if validation.passes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
