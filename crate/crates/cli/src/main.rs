//! Command-line front end for the sampling toolkit.
//!
//! Subcommands: `generate` (random graphs), `sample` (draw one sample),
//! `experiment` (sampler × ratio × repetition sweeps), `verify-bound`
//! (a-posteriori sample-quality certificate), `centrality` (full-graph
//! eigenvector centrality dump).
//!
//! Every command is deterministic given its full flag set: all randomness
//! flows from the `--seed` flag through named stream derivation, never
//! from global RNG state. Exit codes: 0 success, 2 configuration error,
//! 3 I/O error, 4 numerical failure.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use tcec_core::bound::{verify_bound_with_limit, BoundReport, DEFAULT_DENSE_LIMIT};
use tcec_core::eval::{run_experiment, Sampler};
use tcec_core::graph::{generate_er, load_edge_list, Graph, MergePolicy, NodeId};
use tcec_core::spectral::{power_iteration, PowerConfig};
use tcec_core::tcec::{tcec_sample, TcecConfig};

// ---------------------------------------------------------------------------
// Failure handling: one type that knows its exit code.

const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_CONFIG, message: message.into() }
    }

    fn io(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_IO, message: message.into() }
    }
}

impl From<tcec_core::Error> for Failure {
    fn from(e: tcec_core::Error) -> Failure {
        use tcec_core::Error as E;
        let code = match &e {
            E::Parse { .. } | E::EmptyGraph(_) | E::Io(_) => EXIT_IO,
            E::InvalidArgument(_) => EXIT_CONFIG,
            E::Numerical(_) | E::Sampling(_) | E::Undefined(_) => EXIT_NUMERICAL,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

// ---------------------------------------------------------------------------
// Argument surface.

#[derive(Parser)]
#[command(
    name = "tcec",
    version,
    about = "Centrality-preserving graph sampling: samplers, diagnostics, experiments"
)]
struct Cli {
    /// Worker threads for parallel sections (default: all available cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an Erdős–Rényi random graph as an edge-list file.
    Generate(GenerateArgs),
    /// Draw one sample and write the node list (original labels).
    Sample(SampleArgs),
    /// Sweep samplers × ratios × repetitions; write CSV rows and a JSON aggregate.
    Experiment(ExperimentArgs),
    /// Evaluate the sampling-quality certificate on one sample (JSON report).
    VerifyBound(VerifyBoundArgs),
    /// Compute full-graph eigenvector centrality as CSV `node,score`.
    Centrality(CentralityArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of nodes.
    #[arg(long, short = 'n')]
    nodes: usize,
    /// Independent edge probability in [0, 1].
    #[arg(long, short = 'p')]
    edge_prob: f64,
    /// Generate a directed graph.
    #[arg(long)]
    directed: bool,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output edge-list path.
    #[arg(long, short = 'o')]
    output: PathBuf,
}

#[derive(Args)]
#[command(group(ArgGroup::new("amount").required(true).args(["size", "ratio"])))]
struct SampleArgs {
    /// Input edge-list path.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Treat the input as directed.
    #[arg(long)]
    directed: bool,
    /// Expect a third weight column in the input.
    #[arg(long)]
    weighted: bool,
    /// Sampler: uniform, rw, mh, dw, bfs, snowball, forest_fire, expansion, tcec.
    #[arg(long, short = 's')]
    sampler: String,
    /// Absolute sample size (exclusive with --ratio).
    #[arg(long)]
    size: Option<usize>,
    /// Sample size as a fraction of the largest strongly connected
    /// component, in (0, 1] (exclusive with --size).
    #[arg(long)]
    ratio: Option<f64>,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path for the node list (stdout when omitted).
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Also write the sample's induced subgraph as an edge list.
    #[arg(long)]
    induced_output: Option<PathBuf>,
    /// Snowball branching factor.
    #[arg(long, default_value_t = 2)]
    snowball_k: usize,
    /// Forest-fire burn probability in (0, 1).
    #[arg(long, default_value_t = 0.7)]
    burn_prob: f64,
    /// Rescoring/selection probability for tcec (default 0.5).
    #[arg(long)]
    tcec_p: Option<f64>,
    /// Degree-blend weight for tcec in [0, 1] (default: 0.5 directed, 0 undirected).
    #[arg(long)]
    tcec_alpha: Option<f64>,
    /// Leaderboard capacity for tcec (default 100).
    #[arg(long)]
    tcec_board: Option<usize>,
    /// Random-walk initialization size for tcec (default ⌈m/5⌉).
    #[arg(long)]
    tcec_init: Option<usize>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config file; flags override its values, which override defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Input edge-list path.
    #[arg(long, short = 'i')]
    input: Option<PathBuf>,
    /// Treat the input as directed (`--directed` or `--directed false`).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    directed: Option<bool>,
    /// Expect a weight column (`--weighted` or `--weighted false`).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    weighted: Option<bool>,
    /// Comma-separated sampler names (default: all samplers).
    #[arg(long, value_delimiter = ',')]
    samplers: Option<Vec<String>>,
    /// Comma-separated sample ratios in (0, 1].
    #[arg(long, value_delimiter = ',')]
    ratios: Option<Vec<f64>>,
    /// Repetitions per (sampler, ratio) cell.
    #[arg(long)]
    repetitions: Option<u32>,
    /// Base seed; per-cell seeds are derived from it by name.
    #[arg(long)]
    seed: Option<u64>,
    /// Moving-window width as a fraction of the sample size.
    #[arg(long)]
    window_frac: Option<f64>,
    /// Snowball branching factor.
    #[arg(long)]
    snowball_k: Option<usize>,
    /// Forest-fire burn probability in (0, 1).
    #[arg(long)]
    burn_prob: Option<f64>,
    /// Rescoring/selection probability for tcec.
    #[arg(long)]
    tcec_p: Option<f64>,
    /// Degree-blend weight for tcec.
    #[arg(long)]
    tcec_alpha: Option<f64>,
    /// Per-run CSV output path (stdout when no output is given at all).
    #[arg(long)]
    out_csv: Option<PathBuf>,
    /// Aggregate JSON output path.
    #[arg(long)]
    out_json: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("pick").required(true).args(["nodes", "sampler"])))]
struct VerifyBoundArgs {
    /// Input edge-list path.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Treat the input as directed.
    #[arg(long)]
    directed: bool,
    /// Expect a third weight column in the input.
    #[arg(long)]
    weighted: bool,
    /// Comma-separated node labels forming the sample (exclusive with --sampler).
    #[arg(long, value_delimiter = ',')]
    nodes: Option<Vec<String>>,
    /// Draw the sample with this sampler instead of listing nodes.
    #[arg(long, short = 's')]
    sampler: Option<String>,
    /// Absolute sample size (with --sampler).
    #[arg(long)]
    size: Option<usize>,
    /// Sample size as a fraction of the largest SCC, in (0, 1] (with --sampler).
    #[arg(long)]
    ratio: Option<f64>,
    /// RNG seed (with --sampler).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path for the JSON report (stdout when omitted).
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CentralityArgs {
    /// Input edge-list path.
    #[arg(long, short = 'i')]
    input: PathBuf,
    /// Treat the input as directed.
    #[arg(long)]
    directed: bool,
    /// Expect a third weight column in the input.
    #[arg(long)]
    weighted: bool,
    /// Output path for the `node,score` CSV (stdout when omitted).
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Entry point.

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(EXIT_CONFIG);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot size the worker pool: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::VerifyBound(args) => cmd_verify_bound(args),
        Command::Centrality(args) => cmd_centrality(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing.

fn load_graph(path: &Path, directed: bool, weighted: bool) -> Result<Graph, Failure> {
    if !path.exists() {
        return Err(Failure::io(format!("input file not found: {}", path.display())));
    }
    Ok(load_edge_list(path, directed, weighted, MergePolicy::Sum)?)
}

fn write_artifact(path: Option<&Path>, content: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Renders `key = value` provenance lines that edge-list and CSV readers
/// treat as comments.
fn comment_block(pairs: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (key, value) in pairs {
        let _ = writeln!(out, "# {key} = {value}");
    }
    out
}

fn fmt_opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => "default".to_string(),
    }
}

/// Sample size from an exclusive size/ratio pair, against an `n`-node graph.
fn resolve_size(size: Option<usize>, ratio: Option<f64>, n: usize) -> Result<usize, Failure> {
    match (size, ratio) {
        (Some(s), None) => Ok(s),
        (None, Some(r)) => {
            if !(r > 0.0 && r <= 1.0) {
                return Err(Failure::config(format!("ratio must be in (0, 1], got {r}")));
            }
            Ok((r * n as f64).round() as usize)
        }
        _ => Err(Failure::config("give exactly one of --size and --ratio")),
    }
}

fn dense_limit_from_env() -> Result<usize, Failure> {
    match std::env::var("TCEC_DENSE_LIMIT") {
        Ok(raw) => raw.trim().parse::<usize>().map_err(|_| {
            Failure::config(format!(
                "TCEC_DENSE_LIMIT must be a nonnegative integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_DENSE_LIMIT),
        Err(e) => Err(Failure::config(format!("cannot read TCEC_DENSE_LIMIT: {e}"))),
    }
}

// ---------------------------------------------------------------------------
// generate

fn cmd_generate(args: GenerateArgs) -> CmdResult {
    if !(0.0..=1.0).contains(&args.edge_prob) {
        return Err(Failure::config(format!(
            "edge probability must be in [0, 1], got {}",
            args.edge_prob
        )));
    }
    let g = generate_er(args.nodes, args.edge_prob, args.directed, args.seed)?;
    let mut content = comment_block(&[
        ("tool", "tcec generate".into()),
        ("nodes", args.nodes.to_string()),
        ("edge_prob", args.edge_prob.to_string()),
        ("directed", args.directed.to_string()),
        ("seed", args.seed.to_string()),
    ]);
    let mut body = Vec::new();
    g.write_edge_list(&mut body, false)?;
    content.push_str(std::str::from_utf8(&body).expect("edge list is ASCII"));
    write_artifact(Some(&args.output), &content)
}

// ---------------------------------------------------------------------------
// sample

fn build_tcec_config(
    g: &Graph,
    m: usize,
    seed: u64,
    p: Option<f64>,
    alpha: Option<f64>,
    board: Option<usize>,
    init: Option<usize>,
) -> TcecConfig {
    let mut cfg = TcecConfig::with_defaults(g, m, seed);
    if let Some(p) = p {
        cfg.p = p;
    }
    if let Some(alpha) = alpha {
        cfg.alpha = alpha;
    }
    if let Some(s) = board {
        cfg.s = s;
    }
    if let Some(k) = init {
        cfg.k_init = k;
    }
    cfg
}

/// Builds a sampler from its CLI name plus parameter flags.
fn configure_sampler(
    name: &str,
    snowball_k: usize,
    burn_prob: f64,
    tcec_p: Option<f64>,
    tcec_alpha: Option<f64>,
) -> Result<Sampler, Failure> {
    Ok(match Sampler::parse(name)? {
        Sampler::Snowball { .. } => Sampler::Snowball { branching: snowball_k },
        Sampler::ForestFire { .. } => Sampler::ForestFire { p_burn: burn_prob },
        Sampler::Tcec { .. } => Sampler::Tcec { p: tcec_p, alpha: tcec_alpha },
        other => other,
    })
}

fn cmd_sample(args: SampleArgs) -> CmdResult {
    let full = load_graph(&args.input, args.directed, args.weighted)?;
    let (g, _) = full.largest_strongly_connected_component()?;
    let m = resolve_size(args.size, args.ratio, g.n())?;

    let state = if args.sampler == "tcec" {
        let cfg = build_tcec_config(
            &g,
            m,
            args.seed,
            args.tcec_p,
            args.tcec_alpha,
            args.tcec_board,
            args.tcec_init,
        );
        tcec_sample(&g, &cfg)?
    } else {
        let sampler = configure_sampler(
            &args.sampler,
            args.snowball_k,
            args.burn_prob,
            args.tcec_p,
            args.tcec_alpha,
        )?;
        sampler.run(&g, m, args.seed)?
    };

    let mut content = comment_block(&[
        ("tool", "tcec sample".into()),
        ("input", args.input.display().to_string()),
        ("directed", args.directed.to_string()),
        ("weighted", args.weighted.to_string()),
        ("sampler", args.sampler.clone()),
        ("size", m.to_string()),
        ("seed", args.seed.to_string()),
        ("scc_nodes", g.n().to_string()),
    ]);
    for &v in state.order() {
        content.push_str(g.label(v));
        content.push('\n');
    }
    write_artifact(args.output.as_deref(), &content)?;

    if let Some(path) = &args.induced_output {
        let (induced, _) = g.induced_subgraph(&state.members_sorted())?;
        let mut body = Vec::new();
        induced.write_edge_list(&mut body, args.weighted)?;
        let text = String::from_utf8(body)
            .map_err(|_| Failure::io("induced edge list is not UTF-8".to_string()))?;
        write_artifact(Some(path), &text)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// experiment

/// Optional values accepted from the JSON config file. Unknown keys are
/// rejected so typos fail loudly.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentFile {
    input: Option<PathBuf>,
    directed: Option<bool>,
    weighted: Option<bool>,
    samplers: Option<Vec<String>>,
    ratios: Option<Vec<f64>>,
    repetitions: Option<u32>,
    seed: Option<u64>,
    window_frac: Option<f64>,
    snowball_k: Option<usize>,
    burn_prob: Option<f64>,
    tcec_p: Option<f64>,
    tcec_alpha: Option<f64>,
    out_csv: Option<PathBuf>,
    out_json: Option<PathBuf>,
}

/// The fully resolved experiment configuration; echoed into every artifact.
#[derive(Debug, Serialize)]
struct ExperimentConfig {
    input: PathBuf,
    directed: bool,
    weighted: bool,
    samplers: Vec<String>,
    ratios: Vec<f64>,
    repetitions: u32,
    seed: u64,
    window_frac: f64,
    snowball_k: usize,
    burn_prob: f64,
    tcec_p: Option<f64>,
    tcec_alpha: Option<f64>,
    out_csv: Option<PathBuf>,
    out_json: Option<PathBuf>,
}

const ALL_SAMPLERS: [&str; 9] = [
    "uniform",
    "rw",
    "mh",
    "dw",
    "bfs",
    "snowball",
    "forest_fire",
    "expansion",
    "tcec",
];
const DEFAULT_RATIOS: [f64; 5] = [0.05, 0.1, 0.2, 0.3, 0.4];
const DEFAULT_REPETITIONS: u32 = 10;
const DEFAULT_WINDOW_FRAC: f64 = 0.1;

fn resolve_experiment_config(args: ExperimentArgs) -> Result<ExperimentConfig, Failure> {
    let file: ExperimentFile = match &args.config {
        Some(path) => {
            let raw = fs::read_to_string(path)
                .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&raw).map_err(|e| {
                Failure::config(format!("config file {}: {e}", path.display()))
            })?
        }
        None => ExperimentFile::default(),
    };
    let input = args
        .input
        .or(file.input)
        .ok_or_else(|| Failure::config("no input graph: give --input or set it in --config"))?;
    Ok(ExperimentConfig {
        input,
        directed: args.directed.or(file.directed).unwrap_or(false),
        weighted: args.weighted.or(file.weighted).unwrap_or(false),
        samplers: args
            .samplers
            .or(file.samplers)
            .unwrap_or_else(|| ALL_SAMPLERS.iter().map(|s| s.to_string()).collect()),
        ratios: args.ratios.or(file.ratios).unwrap_or_else(|| DEFAULT_RATIOS.to_vec()),
        repetitions: args.repetitions.or(file.repetitions).unwrap_or(DEFAULT_REPETITIONS),
        seed: args.seed.or(file.seed).unwrap_or(0),
        window_frac: args.window_frac.or(file.window_frac).unwrap_or(DEFAULT_WINDOW_FRAC),
        snowball_k: args.snowball_k.or(file.snowball_k).unwrap_or(2),
        burn_prob: args.burn_prob.or(file.burn_prob).unwrap_or(0.7),
        tcec_p: args.tcec_p.or(file.tcec_p),
        tcec_alpha: args.tcec_alpha.or(file.tcec_alpha),
        out_csv: args.out_csv.or(file.out_csv),
        out_json: args.out_json.or(file.out_json),
    })
}

fn experiment_comment_block(cfg: &ExperimentConfig, scc_nodes: usize) -> String {
    let join =
        |v: &[String]| -> String { v.join(",") };
    let ratios = cfg.ratios.iter().map(|r| r.to_string()).collect::<Vec<_>>();
    comment_block(&[
        ("tool", "tcec experiment".into()),
        ("input", cfg.input.display().to_string()),
        ("directed", cfg.directed.to_string()),
        ("weighted", cfg.weighted.to_string()),
        ("samplers", join(&cfg.samplers)),
        ("ratios", ratios.join(",")),
        ("repetitions", cfg.repetitions.to_string()),
        ("seed", cfg.seed.to_string()),
        ("window_frac", cfg.window_frac.to_string()),
        ("snowball_k", cfg.snowball_k.to_string()),
        ("burn_prob", cfg.burn_prob.to_string()),
        ("tcec_p", fmt_opt(&cfg.tcec_p)),
        ("tcec_alpha", fmt_opt(&cfg.tcec_alpha)),
        ("scc_nodes", scc_nodes.to_string()),
    ])
}

fn cmd_experiment(args: ExperimentArgs) -> CmdResult {
    let cfg = resolve_experiment_config(args)?;
    let samplers: Vec<Sampler> = cfg
        .samplers
        .iter()
        .map(|name| {
            configure_sampler(name, cfg.snowball_k, cfg.burn_prob, cfg.tcec_p, cfg.tcec_alpha)
        })
        .collect::<Result<_, _>>()?;

    let full = load_graph(&cfg.input, cfg.directed, cfg.weighted)?;
    let (g, _) = full.largest_strongly_connected_component()?;

    let table = run_experiment(
        &g,
        &samplers,
        &cfg.ratios,
        cfg.repetitions,
        cfg.seed,
        cfg.window_frac,
    )?;

    let csv = format!("{}{}", experiment_comment_block(&cfg, g.n()), table.to_csv());
    let json = {
        let mut v = table.aggregate_json();
        let map = v.as_object_mut().expect("aggregate is an object");
        map.insert(
            "config".to_string(),
            serde_json::to_value(&cfg).expect("config serializes"),
        );
        map.insert("scc_nodes".to_string(), g.n().into());
        format!("{:#}\n", v)
    };

    match (&cfg.out_csv, &cfg.out_json) {
        (None, None) => write_artifact(None, &csv)?,
        (csv_path, json_path) => {
            if let Some(p) = csv_path {
                write_artifact(Some(p), &csv)?;
            }
            if let Some(p) = json_path {
                write_artifact(Some(p), &json)?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify-bound

#[derive(Serialize)]
struct BoundArtifact<'a> {
    #[serde(flatten)]
    report: &'a BoundReport,
    /// Seed that drew the sample; absent for explicitly listed nodes.
    seed: Option<u64>,
    config: serde_json::Value,
}

fn cmd_verify_bound(args: VerifyBoundArgs) -> CmdResult {
    let full = load_graph(&args.input, args.directed, args.weighted)?;
    let (g, _) = full.largest_strongly_connected_component()?;
    let dense_limit = dense_limit_from_env()?;

    let (sample, seed_used, picked_by): (Vec<NodeId>, Option<u64>, String) =
        match (&args.nodes, &args.sampler) {
            (Some(labels), None) => {
                let by_label: HashMap<&str, NodeId> =
                    g.node_ids().map(|v| (g.label(v), v)).collect();
                let mut sample = Vec::with_capacity(labels.len());
                for label in labels {
                    let Some(&v) = by_label.get(label.trim()) else {
                        return Err(Failure::config(format!(
                            "node {label:?} is not in the largest strongly connected component"
                        )));
                    };
                    sample.push(v);
                }
                (sample, None, "nodes".to_string())
            }
            (None, Some(name)) => {
                let m = resolve_size(args.size, args.ratio, g.n())?;
                let sampler = configure_sampler(name, 2, 0.7, None, None)?;
                let state = sampler.run(&g, m, args.seed)?;
                (state.members_sorted(), Some(args.seed), name.clone())
            }
            _ => unreachable!("clap group enforces exactly one of --nodes/--sampler"),
        };

    let report = verify_bound_with_limit(&g, &sample, dense_limit)?;
    let artifact = BoundArtifact {
        report: &report,
        seed: seed_used,
        config: serde_json::json!({
            "tool": "tcec verify-bound",
            "input": args.input.display().to_string(),
            "directed": args.directed,
            "weighted": args.weighted,
            "picked_by": picked_by,
            "sample_size": sample.len(),
            "dense_limit": dense_limit,
            "scc_nodes": g.n(),
        }),
    };
    let json = format!(
        "{:#}\n",
        serde_json::to_value(&artifact).expect("report serializes")
    );
    write_artifact(args.output.as_deref(), &json)
}

// ---------------------------------------------------------------------------
// centrality

fn cmd_centrality(args: CentralityArgs) -> CmdResult {
    let g = load_graph(&args.input, args.directed, args.weighted)?;
    let cv = power_iteration(&g, &PowerConfig::default())?;
    if !cv.converged {
        return Err(Failure {
            code: EXIT_NUMERICAL,
            message: format!(
                "centrality iteration did not converge within {} iterations \
                 (residual {:.3e}); the graph may be periodic or reducible",
                cv.iterations, cv.residual
            ),
        });
    }
    let mut content = comment_block(&[
        ("tool", "tcec centrality".into()),
        ("input", args.input.display().to_string()),
        ("directed", args.directed.to_string()),
        ("weighted", args.weighted.to_string()),
        ("eigenvalue", cv.eigenvalue.to_string()),
        ("iterations", cv.iterations.to_string()),
    ]);
    content.push_str("node,score\n");
    for v in g.node_ids() {
        let _ = writeln!(content, "{},{}", g.label(v), cv.values[v.index()]);
    }
    write_artifact(args.output.as_deref(), &content)
}
