//! The `bnb` binary: solve single instances, run benchmark grids, run the
//! built-in self-checks, and inspect reduction traces of the model
//! interpreter.
//!
//! Exit codes: 0 ok, 2 replicability-property failure, 3 correctness-gate
//! failure, 4 usage error (including inconclusive property reports, whose
//! fix is a bigger grid).

mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use bnb_bbm::demo::{demo_initial, demo_tree, DemoProblem};
use bnb_bbm::{
    render_trace, replay_trace, run_admissible, ReplayError, RoundRobinEagerStrengthen,
};
use bnb_core::{CancelToken, OrderedMode};
use bnb_cli::{
    correctness_gate, emit_results, load_instances, parse_bench_config, property_report,
    render_records_csv, render_records_json, run_grid, GridError, OutputFormat, ProblemKind,
    PropertyConfig, RunParams, RunRecord, Skeleton,
};

#[derive(Parser)]
#[command(
    name = "bnb",
    version,
    about = "Parallel branch-and-bound for maximum clique, 0/1 knapsack and symmetric TSP"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print the result.
    Solve(SolveArgs),
    /// Run a benchmark grid described by a config file.
    Bench(BenchArgs),
    /// Run the built-in oracle and property self-checks.
    Verify,
    /// Work with reduction traces of the model interpreter.
    Bbm {
        #[command(subcommand)]
        action: BbmAction,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Problem family: clique, knapsack or tsp.
    #[arg(long, value_parser = ProblemKind::from_str)]
    problem: ProblemKind,
    /// Instance path, or a spec like rand_tsp:<cities>:<seed>.
    #[arg(long)]
    instance: String,
    /// Search engine: seq, ordered or unordered.
    #[arg(long, default_value = "seq", value_parser = Skeleton::from_str)]
    skeleton: Skeleton,
    /// Worker count (defaults to $BNB_WORKERS, then 1).
    #[arg(long)]
    workers: Option<usize>,
    /// Tree depth above which subtrees become parallel tasks.
    #[arg(long, default_value_t = 1)]
    spawn_depth: usize,
    /// Order speculative tasks by discrepancy priorities (ordered skeleton).
    #[arg(long)]
    dds: bool,
    /// Work-stealing seed (unordered skeleton).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Bound sharing in the ordered skeleton: det or live.
    #[arg(long, default_value = "det", value_parser = parse_mode)]
    mode: OrderedMode,
    /// Abort the search after this many seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Emit the run as a machine-readable record: csv or json.
    #[arg(long, value_parser = OutputFormat::from_str)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct BenchArgs {
    /// Grid description: line-oriented key=value plus instance lines.
    #[arg(long)]
    config: PathBuf,
    /// Prefix for the emitted result files.
    #[arg(long, default_value = "bench_results")]
    out: PathBuf,
    /// Result file format: csv or json.
    #[arg(long, default_value = "csv", value_parser = OutputFormat::from_str)]
    format: OutputFormat,
    /// Also emit RSD cumulative-distribution points.
    #[arg(long)]
    cdf: bool,
}

#[derive(Subcommand)]
enum BbmAction {
    /// Print the reference reduction trace of the built-in demo tree.
    Trace {
        /// Model threads driving the reduction.
        #[arg(long, default_value_t = 3)]
        threads: usize,
        /// Emit the trace as JSON instead of the line format.
        #[arg(long)]
        json: bool,
    },
    /// Replay a serialised trace against the built-in demo tree,
    /// checking every step.
    Replay {
        /// Path to a trace in the line format printed by `bbm trace`.
        trace: PathBuf,
        /// Model threads of the initial state.
        #[arg(long, default_value_t = 3)]
        threads: usize,
    },
}

fn parse_mode(s: &str) -> Result<OrderedMode, String> {
    match s {
        "det" => Ok(OrderedMode::Deterministic),
        "live" => Ok(OrderedMode::LiveBounds),
        other => Err(format!("unknown mode {other:?} (expected det or live)")),
    }
}

/// An error that already knows its exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 4, message: message.into() }
    }

    fn gate(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }

    fn run(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Bench(args) => bench(args),
        Command::Verify => Ok(verify::run()),
        Command::Bbm { action } => bbm(action),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn workers_default() -> Result<usize, CliError> {
    match std::env::var("BNB_WORKERS") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("BNB_WORKERS is not a worker count: {value:?}"))),
        Err(_) => Ok(1),
    }
}

fn solve(args: SolveArgs) -> Result<u8, CliError> {
    let workers = match args.workers {
        Some(w) => w,
        None => workers_default()?,
    };
    let (instances, warnings) = load_instances(args.problem, &args.instance)
        .map_err(|e| CliError::usage(e.to_string()))?;
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }
    let params = RunParams {
        workers,
        spawn_depth: args.spawn_depth,
        diversify: args.dds,
        mode: args.mode,
        seed: args.seed,
    };
    let mut records = Vec::new();
    for instance in &instances {
        let cancel = match args.timeout {
            Some(secs) => CancelToken::with_timeout(Duration::from_secs_f64(secs)),
            None => CancelToken::never(),
        };
        let start = Instant::now();
        let outcome = instance
            .problem
            .run(args.skeleton, &params, &cancel)
            .map_err(|e| match e {
                bnb_core::SearchError::Cancelled => CliError::run(format!(
                    "{}: timed out after {:.1}s",
                    instance.id,
                    start.elapsed().as_secs_f64()
                )),
                other => CliError::run(format!("{}: {other}", instance.id)),
            })?;
        let wall_time = start.elapsed();
        match args.format {
            None => println!(
                "{}: objective {} ({}) nodes {} time {:.3}s",
                instance.id,
                outcome.objective,
                outcome.solution,
                outcome.stats.nodes_expanded,
                wall_time.as_secs_f64()
            ),
            Some(_) => records.push(RunRecord {
                instance: instance.id.clone(),
                skeleton: args.skeleton,
                workers,
                spawn_depth: args.spawn_depth,
                diversify: args.dds,
                seed: args.seed,
                repeat: 0,
                censored: false,
                wall_time,
                objective: Some(outcome.objective),
                stats: outcome.stats,
            }),
        }
    }
    match args.format {
        Some(OutputFormat::Csv) => print!("{}", render_records_csv(&records)),
        Some(OutputFormat::Json) => print!("{}", render_records_json(&records)),
        None => {}
    }
    Ok(0)
}

fn bench(args: BenchArgs) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.config.display())))?;
    let config = parse_bench_config(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", args.config.display())))?;
    let records = run_grid(&config).map_err(|e| match e {
        GridError::Search { .. } => CliError::run(e.to_string()),
        other => CliError::usage(other.to_string()),
    })?;
    let finished = records.iter().filter(|r| !r.censored).count();
    println!(
        "{} records ({} finished, {} censored)",
        records.len(),
        finished,
        records.len() - finished
    );

    let written = emit_results(&records, args.format, args.cdf, &args.out)
        .map_err(|e| CliError::run(format!("writing results: {e}")))?;
    for path in &written {
        println!("wrote {}", path.display());
    }

    if let Err(failures) = correctness_gate(&records) {
        for failure in &failures {
            eprintln!("correctness gate: {failure}");
        }
        return Err(CliError::gate(format!(
            "{} instance(s) returned inconsistent objectives",
            failures.len()
        )));
    }
    println!("correctness gate: all instances agree");

    let report = property_report(
        &records,
        &PropertyConfig {
            epsilon: config.epsilon,
            rsd_threshold: config.rsd_threshold,
            min_runtime: config.min_runtime,
            ..PropertyConfig::default()
        },
    );
    print!("{report}");
    Ok(report.exit_code() as u8)
}

fn bbm(action: BbmAction) -> Result<u8, CliError> {
    let tree = demo_tree();
    match action {
        BbmAction::Trace { threads, json } => {
            let initial = demo_initial(&tree, threads)
                .map_err(|e| CliError::usage(format!("initial state: {e}")))?;
            let mut policy = RoundRobinEagerStrengthen::new();
            let (_, trace) = run_admissible(initial, &mut policy, &DemoProblem, &tree)
                .map_err(|e| CliError::run(e.to_string()))?;
            if json {
                let steps: Vec<_> = trace
                    .iter()
                    .map(|s| {
                        serde_json::json!({
                            "step": s.step,
                            "rule": s.rule.to_string(),
                            "thread": s.thread + 1,
                            "incumbent": s.incumbent.to_string(),
                            "queue": s.queue.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::Value::Array(steps))
                        .expect("plain data serialises")
                );
            } else {
                print!("{}", render_trace(&trace));
            }
            Ok(0)
        }
        BbmAction::Replay { trace, threads } => {
            let text = std::fs::read_to_string(&trace)
                .map_err(|e| CliError::usage(format!("{}: {e}", trace.display())))?;
            let initial = demo_initial(&tree, threads)
                .map_err(|e| CliError::usage(format!("initial state: {e}")))?;
            match replay_trace(&text, initial, &DemoProblem, &tree) {
                Ok(final_state) => {
                    println!(
                        "replay ok: {} steps, final incumbent {}",
                        text.lines().filter(|l| !l.trim().is_empty()).count(),
                        final_state.incumbent
                    );
                    Ok(0)
                }
                Err(ReplayError::Parse(e)) => Err(CliError::usage(e.to_string())),
                Err(e) => Err(CliError::gate(e.to_string())),
            }
        }
    }
}
