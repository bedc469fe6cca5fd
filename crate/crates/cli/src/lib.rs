//! Benchmark harness and experiment plumbing behind the `bnb` binary.
//!
//! The pipeline is: load instances ([`instance`]), run a grid of
//! (instance × skeleton × workers × repeats) cells strictly one at a time
//! ([`grid`]), gate on objective agreement, then reduce the records to
//! per-configuration statistics and replicability verdicts ([`report`]) and
//! serialise everything for external tools ([`emit`]). Bench runs are
//! described by a line-oriented config file ([`config`]).

pub mod config;
pub mod emit;
pub mod grid;
pub mod instance;
pub mod report;
pub mod synth;

pub use config::{parse_bench_config, BenchConfig, ConfigError};
pub use emit::{
    emit_results, render_records_csv, render_records_json, render_summary_csv, OutputFormat,
};
pub use grid::{correctness_gate, run_grid, GateFailure, GridError, RunRecord, Skeleton};
pub use instance::{load_instances, AnyProblem, BenchInstance, CellOutcome, ProblemKind, RunParams};
pub use report::{
    cdf_points, property_report, summarise, CdfPoint, ConfigStats, PairReport, PropertyConfig,
    PropertyReport, RepeatabilityReport, Verdict,
};
