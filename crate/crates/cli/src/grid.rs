//! Executes experiment grids cell by cell and gates on objective agreement.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use bnb_core::{CancelToken, SearchError, SearchStats};

use crate::config::BenchConfig;
use crate::instance::{load_instances, BenchInstance, LoadError, RunParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Skeleton {
    Seq,
    Ordered,
    Unordered,
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let name = match self {
            Skeleton::Seq => "seq",
            Skeleton::Ordered => "ordered",
            Skeleton::Unordered => "unordered",
        };
        f.write_str(name)
    }
}

impl FromStr for Skeleton {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "seq" => Ok(Skeleton::Seq),
            "ordered" => Ok(Skeleton::Ordered),
            "unordered" => Ok(Skeleton::Unordered),
            other => Err(format!("unknown skeleton {other:?}")),
        }
    }
}

/// One grid cell execution. A censored record marks a run that hit the
/// per-run timeout: it carries no objective and no counters and is excluded
/// from every statistic except the censoring count.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub instance: String,
    pub skeleton: Skeleton,
    pub workers: usize,
    pub spawn_depth: usize,
    pub diversify: bool,
    pub seed: u64,
    pub repeat: usize,
    pub censored: bool,
    pub wall_time: Duration,
    pub objective: Option<u64>,
    pub stats: SearchStats,
}

#[derive(Debug, thiserror::Error)]
pub enum GridError {
    #[error("config lists no instances")]
    NoInstances,
    #[error("config asks for zero repeats")]
    ZeroRepeats,
    #[error("config lists no skeletons")]
    NoSkeletons,
    #[error("config lists no worker counts")]
    NoWorkers,
    #[error("instance {source_id}: {error}")]
    Load { source_id: String, error: LoadError },
    #[error("instance {instance} ({skeleton}, {workers} workers): {error}")]
    Search {
        instance: String,
        skeleton: Skeleton,
        workers: usize,
        error: SearchError,
    },
}

/// Runs every cell of the grid strictly one at a time so cells never
/// contend for cores, in a fixed order: instance, then skeleton, then
/// worker count, then repeat. The sequential skeleton ignores the worker
/// axis and runs once per repeat. Unordered repeats get distinct seeds
/// (`seed + repeat`) so the inherent scheduling randomness shows up across
/// repeats while staying reproducible.
pub fn run_grid(config: &BenchConfig) -> Result<Vec<RunRecord>, GridError> {
    if config.instances.is_empty() {
        return Err(GridError::NoInstances);
    }
    if config.repeats == 0 {
        return Err(GridError::ZeroRepeats);
    }
    if config.skeletons.is_empty() {
        return Err(GridError::NoSkeletons);
    }
    if config.workers.is_empty() {
        return Err(GridError::NoWorkers);
    }

    let mut loaded: Vec<BenchInstance> = Vec::new();
    for spec in &config.instances {
        let (instances, _) = load_instances(spec.kind, &spec.source).map_err(|error| {
            GridError::Load { source_id: spec.source.clone(), error }
        })?;
        loaded.extend(instances);
    }

    let mut records = Vec::new();
    for instance in &loaded {
        for &skeleton in &config.skeletons {
            let workers: &[usize] = match skeleton {
                Skeleton::Seq => &[1],
                _ => &config.workers,
            };
            for &workers in workers {
                for repeat in 0..config.repeats {
                    records.push(run_cell(config, instance, skeleton, workers, repeat)?);
                }
            }
        }
    }
    Ok(records)
}

fn run_cell(
    config: &BenchConfig,
    instance: &BenchInstance,
    skeleton: Skeleton,
    workers: usize,
    repeat: usize,
) -> Result<RunRecord, GridError> {
    let seed = match skeleton {
        Skeleton::Unordered => config.seed + repeat as u64,
        _ => config.seed,
    };
    let params = RunParams {
        workers,
        spawn_depth: config.spawn_depth,
        diversify: config.diversify,
        mode: config.mode,
        seed,
    };
    let cancel = match config.timeout {
        Some(timeout) => CancelToken::with_timeout(timeout),
        None => CancelToken::never(),
    };
    let start = Instant::now();
    let outcome = instance.problem.run(skeleton, &params, &cancel);
    let wall_time = start.elapsed();

    let record = |censored, objective, stats| RunRecord {
        instance: instance.id.clone(),
        skeleton,
        workers,
        spawn_depth: config.spawn_depth,
        diversify: config.diversify,
        seed,
        repeat,
        censored,
        wall_time,
        objective,
        stats,
    };
    match outcome {
        Ok(cell) => Ok(record(false, Some(cell.objective), cell.stats)),
        Err(SearchError::Cancelled) => Ok(record(true, None, SearchStats::default())),
        Err(error) => Err(GridError::Search {
            instance: instance.id.clone(),
            skeleton,
            workers,
            error,
        }),
    }
}

/// A correctness-gate violation: one instance produced more than one
/// objective value across its non-censored records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateFailure {
    pub instance: String,
    pub values: Vec<u64>,
}

impl fmt::Display for GateFailure {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}: objective values {:?} disagree", self.instance, self.values)
    }
}

/// Checks that every instance's non-censored records agree on the
/// objective. Runs before, and independently of, any timing statistic.
pub fn correctness_gate(records: &[RunRecord]) -> Result<(), Vec<GateFailure>> {
    let mut seen: Vec<(&str, Vec<u64>)> = Vec::new();
    for record in records {
        let Some(objective) = record.objective else { continue };
        match seen.iter_mut().find(|(id, _)| *id == record.instance) {
            Some((_, values)) => {
                if !values.contains(&objective) {
                    values.push(objective);
                }
            }
            None => seen.push((&record.instance, vec![objective])),
        }
    }
    let failures: Vec<GateFailure> = seen
        .into_iter()
        .filter(|(_, values)| values.len() > 1)
        .map(|(instance, values)| GateFailure { instance: instance.to_string(), values })
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}
