//! Line-oriented `key = value` bench configuration with an instance list.
//!
//! ```text
//! # anything after '#' is a comment
//! skeletons = ordered,unordered
//! workers = 1,2,4,8
//! repeats = 10
//! timeout = 300
//! instance = clique:data/fig1.clq
//! instance = tsp:rand_tsp:10:7
//! ```
//!
//! Every key except `instance` takes its last occurrence; `instance` lines
//! accumulate. The part before the first `:` names the problem; the rest is
//! a file path or a synthetic-instance spec understood by the loader.

use std::time::Duration;

use bnb_core::OrderedMode;

use crate::grid::Skeleton;
use crate::instance::ProblemKind;

/// One `instance =` line: a problem kind plus a path or generator spec.
#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub kind: ProblemKind,
    pub source: String,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub instances: Vec<InstanceSpec>,
    pub skeletons: Vec<Skeleton>,
    pub workers: Vec<usize>,
    pub repeats: usize,
    pub timeout: Option<Duration>,
    pub spawn_depth: usize,
    pub diversify: bool,
    pub mode: OrderedMode,
    pub seed: u64,
    pub epsilon: f64,
    pub rsd_threshold: f64,
    pub min_runtime: f64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            instances: Vec::new(),
            skeletons: vec![Skeleton::Ordered],
            workers: vec![1, 2, 4, 8],
            repeats: 10,
            timeout: Some(Duration::from_secs(600)),
            spawn_depth: 1,
            diversify: false,
            mode: OrderedMode::Deterministic,
            seed: 1,
            epsilon: 0.15,
            rsd_threshold: 0.10,
            min_runtime: 5.0,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("line {0}: expected `key = value`, got {1:?}")]
    NotKeyValue(usize, String),
    #[error("line {0}: unknown key {1:?}")]
    UnknownKey(usize, String),
    #[error("line {0}: bad value for {1}: {2}")]
    BadValue(usize, &'static str, String),
}

fn parse_list<T: std::str::FromStr>(
    line: usize,
    key: &'static str,
    value: &str,
) -> Result<Vec<T>, ConfigError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| {
            part.parse()
                .map_err(|_| ConfigError::BadValue(line, key, part.to_string()))
        })
        .collect()
}

fn parse_one<T: std::str::FromStr>(
    line: usize,
    key: &'static str,
    value: &str,
) -> Result<T, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError::BadValue(line, key, value.to_string()))
}

pub fn parse_bench_config(text: &str) -> Result<BenchConfig, ConfigError> {
    let mut config = BenchConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| ConfigError::NotKeyValue(line, content.to_string()))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "skeletons" => config.skeletons = parse_list(line, "skeletons", value)?,
            "workers" => config.workers = parse_list(line, "workers", value)?,
            "repeats" => config.repeats = parse_one(line, "repeats", value)?,
            "timeout" => {
                let secs: f64 = parse_one(line, "timeout", value)?;
                config.timeout = if secs > 0.0 {
                    Some(Duration::from_secs_f64(secs))
                } else {
                    None
                };
            }
            "spawn_depth" => config.spawn_depth = parse_one(line, "spawn_depth", value)?,
            "diversify" => config.diversify = parse_one(line, "diversify", value)?,
            "mode" => {
                config.mode = match value {
                    "det" => OrderedMode::Deterministic,
                    "live" => OrderedMode::LiveBounds,
                    other => {
                        return Err(ConfigError::BadValue(line, "mode", other.to_string()))
                    }
                };
            }
            "seed" => config.seed = parse_one(line, "seed", value)?,
            "epsilon" => config.epsilon = parse_one(line, "epsilon", value)?,
            "rsd_threshold" => config.rsd_threshold = parse_one(line, "rsd_threshold", value)?,
            "min_runtime" => config.min_runtime = parse_one(line, "min_runtime", value)?,
            "instance" => {
                let (kind, source) = value.split_once(':').ok_or_else(|| {
                    ConfigError::BadValue(line, "instance", value.to_string())
                })?;
                let kind: ProblemKind = kind
                    .trim()
                    .parse()
                    .map_err(|_| ConfigError::BadValue(line, "instance", value.to_string()))?;
                config.instances.push(InstanceSpec {
                    kind,
                    source: source.trim().to_string(),
                });
            }
            other => return Err(ConfigError::UnknownKey(line, other.to_string())),
        }
    }
    Ok(config)
}
