//! Instance loading: format detection by extension (with `rand_tsp:<n>:<seed>`
//! pseudo-paths for generated instances), the three format parsers and their
//! serialisers.

use std::path::Path;

mod dimacs;
mod pisinger;
mod random;
mod tsplib;

pub use dimacs::{parse_dimacs_clique, serialise_dimacs, DimacsError, DimacsParse};
pub use pisinger::{parse_pisinger, serialise_pisinger, PisingerError};
pub use random::{generate_random_tsp, RandomTspError};
pub use tsplib::{parse_tsplib, serialise_tsplib, TsplibError};

use crate::clique::Graph;
use crate::knapsack::KnapsackInstance;
use crate::tsp::DistanceMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    DimacsClique,
    PisingerKnapsack,
    Tsplib,
    RandomTspSpec,
}

#[derive(Debug, PartialEq)]
pub enum Payload {
    Clique(Graph),
    Knapsack(Vec<KnapsackInstance>),
    Tsp(DistanceMatrix),
}

#[derive(Debug)]
pub struct InstanceFile {
    pub path: String,
    pub format: Format,
    pub payload: Payload,
    pub warnings: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot infer a format from `{0}`; expected .clq/.col, .csv/.kp, .tsp or rand_tsp:<n>:<seed>")]
    UnknownFormat(String),
    #[error("malformed random spec `{0}`; expected rand_tsp:<n>:<seed>")]
    BadRandomSpec(String),
    #[error("reading {0}: {1}")]
    Read(String, std::io::Error),
    #[error(transparent)]
    Dimacs(#[from] DimacsError),
    #[error(transparent)]
    Pisinger(#[from] PisingerError),
    #[error(transparent)]
    Tsplib(#[from] TsplibError),
    #[error(transparent)]
    RandomTsp(#[from] RandomTspError),
}

pub fn detect_format(path: &str) -> Option<Format> {
    if path.starts_with("rand_tsp:") {
        return Some(Format::RandomTspSpec);
    }
    match Path::new(path).extension()?.to_str()? {
        "clq" | "col" => Some(Format::DimacsClique),
        "csv" | "kp" => Some(Format::PisingerKnapsack),
        "tsp" => Some(Format::Tsplib),
        _ => None,
    }
}

pub fn load(path: &str) -> Result<InstanceFile, IoError> {
    let format = detect_format(path).ok_or_else(|| IoError::UnknownFormat(path.to_string()))?;
    load_with_format(path, format)
}

pub fn load_with_format(path: &str, format: Format) -> Result<InstanceFile, IoError> {
    if format == Format::RandomTspSpec {
        let (n, seed) = parse_random_spec(path)?;
        return Ok(InstanceFile {
            path: path.to_string(),
            format,
            payload: Payload::Tsp(generate_random_tsp(n, seed)?),
            warnings: Vec::new(),
        });
    }
    let text =
        std::fs::read_to_string(path).map_err(|e| IoError::Read(path.to_string(), e))?;
    let mut warnings = Vec::new();
    let payload = match format {
        Format::DimacsClique => {
            let parsed = parse_dimacs_clique(&text)?;
            warnings = parsed.warnings;
            Payload::Clique(parsed.graph)
        }
        Format::PisingerKnapsack => Payload::Knapsack(parse_pisinger(&text)?),
        Format::Tsplib => Payload::Tsp(parse_tsplib(&text)?),
        Format::RandomTspSpec => unreachable!(),
    };
    Ok(InstanceFile {
        path: path.to_string(),
        format,
        payload,
        warnings,
    })
}

fn parse_random_spec(spec: &str) -> Result<(usize, u64), IoError> {
    let bad = || IoError::BadRandomSpec(spec.to_string());
    let mut parts = spec.split(':');
    if parts.next() != Some("rand_tsp") {
        return Err(bad());
    }
    let n = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    let seed = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((n, seed))
}
