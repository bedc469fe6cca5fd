//! Instance loading and the dispatch layer that erases the concrete problem
//! type so the grid runner can treat all three problems uniformly.

use std::fmt;
use std::str::FromStr;

use bnb_core::{
    ordered_search_with, sequential_search_with, unordered_search_with, CancelToken, NullObserver,
    OrderedConfig, OrderedMode, SearchError, SearchResult, SearchStats, UnorderedConfig,
};
use bnb_problems::clique::CliqueProblem;
use bnb_problems::io::{load, IoError, Payload};
use bnb_problems::knapsack::KnapsackProblem;
use bnb_problems::tsp::{TourBound, TspProblem};

use crate::grid::Skeleton;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Clique,
    Knapsack,
    Tsp,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let name = match self {
            ProblemKind::Clique => "clique",
            ProblemKind::Knapsack => "knapsack",
            ProblemKind::Tsp => "tsp",
        };
        f.write_str(name)
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "clique" => Ok(ProblemKind::Clique),
            "knapsack" => Ok(ProblemKind::Knapsack),
            "tsp" => Ok(ProblemKind::Tsp),
            other => Err(format!("unknown problem kind {other:?}")),
        }
    }
}

/// A ready-to-search problem with the concrete type erased.
pub enum AnyProblem {
    Clique(CliqueProblem),
    Knapsack(KnapsackProblem),
    Tsp(TspProblem),
}

impl AnyProblem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            AnyProblem::Clique(_) => ProblemKind::Clique,
            AnyProblem::Knapsack(_) => ProblemKind::Knapsack,
            AnyProblem::Tsp(_) => ProblemKind::Tsp,
        }
    }
}

/// One named searchable instance of a bench grid.
pub struct BenchInstance {
    pub id: String,
    pub problem: AnyProblem,
}

/// Knobs for a single search call.
#[derive(Debug, Clone)]
pub struct RunParams {
    pub workers: usize,
    pub spawn_depth: usize,
    pub diversify: bool,
    pub mode: OrderedMode,
    pub seed: u64,
}

/// What a single cell produced: a comparable objective value, a printable
/// solution, and the engine counters.
pub struct CellOutcome {
    pub objective: u64,
    pub solution: String,
    pub stats: SearchStats,
}

fn run_engine<P: bnb_core::Problem>(
    problem: &P,
    skeleton: Skeleton,
    params: &RunParams,
    cancel: &CancelToken,
) -> Result<SearchResult<P>, SearchError> {
    match skeleton {
        Skeleton::Seq => sequential_search_with(problem, &NullObserver, cancel),
        Skeleton::Ordered => ordered_search_with(
            problem,
            &OrderedConfig {
                diversify: params.diversify,
                spawn_depth: params.spawn_depth,
                workers: params.workers,
                mode: params.mode,
            },
            &NullObserver,
            cancel,
        ),
        Skeleton::Unordered => unordered_search_with(
            problem,
            &UnorderedConfig {
                spawn_depth: params.spawn_depth,
                workers: params.workers,
                seed: params.seed,
            },
            &NullObserver,
            cancel,
        ),
    }
}

impl AnyProblem {
    /// Runs one search and reduces the result to a uniform outcome. The
    /// objective is the clique size, the total profit, or the tour length.
    pub fn run(
        &self,
        skeleton: Skeleton,
        params: &RunParams,
        cancel: &CancelToken,
    ) -> Result<CellOutcome, SearchError> {
        match self {
            AnyProblem::Clique(p) => {
                let r = run_engine(p, skeleton, params, cancel)?;
                let ids: Vec<u32> = r
                    .solution
                    .members
                    .iter()
                    .map(|&v| p.graph.original_id(v))
                    .collect();
                Ok(CellOutcome {
                    objective: r.solution.members.len() as u64,
                    solution: format!("vertices {ids:?}"),
                    stats: r.stats,
                })
            }
            AnyProblem::Knapsack(p) => {
                let r = run_engine(p, skeleton, params, cancel)?;
                let ids: Vec<u32> = r
                    .solution
                    .chosen
                    .iter()
                    .map(|&slot| p.instance.original_ids[slot as usize])
                    .collect();
                Ok(CellOutcome {
                    objective: r.solution.profit,
                    solution: format!("items {ids:?} weight {}", r.solution.weight),
                    stats: r.stats,
                })
            }
            AnyProblem::Tsp(p) => {
                let r = run_engine(p, skeleton, params, cancel)?;
                let length = match r.bound {
                    TourBound::Finished(l) => l,
                    TourBound::Open => unreachable!("search returned an unfinished tour"),
                };
                Ok(CellOutcome {
                    objective: length,
                    solution: format!("tour {:?}", r.solution.path),
                    stats: r.stats,
                })
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{0}")]
    Io(#[from] IoError),
    #[error("{path}: file holds a {found} instance but {declared} was requested")]
    KindMismatch {
        path: String,
        declared: ProblemKind,
        found: &'static str,
    },
}

/// Loads one instance source into searchable form. Knapsack files may hold
/// several instances; each becomes its own entry, identified as
/// `path#name`. Warnings from the parser are passed through.
pub fn load_instances(
    kind: ProblemKind,
    source: &str,
) -> Result<(Vec<BenchInstance>, Vec<String>), LoadError> {
    let file = load(source)?;
    let mismatch = |found: &'static str| LoadError::KindMismatch {
        path: source.to_string(),
        declared: kind,
        found,
    };
    let instances = match (kind, file.payload) {
        (ProblemKind::Clique, Payload::Clique(graph)) => vec![BenchInstance {
            id: source.to_string(),
            problem: AnyProblem::Clique(CliqueProblem::new(graph)),
        }],
        (ProblemKind::Knapsack, Payload::Knapsack(blocks)) => blocks
            .into_iter()
            .enumerate()
            .map(|(i, instance)| {
                let name = instance.name.clone().unwrap_or_else(|| i.to_string());
                BenchInstance {
                    id: format!("{source}#{name}"),
                    problem: AnyProblem::Knapsack(KnapsackProblem::new(instance)),
                }
            })
            .collect(),
        (ProblemKind::Tsp, Payload::Tsp(matrix)) => vec![BenchInstance {
            id: source.to_string(),
            problem: AnyProblem::Tsp(TspProblem::new(matrix)),
        }],
        (_, Payload::Clique(_)) => return Err(mismatch("clique")),
        (_, Payload::Knapsack(_)) => return Err(mismatch("knapsack")),
        (_, Payload::Tsp(_)) => return Err(mismatch("tsp")),
    };
    Ok((instances, file.warnings))
}
