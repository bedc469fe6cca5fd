use std::cmp::Ordering;
use std::time::Instant;

use thiserror::Error;

use crate::cancel::CancelToken;
use crate::incumbent::{Incumbent, IncumbentView};
use crate::observer::{NullObserver, SearchObserver};
use crate::problem::{Problem, SearchNode};
use crate::stats::SearchStats;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("search cancelled")]
    Cancelled,
    #[error("worker thread panicked: {0}")]
    WorkerPanicked(String),
    #[error("worker count must be at least 1")]
    NoWorkers,
    #[error("search finished without a solution")]
    NoSolution,
}

/// Outcome of a completed search: the best solution found, its objective
/// value, and the run's counters.
#[derive(Debug, Clone)]
pub struct SearchResult<P: Problem> {
    pub solution: P::Solution,
    pub bound: P::Bound,
    pub stats: SearchStats,
}

pub(crate) fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(message) = payload.downcast_ref::<&str>() {
        (*message).to_string()
    } else if let Some(message) = payload.downcast_ref::<String>() {
        message.clone()
    } else {
        "worker panicked".to_string()
    }
}

pub(crate) fn passes_check<P: Problem>(
    problem: &P,
    heuristic: &P::Bound,
    best: Option<&P::Bound>,
) -> bool {
    match best {
        None => true,
        Some(b) => problem.bound_cmp(heuristic, b) == Ordering::Greater,
    }
}

/// Depth-first branch-and-bound below `node` against the given incumbent
/// view. Every entered node is counted, offered to the incumbent, and
/// expanded; each child is kept only while its heuristic strictly beats the
/// incumbent bound read at that moment. For problems with `prune_right`,
/// the child scan stops at the first failing check.
pub fn expand_search<P, V, O>(
    problem: &P,
    node: &SearchNode<P>,
    incumbent: &V,
    worker: usize,
    stats: &mut SearchStats,
    observer: &O,
    cancel: &CancelToken,
) -> Result<(), SearchError>
where
    P: Problem,
    V: IncumbentView<P>,
    O: SearchObserver<P>,
{
    if stats.nodes_expanded & 1023 == 0 && cancel.is_cancelled() {
        return Err(SearchError::Cancelled);
    }
    stats.nodes_expanded += 1;
    observer.on_expand(worker, node);
    debug_assert!(
        problem.objective(&node.solution) == node.bound,
        "node bound does not match objective of its solution"
    );
    if incumbent.offer(problem, &node.solution, &node.bound) {
        stats.incumbent_updates += 1;
        observer.on_incumbent(worker, &node.bound);
    }
    for child in problem.children(node) {
        let best = incumbent.best_bound();
        let heuristic = problem.pruning_heuristic(&child);
        if passes_check(problem, &heuristic, best.as_ref()) {
            expand_search(problem, &child, incumbent, worker, stats, observer, cancel)?;
        } else {
            stats.prunes += 1;
            if problem.prune_right() {
                break;
            }
        }
    }
    Ok(())
}

/// Single-threaded search from the root. The baseline all parallel runs are
/// compared against.
pub fn sequential_search<P: Problem>(problem: &P) -> Result<SearchResult<P>, SearchError> {
    sequential_search_with(problem, &NullObserver, &CancelToken::never())
}

pub fn sequential_search_with<P, O>(
    problem: &P,
    observer: &O,
    cancel: &CancelToken,
) -> Result<SearchResult<P>, SearchError>
where
    P: Problem,
    O: SearchObserver<P>,
{
    let start = Instant::now();
    let incumbent = Incumbent::with_initial(problem.initial_incumbent());
    let mut stats = SearchStats::default();
    let root = problem.root();
    expand_search(problem, &root, &incumbent, 0, &mut stats, observer, cancel)?;
    stats.wall_time = start.elapsed();
    let (solution, bound) = incumbent.snapshot().ok_or(SearchError::NoSolution)?;
    Ok(SearchResult { solution, bound, stats })
}
