use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use crossbeam::deque::{Steal, Stealer, Worker as WorkerDeque};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cancel::CancelToken;
use crate::engine::{expand_search, panic_message, passes_check, SearchError, SearchResult};
use crate::incumbent::Incumbent;
use crate::observer::{NullObserver, SearchObserver};
use crate::problem::{Problem, SearchNode};
use crate::stats::SearchStats;

/// Tuning knobs for the work-stealing skeleton.
#[derive(Debug, Clone)]
pub struct UnorderedConfig {
    /// Nodes shallower than this are expanded in place and their children
    /// spawned as tasks; nodes at or below it are searched sequentially.
    pub spawn_depth: usize,
    pub workers: usize,
    /// Seeds the per-worker victim selection.
    pub seed: u64,
}

struct WorkItem<P: Problem> {
    node: SearchNode<P>,
    path: Vec<u32>,
}

struct Shared<'a, P: Problem, O: SearchObserver<P>> {
    problem: &'a P,
    incumbent: &'a Incumbent<P>,
    stealers: Vec<Stealer<WorkItem<P>>>,
    outstanding: AtomicUsize,
    poisoned: AtomicBool,
    config: &'a UnorderedConfig,
    observer: &'a O,
    cancel: &'a CancelToken,
}

const BACKOFF_START_US: u64 = 100;
const BACKOFF_CAP_US: u64 = 10_000;

/// Parallel search with dynamic task generation and random-victim work
/// stealing. Tasks above `spawn_depth` expand one node and push the
/// surviving children; deeper tasks run the whole subtree in place. Workers
/// pop their own deque LIFO (children pushed right-to-left, so a single
/// worker reproduces the sequential depth-first visit order) and steal from
/// a uniformly random victim when empty, backing off exponentially between
/// failed attempts. The run terminates when no tasks are outstanding.
pub fn unordered_search<P: Problem>(
    problem: &P,
    spawn_depth: usize,
    workers: usize,
    seed: u64,
) -> Result<SearchResult<P>, SearchError> {
    unordered_search_with(
        problem,
        &UnorderedConfig { spawn_depth, workers, seed },
        &NullObserver,
        &CancelToken::never(),
    )
}

pub fn unordered_search_with<P, O>(
    problem: &P,
    config: &UnorderedConfig,
    observer: &O,
    cancel: &CancelToken,
) -> Result<SearchResult<P>, SearchError>
where
    P: Problem,
    O: SearchObserver<P>,
{
    if config.workers == 0 {
        return Err(SearchError::NoWorkers);
    }
    let start = Instant::now();
    let incumbent = Incumbent::with_initial(problem.initial_incumbent());
    let deques: Vec<WorkerDeque<WorkItem<P>>> =
        (0..config.workers).map(|_| WorkerDeque::new_lifo()).collect();
    let stealers: Vec<Stealer<WorkItem<P>>> = deques.iter().map(|d| d.stealer()).collect();
    deques[0].push(WorkItem { node: problem.root(), path: Vec::new() });
    let shared = Shared {
        problem,
        incumbent: &incumbent,
        stealers,
        outstanding: AtomicUsize::new(1),
        poisoned: AtomicBool::new(false),
        config,
        observer,
        cancel,
    };

    let results: Vec<Result<SearchStats, SearchError>> = thread::scope(|scope| {
        let handles: Vec<_> = deques
            .into_iter()
            .enumerate()
            .map(|(id, deque)| {
                let shared = &shared;
                scope.spawn(move || {
                    match catch_unwind(AssertUnwindSafe(|| worker_loop(id, deque, shared))) {
                        Ok(outcome) => outcome,
                        Err(payload) => {
                            shared.poisoned.store(true, Ordering::Release);
                            Err(SearchError::WorkerPanicked(panic_message(payload.as_ref())))
                        }
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|handle| handle.join().expect("worker escaped its panic handler"))
            .collect()
    });

    let mut stats = SearchStats { tasks_generated: 1, ..SearchStats::default() };
    let mut error: Option<SearchError> = None;
    for outcome in results {
        match outcome {
            Ok(worker_stats) => stats.merge(&worker_stats),
            Err(e) => {
                let replace = match (&error, &e) {
                    (None, _) => true,
                    (Some(SearchError::Cancelled), SearchError::WorkerPanicked(_)) => true,
                    _ => false,
                };
                if replace {
                    error = Some(e);
                }
            }
        }
    }
    if let Some(e) = error {
        return Err(e);
    }
    stats.wall_time = start.elapsed();
    let (solution, bound) = incumbent.snapshot().ok_or(SearchError::NoSolution)?;
    Ok(SearchResult { solution, bound, stats })
}

fn worker_loop<P, O>(
    id: usize,
    deque: WorkerDeque<WorkItem<P>>,
    shared: &Shared<'_, P, O>,
) -> Result<SearchStats, SearchError>
where
    P: Problem,
    O: SearchObserver<P>,
{
    let mut stats = SearchStats::default();
    let mut rng =
        ChaCha8Rng::seed_from_u64(shared.config.seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut backoff_us = BACKOFF_START_US;
    loop {
        if shared.poisoned.load(Ordering::Acquire) {
            return Ok(stats);
        }
        if shared.cancel.is_cancelled() {
            return Err(SearchError::Cancelled);
        }
        if let Some(item) = deque.pop() {
            backoff_us = BACKOFF_START_US;
            run_item(id, item, &deque, shared, &mut stats)?;
            continue;
        }
        if shared.outstanding.load(Ordering::Acquire) == 0 {
            return Ok(stats);
        }
        if shared.config.workers > 1 {
            let mut victim = rng.random_range(0..shared.config.workers - 1);
            if victim >= id {
                victim += 1;
            }
            if let Steal::Success(item) = shared.stealers[victim].steal() {
                backoff_us = BACKOFF_START_US;
                run_item(id, item, &deque, shared, &mut stats)?;
                continue;
            }
        }
        thread::sleep(Duration::from_micros(backoff_us));
        backoff_us = (backoff_us * 2).min(BACKOFF_CAP_US);
    }
}

fn run_item<P, O>(
    id: usize,
    item: WorkItem<P>,
    deque: &WorkerDeque<WorkItem<P>>,
    shared: &Shared<'_, P, O>,
    stats: &mut SearchStats,
) -> Result<(), SearchError>
where
    P: Problem,
    O: SearchObserver<P>,
{
    let outcome = execute_item(id, item, deque, shared, stats);
    shared.outstanding.fetch_sub(1, Ordering::AcqRel);
    outcome
}

fn execute_item<P, O>(
    id: usize,
    item: WorkItem<P>,
    deque: &WorkerDeque<WorkItem<P>>,
    shared: &Shared<'_, P, O>,
    stats: &mut SearchStats,
) -> Result<(), SearchError>
where
    P: Problem,
    O: SearchObserver<P>,
{
    let problem = shared.problem;
    shared.observer.on_task_start(id, &item.path);
    if !item.path.is_empty() {
        let best = shared.incumbent.snapshot_bound();
        let heuristic = problem.pruning_heuristic(&item.node);
        if !passes_check(problem, &heuristic, best.as_ref()) {
            stats.tasks_pruned += 1;
            return Ok(());
        }
    }
    stats.tasks_executed += 1;
    if item.path.len() >= shared.config.spawn_depth {
        return expand_search(
            problem,
            &item.node,
            shared.incumbent,
            id,
            stats,
            shared.observer,
            shared.cancel,
        );
    }

    stats.nodes_expanded += 1;
    shared.observer.on_expand(id, &item.node);
    debug_assert!(
        problem.objective(&item.node.solution) == item.node.bound,
        "node bound does not match objective of its solution"
    );
    if shared.incumbent.improve(problem, &item.node.solution, &item.node.bound) {
        stats.incumbent_updates += 1;
        shared.observer.on_incumbent(id, &item.node.bound);
    }
    let mut spawned: Vec<WorkItem<P>> = Vec::new();
    for (index, child) in problem.children(&item.node).into_iter().enumerate() {
        let best = shared.incumbent.snapshot_bound();
        let heuristic = problem.pruning_heuristic(&child);
        if passes_check(problem, &heuristic, best.as_ref()) {
            let mut path = item.path.clone();
            path.push(index as u32);
            spawned.push(WorkItem { node: child, path });
        } else {
            stats.prunes += 1;
            if problem.prune_right() {
                break;
            }
        }
    }
    stats.tasks_generated += spawned.len() as u64;
    shared.outstanding.fetch_add(spawned.len(), Ordering::AcqRel);
    for work in spawned.into_iter().rev() {
        deque.push(work);
    }
    Ok(())
}
