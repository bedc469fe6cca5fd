use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::thread;
use std::time::Instant;

use crate::cancel::CancelToken;
use crate::dds::{dds_priorities, left_to_right_priorities};
use crate::engine::{expand_search, panic_message, passes_check, SearchError, SearchResult};
use crate::incumbent::{Incumbent, LocalIncumbent};
use crate::observer::{NullObserver, SearchObserver};
use crate::problem::Problem;
use crate::stats::SearchStats;
use crate::tasks::{generate_tasks_counted, Task};

/// How the ordered skeleton shares bounds between workers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderedMode {
    /// Tasks run in fixed rounds against a bound snapshot taken when the
    /// round starts; improvements merge at the round barrier in task order.
    /// Node counts and the returned solution are identical on every run.
    Deterministic,
    /// Pruning checks read the live shared bound for maximum cutting.
    /// The returned value is still optimal, but node counts may vary
    /// between runs.
    LiveBounds,
}

#[derive(Debug, Clone)]
pub struct OrderedConfig {
    /// Order speculative work by discrepancy priorities instead of
    /// left-to-right.
    pub diversify: bool,
    pub spawn_depth: usize,
    pub workers: usize,
    pub mode: OrderedMode,
}

/// Parallel search over a statically generated task set. Worker 0 executes
/// tasks in sequential left-to-right order; the remaining workers pull from
/// a shared priority order, skipping tasks whose started flag another
/// worker already set. Runs in [`OrderedMode::Deterministic`].
pub fn ordered_search<P: Problem>(
    problem: &P,
    diversify: bool,
    spawn_depth: usize,
    workers: usize,
) -> Result<SearchResult<P>, SearchError> {
    ordered_search_with(
        problem,
        &OrderedConfig { diversify, spawn_depth, workers, mode: OrderedMode::Deterministic },
        &NullObserver,
        &CancelToken::never(),
    )
}

pub fn ordered_search_with<P, O>(
    problem: &P,
    config: &OrderedConfig,
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
    let mut stats = SearchStats::default();
    let mut tasks = generate_tasks_counted(problem, config.spawn_depth, &mut stats, observer);
    let assignment = if config.diversify {
        dds_priorities(&tasks)
    } else {
        left_to_right_priorities(&tasks)
    };
    for (task, &priority) in tasks.iter_mut().zip(assignment.priorities.iter()) {
        task.priority = priority;
    }
    let mut priority_order: Vec<usize> = (0..tasks.len()).collect();
    priority_order.sort_by_key(|&index| tasks[index].priority);

    let outcome = match config.mode {
        OrderedMode::Deterministic => run_deterministic(
            problem,
            &incumbent,
            &tasks,
            &priority_order,
            config.workers,
            &mut stats,
            observer,
            cancel,
        ),
        OrderedMode::LiveBounds => run_live(
            problem,
            &incumbent,
            &tasks,
            &priority_order,
            config.workers,
            &mut stats,
            observer,
            cancel,
        ),
    };
    outcome?;
    stats.wall_time = start.elapsed();
    let (solution, bound) = incumbent.snapshot().ok_or(SearchError::NoSolution)?;
    Ok(SearchResult { solution, bound, stats })
}

/// Claim-check-execute for one task against an incumbent view.
fn run_task<P, V, O>(
    problem: &P,
    task: &Task<P>,
    view: &V,
    worker: usize,
    stats: &mut SearchStats,
    observer: &O,
    cancel: &CancelToken,
) -> Result<(), SearchError>
where
    P: Problem,
    V: crate::incumbent::IncumbentView<P>,
    O: SearchObserver<P>,
{
    observer.on_task_start(worker, &task.path);
    let best = view.best_bound();
    let heuristic = problem.pruning_heuristic(&task.node);
    if !passes_check(problem, &heuristic, best.as_ref()) {
        stats.tasks_pruned += 1;
        return Ok(());
    }
    stats.tasks_executed += 1;
    expand_search(problem, &task.node, view, worker, stats, observer, cancel)
}

fn run_live<P, O>(
    problem: &P,
    incumbent: &Incumbent<P>,
    tasks: &[Task<P>],
    priority_order: &[usize],
    workers: usize,
    stats: &mut SearchStats,
    observer: &O,
    cancel: &CancelToken,
) -> Result<(), SearchError>
where
    P: Problem,
    O: SearchObserver<P>,
{
    let cursor = AtomicUsize::new(0);
    let poisoned = AtomicBool::new(false);
    let results: Vec<Result<SearchStats, SearchError>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|worker| {
                let cursor = &cursor;
                let poisoned = &poisoned;
                scope.spawn(move || {
                    let body = || -> Result<SearchStats, SearchError> {
                        let mut local = SearchStats::default();
                        if worker == 0 {
                            for task in tasks {
                                if poisoned.load(Ordering::Acquire) {
                                    break;
                                }
                                if !task.started.swap(true, Ordering::AcqRel) {
                                    run_task(problem, task, incumbent, worker, &mut local, observer, cancel)?;
                                }
                            }
                        } else {
                            loop {
                                if poisoned.load(Ordering::Acquire) {
                                    break;
                                }
                                let slot = cursor.fetch_add(1, Ordering::AcqRel);
                                if slot >= priority_order.len() {
                                    break;
                                }
                                let task = &tasks[priority_order[slot]];
                                if !task.started.swap(true, Ordering::AcqRel) {
                                    run_task(problem, task, incumbent, worker, &mut local, observer, cancel)?;
                                }
                            }
                        }
                        Ok(local)
                    };
                    match catch_unwind(AssertUnwindSafe(body)) {
                        Ok(outcome) => outcome,
                        Err(payload) => {
                            poisoned.store(true, Ordering::Release);
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
    let mut error: Option<SearchError> = None;
    for outcome in results {
        match outcome {
            Ok(worker_stats) => stats.merge(&worker_stats),
            Err(e) => {
                let replace = matches!(
                    (&error, &e),
                    (None, _) | (Some(SearchError::Cancelled), SearchError::WorkerPanicked(_))
                );
                if replace {
                    error = Some(e);
                }
            }
        }
    }
    match error {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_deterministic<P, O>(
    problem: &P,
    incumbent: &Incumbent<P>,
    tasks: &[Task<P>],
    priority_order: &[usize],
    workers: usize,
    stats: &mut SearchStats,
    observer: &O,
    cancel: &CancelToken,
) -> Result<(), SearchError>
where
    P: Problem,
    O: SearchObserver<P>,
{
    let mut claimed = vec![false; tasks.len()];
    let mut seq_next = 0usize;
    let mut priority_next = 0usize;
    loop {
        let mut round: Vec<usize> = Vec::with_capacity(workers);
        while seq_next < tasks.len() && claimed[seq_next] {
            seq_next += 1;
        }
        if seq_next < tasks.len() {
            round.push(seq_next);
            claimed[seq_next] = true;
        }
        while round.len() < workers {
            while priority_next < priority_order.len() && claimed[priority_order[priority_next]] {
                priority_next += 1;
            }
            if priority_next >= priority_order.len() {
                break;
            }
            round.push(priority_order[priority_next]);
            claimed[priority_order[priority_next]] = true;
        }
        if round.is_empty() {
            break;
        }

        let snapshot = incumbent.snapshot_bound();
        type TaskOutcome<P> = Result<
            (SearchStats, Option<(<P as Problem>::Solution, <P as Problem>::Bound)>),
            SearchError,
        >;
        let results: Vec<TaskOutcome<P>> = thread::scope(|scope| {
            let handles: Vec<_> = round
                .iter()
                .enumerate()
                .map(|(worker, &index)| {
                    let task = &tasks[index];
                    let snapshot = snapshot.clone();
                    scope.spawn(move || {
                        let body = || -> TaskOutcome<P> {
                            task.started.store(true, Ordering::Release);
                            let mut local = SearchStats::default();
                            let view = LocalIncumbent::new(snapshot);
                            run_task(problem, task, &view, worker, &mut local, observer, cancel)?;
                            Ok((local, view.into_local_best()))
                        };
                        match catch_unwind(AssertUnwindSafe(body)) {
                            Ok(outcome) => outcome,
                            Err(payload) => {
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

        for outcome in results {
            let (task_stats, local_best) = outcome?;
            stats.merge(&task_stats);
            if let Some((solution, bound)) = local_best {
                incumbent.improve(problem, &solution, &bound);
            }
        }
    }
    Ok(())
}
