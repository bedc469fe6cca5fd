use std::sync::atomic::AtomicBool;

use crate::observer::SearchObserver;
use crate::problem::{Problem, SearchNode};
use crate::stats::SearchStats;

/// A subtree scheduled as a unit by the ordered skeleton.
pub struct Task<P: Problem> {
    pub node: SearchNode<P>,
    /// Child indices from the root to the task's node.
    pub path: Vec<u32>,
    /// Lower runs sooner; unique within one generation batch.
    pub priority: u64,
    /// Test-and-set flag preventing duplicate execution.
    pub started: AtomicBool,
}

/// Expand the tree down to `spawn_depth` and return the frontier as tasks in
/// left-to-right order. Nodes whose subtree bottoms out earlier become tasks
/// at their terminal depth. Default priorities are the left-to-right index.
pub fn generate_tasks<P: Problem>(problem: &P, spawn_depth: usize) -> Vec<Task<P>> {
    let mut stats = SearchStats::default();
    generate_tasks_counted(problem, spawn_depth, &mut stats, &crate::observer::NullObserver)
}

pub(crate) fn generate_tasks_counted<P, O>(
    problem: &P,
    spawn_depth: usize,
    stats: &mut SearchStats,
    observer: &O,
) -> Vec<Task<P>>
where
    P: Problem,
    O: SearchObserver<P>,
{
    let mut tasks = Vec::new();
    collect(problem, problem.root(), Vec::new(), spawn_depth, &mut tasks, stats, observer);
    for (index, task) in tasks.iter_mut().enumerate() {
        task.priority = index as u64;
    }
    stats.tasks_generated += tasks.len() as u64;
    tasks
}

fn collect<P, O>(
    problem: &P,
    node: SearchNode<P>,
    path: Vec<u32>,
    depth_left: usize,
    tasks: &mut Vec<Task<P>>,
    stats: &mut SearchStats,
    observer: &O,
) where
    P: Problem,
    O: SearchObserver<P>,
{
    if depth_left == 0 {
        tasks.push(Task { node, path, priority: 0, started: AtomicBool::new(false) });
        return;
    }
    let children = problem.children(&node);
    if children.is_empty() {
        tasks.push(Task { node, path, priority: 0, started: AtomicBool::new(false) });
        return;
    }
    stats.nodes_expanded += 1;
    observer.on_expand(0, &node);
    for (index, child) in children.into_iter().enumerate() {
        let mut child_path = path.clone();
        child_path.push(index as u32);
        collect(problem, child, child_path, depth_left - 1, tasks, stats, observer);
    }
}
