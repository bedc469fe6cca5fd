use crate::problem::Problem;
use crate::tasks::Task;

/// How task priorities were assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriorityMode {
    LeftToRight,
    DiscrepancySearch,
}

/// Priorities for a batch of tasks; `priorities[i]` belongs to `tasks[i]`.
/// Lower runs sooner, and priorities within a batch are unique.
#[derive(Debug, Clone)]
pub struct PriorityAssignment {
    pub mode: PriorityMode,
    pub priorities: Vec<u64>,
}

/// The default order: priority equals the left-to-right task index.
pub fn left_to_right_priorities<P: Problem>(tasks: &[Task<P>]) -> PriorityAssignment {
    PriorityAssignment {
        mode: PriorityMode::LeftToRight,
        priorities: (0..tasks.len() as u64).collect(),
    }
}

/// Depth-bounded discrepancy ordering, extended to n-ary trees by counting
/// the nth child as n discrepancies. Tasks are ranked by total discrepancies
/// along their path, ties broken by the depth of the shallowest discrepancy
/// (shallower first), then by left-to-right order. The all-leftmost path
/// gets priority 0.
pub fn dds_priorities<P: Problem>(tasks: &[Task<P>]) -> PriorityAssignment {
    let keys: Vec<(u64, usize)> = tasks
        .iter()
        .map(|task| {
            let total: u64 = task.path.iter().map(|&step| u64::from(step)).sum();
            let shallowest = task
                .path
                .iter()
                .position(|&step| step != 0)
                .unwrap_or(usize::MAX);
            (total, shallowest)
        })
        .collect();
    let mut order: Vec<usize> = (0..tasks.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then_with(|| tasks[a].path.cmp(&tasks[b].path)));
    let mut priorities = vec![0u64; tasks.len()];
    for (rank, &index) in order.iter().enumerate() {
        priorities[index] = rank as u64;
    }
    PriorityAssignment { mode: PriorityMode::DiscrepancySearch, priorities }
}
