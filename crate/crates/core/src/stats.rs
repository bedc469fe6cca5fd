use std::time::Duration;

/// Counters collected by a search run. Wall time is measured by the
/// top-level entry points; everything else is counted by the engine.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Nodes entered and expanded (children requested).
    pub nodes_expanded: u64,
    /// Subtrees cut by a failed pruning check.
    pub prunes: u64,
    /// Successful incumbent improvements.
    pub incumbent_updates: u64,
    /// Tasks created, including the root task of the unordered skeleton.
    pub tasks_generated: u64,
    /// Tasks whose subtree search actually ran.
    pub tasks_executed: u64,
    /// Tasks discarded by the pruning re-check when popped.
    pub tasks_pruned: u64,
    /// Elapsed wall-clock time of the whole run.
    pub wall_time: Duration,
}

impl SearchStats {
    pub fn merge(&mut self, other: &SearchStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.prunes += other.prunes;
        self.incumbent_updates += other.incumbent_updates;
        self.tasks_generated += other.tasks_generated;
        self.tasks_executed += other.tasks_executed;
        self.tasks_pruned += other.tasks_pruned;
    }

    /// Equality of all counters, ignoring wall time.
    pub fn counters_eq(&self, other: &SearchStats) -> bool {
        self.nodes_expanded == other.nodes_expanded
            && self.prunes == other.prunes
            && self.incumbent_updates == other.incumbent_updates
            && self.tasks_generated == other.tasks_generated
            && self.tasks_executed == other.tasks_executed
            && self.tasks_pruned == other.tasks_pruned
    }
}
