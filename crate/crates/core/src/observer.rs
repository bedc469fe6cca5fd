use crate::problem::{Problem, SearchNode};

/// Hooks for instrumenting a search. All methods default to no-ops; the
/// parallel skeletons call them from worker threads, so implementations
/// must be sync.
pub trait SearchObserver<P: Problem>: Sync {
    /// A worker entered and expanded a node.
    fn on_expand(&self, _worker: usize, _node: &SearchNode<P>) {}

    /// A worker began executing the task rooted at `path`.
    fn on_task_start(&self, _worker: usize, _path: &[u32]) {}

    /// A worker improved the incumbent to `bound`.
    fn on_incumbent(&self, _worker: usize, _bound: &P::Bound) {}
}

/// Observer that records nothing.
pub struct NullObserver;

impl<P: Problem> SearchObserver<P> for NullObserver {}
