use std::cmp::Ordering;
use std::fmt;

/// A branch-and-bound maximisation problem.
///
/// Implementations describe the search tree implicitly: [`Problem::root`]
/// gives the initial node and [`Problem::children`] expands a node into its
/// ordered children. Every node carries a cached `bound` that must equal
/// [`Problem::objective`] applied to the node's partial solution.
///
/// Pruning compares [`Problem::pruning_heuristic`], an upper bound on the
/// best objective reachable in the node's subtree, against the incumbent
/// bound: a subtree is cut only when its heuristic is strictly greater than
/// nothing, i.e. it is kept only while `heuristic > incumbent`. A problem
/// whose children are emitted in non-increasing heuristic order may return
/// `true` from [`Problem::prune_right`] so the engine stops scanning the
/// remaining siblings at the first failing child.
pub trait Problem: Sync {
    /// Partial solution accumulated along a path from the root.
    type Solution: Clone + Send + Sync + fmt::Debug;
    /// Remaining choices available below a node.
    type Candidates: Clone + Send + Sync;
    /// Objective value; compared via [`Problem::bound_cmp`].
    type Bound: Clone + Send + Sync + PartialEq + fmt::Debug;

    /// The root node: empty solution, full candidate set, baseline bound.
    fn root(&self) -> SearchNode<Self>;

    /// Expand a node into its children, in branching order.
    fn children(&self, node: &SearchNode<Self>) -> Vec<SearchNode<Self>>;

    /// Upper bound on the objective of any solution in the node's subtree.
    fn pruning_heuristic(&self, node: &SearchNode<Self>) -> Self::Bound;

    /// Total order on bounds; `Greater` means strictly better.
    fn bound_cmp(&self, a: &Self::Bound, b: &Self::Bound) -> Ordering;

    /// Objective value of a partial solution, as cached in node bounds.
    fn objective(&self, solution: &Self::Solution) -> Self::Bound;

    /// Whether a failed pruning check on one child rules out all later
    /// siblings as well.
    fn prune_right(&self) -> bool {
        false
    }

    /// Optional starting incumbent, e.g. from a construction heuristic.
    fn initial_incumbent(&self) -> Option<(Self::Solution, Self::Bound)> {
        None
    }
}

/// A node of the search tree: what has been decided, what can still be
/// decided, and the cached objective of the decided part.
pub struct SearchNode<P: Problem + ?Sized> {
    pub solution: P::Solution,
    pub candidates: P::Candidates,
    pub bound: P::Bound,
}

impl<P: Problem + ?Sized> SearchNode<P> {
    pub fn new(solution: P::Solution, candidates: P::Candidates, bound: P::Bound) -> Self {
        SearchNode { solution, candidates, bound }
    }
}

impl<P: Problem + ?Sized> Clone for SearchNode<P> {
    fn clone(&self) -> Self {
        SearchNode {
            solution: self.solution.clone(),
            candidates: self.candidates.clone(),
            bound: self.bound.clone(),
        }
    }
}

impl<P: Problem + ?Sized> fmt::Debug for SearchNode<P>
where
    P::Solution: fmt::Debug,
    P::Bound: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchNode")
            .field("solution", &self.solution)
            .field("bound", &self.bound)
            .finish_non_exhaustive()
    }
}
