use std::cmp::Ordering;

use crate::problem::{Problem, SearchNode};

/// Wraps a problem with an always-accept heuristic so every node survives
/// the pruning check and the full tree is enumerated. Bounds are lifted
/// into `Option`, with `None` acting as a top element only the heuristic
/// produces. Useful for exhaustive baselines in correctness checks.
pub struct AcceptAll<P>(pub P);

impl<P: Problem> AcceptAll<P> {
    fn lift(&self, node: SearchNode<P>) -> SearchNode<Self> {
        SearchNode::new(node.solution, node.candidates, Some(node.bound))
    }
}

impl<P: Problem> Problem for AcceptAll<P> {
    type Solution = P::Solution;
    type Candidates = P::Candidates;
    type Bound = Option<P::Bound>;

    fn root(&self) -> SearchNode<Self> {
        self.lift(self.0.root())
    }

    fn children(&self, node: &SearchNode<Self>) -> Vec<SearchNode<Self>> {
        let bound = node.bound.clone().expect("only the heuristic produces None");
        let inner = SearchNode::new(node.solution.clone(), node.candidates.clone(), bound);
        self.0.children(&inner).into_iter().map(|child| self.lift(child)).collect()
    }

    fn pruning_heuristic(&self, _node: &SearchNode<Self>) -> Self::Bound {
        None
    }

    fn bound_cmp(&self, a: &Self::Bound, b: &Self::Bound) -> Ordering {
        match (a, b) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(x), Some(y)) => self.0.bound_cmp(x, y),
        }
    }

    fn objective(&self, solution: &Self::Solution) -> Self::Bound {
        Some(self.0.objective(solution))
    }

    fn initial_incumbent(&self) -> Option<(Self::Solution, Self::Bound)> {
        self.0.initial_incumbent().map(|(solution, bound)| (solution, Some(bound)))
    }
}
