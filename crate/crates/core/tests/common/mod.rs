#![allow(dead_code)]

use std::cmp::Ordering;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bnb_core::{Problem, SearchNode, SearchObserver};

/// Fixed-shape maximisation testbed: a `width`-ary tree of the given depth
/// where step `k` taken at depth `t` scores `scores[t][k]`, and a leaf's
/// value is the sum of its steps. The heuristic adds the best possible
/// remaining score per level, which is a sound upper bound.
#[derive(Debug)]
pub struct SumTree {
    pub scores: Vec<Vec<u64>>,
    pub right_prunable: bool,
}

impl SumTree {
    pub fn random(depth: usize, width: usize, seed: u64) -> SumTree {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scores = (0..depth)
            .map(|_| (0..width).map(|_| rng.random_range(0..100u64)).collect())
            .collect();
        SumTree { scores, right_prunable: false }
    }

    /// Score rows sorted descending, so children come out in non-increasing
    /// heuristic order and right-pruning is sound.
    pub fn sorted_random(depth: usize, width: usize, seed: u64) -> SumTree {
        let mut tree = SumTree::random(depth, width, seed);
        for row in &mut tree.scores {
            row.sort_unstable_by(|a, b| b.cmp(a));
        }
        tree.right_prunable = true;
        tree
    }

    pub fn depth(&self) -> usize {
        self.scores.len()
    }

    pub fn width(&self) -> usize {
        self.scores.first().map_or(0, Vec::len)
    }

    /// Independent oracle: enumerate every leaf with an odometer and take
    /// the maximum sum.
    pub fn brute_force_max(&self) -> u64 {
        if self.scores.is_empty() {
            return 0;
        }
        let depth = self.depth();
        let width = self.width();
        let mut digits = vec![0usize; depth];
        let mut best = 0u64;
        loop {
            let total: u64 = digits.iter().enumerate().map(|(t, &k)| self.scores[t][k]).sum();
            best = best.max(total);
            let mut t = depth;
            loop {
                if t == 0 {
                    return best;
                }
                t -= 1;
                digits[t] += 1;
                if digits[t] < width {
                    break;
                }
                digits[t] = 0;
            }
        }
    }
}

impl Problem for SumTree {
    type Solution = Vec<u32>;
    type Candidates = ();
    type Bound = u64;

    fn root(&self) -> SearchNode<Self> {
        SearchNode::new(Vec::new(), (), 0)
    }

    fn children(&self, node: &SearchNode<Self>) -> Vec<SearchNode<Self>> {
        let level = node.solution.len();
        if level >= self.depth() {
            return Vec::new();
        }
        self.scores[level]
            .iter()
            .enumerate()
            .map(|(k, &score)| {
                let mut path = node.solution.clone();
                path.push(k as u32);
                SearchNode::new(path, (), node.bound + score)
            })
            .collect()
    }

    fn pruning_heuristic(&self, node: &SearchNode<Self>) -> u64 {
        let level = node.solution.len();
        let tail: u64 = self.scores[level..]
            .iter()
            .map(|row| row.iter().copied().max().unwrap_or(0))
            .sum();
        node.bound + tail
    }

    fn bound_cmp(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }

    fn objective(&self, solution: &Vec<u32>) -> u64 {
        solution
            .iter()
            .enumerate()
            .map(|(t, &k)| self.scores[t][k as usize])
            .sum()
    }

    fn prune_right(&self) -> bool {
        self.right_prunable
    }
}

/// Wraps a `SumTree` and panics when expanding the node at `trigger`.
#[derive(Debug)]
pub struct PanicAt {
    pub inner: SumTree,
    pub trigger: Vec<u32>,
}

impl Problem for PanicAt {
    type Solution = Vec<u32>;
    type Candidates = ();
    type Bound = u64;

    fn root(&self) -> SearchNode<Self> {
        SearchNode::new(Vec::new(), (), 0)
    }

    fn children(&self, node: &SearchNode<Self>) -> Vec<SearchNode<Self>> {
        assert_ne!(node.solution, self.trigger, "expansion tripped the test trigger");
        let inner = SearchNode::new(node.solution.clone(), (), node.bound);
        self.inner
            .children(&inner)
            .into_iter()
            .map(|child| SearchNode::new(child.solution, (), child.bound))
            .collect()
    }

    fn pruning_heuristic(&self, node: &SearchNode<Self>) -> u64 {
        let inner = SearchNode::new(node.solution.clone(), (), node.bound);
        self.inner.pruning_heuristic(&inner)
    }

    fn bound_cmp(&self, a: &u64, b: &u64) -> Ordering {
        a.cmp(b)
    }

    fn objective(&self, solution: &Vec<u32>) -> u64 {
        self.inner.objective(solution)
    }
}

/// Records observer callbacks for later assertions.
#[derive(Default)]
pub struct Capture {
    pub expanded: Mutex<Vec<(usize, Vec<u32>)>>,
    pub task_starts: Mutex<Vec<(usize, Vec<u32>)>>,
    pub incumbents: Mutex<Vec<(usize, u64)>>,
}

impl<P> SearchObserver<P> for Capture
where
    P: Problem<Solution = Vec<u32>, Bound = u64>,
{
    fn on_expand(&self, worker: usize, node: &SearchNode<P>) {
        self.expanded.lock().unwrap().push((worker, node.solution.clone()));
    }

    fn on_task_start(&self, worker: usize, path: &[u32]) {
        self.task_starts.lock().unwrap().push((worker, path.to_vec()));
    }

    fn on_incumbent(&self, worker: usize, bound: &u64) {
        self.incumbents.lock().unwrap().push((worker, *bound));
    }
}
