//! A small hand-built search tree and pruning predicate for exercising the
//! reduction rules end to end.
//!
//! The tree has 30 positions and a single deepest node at position 1000.
//! Each letter records the child index and how many candidate children the
//! node has; the objective is word length and a node is pruned when its
//! depth plus its remaining candidates cannot beat the incumbent. Driving
//! the reduction with three threads under the round-robin policy exercises
//! every rule, which makes this setup the reference fixture for trace
//! serialisation and replay (see `bnb bbm`).

use std::collections::HashMap;

use crate::position::Position;
use crate::problem::TreeProblem;
use crate::rules::{SearchState, StateError};
use crate::tree::{materialize_tree, OrderedGenerator, OrderedTree};

/// Letter on a tree edge: which sibling this is and how many children the
/// node below it has.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DemoLetter {
    pub index: u32,
    pub candidates: u32,
}

/// Child counts for every position of the demo tree, keyed by digit path.
const SHAPE: &[(&[u32], u32)] = &[
    (&[], 8),
    (&[0], 3),
    (&[0, 0], 1),
    (&[0, 0, 0], 0),
    (&[0, 1], 0),
    (&[0, 2], 0),
    (&[1], 3),
    (&[1, 0], 2),
    (&[1, 0, 0], 1),
    (&[1, 0, 0, 0], 0),
    (&[1, 0, 1], 0),
    (&[1, 1], 1),
    (&[1, 1, 0], 0),
    (&[1, 2], 0),
    (&[2], 3),
    (&[2, 0], 2),
    (&[2, 0, 0], 0),
    (&[2, 0, 1], 0),
    (&[2, 1], 0),
    (&[2, 2], 0),
    (&[3], 2),
    (&[3, 0], 0),
    (&[3, 1], 0),
    (&[4], 2),
    (&[4, 0], 0),
    (&[4, 1], 0),
    (&[5], 1),
    (&[5, 0], 0),
    (&[6], 0),
    (&[7], 0),
];

pub struct DemoGenerator {
    shape: HashMap<Vec<u32>, u32>,
}

impl DemoGenerator {
    pub fn new() -> Self {
        DemoGenerator {
            shape: SHAPE.iter().map(|(p, n)| (p.to_vec(), *n)).collect(),
        }
    }
}

impl Default for DemoGenerator {
    fn default() -> Self {
        Self::new()
    }
}

impl OrderedGenerator for DemoGenerator {
    type Letter = DemoLetter;

    fn expand(&self, word: &[DemoLetter]) -> Vec<DemoLetter> {
        let path: Vec<u32> = word.iter().map(|l| l.index).collect();
        let n = self.shape.get(&path).copied().unwrap_or(0);
        (0..n)
            .map(|i| {
                let mut child_path = path.clone();
                child_path.push(i);
                DemoLetter {
                    index: i,
                    candidates: self.shape.get(&child_path).copied().unwrap_or(0),
                }
            })
            .collect()
    }
}

/// Depth objective with candidate-count pruning: a node at depth `d` with
/// `c` candidates is pruned under incumbent value `l` when `d + c ≤ l`.
pub struct DemoProblem;

impl TreeProblem<DemoLetter> for DemoProblem {
    type Value = usize;

    fn objective(&self, word: &[DemoLetter]) -> usize {
        word.len()
    }

    fn le(&self, a: &usize, b: &usize) -> bool {
        a <= b
    }

    fn prune(&self, incumbent: &usize, word: &[DemoLetter]) -> bool {
        match word.last() {
            None => false,
            Some(last) => word.len() + last.candidates as usize <= *incumbent,
        }
    }
}

pub fn demo_tree() -> OrderedTree<DemoLetter> {
    materialize_tree(&DemoGenerator::new(), 4).expect("demo generator is an isogram generator")
}

/// Initial state for the demo: one segment per child of the root, `threads`
/// idle threads.
pub fn demo_initial(
    tree: &OrderedTree<DemoLetter>,
    threads: usize,
) -> Result<SearchState, StateError> {
    let roots: Vec<Position> = tree.children(&Position::root()).collect();
    SearchState::initial(tree, &roots, threads)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_materialises_to_thirty_positions() {
        let tree = demo_tree();
        assert_eq!(tree.len(), 30);
        assert_eq!(tree.depth(), 4);
        assert!(tree.validate());
        assert!(tree.contains(&Position::from_digits(&[1, 0, 0, 0])));
        assert_eq!(tree.child_count(&Position::root()), 8);
    }

    #[test]
    fn deepest_position_is_unique() {
        let tree = demo_tree();
        let deepest: Vec<_> = tree.positions().filter(|p| p.len() == 4).collect();
        assert_eq!(deepest, vec![&Position::from_digits(&[1, 0, 0, 0])]);
    }
}
