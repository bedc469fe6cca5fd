//! Encodings of the three benchmark problems as ordered label trees for the
//! formal-model interpreter: each encoder is both the tree generator (words
//! are paths of domain letters) and the objective/pruning-predicate bundle.
//! The predicates here are chosen so the three pruning-soundness conditions
//! hold for every value/word pair, which the condition checker verifies
//! exhaustively on materialised trees.

use bnb_bbm::{OrderedGenerator, TreeProblem};
use num::rational::Ratio;

use crate::bitset::VertexSet;
use crate::clique::Graph;
use crate::knapsack::KnapsackInstance;
use crate::tsp::{DistanceMatrix, TourBound};

/// Cliques as ascending vertex words; the prune predicate bounds a subtree
/// by clique size plus the number of common neighbours still above the last
/// vertex, which can only shrink along extensions.
pub struct CliqueBbm<'g> {
    pub graph: &'g Graph,
}

impl CliqueBbm<'_> {
    fn extensions(&self, word: &[u32]) -> VertexSet {
        let mut ext = self.graph.all_vertices();
        for &v in word {
            ext = ext.intersection(self.graph.neighbours(v));
        }
        if let Some(&last) = word.last() {
            for v in 0..=last {
                ext.remove(v);
            }
        }
        ext
    }
}

impl OrderedGenerator for CliqueBbm<'_> {
    type Letter = u32;

    fn expand(&self, word: &[u32]) -> Vec<u32> {
        self.extensions(word).iter().collect()
    }
}

impl TreeProblem<u32> for CliqueBbm<'_> {
    type Value = u32;

    fn objective(&self, word: &[u32]) -> u32 {
        word.len() as u32
    }

    fn le(&self, a: &u32, b: &u32) -> bool {
        a <= b
    }

    fn prune(&self, incumbent: &u32, word: &[u32]) -> bool {
        word.len() as u32 + self.extensions(word).count() as u32 <= *incumbent
    }
}

/// Feasible item subsets as ascending index words; the prune predicate is
/// the exact fractional relaxation over the items after the last chosen.
pub struct KnapsackBbm<'i> {
    pub instance: &'i KnapsackInstance,
}

impl KnapsackBbm<'_> {
    fn totals(&self, word: &[u32]) -> (u64, u64) {
        word.iter().fold((0, 0), |(p, w), &i| {
            let item = self.instance.items[i as usize];
            (p + item.profit, w + item.weight)
        })
    }
}

impl OrderedGenerator for KnapsackBbm<'_> {
    type Letter = u32;

    fn expand(&self, word: &[u32]) -> Vec<u32> {
        let (_, weight) = self.totals(word);
        let residual = self.instance.capacity - weight;
        let first = word.last().map_or(0, |&i| i as usize + 1);
        (first..self.instance.items.len())
            .filter(|&j| self.instance.items[j].weight <= residual)
            .map(|j| j as u32)
            .collect()
    }
}

impl TreeProblem<u32> for KnapsackBbm<'_> {
    type Value = u64;

    fn objective(&self, word: &[u32]) -> u64 {
        self.totals(word).0
    }

    fn le(&self, a: &u64, b: &u64) -> bool {
        a <= b
    }

    fn prune(&self, incumbent: &u64, word: &[u32]) -> bool {
        let (profit, weight) = self.totals(word);
        let first = word.last().map_or(0, |&i| i as usize + 1);
        let relaxed = Ratio::from_integer(profit)
            + self
                .instance
                .fractional_bound(first, self.instance.capacity - weight);
        relaxed <= Ratio::from_integer(*incumbent)
    }
}

/// Partial tours as words over the non-start cities (the start is
/// implicit); a full-length word closes back to the start. Minimisation
/// runs through the dual order, and no pruning is encoded: the tree is
/// small enough to walk whole, which keeps the predicate trivially sound.
pub struct TspBbm<'m> {
    pub matrix: &'m DistanceMatrix,
}

impl OrderedGenerator for TspBbm<'_> {
    type Letter = u32;

    fn expand(&self, word: &[u32]) -> Vec<u32> {
        (1..self.matrix.n() as u32)
            .filter(|c| !word.contains(c))
            .collect()
    }
}

impl TreeProblem<u32> for TspBbm<'_> {
    type Value = TourBound;

    fn objective(&self, word: &[u32]) -> TourBound {
        if word.len() + 1 < self.matrix.n() {
            return TourBound::Open;
        }
        let mut length = 0;
        let mut prev = 0;
        for &c in word {
            length += self.matrix.d(prev, c);
            prev = c;
        }
        TourBound::Finished(length + self.matrix.d(prev, 0))
    }

    fn le(&self, a: &TourBound, b: &TourBound) -> bool {
        match (a, b) {
            (TourBound::Open, _) => true,
            (TourBound::Finished(_), TourBound::Open) => false,
            (TourBound::Finished(a), TourBound::Finished(b)) => a >= b,
        }
    }

    fn prune(&self, _incumbent: &TourBound, _word: &[u32]) -> bool {
        false
    }
}
