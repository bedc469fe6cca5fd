use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::position::Position;
use crate::problem::TreeProblem;
use crate::tree::OrderedTree;

/// A counterexample to one of the three soundness conditions on a pruning
/// predicate. Incumbent values are identified by a witness position whose
/// objective value was used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PruneViolation {
    /// `ancestor ⪯ descendant` but the ancestor is pruned and the
    /// descendant is not (condition: pruning is closed under descendants).
    PrefixMonotone {
        incumbent_witness: Position,
        ancestor: Position,
        descendant: Position,
    },
    /// `value(weaker) ⊑ value(stronger)` but pruning under the weaker
    /// incumbent is not implied by pruning under the stronger one.
    ValueMonotone {
        weaker: Position,
        stronger: Position,
        at: Position,
    },
    /// A position was pruned although its own objective value beats the
    /// incumbent value.
    IncumbentCompat {
        incumbent_witness: Position,
        at: Position,
    },
}

#[derive(Debug, Default)]
pub struct PruneCheckReport {
    pub checks: u64,
    pub exhaustive: bool,
    pub violations: Vec<PruneViolation>,
}

impl PruneCheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tests the three soundness conditions of a pruning predicate against a
/// materialised tree, drawing candidate incumbent values from the objective
/// values of the tree's own positions.
///
/// With `samples = 0` the check is exhaustive: condition (i) is verified on
/// every parent/child edge (which extends to all ancestor pairs by
/// transitivity), condition (ii) on every consecutive pair of sorted
/// values, and condition (iii) on every (value, position) pair. Otherwise
/// `samples` random triples are drawn per condition using `seed`.
pub fn check_prune_conditions<L, P>(
    problem: &P,
    tree: &OrderedTree<L>,
    samples: u64,
    seed: u64,
) -> PruneCheckReport
where
    L: Clone + Eq + fmt::Debug,
    P: TreeProblem<L>,
{
    let positions: Vec<Position> = tree.positions().cloned().collect();
    let words: Vec<Vec<L>> = positions.iter().map(|p| tree.label_word(p)).collect();
    let values: Vec<P::Value> = words.iter().map(|w| problem.objective(w)).collect();

    // Witness indices sorted by the quasi-order, deduplicated up to
    // order-equivalence.
    let mut order: Vec<usize> = (0..positions.len()).collect();
    order.sort_by(|&a, &b| {
        if problem.lt(&values[a], &values[b]) {
            std::cmp::Ordering::Less
        } else if problem.lt(&values[b], &values[a]) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    order.dedup_by(|a, b| {
        problem.le(&values[*a], &values[*b]) && problem.le(&values[*b], &values[*a])
    });

    let mut report = PruneCheckReport::default();
    if samples == 0 {
        report.exhaustive = true;
        exhaustive(problem, tree, &positions, &words, &values, &order, &mut report);
    } else {
        sampled(
            problem, &positions, &words, &values, &order, samples, seed, &mut report,
        );
    }
    report
}

fn exhaustive<L, P>(
    problem: &P,
    tree: &OrderedTree<L>,
    positions: &[Position],
    words: &[Vec<L>],
    values: &[P::Value],
    order: &[usize],
    report: &mut PruneCheckReport,
) where
    L: Clone + Eq + fmt::Debug,
    P: TreeProblem<L>,
{
    // (i) on parent/child edges.
    for (pi, parent) in positions.iter().enumerate() {
        for child in tree.children(parent) {
            let child_word = tree.label_word(&child);
            for &yi in order {
                report.checks += 1;
                let y = &values[yi];
                if problem.prune(y, &words[pi]) && !problem.prune(y, &child_word) {
                    report.violations.push(PruneViolation::PrefixMonotone {
                        incumbent_witness: positions[yi].clone(),
                        ancestor: parent.clone(),
                        descendant: child.clone(),
                    });
                }
            }
        }
    }
    // (ii) on consecutive sorted value pairs.
    for pair in order.windows(2) {
        let (weaker, stronger) = (pair[0], pair[1]);
        for (ui, word) in words.iter().enumerate() {
            report.checks += 1;
            if problem.prune(&values[weaker], word) && !problem.prune(&values[stronger], word) {
                report.violations.push(PruneViolation::ValueMonotone {
                    weaker: positions[weaker].clone(),
                    stronger: positions[stronger].clone(),
                    at: positions[ui].clone(),
                });
            }
        }
    }
    // (iii) on every (value, position) pair.
    for &yi in order {
        let y = &values[yi];
        for (ui, word) in words.iter().enumerate() {
            report.checks += 1;
            if problem.prune(y, word) && !problem.le(&values[ui], y) {
                report.violations.push(PruneViolation::IncumbentCompat {
                    incumbent_witness: positions[yi].clone(),
                    at: positions[ui].clone(),
                });
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn sampled<L, P>(
    problem: &P,
    positions: &[Position],
    words: &[Vec<L>],
    values: &[P::Value],
    order: &[usize],
    samples: u64,
    seed: u64,
    report: &mut PruneCheckReport,
) where
    L: Clone + Eq + fmt::Debug,
    P: TreeProblem<L>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = positions.len();
    for _ in 0..samples {
        let yi = order[rng.random_range(0..order.len())];
        let y = &values[yi];
        let ui = rng.random_range(0..n);

        // (i): compare against a random ancestor of ui.
        if !positions[ui].is_root() {
            let depth = rng.random_range(0..positions[ui].len());
            let ancestor = Position::from_digits(&positions[ui].digits()[..depth]);
            let ai = positions.binary_search(&ancestor).unwrap();
            report.checks += 1;
            if problem.prune(y, &words[ai]) && !problem.prune(y, &words[ui]) {
                report.violations.push(PruneViolation::PrefixMonotone {
                    incumbent_witness: positions[yi].clone(),
                    ancestor,
                    descendant: positions[ui].clone(),
                });
            }
        }

        // (ii): a second incumbent value, ordered against the first.
        let zi = order[rng.random_range(0..order.len())];
        let (weaker, stronger) = if problem.le(&values[yi], &values[zi]) {
            (yi, zi)
        } else {
            (zi, yi)
        };
        report.checks += 1;
        if problem.prune(&values[weaker], &words[ui])
            && !problem.prune(&values[stronger], &words[ui])
        {
            report.violations.push(PruneViolation::ValueMonotone {
                weaker: positions[weaker].clone(),
                stronger: positions[stronger].clone(),
                at: positions[ui].clone(),
            });
        }

        // (iii).
        report.checks += 1;
        if problem.prune(y, &words[ui]) && !problem.le(&values[ui], y) {
            report.violations.push(PruneViolation::IncumbentCompat {
                incumbent_witness: positions[yi].clone(),
                at: positions[ui].clone(),
            });
        }
    }
}
