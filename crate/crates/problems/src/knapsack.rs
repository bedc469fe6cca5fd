//! 0/1 knapsack: items held in non-increasing profit-density order,
//! children restricted to items strictly after the last chosen one (so each
//! subset is reached once), and a fractional-relaxation upper bound kept as
//! an exact rational so no pruning decision ever rides on floating point.

use std::cmp::Ordering;

use bnb_core::{Problem, SearchNode};
use num::rational::Ratio;
use num::Zero;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum KnapsackError {
    #[error("item {0} has zero weight")]
    ZeroWeight(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Item {
    pub profit: u64,
    pub weight: u64,
}

/// Sorts items by non-increasing profit density under exact cross-
/// multiplied comparison, keeping input order between equal densities.
/// Returns the sorted items and, per sorted slot, the input index.
pub fn density_sort(items: &[Item]) -> (Vec<Item>, Vec<u32>) {
    let mut order: Vec<u32> = (0..items.len() as u32).collect();
    order.sort_by(|&a, &b| {
        let (a, b) = (items[a as usize], items[b as usize]);
        (b.profit as u128 * a.weight as u128).cmp(&(a.profit as u128 * b.weight as u128))
    });
    let sorted = order.iter().map(|&i| items[i as usize]).collect();
    (sorted, order)
}

/// A knapsack instance with items pre-sorted by density. `original_ids`
/// maps a sorted slot back to the input position, for reporting.
#[derive(Clone, Debug)]
pub struct KnapsackInstance {
    pub capacity: u64,
    pub items: Vec<Item>,
    pub original_ids: Vec<u32>,
    pub name: Option<String>,
    pub published_optimum: Option<u64>,
}

impl KnapsackInstance {
    pub fn new(capacity: u64, items: &[Item]) -> Result<KnapsackInstance, KnapsackError> {
        if let Some(i) = items.iter().position(|it| it.weight == 0) {
            return Err(KnapsackError::ZeroWeight(i));
        }
        let (items, original_ids) = density_sort(items);
        Ok(KnapsackInstance {
            capacity,
            items,
            original_ids,
            name: None,
            published_optimum: None,
        })
    }

    /// Greedy continuous relaxation over `items[first_unchosen..]` with the
    /// given residual capacity: items are taken whole in density order until
    /// one no longer fits, which is taken fractionally. The result is an
    /// upper bound on any 0/1 completion over the same items and capacity.
    pub fn fractional_bound(&self, first_unchosen: usize, mut residual: u64) -> Ratio<u64> {
        let mut total = Ratio::zero();
        for item in &self.items[first_unchosen..] {
            if residual == 0 {
                break;
            }
            if item.weight <= residual {
                total += Ratio::from_integer(item.profit);
                residual -= item.weight;
            } else {
                total += Ratio::new(item.profit * residual, item.weight);
                break;
            }
        }
        total
    }
}

/// Instances compare by payload: capacity, sorted items, name and published
/// optimum. The sort permutation is derived bookkeeping and is excluded.
impl PartialEq for KnapsackInstance {
    fn eq(&self, other: &Self) -> bool {
        self.capacity == other.capacity
            && self.items == other.items
            && self.name == other.name
            && self.published_optimum == other.published_optimum
    }
}

/// Chosen item slots (ascending, in density order) with running totals.
#[derive(Clone, Debug, PartialEq)]
pub struct KnapsackSolution {
    pub chosen: Vec<u32>,
    pub profit: u64,
    pub weight: u64,
    pub capacity: u64,
}

#[derive(Debug)]
pub struct KnapsackProblem {
    pub instance: KnapsackInstance,
}

impl KnapsackProblem {
    pub fn new(instance: KnapsackInstance) -> Self {
        KnapsackProblem { instance }
    }
}

impl Problem for KnapsackProblem {
    type Solution = KnapsackSolution;
    /// Index of the first item slot still eligible for selection.
    type Candidates = usize;
    type Bound = Ratio<u64>;

    fn root(&self) -> SearchNode<Self> {
        SearchNode::new(
            KnapsackSolution {
                chosen: Vec::new(),
                profit: 0,
                weight: 0,
                capacity: self.instance.capacity,
            },
            0,
            Ratio::zero(),
        )
    }

    /// One child per item at or after the eligibility index that still fits,
    /// in density order.
    fn children(&self, node: &SearchNode<Self>) -> Vec<SearchNode<Self>> {
        let sol = &node.solution;
        let residual = self.instance.capacity - sol.weight;
        (node.candidates..self.instance.items.len())
            .filter(|&j| self.instance.items[j].weight <= residual)
            .map(|j| {
                let item = self.instance.items[j];
                let mut chosen = sol.chosen.clone();
                chosen.push(j as u32);
                let profit = sol.profit + item.profit;
                SearchNode::new(
                    KnapsackSolution {
                        chosen,
                        profit,
                        weight: sol.weight + item.weight,
                        capacity: sol.capacity,
                    },
                    j + 1,
                    Ratio::from_integer(profit),
                )
            })
            .collect()
    }

    fn pruning_heuristic(&self, node: &SearchNode<Self>) -> Ratio<u64> {
        let residual = self.instance.capacity - node.solution.weight;
        Ratio::from_integer(node.solution.profit)
            + self.instance.fractional_bound(node.candidates, residual)
    }

    fn bound_cmp(&self, a: &Ratio<u64>, b: &Ratio<u64>) -> Ordering {
        a.cmp(b)
    }

    fn objective(&self, solution: &KnapsackSolution) -> Ratio<u64> {
        Ratio::from_integer(solution.profit)
    }

    /// Sibling heuristics are non-increasing in density order: a denser
    /// earlier sibling's relaxation dominates a later one's, so the first
    /// failing child rules out the rest.
    fn prune_right(&self) -> bool {
        true
    }
}
