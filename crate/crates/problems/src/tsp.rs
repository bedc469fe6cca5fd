//! Symmetric TSP with a fixed start city: tours grow by appending unvisited
//! cities in ascending id order, a Prim minimum-spanning-tree weight over
//! the unvisited cities (plus the tour's two loose ends) gives the lower
//! bound, and a greedy nearest-neighbour tour seeds the incumbent. The
//! engine maximises, so bounds are compared through the dual order with a
//! dedicated "no finished tour" state rather than a sentinel length.

use std::cmp::Ordering;

use bnb_core::{Problem, SearchNode};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MatrixError {
    #[error("expected {0}x{0} entries, got {1}")]
    WrongSize(usize, usize),
    #[error("asymmetric distances between {0} and {1}")]
    Asymmetric(usize, usize),
    #[error("nonzero diagonal at {0}")]
    NonzeroDiagonal(usize),
}

/// Symmetric non-negative integer distances with a zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u64>,
}

impl DistanceMatrix {
    pub fn new(n: usize, entries: Vec<u64>) -> Result<DistanceMatrix, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::WrongSize(n, entries.len()));
        }
        for i in 0..n {
            if entries[i * n + i] != 0 {
                return Err(MatrixError::NonzeroDiagonal(i));
            }
            for j in i + 1..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(MatrixError::Asymmetric(i, j));
                }
            }
        }
        Ok(DistanceMatrix { n, d: entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self, i: u32, j: u32) -> u64 {
        self.d[i as usize * self.n + j as usize]
    }
}

/// A (possibly partial) tour from city 0. A finished tour repeats the start
/// city as its final element; all other elements are pairwise distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct Tour {
    pub path: Vec<u32>,
    pub length: u64,
}

/// Tour values under the dual order: a shorter finished tour beats a longer
/// one, and an unfinished tour beats nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TourBound {
    Open,
    Finished(u64),
}

/// Exact minimum-spanning-tree weight over the listed cities (duplicates
/// ignored), by Prim's algorithm. Empty and singleton sets weigh 0.
pub fn mst_weight(matrix: &DistanceMatrix, cities: &[u32]) -> u64 {
    let mut cities: Vec<u32> = cities.to_vec();
    cities.sort_unstable();
    cities.dedup();
    if cities.len() < 2 {
        return 0;
    }
    let mut in_tree = vec![false; cities.len()];
    let mut cost = vec![u64::MAX; cities.len()];
    cost[0] = 0;
    let mut total = 0;
    for _ in 0..cities.len() {
        let next = (0..cities.len())
            .filter(|&i| !in_tree[i])
            .min_by_key(|&i| cost[i])
            .unwrap();
        in_tree[next] = true;
        total += cost[next];
        for i in 0..cities.len() {
            if !in_tree[i] {
                cost[i] = cost[i].min(matrix.d(cities[next], cities[i]));
            }
        }
    }
    total
}

/// Nearest-neighbour construction from `start`: repeatedly moves to the
/// closest unvisited city (ties to the lowest id), then closes the tour.
pub fn greedy_nearest_neighbour(matrix: &DistanceMatrix, start: u32) -> Tour {
    let n = matrix.n();
    let mut path = vec![start];
    let mut length = 0;
    if n == 1 {
        return Tour { path, length };
    }
    let mut visited = vec![false; n];
    visited[start as usize] = true;
    let mut at = start;
    for _ in 1..n {
        let next = (0..n as u32)
            .filter(|&c| !visited[c as usize])
            .min_by_key(|&c| matrix.d(at, c))
            .unwrap();
        visited[next as usize] = true;
        length += matrix.d(at, next);
        path.push(next);
        at = next;
    }
    length += matrix.d(at, start);
    path.push(start);
    Tour { path, length }
}

#[derive(Debug)]
pub struct TspProblem {
    pub matrix: DistanceMatrix,
}

impl TspProblem {
    pub fn new(matrix: DistanceMatrix) -> Self {
        TspProblem { matrix }
    }

    fn finished(&self, tour: &Tour) -> bool {
        self.matrix.n() == 1 || tour.path.len() == self.matrix.n() + 1
    }
}

impl Problem for TspProblem {
    type Solution = Tour;
    /// Unvisited cities, ascending.
    type Candidates = Vec<u32>;
    type Bound = TourBound;

    fn root(&self) -> SearchNode<Self> {
        let n = self.matrix.n();
        let bound = if n == 1 { TourBound::Finished(0) } else { TourBound::Open };
        SearchNode::new(
            Tour { path: vec![0], length: 0 },
            (1..n as u32).collect(),
            bound,
        )
    }

    /// One child per unvisited city in ascending order. A child that visits
    /// the last city closes back to the start immediately: its candidate
    /// set is empty and its bound is the finished tour length.
    fn children(&self, node: &SearchNode<Self>) -> Vec<SearchNode<Self>> {
        let last = *node.solution.path.last().unwrap();
        node.candidates
            .iter()
            .map(|&c| {
                let mut path = node.solution.path.clone();
                path.push(c);
                let mut length = node.solution.length + self.matrix.d(last, c);
                let candidates: Vec<u32> =
                    node.candidates.iter().copied().filter(|&o| o != c).collect();
                let bound = if candidates.is_empty() {
                    length += self.matrix.d(c, 0);
                    path.push(0);
                    TourBound::Finished(length)
                } else {
                    TourBound::Open
                };
                SearchNode::new(Tour { path, length }, candidates, bound)
            })
            .collect()
    }

    /// Path length plus the MST weight over the unvisited cities together
    /// with the start and the current end; on a finished tour this is the
    /// tour length itself.
    fn pruning_heuristic(&self, node: &SearchNode<Self>) -> TourBound {
        let mut cities = node.candidates.clone();
        cities.push(0);
        cities.push(*node.solution.path.last().unwrap());
        TourBound::Finished(node.solution.length + mst_weight(&self.matrix, &cities))
    }

    fn bound_cmp(&self, a: &TourBound, b: &TourBound) -> Ordering {
        match (a, b) {
            (TourBound::Open, TourBound::Open) => Ordering::Equal,
            (TourBound::Open, TourBound::Finished(_)) => Ordering::Less,
            (TourBound::Finished(_), TourBound::Open) => Ordering::Greater,
            (TourBound::Finished(a), TourBound::Finished(b)) => b.cmp(a),
        }
    }

    fn objective(&self, solution: &Tour) -> TourBound {
        if self.finished(solution) {
            TourBound::Finished(solution.length)
        } else {
            TourBound::Open
        }
    }

    fn initial_incumbent(&self) -> Option<(Tour, TourBound)> {
        let tour = greedy_nearest_neighbour(&self.matrix, 0);
        let bound = TourBound::Finished(tour.length);
        Some((tour, bound))
    }
}
