//! Small brute-force reference solvers, deliberately independent of the
//! search engine: exhaustive subset scans, textbook dynamic programming and
//! permutation enumeration. They exist so search results can be checked
//! against code that shares nothing with the thing under test.

use crate::tsp::DistanceMatrix;

/// Size of the largest clique, by scanning every vertex subset.
/// Intended for graphs of at most ~20 vertices.
pub fn max_clique_brute(n: usize, edges: &[(u32, u32)]) -> u32 {
    assert!(n <= 20, "brute-force clique oracle capped at 20 vertices");
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u as usize][v as usize] = true;
        adj[v as usize][u as usize] = true;
    }
    let mut best = 0;
    for mask in 0u32..1 << n {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if members.len() as u32 <= best {
            continue;
        }
        let clique = members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| adj[u][v]));
        if clique {
            best = members.len() as u32;
        }
    }
    best
}

/// Optimal 0/1 knapsack profit by dynamic programming over capacity.
pub fn knapsack_dp(capacity: u64, items: &[(u64, u64)]) -> u64 {
    let cap = capacity as usize;
    let mut best = vec![0u64; cap + 1];
    for &(profit, weight) in items {
        let w = weight as usize;
        for c in (w..=cap).rev() {
            best[c] = best[c].max(best[c - w] + profit);
        }
    }
    best[cap]
}

/// Shortest closed tour from city 0, by enumerating every permutation of
/// the remaining cities. Intended for at most ~10 cities.
pub fn tsp_brute(matrix: &DistanceMatrix) -> u64 {
    let n = matrix.n();
    assert!(n <= 10, "brute-force tour oracle capped at 10 cities");
    if n == 1 {
        return 0;
    }
    let mut rest: Vec<u32> = (1..n as u32).collect();
    let mut best = u64::MAX;
    permute(matrix, &mut rest, 0, &mut best);
    best
}

fn permute(matrix: &DistanceMatrix, rest: &mut [u32], fixed: usize, best: &mut u64) {
    if fixed == rest.len() {
        let mut len = 0;
        let mut prev = 0;
        for &c in rest.iter() {
            len += matrix.d(prev, c);
            prev = c;
        }
        len += matrix.d(prev, 0);
        *best = (*best).min(len);
        return;
    }
    for i in fixed..rest.len() {
        rest.swap(fixed, i);
        permute(matrix, rest, fixed + 1, best);
        rest.swap(fixed, i);
    }
}
