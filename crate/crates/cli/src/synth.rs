//! Seeded synthetic instances for self-checks and desk-scale benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bnb_problems::clique::Graph;
use bnb_problems::knapsack::{Item, KnapsackInstance};
use bnb_problems::tsp::DistanceMatrix;

/// Erdős–Rényi edge list: each pair is kept with probability
/// `edge_percent`/100.
pub fn random_edges(n: usize, edge_percent: u32, seed: u64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.random_range(0..100) < edge_percent {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn random_graph(n: usize, edge_percent: u32, seed: u64) -> Graph {
    Graph::from_edges(n, &random_edges(n, edge_percent, seed)).expect("generated edges are clean")
}

/// Uncorrelated knapsack: profits 1..=50, weights 1..=30, capacity 40% of
/// the total weight.
pub fn random_knapsack(n: usize, seed: u64) -> KnapsackInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<Item> = (0..n)
        .map(|_| Item {
            profit: rng.random_range(1..=50),
            weight: rng.random_range(1..=30),
        })
        .collect();
    let capacity = items.iter().map(|i| i.weight).sum::<u64>() * 2 / 5;
    KnapsackInstance::new(capacity.max(1), &items).expect("weights are positive")
}

/// Strongly correlated knapsack (profit = weight + `addend`), the classic
/// hard family for relaxation-bounded search: densities are nearly flat, so
/// the fractional bound discriminates poorly and the tree stays wide.
pub fn correlated_knapsack(n: usize, weight_range: u64, addend: u64, seed: u64) -> KnapsackInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let items: Vec<Item> = (0..n)
        .map(|_| {
            let weight = rng.random_range(1..=weight_range);
            Item { profit: weight + addend, weight }
        })
        .collect();
    let capacity = items.iter().map(|i| i.weight).sum::<u64>() / 2;
    KnapsackInstance::new(capacity.max(1), &items).expect("weights are positive")
}

/// Symmetric zero-diagonal matrix with uniform entries in 1..=`max_d`; not
/// metric in general.
pub fn random_matrix(n: usize, max_d: u64, seed: u64) -> DistanceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = vec![0u64; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = rng.random_range(1..=max_d);
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    DistanceMatrix::new(n, entries).expect("matrix is symmetric with a zero diagonal")
}
