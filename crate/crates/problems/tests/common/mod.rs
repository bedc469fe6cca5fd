#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bnb_problems::knapsack::Item;
use bnb_problems::tsp::DistanceMatrix;

/// Random undirected edge list on `n` vertices, each edge present with
/// probability `edge_percent`/100.
pub fn random_edges(n: usize, edge_percent: u32, seed: u64) -> Vec<(u32, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random_range(0..100) < edge_percent {
                edges.push((u, v));
            }
        }
    }
    edges
}

pub fn random_items(n: usize, seed: u64) -> Vec<Item> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Item {
            profit: rng.random_range(1..=50),
            weight: rng.random_range(1..=30),
        })
        .collect()
}

/// Random symmetric matrix with zero diagonal; not necessarily metric.
pub fn random_symmetric(n: usize, max_d: u64, seed: u64) -> DistanceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = vec![0u64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = rng.random_range(1..=max_d);
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    DistanceMatrix::new(n, entries).unwrap()
}
