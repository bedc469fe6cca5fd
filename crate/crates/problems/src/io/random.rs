//! Seeded random Euclidean TSP instances: `n` points drawn uniformly from
//! a 10^6 x 10^6 integer grid by a fixed-algorithm generator, so the same
//! (n, seed) pair yields the same matrix on every platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::tsp::DistanceMatrix;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum RandomTspError {
    #[error("need at least 2 cities, got {0}")]
    TooFewCities(usize),
}

const GRID: u64 = 1_000_000;

pub fn generate_random_tsp(n: usize, seed: u64) -> Result<DistanceMatrix, RandomTspError> {
    if n < 2 {
        return Err(RandomTspError::TooFewCities(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<(u64, u64)> = (0..n)
        .map(|_| (rng.random_range(0..GRID), rng.random_range(0..GRID)))
        .collect();
    let mut entries = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let dx = points[i].0 as f64 - points[j].0 as f64;
                let dy = points[i].1 as f64 - points[j].1 as f64;
                entries[i * n + j] = (dx * dx + dy * dy).sqrt().round() as u64;
            }
        }
    }
    Ok(DistanceMatrix::new(n, entries).expect("construction is symmetric"))
}
