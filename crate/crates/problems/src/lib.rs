//! The three benchmark problems (maximum clique, 0/1 knapsack, symmetric
//! TSP) as instantiations of the branch-and-bound engine, together with
//! instance parsing, seeded instance generation, brute-force reference
//! solvers, and encodings of each problem for the formal-model interpreter.

pub mod bbm_codec;
pub mod bitset;
pub mod clique;
pub mod io;
pub mod knapsack;
pub mod oracle;
pub mod tsp;
