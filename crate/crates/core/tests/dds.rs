mod common;

use std::sync::atomic::AtomicBool;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bnb_core::{dds_priorities, left_to_right_priorities, PriorityMode, Problem, Task};

use common::SumTree;

fn tasks_from_paths(paths: &[Vec<u32>]) -> Vec<Task<SumTree>> {
    let tree = SumTree::random(0, 0, 0);
    paths
        .iter()
        .map(|path| Task {
            node: tree.root(),
            path: path.clone(),
            priority: 0,
            started: AtomicBool::new(false),
        })
        .collect()
}

fn discrepancy_total(path: &[u32]) -> u64 {
    path.iter().map(|&step| u64::from(step)).sum()
}

fn shallowest_discrepancy(path: &[u32]) -> usize {
    path.iter().position(|&step| step != 0).unwrap_or(usize::MAX)
}

#[test]
fn all_leftmost_task_gets_priority_zero() {
    let tasks = tasks_from_paths(&[vec![0, 0], vec![0, 1], vec![1, 0]]);
    let assignment = dds_priorities(&tasks);
    assert_eq!(assignment.mode, PriorityMode::DiscrepancySearch);
    assert_eq!(assignment.priorities, vec![0, 2, 1]);
}

#[test]
fn single_task_gets_priority_zero() {
    let tasks = tasks_from_paths(&[vec![3, 1]]);
    assert_eq!(dds_priorities(&tasks).priorities, vec![0]);
}

#[test]
fn left_to_right_matches_task_indices() {
    let tasks = tasks_from_paths(&[vec![0], vec![1], vec![2], vec![3]]);
    let assignment = left_to_right_priorities(&tasks);
    assert_eq!(assignment.mode, PriorityMode::LeftToRight);
    assert_eq!(assignment.priorities, vec![0, 1, 2, 3]);
}

#[test]
fn irregular_twelve_task_tree_ranks_by_the_stated_key() {
    // Second-level frontier of a tree whose root has four children with
    // 3/2/1/2 children, whose children in turn hold 2,1,2 / 2,1 / 1 / 1,2
    // subtrees: twelve tasks in left-to-right order.
    let paths = vec![
        vec![0, 0, 0],
        vec![0, 0, 1],
        vec![0, 1, 0],
        vec![0, 2, 0],
        vec![0, 2, 1],
        vec![1, 0, 0],
        vec![1, 0, 1],
        vec![1, 1, 0],
        vec![2, 0, 0],
        vec![3, 0, 0],
        vec![3, 1, 0],
        vec![3, 1, 1],
    ];
    let tasks = tasks_from_paths(&paths);
    let priorities = dds_priorities(&tasks).priorities;
    assert_eq!(priorities, vec![0, 3, 2, 7, 9, 1, 4, 5, 6, 8, 10, 11]);

    let mut seen = priorities.clone();
    seen.sort_unstable();
    assert_eq!(seen, (0..12).collect::<Vec<u64>>());
    for (i, a) in paths.iter().enumerate() {
        for (j, b) in paths.iter().enumerate() {
            if discrepancy_total(a) < discrepancy_total(b) {
                assert!(priorities[i] < priorities[j], "{a:?} should precede {b:?}");
            }
        }
    }
}

#[test]
fn random_path_sets_conform_to_the_full_key() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for round in 0..20 {
        let mut paths: Vec<Vec<u32>> = (0..60)
            .map(|_| {
                let len = rng.random_range(1..=4);
                (0..len).map(|_| rng.random_range(0..4u32)).collect()
            })
            .collect();
        paths.sort();
        paths.dedup();
        let tasks = tasks_from_paths(&paths);
        let priorities = dds_priorities(&tasks).priorities;

        let mut sorted = priorities.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..paths.len() as u64).collect::<Vec<u64>>(), "round {round}");

        for i in 0..paths.len() {
            for j in 0..paths.len() {
                if i == j {
                    continue;
                }
                let key_i =
                    (discrepancy_total(&paths[i]), shallowest_discrepancy(&paths[i]), &paths[i]);
                let key_j =
                    (discrepancy_total(&paths[j]), shallowest_discrepancy(&paths[j]), &paths[j]);
                assert_eq!(
                    key_i < key_j,
                    priorities[i] < priorities[j],
                    "round {round}: {:?} vs {:?}",
                    paths[i],
                    paths[j]
                );
            }
        }
    }
}
