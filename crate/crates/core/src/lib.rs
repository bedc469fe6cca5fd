//! Generic branch-and-bound search over user-supplied problem definitions.
//!
//! A problem describes how to expand a node into children, how to bound a
//! node's subtree from above, and how to compare bounds. On top of that this
//! crate provides a sequential depth-first engine plus two parallel
//! skeletons: an unordered work-stealing skeleton that generates tasks
//! dynamically, and an ordered skeleton that fixes the task set up front and
//! lets speculative workers run ahead of the sequential order.

mod cancel;
mod dds;
mod engine;
mod incumbent;
mod observer;
mod ordered;
mod problem;
mod stats;
mod tasks;
mod unordered;
mod unpruned;

pub use cancel::CancelToken;
pub use dds::{dds_priorities, left_to_right_priorities, PriorityAssignment, PriorityMode};
pub use engine::{expand_search, sequential_search, sequential_search_with, SearchError, SearchResult};
pub use incumbent::{Incumbent, IncumbentView, LocalIncumbent};
pub use observer::{NullObserver, SearchObserver};
pub use ordered::{ordered_search, ordered_search_with, OrderedConfig, OrderedMode};
pub use problem::{Problem, SearchNode};
pub use stats::SearchStats;
pub use tasks::{generate_tasks, Task};
pub use unordered::{unordered_search, unordered_search_with, UnorderedConfig};
pub use unpruned::AcceptAll;
