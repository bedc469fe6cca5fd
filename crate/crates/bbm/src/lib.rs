//! A small, executable model of parallel branch-and-bound search.
//!
//! Search trees are ordered trees whose nodes are addressed by [`Position`]s
//! (sequences of child indices). A tree is produced by an
//! [`OrderedGenerator`] and searched by `n` model threads that share an
//! incumbent and a queue of tree segments. The search itself is expressed as
//! five small reduction rules over an immutable [`SearchState`]; a
//! [`SchedulingPolicy`] picks which rule fires next.
//!
//! The interpreter is deliberately simple and single-threaded: it exists to
//! serve as a ground-truth oracle for the real parallel skeletons, and to
//! make traces of rule applications easy to serialise, replay and diff.

mod check;
pub mod demo;
mod position;
mod problem;
mod rules;
mod run;
mod trace;
mod tree;

pub use check::{check_prune_conditions, PruneCheckReport, PruneViolation};
pub use position::Position;
pub use problem::TreeProblem;
pub use rules::{apply_rule, Rule, RuleError, SearchState, StateError, ThreadState};
pub use run::{
    run_admissible, RoundRobinEagerStrengthen, RunError, SchedulingPolicy, SeededRandomAdmissible,
    SingleThread, TraceStep,
};
pub use trace::{parse_trace, render_trace, replay_trace, ReplayError, TraceParseError};
pub use tree::{materialize_tree, FnGenerator, OrderedGenerator, OrderedTree, TreeError};
