use std::fmt;

use rand::prelude::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::position::Position;
use crate::problem::TreeProblem;
use crate::rules::{applicable_steps, apply_rule, Rule, RuleError, SearchState};
use crate::tree::OrderedTree;

/// Chooses the next reduction step among the applicable ones.
///
/// `applicable` lists every `(rule, thread)` whose premise holds in `state`.
/// Returning a pair outside that list, or an inadmissible pair (advance or
/// terminate on a thread whose strengthen is applicable), aborts the run.
pub trait SchedulingPolicy {
    fn propose(
        &mut self,
        state: &SearchState,
        applicable: &[(Rule, usize)],
    ) -> Option<(Rule, usize)>;
}

/// Fires any applicable strengthen first (lowest thread wins); otherwise
/// rotates a cursor over the threads, giving each in turn one non-strengthen
/// step and skipping threads with nothing to do.
pub struct RoundRobinEagerStrengthen {
    cursor: usize,
}

impl RoundRobinEagerStrengthen {
    pub fn new() -> Self {
        RoundRobinEagerStrengthen { cursor: 0 }
    }
}

impl Default for RoundRobinEagerStrengthen {
    fn default() -> Self {
        Self::new()
    }
}

impl SchedulingPolicy for RoundRobinEagerStrengthen {
    fn propose(
        &mut self,
        state: &SearchState,
        applicable: &[(Rule, usize)],
    ) -> Option<(Rule, usize)> {
        if let Some(&step) = applicable
            .iter()
            .filter(|(r, _)| *r == Rule::Strengthen)
            .min_by_key(|(_, i)| *i)
        {
            return Some(step);
        }
        let n = state.threads.len();
        for offset in 0..n {
            let i = (self.cursor + offset) % n;
            if let Some(&step) = applicable
                .iter()
                .find(|(r, t)| *t == i && *r != Rule::Strengthen)
            {
                self.cursor = (i + 1) % n;
                return Some(step);
            }
        }
        None
    }
}

/// Round-robin over a single thread: plain sequential order.
pub struct SingleThread(RoundRobinEagerStrengthen);

impl SingleThread {
    pub fn new() -> Self {
        SingleThread(RoundRobinEagerStrengthen::new())
    }
}

impl Default for SingleThread {
    fn default() -> Self {
        Self::new()
    }
}

impl SchedulingPolicy for SingleThread {
    fn propose(
        &mut self,
        state: &SearchState,
        applicable: &[(Rule, usize)],
    ) -> Option<(Rule, usize)> {
        self.0.propose(state, applicable)
    }
}

/// Picks uniformly at random among the applicable admissible steps.
pub struct SeededRandomAdmissible {
    rng: ChaCha8Rng,
}

impl SeededRandomAdmissible {
    pub fn new(seed: u64) -> Self {
        SeededRandomAdmissible {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl SchedulingPolicy for SeededRandomAdmissible {
    fn propose(
        &mut self,
        _state: &SearchState,
        applicable: &[(Rule, usize)],
    ) -> Option<(Rule, usize)> {
        let strengthen_on: Vec<usize> = applicable
            .iter()
            .filter(|(r, _)| *r == Rule::Strengthen)
            .map(|&(_, i)| i)
            .collect();
        let admissible: Vec<(Rule, usize)> = applicable
            .iter()
            .copied()
            .filter(|(r, i)| {
                !matches!(r, Rule::Advance | Rule::Terminate) || !strengthen_on.contains(i)
            })
            .collect();
        admissible.choose(&mut self.rng).copied()
    }
}

/// One entry of a reduction trace: the step number (1-based), the rule and
/// thread that fired, and the incumbent and queue of the state *after* the
/// step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub step: usize,
    pub rule: Rule,
    pub thread: usize,
    pub incumbent: Position,
    pub queue: Vec<Position>,
}

impl TraceStep {
    pub fn of(step: usize, rule: Rule, thread: usize, state: &SearchState) -> Self {
        TraceStep {
            step,
            rule,
            thread,
            incumbent: state.incumbent.clone(),
            queue: state.queue.iter().cloned().collect(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("policy proposed {rule} on thread {thread}, which is not applicable")]
    NotApplicable { rule: Rule, thread: usize },
    #[error(
        "policy proposed inadmissible {rule} on thread {thread} while strengthen was applicable"
    )]
    Inadmissible { rule: Rule, thread: usize },
    #[error("policy returned no step but the state is not final")]
    Stuck,
    #[error("step limit {0} exceeded; the reduction does not appear to terminate")]
    StepLimit(usize),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// Runs the reduction to a final state under the given policy, recording one
/// trace entry per step. Every step is checked for admissibility: advance
/// and terminate are rejected while strengthen is applicable on the same
/// thread.
pub fn run_admissible<L, P, S>(
    initial: SearchState,
    policy: &mut S,
    problem: &P,
    tree: &OrderedTree<L>,
) -> Result<(SearchState, Vec<TraceStep>), RunError>
where
    L: Clone + Eq + fmt::Debug,
    P: TreeProblem<L>,
    S: SchedulingPolicy,
{
    let step_limit = (2 * state_threads(&initial) + 4) * (tree.len() + 4) + 64;
    let mut state = initial;
    let mut trace = Vec::new();
    while !state.is_final() {
        if trace.len() >= step_limit {
            return Err(RunError::StepLimit(step_limit));
        }
        let applicable = applicable_steps(&state, problem, tree);
        let Some((rule, thread)) = policy.propose(&state, &applicable) else {
            return Err(RunError::Stuck);
        };
        if !applicable.contains(&(rule, thread)) {
            return Err(RunError::NotApplicable { rule, thread });
        }
        if matches!(rule, Rule::Advance | Rule::Terminate)
            && applicable.contains(&(Rule::Strengthen, thread))
        {
            return Err(RunError::Inadmissible { rule, thread });
        }
        state = apply_rule(&state, rule, thread, problem, tree)?;
        trace.push(TraceStep::of(trace.len() + 1, rule, thread, &state));
    }
    Ok((state, trace))
}

fn state_threads(state: &SearchState) -> usize {
    state.threads.len()
}
