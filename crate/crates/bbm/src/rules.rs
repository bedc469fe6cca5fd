use std::collections::VecDeque;
use std::fmt;

use crate::position::Position;
use crate::problem::TreeProblem;
use crate::tree::OrderedTree;

/// The five reduction rules.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Rule {
    Strengthen,
    Schedule,
    Prune,
    Advance,
    Terminate,
}

impl Rule {
    pub const ALL: [Rule; 5] = [
        Rule::Strengthen,
        Rule::Schedule,
        Rule::Prune,
        Rule::Advance,
        Rule::Terminate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Strengthen => "strengthen",
            Rule::Schedule => "schedule",
            Rule::Prune => "prune",
            Rule::Advance => "advance",
            Rule::Terminate => "terminate",
        }
    }

    pub fn from_name(s: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One model thread: idle, or holding a segment with a current position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ThreadState {
    Idle,
    Busy {
        /// Root of the segment this thread owns.
        segment: Position,
        /// The position the thread currently visits; always inside the segment.
        current: Position,
    },
}

impl ThreadState {
    pub fn is_idle(&self) -> bool {
        matches!(self, ThreadState::Idle)
    }
}

/// Immutable search state: incumbent, queue of segment roots, thread slots.
/// Rule applications return fresh states.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchState {
    pub incumbent: Position,
    pub queue: VecDeque<Position>,
    pub threads: Vec<ThreadState>,
}

#[derive(Debug, thiserror::Error)]
pub enum StateError {
    #[error("no threads requested")]
    NoThreads,
    #[error("segment root {0} is not in the tree")]
    UnknownRoot(Position),
    #[error("segment roots {0} and {1} overlap")]
    Overlap(Position, Position),
    #[error("tree position {0} is not covered by any segment")]
    NotCovered(Position),
}

impl SearchState {
    /// Initial state: incumbent at the root, all threads idle, queue holding
    /// the given segment roots. The segments must be pairwise disjoint and
    /// must cover the tree (every position is an ancestor or member of some
    /// segment).
    pub fn initial<L: Clone + Eq + fmt::Debug>(
        tree: &OrderedTree<L>,
        roots: &[Position],
        threads: usize,
    ) -> Result<Self, StateError> {
        if threads == 0 {
            return Err(StateError::NoThreads);
        }
        for r in roots {
            if !tree.contains(r) {
                return Err(StateError::UnknownRoot(r.clone()));
            }
        }
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                if a.is_prefix_of(b) || b.is_prefix_of(a) {
                    return Err(StateError::Overlap(a.clone(), b.clone()));
                }
            }
        }
        for pos in tree.positions() {
            let covered = roots.iter().any(|r| r.is_prefix_of(pos) || pos.is_prefix_of(r));
            if !covered {
                return Err(StateError::NotCovered(pos.clone()));
            }
        }
        Ok(SearchState {
            incumbent: Position::root(),
            queue: roots.iter().cloned().collect(),
            threads: vec![ThreadState::Idle; threads],
        })
    }

    /// Final states have an empty queue and only idle threads.
    pub fn is_final(&self) -> bool {
        self.queue.is_empty() && self.threads.iter().all(ThreadState::is_idle)
    }

    /// Segment disjointness across the queue and busy threads, and each busy
    /// thread's current position lying inside its segment. Used by tests
    /// after every step.
    pub fn invariants_hold(&self) -> bool {
        let mut roots: Vec<&Position> = self.queue.iter().collect();
        for t in &self.threads {
            if let ThreadState::Busy { segment, current } = t {
                if !segment.is_prefix_of(current) {
                    return false;
                }
                roots.push(segment);
            }
        }
        for (i, a) in roots.iter().enumerate() {
            for b in &roots[i + 1..] {
                if a.is_prefix_of(b) || b.is_prefix_of(a) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RuleError {
    #[error("thread {thread} out of range")]
    ThreadOutOfRange { thread: usize },
    #[error("rule {rule} not applicable on thread {thread}: {reason}")]
    Inapplicable {
        rule: Rule,
        thread: usize,
        reason: String,
    },
}

fn inapplicable(rule: Rule, thread: usize, reason: impl Into<String>) -> RuleError {
    RuleError::Inapplicable {
        rule,
        thread,
        reason: reason.into(),
    }
}

/// Applies one reduction rule for one thread, returning the successor state.
/// Fails with a diagnostic if the rule's premise does not hold.
pub fn apply_rule<L, P>(
    state: &SearchState,
    rule: Rule,
    thread: usize,
    problem: &P,
    tree: &OrderedTree<L>,
) -> Result<SearchState, RuleError>
where
    L: Clone + Eq + fmt::Debug,
    P: TreeProblem<L>,
{
    if thread >= state.threads.len() {
        return Err(RuleError::ThreadOutOfRange { thread });
    }
    let incumbent_value = problem.objective(&tree.label_word(&state.incumbent));
    let mut next = state.clone();
    match rule {
        Rule::Strengthen => {
            let ThreadState::Busy { current, .. } = &state.threads[thread] else {
                return Err(inapplicable(rule, thread, "thread is idle"));
            };
            let value = problem.objective(&tree.label_word(current));
            if !problem.lt(&incumbent_value, &value) {
                return Err(inapplicable(
                    rule,
                    thread,
                    format!(
                        "objective at {current} ({value:?}) does not improve on the incumbent ({incumbent_value:?})"
                    ),
                ));
            }
            next.incumbent = current.clone();
        }
        Rule::Schedule => {
            if !state.threads[thread].is_idle() {
                return Err(inapplicable(rule, thread, "thread is busy"));
            }
            let Some(head) = state.queue.front() else {
                return Err(inapplicable(rule, thread, "task queue is empty"));
            };
            if problem.prune(&incumbent_value, &tree.label_word(head)) {
                return Err(inapplicable(
                    rule,
                    thread,
                    format!("head segment root {head} is pruned"),
                ));
            }
            let head = next.queue.pop_front().unwrap();
            next.threads[thread] = ThreadState::Busy {
                segment: head.clone(),
                current: head,
            };
        }
        Rule::Prune => {
            if !state.threads[thread].is_idle() {
                return Err(inapplicable(rule, thread, "thread is busy"));
            }
            let Some(head) = state.queue.front() else {
                return Err(inapplicable(rule, thread, "task queue is empty"));
            };
            if !problem.prune(&incumbent_value, &tree.label_word(head)) {
                return Err(inapplicable(
                    rule,
                    thread,
                    format!("head segment root {head} is not pruned"),
                ));
            }
            next.queue.pop_front();
        }
        Rule::Advance => {
            let ThreadState::Busy { segment, current } = &state.threads[thread] else {
                return Err(inapplicable(rule, thread, "thread is idle"));
            };
            match next_unpruned(tree, problem, &incumbent_value, segment, current) {
                Some(target) => {
                    next.threads[thread] = ThreadState::Busy {
                        segment: segment.clone(),
                        current: target,
                    };
                }
                None => {
                    return Err(inapplicable(
                        rule,
                        thread,
                        format!("no unpruned position after {current} in segment {segment}"),
                    ))
                }
            }
        }
        Rule::Terminate => {
            let ThreadState::Busy { segment, current } = &state.threads[thread] else {
                return Err(inapplicable(rule, thread, "thread is idle"));
            };
            if let Some(target) = next_unpruned(tree, problem, &incumbent_value, segment, current)
            {
                return Err(inapplicable(
                    rule,
                    thread,
                    format!("position {target} in segment {segment} is still unpruned"),
                ));
            }
            next.threads[thread] = ThreadState::Idle;
        }
    }
    Ok(next)
}

/// First position strictly after `current` (lexicographically) in the
/// segment whose pruning predicate is false, or `None` if every later
/// position is pruned.
fn next_unpruned<L, P>(
    tree: &OrderedTree<L>,
    problem: &P,
    incumbent_value: &P::Value,
    segment: &Position,
    current: &Position,
) -> Option<Position>
where
    L: Clone + Eq + fmt::Debug,
    P: TreeProblem<L>,
{
    tree.segment(segment)
        .filter(|p| *p > current)
        .find(|p| !problem.prune(incumbent_value, &tree.label_word(p)))
        .cloned()
}

/// All `(rule, thread)` pairs whose premises hold in `state`.
pub(crate) fn applicable_steps<L, P>(
    state: &SearchState,
    problem: &P,
    tree: &OrderedTree<L>,
) -> Vec<(Rule, usize)>
where
    L: Clone + Eq + fmt::Debug,
    P: TreeProblem<L>,
{
    let incumbent_value = problem.objective(&tree.label_word(&state.incumbent));
    let mut steps = Vec::new();
    for (i, t) in state.threads.iter().enumerate() {
        match t {
            ThreadState::Idle => {
                if let Some(head) = state.queue.front() {
                    if problem.prune(&incumbent_value, &tree.label_word(head)) {
                        steps.push((Rule::Prune, i));
                    } else {
                        steps.push((Rule::Schedule, i));
                    }
                }
            }
            ThreadState::Busy { segment, current } => {
                let value = problem.objective(&tree.label_word(current));
                if problem.lt(&incumbent_value, &value) {
                    steps.push((Rule::Strengthen, i));
                }
                if next_unpruned(tree, problem, &incumbent_value, segment, current).is_some() {
                    steps.push((Rule::Advance, i));
                } else {
                    steps.push((Rule::Terminate, i));
                }
            }
        }
    }
    steps
}
