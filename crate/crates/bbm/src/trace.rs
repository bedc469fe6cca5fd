use std::fmt;

use crate::position::Position;
use crate::problem::TreeProblem;
use crate::rules::{apply_rule, Rule, SearchState};
use crate::run::TraceStep;
use crate::tree::OrderedTree;

/// Renders a trace as line-oriented text, one reduction per line:
///
/// ```text
/// step=1 rule=schedule thread=1 incumbent=0 queue=[1,2,3,4,5,6,7]
/// ```
///
/// Threads are numbered from 1 in the textual form; the incumbent and queue
/// show the state after the step.
pub fn render_trace(steps: &[TraceStep]) -> String {
    let mut out = String::new();
    for s in steps {
        render_step(&mut out, s);
        out.push('\n');
    }
    out
}

fn render_step(out: &mut String, s: &TraceStep) {
    use fmt::Write;
    let queue = s
        .queue
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",");
    write!(
        out,
        "step={} rule={} thread={} incumbent={} queue=[{}]",
        s.step,
        s.rule,
        s.thread + 1,
        s.incumbent,
        queue
    )
    .unwrap();
}

#[derive(Debug, thiserror::Error)]
pub enum TraceParseError {
    #[error("line {line}: missing field {field}")]
    MissingField { line: usize, field: &'static str },
    #[error("line {line}: bad value for {field}: {value:?}")]
    BadValue {
        line: usize,
        field: &'static str,
        value: String,
    },
}

pub fn parse_trace(text: &str) -> Result<Vec<TraceStep>, TraceParseError> {
    let mut steps = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let field = |name: &'static str| -> Result<&str, TraceParseError> {
            let key = format!("{name}=");
            let start = raw
                .find(&key)
                .ok_or(TraceParseError::MissingField { line, field: name })?
                + key.len();
            let rest = &raw[start..];
            let end = rest.find(' ').unwrap_or(rest.len());
            Ok(&rest[..end])
        };
        let bad = |field: &'static str, value: &str| TraceParseError::BadValue {
            line,
            field,
            value: value.to_string(),
        };
        let step = field("step")?;
        let step = step.parse::<usize>().map_err(|_| bad("step", step))?;
        let rule = field("rule")?;
        let rule = Rule::from_name(rule).ok_or_else(|| bad("rule", rule))?;
        let thread = field("thread")?;
        let thread = thread
            .parse::<usize>()
            .ok()
            .and_then(|t| t.checked_sub(1))
            .ok_or_else(|| bad("thread", thread))?;
        let incumbent = field("incumbent")?;
        let incumbent = incumbent
            .parse::<Position>()
            .map_err(|_| bad("incumbent", incumbent))?;
        let queue_text = field("queue")?;
        let inner = queue_text
            .strip_prefix('[')
            .and_then(|q| q.strip_suffix(']'))
            .ok_or_else(|| bad("queue", queue_text))?;
        let mut queue = Vec::new();
        for part in inner.split(',').filter(|p| !p.is_empty()) {
            queue.push(part.parse::<Position>().map_err(|_| bad("queue", part))?);
        }
        steps.push(TraceStep {
            step,
            rule,
            thread,
            incumbent,
            queue,
        });
    }
    Ok(steps)
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error(transparent)]
    Parse(#[from] TraceParseError),
    #[error("step {step}: {source}")]
    Apply {
        step: usize,
        source: crate::rules::RuleError,
    },
    #[error("step {step}: trace says incumbent={expected} but replay reached {found}")]
    IncumbentMismatch {
        step: usize,
        expected: Position,
        found: Position,
    },
    #[error("step {step}: trace queue {expected:?} differs from replayed queue {found:?}")]
    QueueMismatch {
        step: usize,
        expected: Vec<Position>,
        found: Vec<Position>,
    },
    #[error("trace ends after step {step} but the state is not final")]
    NotFinal { step: usize },
}

/// Replays a serialised trace from `initial`, applying each recorded rule
/// and checking the recorded incumbent and queue after every step. Returns
/// the final state, or the first divergence.
pub fn replay_trace<L, P>(
    text: &str,
    initial: SearchState,
    problem: &P,
    tree: &OrderedTree<L>,
) -> Result<SearchState, ReplayError>
where
    L: Clone + Eq + fmt::Debug,
    P: TreeProblem<L>,
{
    let steps = parse_trace(text)?;
    let mut state = initial;
    let mut last = 0;
    for s in &steps {
        state = apply_rule(&state, s.rule, s.thread, problem, tree)
            .map_err(|source| ReplayError::Apply { step: s.step, source })?;
        if state.incumbent != s.incumbent {
            return Err(ReplayError::IncumbentMismatch {
                step: s.step,
                expected: s.incumbent.clone(),
                found: state.incumbent.clone(),
            });
        }
        let queue: Vec<Position> = state.queue.iter().cloned().collect();
        if queue != s.queue {
            return Err(ReplayError::QueueMismatch {
                step: s.step,
                expected: s.queue.clone(),
                found: queue,
            });
        }
        last = s.step;
    }
    if !state.is_final() {
        return Err(ReplayError::NotFinal { step: last });
    }
    Ok(state)
}
