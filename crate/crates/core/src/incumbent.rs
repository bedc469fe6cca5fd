use std::cell::RefCell;
use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::RwLock;

use crate::problem::Problem;

/// How a search loop sees the incumbent: read the current best bound, and
/// offer an improvement. Parallel modes plug in different sharing policies
/// behind this interface.
pub trait IncumbentView<P: Problem> {
    /// Best bound visible to this view, if any solution is known yet.
    fn best_bound(&self) -> Option<P::Bound>;

    /// Offer a solution; returns `true` if it strictly improved the view.
    fn offer(&self, problem: &P, solution: &P::Solution, bound: &P::Bound) -> bool;
}

/// Shared best-so-far store. Writers improve it with a compare-and-improve
/// critical section; readers poll the current bound.
pub struct Incumbent<P: Problem> {
    best: RwLock<Option<(P::Solution, P::Bound)>>,
    updates: AtomicU64,
}

impl<P: Problem> Incumbent<P> {
    pub fn empty() -> Self {
        Incumbent { best: RwLock::new(None), updates: AtomicU64::new(0) }
    }

    pub fn with_initial(initial: Option<(P::Solution, P::Bound)>) -> Self {
        Incumbent { best: RwLock::new(initial), updates: AtomicU64::new(0) }
    }

    pub fn snapshot(&self) -> Option<(P::Solution, P::Bound)> {
        self.best.read().expect("incumbent lock poisoned").clone()
    }

    pub fn snapshot_bound(&self) -> Option<P::Bound> {
        self.best
            .read()
            .expect("incumbent lock poisoned")
            .as_ref()
            .map(|(_, b)| b.clone())
    }

    /// Number of successful improvements since construction.
    pub fn update_count(&self) -> u64 {
        self.updates.load(AtomicOrdering::Relaxed)
    }

    /// Install `(solution, bound)` if it strictly beats the stored bound.
    pub fn improve(&self, problem: &P, solution: &P::Solution, bound: &P::Bound) -> bool {
        {
            let guard = self.best.read().expect("incumbent lock poisoned");
            if let Some((_, held)) = guard.as_ref() {
                if problem.bound_cmp(bound, held) != Ordering::Greater {
                    return false;
                }
            }
        }
        let mut guard = self.best.write().expect("incumbent lock poisoned");
        if let Some((_, held)) = guard.as_ref() {
            if problem.bound_cmp(bound, held) != Ordering::Greater {
                return false;
            }
        }
        *guard = Some((solution.clone(), bound.clone()));
        self.updates.fetch_add(1, AtomicOrdering::Relaxed);
        true
    }
}

impl<P: Problem> IncumbentView<P> for Incumbent<P> {
    fn best_bound(&self) -> Option<P::Bound> {
        self.snapshot_bound()
    }

    fn offer(&self, problem: &P, solution: &P::Solution, bound: &P::Bound) -> bool {
        self.improve(problem, solution, bound)
    }
}

/// Per-task view that prunes against a bound snapshot taken when the task
/// started, while collecting the task's own improvements locally. Reads
/// return the better of the snapshot and the local best, so a task still
/// benefits from its own finds, but never from concurrent ones.
pub struct LocalIncumbent<P: Problem> {
    snapshot: Option<P::Bound>,
    local: RefCell<Option<(P::Solution, P::Bound)>>,
}

impl<P: Problem> LocalIncumbent<P> {
    pub fn new(snapshot: Option<P::Bound>) -> Self {
        LocalIncumbent { snapshot, local: RefCell::new(None) }
    }

    pub fn into_local_best(self) -> Option<(P::Solution, P::Bound)> {
        self.local.into_inner()
    }
}

impl<P: Problem> IncumbentView<P> for LocalIncumbent<P> {
    fn best_bound(&self) -> Option<P::Bound> {
        let local = self.local.borrow();
        match (&self.snapshot, local.as_ref()) {
            (None, None) => None,
            (Some(s), None) => Some(s.clone()),
            (None, Some((_, l))) => Some(l.clone()),
            (Some(_), Some((_, l))) => Some(l.clone()),
        }
    }

    fn offer(&self, problem: &P, solution: &P::Solution, bound: &P::Bound) -> bool {
        let mut local = self.local.borrow_mut();
        let current = match (&self.snapshot, local.as_ref()) {
            (s, None) => s.clone(),
            (_, Some((_, l))) => Some(l.clone()),
        };
        if let Some(held) = current {
            if problem.bound_cmp(bound, &held) != Ordering::Greater {
                return false;
            }
        }
        *local = Some((solution.clone(), bound.clone()));
        true
    }
}
