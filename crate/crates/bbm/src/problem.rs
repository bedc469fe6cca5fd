use std::fmt;

/// Objective function and pruning predicate over label words, together with
/// the order on objective values.
///
/// The order is a total quasi-order: `le` must be total and transitive but
/// not necessarily anti-symmetric. Minimisation problems are expressed by
/// flipping `le` (the dual order), so the interpreter always maximises.
///
/// A sound pruning predicate satisfies, for all values `y ⊑ y'` and words
/// `w` prefix of `w'`:
///   (i)   pruned(y, w) implies pruned(y, w')
///   (ii)  pruned(y, w) implies pruned(y', w)
///   (iii) pruned(y, w) implies objective(w) ⊑ y
/// [`crate::check_prune_conditions`] tests these on a materialised tree.
pub trait TreeProblem<L> {
    type Value: Clone + fmt::Debug;

    fn objective(&self, word: &[L]) -> Self::Value;

    /// The quasi-order `⊑`: true when `a` is no better than `b`.
    fn le(&self, a: &Self::Value, b: &Self::Value) -> bool;

    /// True when the subtree under `word` cannot improve on `incumbent`.
    fn prune(&self, incumbent: &Self::Value, word: &[L]) -> bool;

    /// Strict order `⊏` induced by the quasi-order.
    fn lt(&self, a: &Self::Value, b: &Self::Value) -> bool {
        self.le(a, b) && !self.le(b, a)
    }
}
