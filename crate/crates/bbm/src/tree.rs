use std::collections::BTreeMap;
use std::fmt;

use crate::position::Position;

/// Produces the children of a node, given the node's label word.
///
/// The returned letters are the children's labels in sibling order; child `i`
/// of a node labelled `w` is labelled `w·aᵢ`. Every returned sequence must be
/// an isogram (no repeated letters), which guarantees sibling labels are
/// pairwise distinct.
pub trait OrderedGenerator {
    type Letter: Clone + Eq + fmt::Debug;

    fn expand(&self, word: &[Self::Letter]) -> Vec<Self::Letter>;
}

/// Adapter turning a closure into an [`OrderedGenerator`].
pub struct FnGenerator<L, F>(F, std::marker::PhantomData<L>);

impl<L, F> FnGenerator<L, F>
where
    L: Clone + Eq + fmt::Debug,
    F: Fn(&[L]) -> Vec<L>,
{
    pub fn new(f: F) -> Self {
        FnGenerator(f, std::marker::PhantomData)
    }
}

impl<L, F> OrderedGenerator for FnGenerator<L, F>
where
    L: Clone + Eq + fmt::Debug,
    F: Fn(&[L]) -> Vec<L>,
{
    type Letter = L;

    fn expand(&self, word: &[L]) -> Vec<L> {
        (self.0)(word)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TreeError {
    #[error("generator produced repeated letters under parent {parent} (word {word})")]
    NotIsogram { parent: Position, word: String },
}

#[derive(Debug)]
struct Entry<L> {
    /// Label of the edge from the parent; `None` only at the root.
    letter: Option<L>,
    child_count: u32,
}

/// A finite ordered tree: a prefix-closed set of positions together with the
/// label word at each position. Iteration over positions is always in
/// lexicographic order.
#[derive(Debug)]
pub struct OrderedTree<L> {
    nodes: BTreeMap<Position, Entry<L>>,
}

impl<L: Clone + Eq + fmt::Debug> OrderedTree<L> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, pos: &Position) -> bool {
        self.nodes.contains_key(pos)
    }

    pub fn child_count(&self, pos: &Position) -> u32 {
        self.nodes.get(pos).map_or(0, |e| e.child_count)
    }

    pub fn children<'a>(&'a self, pos: &Position) -> impl Iterator<Item = Position> + 'a {
        let pos = pos.clone();
        let n = self.child_count(&pos);
        (0..n).map(move |i| pos.child(i))
    }

    /// All positions in lexicographic order.
    pub fn positions(&self) -> impl Iterator<Item = &Position> {
        self.nodes.keys()
    }

    /// The positions of the maximal subtree rooted at `root`, in
    /// lexicographic order. Subtrees are contiguous in that order, so this
    /// is a range scan.
    pub fn segment<'a>(&'a self, root: &Position) -> impl Iterator<Item = &'a Position> + 'a {
        let root = root.clone();
        self.nodes
            .range(root.clone()..)
            .map(|(p, _)| p)
            .take_while(move |p| root.is_prefix_of(p))
    }

    /// The label word at `pos`: the letters along the path from the root.
    pub fn label_word(&self, pos: &Position) -> Vec<L> {
        let digits = pos.digits();
        let mut word = Vec::with_capacity(digits.len());
        for d in 1..=digits.len() {
            let prefix = Position::from_digits(&digits[..d]);
            if let Some(entry) = self.nodes.get(&prefix) {
                if let Some(letter) = &entry.letter {
                    word.push(letter.clone());
                }
            }
        }
        word
    }

    pub fn depth(&self) -> usize {
        self.nodes.keys().map(|p| p.len()).max().unwrap_or(0)
    }

    /// Checks the structural invariants: prefix closure and contiguous child
    /// indices. Intended for tests.
    pub fn validate(&self) -> bool {
        self.nodes.iter().all(|(pos, _)| match pos.parent() {
            None => true,
            Some(parent) => self
                .nodes
                .get(&parent)
                .is_some_and(|e| pos.last().unwrap() < e.child_count),
        })
    }
}

/// Materialises the tree produced by `gen`, breadth-first from the root,
/// truncating at `max_depth` (nodes at that depth are kept but not expanded).
pub fn materialize_tree<G: OrderedGenerator>(
    gen: &G,
    max_depth: usize,
) -> Result<OrderedTree<G::Letter>, TreeError> {
    let mut nodes: BTreeMap<Position, Entry<G::Letter>> = BTreeMap::new();
    nodes.insert(
        Position::root(),
        Entry {
            letter: None,
            child_count: 0,
        },
    );
    let mut frontier = vec![(Position::root(), Vec::new())];
    while let Some((pos, word)) = frontier.pop() {
        if pos.len() >= max_depth {
            continue;
        }
        let letters = gen.expand(&word);
        for (i, a) in letters.iter().enumerate() {
            if letters[..i].contains(a) {
                return Err(TreeError::NotIsogram {
                    parent: pos.clone(),
                    word: format!("{letters:?}"),
                });
            }
        }
        nodes.get_mut(&pos).unwrap().child_count = letters.len() as u32;
        for (i, a) in letters.into_iter().enumerate() {
            let child = pos.child(i as u32);
            let mut child_word = word.clone();
            child_word.push(a.clone());
            nodes.insert(
                child.clone(),
                Entry {
                    letter: Some(a),
                    child_count: 0,
                },
            );
            frontier.push((child, child_word));
        }
    }
    Ok(OrderedTree { nodes })
}
