//! Maximum clique over an undirected graph, in the bitset style of BBMC:
//! vertices are renumbered into non-increasing degree order at load, a
//! greedy colouring of each node's candidate set yields both the branching
//! order and the bound, and branching walks the colouring from the highest
//! colour class down so the per-child bounds are non-increasing and the
//! engine may stop at the first failing sibling.

use std::cmp::Ordering;

use bnb_core::{Problem, SearchNode};

use crate::bitset::VertexSet;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(u32, usize),
}

/// Undirected graph with bitset adjacency rows. Vertices are relabelled at
/// construction into non-increasing degree order (ties keep input order);
/// `original_id` maps a relabelled vertex back to its input id.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    order: Vec<u32>,
}

impl PartialEq for Graph {
    /// Structural equality: the original-id map is presentation metadata.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from 0-based endpoint pairs. Duplicate edges collapse;
    /// self-loops are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut raw = vec![VertexSet::empty(n); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w as usize >= n {
                    return Err(GraphError::VertexOutOfRange(w, n));
                }
            }
            raw[u as usize].insert(v);
            raw[v as usize].insert(u);
        }
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(raw[v as usize].count()));
        let mut position = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            position[old as usize] = new as u32;
        }
        let mut adj = vec![VertexSet::empty(n); n];
        for (new, &old) in order.iter().enumerate() {
            for v in raw[old as usize].iter() {
                adj[new].insert(position[v as usize]);
            }
        }
        Ok(Graph { n, adj, order })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, v: u32) -> &VertexSet {
        &self.adj[v as usize]
    }

    pub fn are_adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(v)
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].count()
    }

    /// Input id of relabelled vertex `v`.
    pub fn original_id(&self, v: u32) -> u32 {
        self.order[v as usize]
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Distinct edges under the current labelling, `u < v`, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for u in 0..self.n as u32 {
            for v in self.adj[u as usize].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Greedy sequential colouring of `candidates`, emitted class by class.
/// Class 1 is built by repeatedly taking the lowest remaining vertex and
/// discarding its neighbours, class 2 likewise over the leftovers, and so
/// on; each vertex is paired with the number of classes used so far, so the
/// final pair carries the total class count. Adjacent vertices never share
/// a class, hence any clique inside `candidates` has at most one vertex per
/// class.
pub fn colour_order(graph: &Graph, candidates: &VertexSet) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(candidates.count());
    let mut uncoloured = candidates.clone();
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut avail = uncoloured.clone();
        while let Some(v) = avail.first() {
            out.push((v, colour));
            uncoloured.remove(v);
            avail.remove(v);
            avail.subtract(graph.neighbours(v));
        }
    }
    out
}

/// A clique under construction: its members (in selection order) and the
/// colour bound recorded when the last member was picked from its parent's
/// colouring. `members.len() + colour_bound` caps every clique reachable
/// below the node.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueSolution {
    pub members: Vec<u32>,
    pub colour_bound: u32,
}

/// Maximum clique as a search problem over a shared immutable graph.
#[derive(Debug)]
pub struct CliqueProblem {
    pub graph: Graph,
}

impl CliqueProblem {
    pub fn new(graph: Graph) -> Self {
        CliqueProblem { graph }
    }
}

impl Problem for CliqueProblem {
    type Solution = CliqueSolution;
    type Candidates = VertexSet;
    type Bound = u32;

    fn root(&self) -> SearchNode<Self> {
        SearchNode::new(
            CliqueSolution {
                members: Vec::new(),
                colour_bound: self.graph.n() as u32,
            },
            self.graph.all_vertices(),
            0,
        )
    }

    /// One child per coloured candidate. The colouring is consumed from the
    /// highest colour class down: child `v` (emitted with colour `c`) keeps
    /// only candidates coloured before `v`, intersected with `v`'s
    /// neighbourhood, and records `c - 1` as its colour bound. Walking the
    /// classes downwards makes the child bounds non-increasing, and every
    /// clique extending the parent is reached exactly once through its
    /// last-coloured member.
    fn children(&self, node: &SearchNode<Self>) -> Vec<SearchNode<Self>> {
        let emitted = colour_order(&self.graph, &node.candidates);
        let mut staged = Vec::with_capacity(emitted.len());
        let mut before = VertexSet::empty(self.graph.n());
        for &(v, colour) in &emitted {
            staged.push((v, colour, before.intersection(self.graph.neighbours(v))));
            before.insert(v);
        }
        staged
            .into_iter()
            .rev()
            .map(|(v, colour, candidates)| {
                let mut members = node.solution.members.clone();
                members.push(v);
                let bound = node.bound + 1;
                SearchNode::new(
                    CliqueSolution {
                        members,
                        colour_bound: colour - 1,
                    },
                    candidates,
                    bound,
                )
            })
            .collect()
    }

    fn pruning_heuristic(&self, node: &SearchNode<Self>) -> u32 {
        node.bound + node.solution.colour_bound
    }

    fn bound_cmp(&self, a: &u32, b: &u32) -> Ordering {
        a.cmp(b)
    }

    fn objective(&self, solution: &CliqueSolution) -> u32 {
        solution.members.len() as u32
    }

    fn prune_right(&self) -> bool {
        true
    }
}
