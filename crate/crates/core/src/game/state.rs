use crate::canon::{colored_graph_key, CanonicalKey, Mark, MarkedGraph, PENDING};
use crate::graph_core::{bits, full_mask, Graph};

/// Vertices revealed so far, in arrival order, with their decisions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RevealedState {
    back_edges: Vec<u32>,
    adj: Vec<u32>,
    marks: Vec<Mark>,
    accepted: u32,
}

impl RevealedState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.marks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.marks.is_empty()
    }

    /// Appends an arrival adjacent to the earlier arrivals in `edges`.
    ///
    /// # Panics
    /// If `edges` mentions an arrival index that does not exist yet.
    pub fn push(&mut self, edges: u32, mark: Mark) {
        let i = self.len();
        assert!(i < 32, "at most 32 arrivals");
        assert_eq!(edges & !full_mask(i), 0, "edges must point to earlier arrivals");
        for u in bits(edges) {
            self.adj[u] |= 1 << i;
        }
        self.adj.push(edges);
        self.back_edges.push(edges);
        self.marks.push(mark);
        if mark == Mark::Accepted {
            self.accepted |= 1 << i;
        }
    }

    pub fn pop(&mut self) -> Option<(u32, Mark)> {
        let mark = self.marks.pop()?;
        let edges = self.back_edges.pop().expect("parallel vectors");
        self.adj.pop();
        let i = self.len();
        for u in bits(edges) {
            self.adj[u] &= !(1 << i);
        }
        self.accepted &= !(1 << i);
        Some((edges, mark))
    }

    /// Edges from arrival `i` to earlier arrivals.
    pub fn back_edges(&self, i: usize) -> u32 {
        self.back_edges[i]
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn accepted_mask(&self) -> u32 {
        self.accepted
    }

    pub fn rejected_mask(&self) -> u32 {
        !self.accepted & full_mask(self.len())
    }

    pub fn accepted_count(&self) -> usize {
        self.accepted.count_ones() as usize
    }

    /// The same history with every decision inverted.
    pub fn flipped(&self) -> Self {
        let marks = self
            .marks
            .iter()
            .map(|m| match m {
                Mark::Accepted => Mark::Rejected,
                Mark::Rejected => Mark::Accepted,
            })
            .collect();
        RevealedState {
            back_edges: self.back_edges.clone(),
            adj: self.adj.clone(),
            marks,
            accepted: self.rejected_mask(),
        }
    }

    pub fn marked_graph(&self) -> MarkedGraph {
        MarkedGraph { graph: Graph::from_adjacency_unchecked(self.adj.clone()), marks: self.marks.clone() }
    }

    pub(crate) fn colors(&self) -> Vec<u8> {
        self.marks.iter().map(|m| m.color()).collect()
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        colored_graph_key(&self.adj, &self.colors())
    }

    /// Key of this state extended by an undecided arrival adjacent to `edges`.
    pub fn pending_key(&self, edges: u32) -> CanonicalKey {
        let i = self.len();
        let mut adj = self.adj.clone();
        for u in bits(edges) {
            adj[u] |= 1 << i;
        }
        adj.push(edges);
        let mut colors = self.colors();
        colors.push(PENDING);
        colored_graph_key(&adj, &colors)
    }
}
