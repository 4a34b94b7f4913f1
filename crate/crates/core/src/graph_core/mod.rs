//! Small undirected simple graphs stored as adjacency bitmasks.

mod family;
mod io;

pub use family::{make_family, Family, FamilySpec};
pub use io::{encode_graph6, load_graph, load_graph_with_limit, GraphFormat};

use crate::error::{Error, Result};

/// Hard capacity of the bitmask representation.
pub const MAX_VERTICES: usize = 32;

/// Default bound on host size; the game state space is exponential in it.
pub const DEFAULT_VERTEX_LIMIT: usize = 16;

pub(crate) fn check_limit(n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(MAX_VERTICES);
    if n > limit {
        Err(Error::TooLarge { n, limit })
    } else {
        Ok(())
    }
}

pub(crate) fn bits(mask: u32) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// An undirected simple graph. Vertex `v`'s neighbors are the set bits of `adj[v]`.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: Vec<u32>,
    names: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        check_limit(n, MAX_VERTICES)?;
        Ok(Graph { adj: vec![0; n], names: None })
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency masks, checking symmetry and irreflexivity.
    pub fn from_adjacency(adj: Vec<u32>) -> Result<Self> {
        let n = adj.len();
        check_limit(n, MAX_VERTICES)?;
        for (v, &row) in adj.iter().enumerate() {
            if row & !full_mask(n) != 0 {
                let u = bits(row & !full_mask(n)).next().unwrap();
                return Err(Error::EndpointOutOfRange { vertex: u, n });
            }
            if row >> v & 1 == 1 {
                return Err(Error::SelfLoop(v));
            }
            for u in bits(row) {
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph { adj, names: None })
    }

    pub(crate) fn from_adjacency_unchecked(adj: Vec<u32>) -> Self {
        debug_assert!(Graph::from_adjacency(adj.clone()).is_ok());
        Graph { adj, names: None }
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(Error::EndpointOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adjacent(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        debug_assert_eq!(names.len(), self.order());
        self.names = Some(names);
        self
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of a vertex: its name if one was given, otherwise its index.
    pub fn label(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order() {
            for v in bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.adj[v] == 0).collect()
    }

    /// Subgraph induced by `verts`, relabeled `0..verts.len()` in the given order.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut adj = vec![0u32; verts.len()];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.adjacent(u, v) {
                    adj[i] |= 1 << j;
                }
            }
        }
        let names = self.names.as_ref().map(|names| verts.iter().map(|&v| names[v].clone()).collect());
        Graph { adj, names }
    }

    pub fn is_independent(&self, set: u32) -> bool {
        is_independent(&self.adj, set)
    }

    pub fn is_vertex_cover(&self, set: u32) -> bool {
        is_vertex_cover(&self.adj, set)
    }

    pub fn is_dominating(&self, set: u32) -> bool {
        is_dominating(&self.adj, set)
    }

    /// True when `set` induces a forest.
    pub fn is_acyclic(&self, set: u32) -> bool {
        is_acyclic(&self.adj, set)
    }

    /// Number of connected components of the subgraph induced by `set`.
    pub fn components(&self, set: u32) -> usize {
        component_masks(&self.adj, set).len()
    }
}

pub(crate) fn is_independent(adj: &[u32], set: u32) -> bool {
    bits(set).all(|v| adj[v] & set == 0)
}

pub(crate) fn is_vertex_cover(adj: &[u32], set: u32) -> bool {
    is_independent(adj, !set & full_mask(adj.len()))
}

pub(crate) fn is_dominating(adj: &[u32], set: u32) -> bool {
    (0..adj.len()).all(|v| set >> v & 1 == 1 || adj[v] & set != 0)
}

pub(crate) fn is_acyclic(adj: &[u32], set: u32) -> bool {
    let edges: usize = bits(set).map(|v| (adj[v] & set).count_ones() as usize).sum::<usize>() / 2;
    set.count_ones() as usize == edges + component_masks(adj, set).len()
}

/// Vertex sets of the connected components of the subgraph induced by `set`.
pub(crate) fn component_masks(adj: &[u32], set: u32) -> Vec<u32> {
    let mut left = set;
    let mut out = Vec::new();
    while left != 0 {
        let mut frontier = left & left.wrapping_neg();
        let mut seen = frontier;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj[v] & set;
            }
            frontier = next & !seen;
            seen |= next;
        }
        left &= !seen;
        out.push(seen);
    }
    out
}

/// Appends `k` isolated vertices after the existing ones.
pub fn add_isolated(g: &Graph, k: usize) -> Result<Graph> {
    add_isolated_with_limit(g, k, DEFAULT_VERTEX_LIMIT)
}

pub fn add_isolated_with_limit(g: &Graph, k: usize, limit: usize) -> Result<Graph> {
    let n = g.order() + k;
    check_limit(n, limit)?;
    let mut adj = g.adj.clone();
    adj.resize(n, 0);
    let names = g.names.as_ref().map(|names| {
        let mut names = names.clone();
        names.extend((g.order()..n).map(|i| format!("i{}", i - g.order() + 1)));
        names
    });
    Ok(Graph { adj, names })
}

/// Splits off the degree-0 vertices: returns their count and the subgraph
/// induced by the remaining vertices (in their original relative order).
pub fn split_isolated(g: &Graph) -> (usize, Graph) {
    let core: Vec<usize> = (0..g.order()).filter(|&v| g.adj[v] != 0).collect();
    (g.order() - core.len(), g.induced(&core))
}

/// Line graph of `g`: one vertex per edge (in `g.edges()` order), adjacent
/// when the edges share an endpoint. The second component maps each
/// line-graph vertex back to its edge.
pub fn line_graph(g: &Graph) -> Result<(Graph, Vec<(usize, usize)>)> {
    line_graph_with_limit(g, DEFAULT_VERTEX_LIMIT)
}

pub fn line_graph_with_limit(g: &Graph, limit: usize) -> Result<(Graph, Vec<(usize, usize)>)> {
    let edges = g.edges();
    check_limit(edges.len(), limit)?;
    let mut adj = vec![0u32; edges.len()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (j, &(c, d)) in edges.iter().enumerate() {
            if i != j && (a == c || a == d || b == c || b == d) {
                adj[i] |= 1 << j;
            }
        }
    }
    let names = edges.iter().map(|&(u, v)| format!("{}-{}", g.label(u), g.label(v))).collect();
    Ok((Graph { adj, names: Some(names) }, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Graph::from_edges(2, &[(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(Error::EndpointOutOfRange { vertex: 2, n: 2 })));
        assert!(matches!(Graph::from_adjacency(vec![0b10, 0]), Err(Error::Asymmetric(0, 1))));
    }

    #[test]
    fn add_isolated_cases() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let g = add_isolated(&k3, 1).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.isolated_vertices(), vec![3]);
        assert_eq!(add_isolated(&k3, 0).unwrap(), k3);
        assert!(matches!(add_isolated(&k3, 14), Err(Error::TooLarge { n: 17, limit: 16 })));
    }

    #[test]
    fn split_isolated_cases() {
        let star = make_family(&FamilySpec::star(3)).unwrap();
        let padded = add_isolated(&star, 2).unwrap();
        assert_eq!(split_isolated(&padded), (2, star.clone()));

        let (k, core) = split_isolated(&Graph::empty(4).unwrap());
        assert_eq!((k, core.order()), (4, 0));

        let k22 = make_family(&FamilySpec::complete_bipartite(2)).unwrap();
        assert_eq!(split_isolated(&k22), (0, k22.clone()));
    }

    #[test]
    fn line_graph_cases() {
        let (lg, map) = line_graph(&make_family(&FamilySpec::star(3)).unwrap()).unwrap();
        assert_eq!(lg, make_family(&FamilySpec::complete(3)).unwrap());
        assert_eq!(map, vec![(0, 1), (0, 2), (0, 3)]);

        let (lg, _) = line_graph(&path(4)).unwrap();
        assert_eq!(lg, path(3));

        let (lg, _) = line_graph(&path(2)).unwrap();
        assert_eq!((lg.order(), lg.edge_count()), (1, 0));
    }

    #[test]
    fn line_graph_degrees() {
        let g = make_family(&FamilySpec::agi(3)).unwrap();
        let (lg, map) = line_graph(&g).unwrap();
        assert_eq!(lg.order(), g.edge_count());
        for (i, &(u, v)) in map.iter().enumerate() {
            assert_eq!(lg.degree(i), g.degree(u) + g.degree(v) - 2);
        }
    }

    #[test]
    fn acyclicity() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!k3.is_acyclic(0b111));
        assert!(k3.is_acyclic(0b011));
        assert!(path(5).is_acyclic(0b11111));
        assert_eq!(path(5).components(0b11011), 2);
    }
}
