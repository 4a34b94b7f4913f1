//! Canonical forms of decision-marked graphs and symmetry-reduced adversary moves.

mod moves;
pub(crate) mod search;

pub use moves::{adversary_moves, Move};
pub(crate) use moves::{Embedding, HostIndex};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_core::{bits, check_limit, Graph, DEFAULT_VERTEX_LIMIT};
use search::{canonical_form, Structure};

/// Decision recorded on a revealed vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    Rejected,
    Accepted,
}

impl Mark {
    pub(crate) fn color(self) -> u8 {
        match self {
            Mark::Rejected => 0,
            Mark::Accepted => 1,
        }
    }
}

/// Color of a vertex that has been presented but not yet decided.
pub(crate) const PENDING: u8 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: Graph,
    pub marks: Vec<Mark>,
}

impl MarkedGraph {
    pub fn new(graph: Graph, marks: Vec<Mark>) -> Result<Self> {
        if marks.len() != graph.order() {
            return Err(Error::Unsupported(format!("{} marks for a graph on {} vertices", marks.len(), graph.order())));
        }
        Ok(MarkedGraph { graph, marks })
    }

    pub fn uniform(graph: Graph, mark: Mark) -> Self {
        let marks = vec![mark; graph.order()];
        MarkedGraph { graph, marks }
    }
}

/// Identifies a marked graph up to mark-preserving isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        hex::decode(s).map(CanonicalKey).map_err(|e| Error::Unsupported(format!("bad key hex: {e}")))
    }

    pub(crate) fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalKey::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) struct ColoredGraph<'a> {
    pub adj: &'a [u32],
    pub colors: &'a [u8],
}

impl Structure for ColoredGraph<'_> {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    fn signature(&self, v: usize, cell_of: &[usize], num_cells: usize, out: &mut Vec<u32>) {
        out.resize(num_cells, 0);
        for u in bits(self.adj[v]) {
            out[cell_of[u]] += 1;
        }
    }

    fn certificate(&self, order: &[usize]) -> Vec<u8> {
        let n = order.len();
        let mut cert = Vec::with_capacity(1 + n + (n * n / 16) + 1);
        cert.push(n as u8);
        cert.extend(order.iter().map(|&v| self.colors[v]));
        let mut acc = 0u8;
        let mut k = 0;
        for i in 0..n {
            let row = self.adj[order[i]];
            for &w in &order[i + 1..] {
                acc = acc << 1 | (row >> w & 1) as u8;
                k += 1;
                if k == 8 {
                    cert.push(acc);
                    acc = 0;
                    k = 0;
                }
            }
        }
        if k > 0 {
            cert.push(acc << (8 - k));
        }
        cert
    }
}

/// Hypergraph whose edges are vertex bitmasks.
pub(crate) struct ColoredHypergraph<'a> {
    pub n: usize,
    pub edges: &'a [u32],
    pub colors: &'a [u8],
}

impl Structure for ColoredHypergraph<'_> {
    fn order(&self) -> usize {
        self.n
    }

    fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    fn signature(&self, v: usize, cell_of: &[usize], _num_cells: usize, out: &mut Vec<u32>) {
        let mut incident: Vec<Vec<u32>> = self
            .edges
            .iter()
            .filter(|&&e| e >> v & 1 == 1)
            .map(|&e| {
                let mut cells: Vec<u32> = bits(e & !(1 << v)).map(|u| cell_of[u] as u32).collect();
                cells.sort_unstable();
                cells.insert(0, cells.len() as u32);
                cells
            })
            .collect();
        incident.sort_unstable();
        out.push(incident.len() as u32);
        for cells in incident {
            out.extend(cells);
        }
    }

    fn certificate(&self, order: &[usize]) -> Vec<u8> {
        let mut pos = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut relabeled: Vec<u32> = self.edges.iter().map(|&e| bits(e).fold(0u32, |m, v| m | 1 << pos[v])).collect();
        relabeled.sort_unstable();
        let mut cert = Vec::with_capacity(3 + self.n + 4 * relabeled.len());
        cert.push(self.n as u8);
        cert.extend(order.iter().map(|&v| self.colors[v]));
        cert.extend((relabeled.len() as u16).to_be_bytes());
        for e in relabeled {
            cert.extend(e.to_be_bytes());
        }
        cert
    }
}

pub(crate) fn colored_graph_key(adj: &[u32], colors: &[u8]) -> CanonicalKey {
    CanonicalKey(canonical_form(&ColoredGraph { adj, colors }).certificate)
}

/// Canonical key together with the canonical ordering of the vertices.
pub(crate) fn colored_graph_form(adj: &[u32], colors: &[u8]) -> (CanonicalKey, Vec<usize>) {
    let c = canonical_form(&ColoredGraph { adj, colors });
    (CanonicalKey(c.certificate), c.order)
}

pub(crate) fn colored_hypergraph_key(n: usize, edges: &[u32], colors: &[u8]) -> CanonicalKey {
    CanonicalKey(canonical_form(&ColoredHypergraph { n, edges, colors }).certificate)
}

pub(crate) fn colored_hypergraph_form(n: usize, edges: &[u32], colors: &[u8]) -> (CanonicalKey, Vec<usize>) {
    let c = canonical_form(&ColoredHypergraph { n, edges, colors });
    (CanonicalKey(c.certificate), c.order)
}

pub fn canonical_key(mg: &MarkedGraph) -> Result<CanonicalKey> {
    check_limit(mg.graph.order(), DEFAULT_VERTEX_LIMIT)?;
    let colors: Vec<u8> = mg.marks.iter().map(|m| m.color()).collect();
    Ok(colored_graph_key(mg.graph.adjacency(), &colors))
}

/// Canonical key of an unmarked graph.
pub fn graph_key(g: &Graph) -> Result<CanonicalKey> {
    canonical_key(&MarkedGraph::uniform(g.clone(), Mark::Rejected))
}

/// Whether a mark-preserving isomorphism exists.
pub fn isomorphic(a: &MarkedGraph, b: &MarkedGraph) -> Result<bool> {
    if a.graph.order() != b.graph.order() {
        check_limit(a.graph.order().max(b.graph.order()), DEFAULT_VERTEX_LIMIT)?;
        return Ok(false);
    }
    if a.graph.edge_count() != b.graph.edge_count() {
        return Ok(false);
    }
    Ok(canonical_key(a)? == canonical_key(b)?)
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// each relabeled into canonical order, sorted by canonical key.
///
/// Built by adding a vertex with every possible neighborhood to each class on
/// `n - 1` vertices: deleting any vertex of a graph gives such a parent.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<Graph>> {
    check_limit(n, 9)?;
    let mut level = vec![Graph::from_adjacency_unchecked(Vec::new())];
    for m in 1..=n {
        let colors = vec![0u8; m];
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for parent in &level {
            for mask in 0u32..1 << (m - 1) {
                let mut adj = parent.adjacency().to_vec();
                for u in bits(mask) {
                    adj[u] |= 1 << (m - 1);
                }
                adj.push(mask);
                let (key, order) = colored_graph_form(&adj, &colors);
                if seen.insert(key.clone()) {
                    next.push((key, Graph::from_adjacency_unchecked(adj).induced(&order)));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        level = next.into_iter().map(|(_, g)| g).collect();
    }
    Ok(level)
}

/// Every isomorphism class of graphs with at most `max_n` vertices (including the empty graph).
pub fn graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(nonisomorphic_graphs(n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{make_family, FamilySpec};
    use itertools::Itertools;

    fn path3(order: [usize; 3]) -> Graph {
        Graph::from_edges(3, &[(order[0], order[1]), (order[1], order[2])]).unwrap()
    }

    #[test]
    fn relabeled_paths_share_key() {
        let a = MarkedGraph::uniform(path3([0, 1, 2]), Mark::Rejected);
        let b = MarkedGraph::uniform(path3([2, 1, 0]), Mark::Rejected);
        let c = MarkedGraph::uniform(path3([1, 0, 2]), Mark::Rejected);
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&c).unwrap());
    }

    #[test]
    fn triangle_differs_from_path() {
        let tri = make_family(&FamilySpec::complete(3)).unwrap();
        let a = MarkedGraph::uniform(tri, Mark::Rejected);
        let b = MarkedGraph::uniform(path3([0, 1, 2]), Mark::Rejected);
        assert_ne!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
    }

    #[test]
    fn marks_matter() {
        use Mark::*;
        let end = MarkedGraph::new(path3([0, 1, 2]), vec![Accepted, Rejected, Rejected]).unwrap();
        let mid = MarkedGraph::new(path3([0, 1, 2]), vec![Rejected, Accepted, Rejected]).unwrap();
        let other_end = MarkedGraph::new(path3([0, 1, 2]), vec![Rejected, Rejected, Accepted]).unwrap();
        assert_ne!(canonical_key(&end).unwrap(), canonical_key(&mid).unwrap());
        assert!(isomorphic(&end, &other_end).unwrap());
    }

    #[test]
    fn isomorphic_examples() {
        let k22 = MarkedGraph::uniform(make_family(&FamilySpec::complete_bipartite(2)).unwrap(), Mark::Rejected);
        let c4 = MarkedGraph::uniform(Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(), Mark::Rejected);
        assert!(isomorphic(&k22, &k22).unwrap());
        assert!(isomorphic(&k22, &c4).unwrap());
        let k3 = MarkedGraph::uniform(make_family(&FamilySpec::complete(3)).unwrap(), Mark::Rejected);
        assert!(!isomorphic(&k22, &k3).unwrap());
    }

    #[test]
    fn size_limit() {
        let g = MarkedGraph::uniform(Graph::empty(17).unwrap(), Mark::Rejected);
        assert!(matches!(canonical_key(&g), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn graph_counts() {
        // Number of unlabeled graphs on n vertices.
        let counts: Vec<usize> = (0..=6).map(|n| nonisomorphic_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn refinement_path_agrees_with_permutations() {
        // Order-6+ graphs go through the refinement search; relabelings must agree.
        let g = make_family(&FamilySpec::agi(2)).unwrap();
        let colors = [0u8, 1, 0, 0, 1, 0, 1];
        let base = colored_graph_key(g.adjacency(), &colors);
        for perm in (0..7).permutations(7).step_by(97) {
            let h = g.induced(&perm);
            let c: Vec<u8> = perm.iter().map(|&v| colors[v]).collect();
            assert_eq!(colored_graph_key(h.adjacency(), &c), base);
        }
    }

    #[test]
    fn highly_symmetric_graphs_are_fast() {
        // Empty graph and perfect matching on 16 vertices exercise automorphism pruning.
        let empty = Graph::empty(16).unwrap();
        let _ = graph_key(&empty).unwrap();
        let matching: Vec<_> = (0..8).map(|i| (2 * i, 2 * i + 1)).collect();
        let m = Graph::from_edges(16, &matching).unwrap();
        let shuffled = m.induced(&[3, 14, 0, 9, 12, 1, 7, 5, 15, 2, 11, 6, 13, 4, 10, 8]);
        assert_eq!(graph_key(&m).unwrap(), graph_key(&shuffled).unwrap());
    }

    #[test]
    fn hypergraph_keys() {
        let a = colored_hypergraph_key(3, &[0b011, 0b110], &[0, 0, 0]);
        let b = colored_hypergraph_key(3, &[0b101, 0b011], &[0, 0, 0]);
        let c = colored_hypergraph_key(3, &[0b111], &[0, 0, 0]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        let big: Vec<u32> = vec![0b0000_0111, 0b0011_1000, 0b1100_0001];
        let perm = [5usize, 3, 7, 0, 1, 6, 2, 4];
        let moved: Vec<u32> = big.iter().map(|&e| bits(e).fold(0, |m, v| m | 1 << perm[v])).collect();
        assert_eq!(colored_hypergraph_key(8, &big, &[0; 8]), colored_hypergraph_key(8, &moved, &[0; 8]));
    }
}
