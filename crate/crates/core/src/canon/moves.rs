use std::collections::{BTreeMap, HashSet};

use super::CanonicalKey;
use crate::error::{Error, Result};
use crate::game::RevealedState;
use crate::graph_core::{bits, Graph};

/// Host vertex assigned to each arrival, in arrival order.
///
/// Embeddings are kept modulo permutations inside twin classes of the host:
/// within a class, arrivals always occupy the class's vertices in increasing
/// order. Any two twins can be swapped by a host automorphism, so this loses
/// no adversary options.
pub(crate) type Embedding = Vec<u8>;

/// Host graph with its twin classes. Vertices `u`, `v` are twins when
/// `N(u) \ {v} = N(v) \ {u}`, i.e. when swapping them is an automorphism.
#[derive(Clone, Debug)]
pub(crate) struct HostIndex {
    adj: Vec<u32>,
    classes: Vec<Vec<u8>>,
    class_of: Vec<usize>,
}

impl HostIndex {
    pub fn new(g: &Graph) -> Self {
        let adj = g.adjacency().to_vec();
        let mut classes: Vec<Vec<u8>> = Vec::new();
        let mut class_of = vec![0; adj.len()];
        for v in 0..adj.len() {
            let twin_class = classes.iter().position(|class| {
                let u = class[0] as usize;
                adj[u] & !(1 << v) == adj[v] & !(1 << u)
            });
            match twin_class {
                Some(c) => {
                    classes[c].push(v as u8);
                    class_of[v] = c;
                }
                None => {
                    class_of[v] = classes.len();
                    classes.push(vec![v as u8]);
                }
            }
        }
        HostIndex { adj, classes, class_of }
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    #[cfg(test)]
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// All one-vertex extensions of each embedding, grouped by the
    /// neighborhood (over arrival indices) the new arrival would have.
    pub fn extend(&self, embeddings: &[Embedding]) -> BTreeMap<u32, Vec<Embedding>> {
        let mut out: BTreeMap<u32, Vec<Embedding>> = BTreeMap::new();
        let mut used = vec![0usize; self.classes.len()];
        for emb in embeddings {
            used.iter_mut().for_each(|c| *c = 0);
            for &h in emb {
                used[self.class_of[h as usize]] += 1;
            }
            for (class, members) in self.classes.iter().enumerate() {
                let Some(&h) = members.get(used[class]) else { continue };
                let row = self.adj[h as usize];
                let neighborhood =
                    emb.iter().enumerate().filter(|(_, &w)| row >> w & 1 == 1).fold(0u32, |m, (i, _)| m | 1 << i);
                let mut next = emb.clone();
                next.push(h);
                out.entry(neighborhood).or_default().push(next);
            }
        }
        out
    }

    /// Embeddings of a revealed state, built arrival by arrival.
    pub fn embeddings_of(&self, revealed: &RevealedState) -> Vec<Embedding> {
        let mut current: Vec<Embedding> = vec![Vec::new()];
        for i in 0..revealed.len() {
            let mut ext = self.extend(&current);
            current = ext.remove(&revealed.back_edges(i)).unwrap_or_default();
            if current.is_empty() {
                break;
            }
        }
        current
    }

    /// Deduplicated adversary moves from `revealed`, ordered by successor key.
    pub fn moves(&self, revealed: &RevealedState, embeddings: &[Embedding]) -> Vec<Move> {
        let mut seen = HashSet::new();
        let mut moves = Vec::new();
        for (neighborhood, mut embs) in self.extend(embeddings) {
            let successor_key = revealed.pending_key(neighborhood);
            if !seen.insert(successor_key.clone()) {
                continue;
            }
            embs.sort_unstable();
            let witness_vertex = *embs[0].last().expect("extension is nonempty") as usize;
            moves.push(Move { neighborhood, witness_vertex, successor_key, embeddings: embs });
        }
        moves.sort_by(|a, b| a.successor_key.cmp(&b.successor_key));
        moves
    }
}

/// An adversary move: the next vertex arrives adjacent to exactly
/// `neighborhood` among the revealed vertices.
#[derive(Clone, Debug)]
pub struct Move {
    /// Bitmask over arrival indices.
    pub neighborhood: u32,
    /// A host vertex that realizes the move under some embedding.
    pub witness_vertex: usize,
    /// Key of the revealed graph plus the undecided new vertex.
    pub successor_key: CanonicalKey,
    pub(crate) embeddings: Vec<Embedding>,
}

impl Move {
    pub fn neighbors(&self) -> Vec<usize> {
        bits(self.neighborhood).collect()
    }
}

/// All adversary moves available in `revealed` when the hidden graph is `host`,
/// one per successor isomorphism class.
pub fn adversary_moves(host: &Graph, revealed: &RevealedState) -> Result<Vec<Move>> {
    if revealed.len() >= host.order() {
        return Ok(Vec::new());
    }
    let index = HostIndex::new(host);
    let embeddings = index.embeddings_of(revealed);
    if embeddings.is_empty() {
        return Err(Error::NotEmbeddable);
    }
    Ok(index.moves(revealed, &embeddings))
}
