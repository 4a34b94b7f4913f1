//! Individualization-refinement canonical labeling over a generic colored structure.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualize each vertex of the first non-singleton cell,
//! recurse. Leaves are discrete partitions, i.e. vertex orderings, and the
//! canonical form is the lexicographically smallest leaf certificate.
//! Subtrees are pruned with automorphisms discovered from equal certificates:
//! candidates in the same orbit (under automorphisms fixing the current
//! prefix pointwise) are skipped, and an automorphism found at a leaf lets the
//! search abandon everything below the point where that leaf's path diverged
//! from the leaf it matched.

use itertools::Itertools;

/// Structures below this order are canonicalized by trying every permutation.
pub(crate) const BRUTE_FORCE_BELOW: usize = 6;

pub(crate) trait Structure {
    fn order(&self) -> usize;

    fn color(&self, v: usize) -> u8;

    /// Appends to `out` a description of `v` in terms of the cells of the
    /// current partition. Must depend only on cell indices, never on labels.
    fn signature(&self, v: usize, cell_of: &[usize], num_cells: usize, out: &mut Vec<u32>);

    /// Encoding of the structure relabeled so that `order[i]` becomes `i`.
    fn certificate(&self, order: &[usize]) -> Vec<u8>;
}

pub(crate) struct Canonical {
    pub certificate: Vec<u8>,
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
}

pub(crate) fn canonical_form<S: Structure>(s: &S) -> Canonical {
    let n = s.order();
    if n < BRUTE_FORCE_BELOW {
        return brute_force(s);
    }
    let mut search = Search { s, first: None, best: None, automorphisms: Vec::new() };
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (_, group) in &(0..n).sorted_by_key(|&v| s.color(v)).chunk_by(|&v| s.color(v)) {
        cells.push(group.collect());
    }
    search.node(cells, &mut Vec::new());
    let best = search.best.expect("search visits at least one leaf");
    Canonical { certificate: best.certificate, order: best.order }
}

fn brute_force<S: Structure>(s: &S) -> Canonical {
    let n = s.order();
    let mut best: Option<Canonical> = None;
    for order in (0..n).permutations(n) {
        let certificate = s.certificate(&order);
        if best.as_ref().is_none_or(|b| certificate < b.certificate) {
            best = Some(Canonical { certificate, order });
        }
    }
    best.expect("0! = 1")
}

/// Refines an ordered partition until every cell is stable under `signature`.
pub(crate) fn refine<S: Structure>(s: &S, cells: &mut Vec<Vec<usize>>) {
    let n = s.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (i, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let before = cells.len();
        let mut next = Vec::with_capacity(n);
        for cell in cells.drain(..) {
            if cell.len() == 1 {
                next.push(cell);
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig = Vec::new();
                    s.signature(v, &cell_of, before, &mut sig);
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        *cells = next;
        if cells.len() == before {
            return;
        }
    }
}

struct Leaf {
    certificate: Vec<u8>,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a, S> {
    s: &'a S,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl<S: Structure> Search<'_, S> {
    /// Returns `Some(level)` when the caller should unwind to the node at
    /// depth `level` and continue there.
    fn node(&mut self, mut cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Option<usize> {
        refine(self.s, &mut cells);
        if cells.len() == self.s.order() {
            return self.leaf(&cells, path);
        }
        let target = cells.iter().position(|c| c.len() > 1).expect("non-discrete partition");
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for v in candidates {
            if !explored.is_empty() && self.same_orbit(path, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&w| w != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            path.push(v);
            let jump = self.node(child, path);
            path.pop();
            if let Some(level) = jump {
                if level < path.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[Vec<usize>], path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let certificate = self.s.certificate(&order);
        let leaf = Leaf { certificate, order, path: path.to_vec() };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                certificate: leaf.certificate.clone(),
                order: leaf.order.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        let best = self.best.as_ref().expect("set with first");
        for reference in [first, best] {
            if leaf.certificate == reference.certificate {
                let mut gamma = vec![0; leaf.order.len()];
                for (&from, &to) in reference.order.iter().zip(&leaf.order) {
                    gamma[from] = to;
                }
                let level = common_prefix(&leaf.path, &reference.path);
                self.automorphisms.push(gamma);
                return Some(level);
            }
        }
        if leaf.certificate < best.certificate {
            self.best = Some(leaf);
        }
        None
    }

    fn same_orbit(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.s.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == root)
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
