//! Brute-force oracles shared by the integration tests. They avoid the
//! crate's canonical forms, symmetry reductions and pruning entirely.
#![allow(dead_code)]

use std::collections::HashMap;

use itertools::Itertools;
use onlinegraph::game::{replay, GameScore, Problem};
use onlinegraph::graph_core::Graph;
use onlinegraph::policies::Policy;
use onlinegraph::setsystem::SetSystem;

pub fn subsets(n: usize) -> impl Iterator<Item = u32> {
    0..(1u32 << n)
}

pub fn independent(g: &Graph, s: u32) -> bool {
    (0..g.order()).all(|v| s >> v & 1 == 0 || g.neighbors(v) & s == 0)
}

pub fn dominating(g: &Graph, s: u32) -> bool {
    (0..g.order()).all(|v| s >> v & 1 == 1 || g.neighbors(v) & s != 0)
}

pub fn covering(g: &Graph, s: u32) -> bool {
    g.edges().iter().all(|&(u, v)| (s >> u | s >> v) & 1 == 1)
}

pub fn max_is(g: &Graph) -> usize {
    subsets(g.order()).filter(|&s| independent(g, s)).map(|s| s.count_ones() as usize).max().unwrap()
}

pub fn min_maximal_is(g: &Graph) -> usize {
    subsets(g.order())
        .filter(|&s| independent(g, s) && dominating(g, s))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

pub fn min_vc(g: &Graph) -> usize {
    subsets(g.order()).filter(|&s| covering(g, s)).map(|s| s.count_ones() as usize).min().unwrap()
}

pub fn min_ds(g: &Graph) -> usize {
    subsets(g.order()).filter(|&s| dominating(g, s)).map(|s| s.count_ones() as usize).min().unwrap()
}

/// Larger is better for the algorithm.
pub fn utility(s: GameScore, problem: Problem) -> i64 {
    match s {
        GameScore::Infeasible => i64::MIN,
        GameScore::Value(v) if problem.maximizes() => v as i64,
        GameScore::Value(v) => -(v as i64),
    }
}

/// Worst ordering for a fixed policy, by replaying all `n!` orderings.
pub fn brute_worst(g: &Graph, problem: Problem, p: &Policy) -> GameScore {
    let n = g.order();
    (0..n).permutations(n).map(|o| replay(g, &o, p, problem).unwrap().1).min_by_key(|&s| utility(s, problem)).unwrap()
}

/// Online optimum by plain minimax over information sets: a position is the
/// labeled arrival history, and the adversary may continue with any
/// neighborhood realized by some induced embedding (all embeddings are kept,
/// no symmetry is used).
pub fn naive_online_value(g: &Graph, problem: Problem) -> GameScore {
    struct Naive<'a> {
        g: &'a Graph,
        problem: Problem,
        memo: HashMap<Vec<(u32, bool)>, i64>,
    }
    impl Naive<'_> {
        fn adversary(&mut self, hist: &mut Vec<(u32, bool)>, embs: &[Vec<usize>]) -> i64 {
            let n = self.g.order();
            if hist.len() == n {
                let set = embs[0].iter().zip(hist.iter()).filter(|(_, h)| h.1).fold(0u32, |m, (&v, _)| m | 1 << v);
                let ok = match self.problem {
                    Problem::Is => independent(self.g, set),
                    Problem::Vc => covering(self.g, set),
                    Problem::Ds => dominating(self.g, set),
                    Problem::Forest => unreachable!(),
                };
                let score = if ok { GameScore::Value(set.count_ones()) } else { GameScore::Infeasible };
                return utility(score, self.problem);
            }
            if let Some(&v) = self.memo.get(hist) {
                return v;
            }
            let mut groups: HashMap<u32, Vec<Vec<usize>>> = HashMap::new();
            for e in embs {
                for v in (0..n).filter(|v| !e.contains(v)) {
                    let nb =
                        e.iter().enumerate().filter(|(_, &u)| self.g.adjacent(u, v)).fold(0, |m, (i, _)| m | 1 << i);
                    let mut next = e.clone();
                    next.push(v);
                    groups.entry(nb).or_default().push(next);
                }
            }
            let mut best = i64::MAX;
            for (nb, next) in groups {
                let mut alg = i64::MIN;
                for accept in [true, false] {
                    hist.push((nb, accept));
                    alg = alg.max(self.adversary(hist, &next));
                    hist.pop();
                }
                best = best.min(alg);
            }
            self.memo.insert(hist.clone(), best);
            best
        }
    }
    let mut naive = Naive { g, problem, memo: HashMap::new() };
    let u = naive.adversary(&mut Vec::new(), &[Vec::new()]);
    match u {
        i64::MIN => GameScore::Infeasible,
        u if problem.maximizes() => GameScore::Value(u as u32),
        u => GameScore::Value((-u) as u32),
    }
}

/// Smallest inclusion-maximal feasible set.
pub fn setsystem_s(ss: &SetSystem) -> usize {
    let n = ss.len();
    subsets(n)
        .filter(|&s| ss.feasible(s) && (0..n).all(|x| s >> x & 1 == 1 || !ss.feasible(s | 1 << x)))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// Greedy accepted set when the elements arrive in `order`.
pub fn greedy_mos(ss: &SetSystem, order: &[usize]) -> u32 {
    order.iter().fold(0u32, |acc, &x| if ss.feasible(acc | 1 << x) { acc | 1 << x } else { acc })
}

/// GMOS worst case over all orderings.
pub fn brute_gmos(ss: &SetSystem) -> u32 {
    let n = ss.len();
    (0..n).permutations(n).map(|o| greedy_mos(ss, &o).count_ones()).min().unwrap()
}

/// A labeled graph from a bitmask over the vertex pairs.
pub fn graph_from_bits(n: usize, mask: u64) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let edges: Vec<(usize, usize)> =
        pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Online optimum of a set system by plain minimax. Arrival `i` reports, for
/// each forbidden set containing it whose other members already arrived, the
/// arrival indices of those members.
pub fn naive_mos_value(ss: &SetSystem) -> GameScore {
    type Hist = Vec<(Vec<u32>, bool)>;
    fn go(ss: &SetSystem, hist: &mut Hist, embs: &[Vec<usize>], memo: &mut HashMap<Hist, i64>) -> i64 {
        let n = ss.len();
        if hist.len() == n {
            let set = embs[0].iter().zip(hist.iter()).filter(|(_, h)| h.1).fold(0u32, |m, (&x, _)| m | 1 << x);
            return if ss.feasible(set) { set.count_ones() as i64 } else { i64::MIN };
        }
        if let Some(&v) = memo.get(hist) {
            return v;
        }
        let mut groups: HashMap<Vec<u32>, Vec<Vec<usize>>> = HashMap::new();
        for e in embs {
            let image = e.iter().fold(0u32, |m, &x| m | 1 << x);
            for x in (0..n).filter(|x| !e.contains(x)) {
                let mut pats: Vec<u32> = ss
                    .forbidden()
                    .iter()
                    .filter(|&&m| m >> x & 1 == 1 && m & !(1 << x) & !image == 0)
                    .map(|&m| e.iter().enumerate().filter(|(_, &y)| m >> y & 1 == 1).fold(0, |a, (i, _)| a | 1 << i))
                    .collect();
                pats.sort_unstable();
                let mut next = e.clone();
                next.push(x);
                groups.entry(pats).or_default().push(next);
            }
        }
        let mut best = i64::MAX;
        for (pats, next) in groups {
            let mut alg = i64::MIN;
            for accept in [true, false] {
                hist.push((pats.clone(), accept));
                alg = alg.max(go(ss, hist, &next, memo));
                hist.pop();
            }
            best = best.min(alg);
        }
        memo.insert(hist.clone(), best);
        best
    }
    match go(ss, &mut Vec::new(), &[Vec::new()], &mut HashMap::new()) {
        i64::MIN => GameScore::Infeasible,
        u => GameScore::Value(u as u32),
    }
}
