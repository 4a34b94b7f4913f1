//! The online game on a set system.
//!
//! With the arrival of element `i` the algorithm learns every minimal
//! forbidden set `M` whose last element is `i`, as the set `M \ {i}` of
//! earlier arrivals. The revealed trace is therefore a hypergraph on arrival
//! indices (the forbidden sets seen so far) with accept/reject marks, and
//! positions are identified up to mark-preserving hypergraph isomorphism.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use super::{SetSystem, MSO_ELEMENT_LIMIT};
use crate::canon::{colored_hypergraph_form, colored_hypergraph_key, CanonicalKey, Mark, PENDING};
use crate::error::{Error, Result};
use crate::game::{GameResult, GameScore, SearchStats, SolverConfig, Witness};
use crate::graph_core::{bits, check_limit, full_mask};

type Embedding = Vec<u8>;

/// Revealed forbidden sets over arrival indices, plus decisions.
#[derive(Clone, Debug, Default)]
struct Trace {
    edges: Vec<u32>,
    added: Vec<usize>,
    marks: Vec<Mark>,
    accepted: u32,
}

impl Trace {
    fn len(&self) -> usize {
        self.marks.len()
    }

    /// `patterns` are the sets `M \ {i}` reported with arrival `i`.
    fn push(&mut self, patterns: &[u32], mark: Mark) {
        let i = self.len();
        self.edges.extend(patterns.iter().map(|&a| a | 1 << i));
        self.added.push(patterns.len());
        self.marks.push(mark);
        if mark == Mark::Accepted {
            self.accepted |= 1 << i;
        }
    }

    fn pop(&mut self) {
        let k = self.added.pop().expect("nonempty trace");
        self.edges.truncate(self.edges.len() - k);
        self.marks.pop();
        self.accepted &= !(1 << self.len());
    }

    fn colors(&self) -> Vec<u8> {
        self.marks.iter().map(|m| m.color()).collect()
    }

    fn key(&self) -> CanonicalKey {
        colored_hypergraph_key(self.len(), &self.edges, &self.colors())
    }

    fn pending_key(&self, patterns: &[u32]) -> CanonicalKey {
        let i = self.len();
        let mut edges = self.edges.clone();
        edges.extend(patterns.iter().map(|&a| a | 1 << i));
        let mut colors = self.colors();
        colors.push(PENDING);
        colored_hypergraph_key(i + 1, &edges, &colors)
    }

    /// Whether accepting a request with these patterns completes a forbidden set.
    fn blocked(&self, patterns: &[u32]) -> bool {
        patterns.iter().any(|&a| a & !self.accepted == 0)
    }
}

/// The hidden set system with its classes of interchangeable elements.
struct ElementIndex {
    n: usize,
    forbidden: Vec<u32>,
    classes: Vec<Vec<u8>>,
    class_of: Vec<usize>,
}

impl ElementIndex {
    fn new(ss: &SetSystem) -> Self {
        let n = ss.len();
        let forbidden = ss.forbidden().to_vec();
        let family: HashSet<u32> = forbidden.iter().copied().collect();
        let swaps = |u: usize, v: usize| {
            forbidden.iter().all(|&m| {
                let (a, b) = (m >> u & 1, m >> v & 1);
                let swapped = m & !(1 << u) & !(1 << v) | b << u | a << v;
                family.contains(&swapped)
            })
        };
        let mut classes: Vec<Vec<u8>> = Vec::new();
        let mut class_of = Vec::with_capacity(n);
        for v in 0..n {
            match classes.iter().position(|c| swaps(c[0] as usize, v)) {
                Some(c) => {
                    classes[c].push(v as u8);
                    class_of.push(c);
                }
                None => {
                    class_of.push(classes.len());
                    classes.push(vec![v as u8]);
                }
            }
        }
        ElementIndex { n, forbidden, classes, class_of }
    }

    /// Patterns reported when `x` arrives after the elements of `emb`.
    fn patterns(&self, emb: &[u8], x: usize) -> Vec<u32> {
        let image = emb.iter().fold(1u32 << x, |m, &h| m | 1 << h);
        let mut pats: Vec<u32> = self
            .forbidden
            .iter()
            .filter(|&&m| m >> x & 1 == 1 && m & image == m)
            .map(|&m| emb.iter().enumerate().filter(|(_, &h)| m >> h & 1 == 1).fold(0u32, |a, (i, _)| a | 1 << i))
            .collect();
        pats.sort_unstable();
        pats
    }

    fn extend(&self, embs: &[Embedding]) -> BTreeMap<Vec<u32>, Vec<Embedding>> {
        let mut out: BTreeMap<Vec<u32>, Vec<Embedding>> = BTreeMap::new();
        let mut used = vec![0usize; self.classes.len()];
        for emb in embs {
            used.iter_mut().for_each(|c| *c = 0);
            for &h in emb {
                used[self.class_of[h as usize]] += 1;
            }
            for (class, members) in self.classes.iter().enumerate() {
                let Some(&x) = members.get(used[class]) else { continue };
                let mut next = emb.clone();
                next.push(x);
                out.entry(self.patterns(emb, x as usize)).or_default().push(next);
            }
        }
        out
    }

    /// Under `emb`, every unrevealed element completes a forbidden set with
    /// accepted elements (the given arrival mask).
    fn stuck(&self, emb: &[u8], accepted: u32) -> bool {
        let image = emb.iter().fold(0u32, |m, &h| m | 1 << h);
        let acc_image = bits(accepted).fold(0u32, |m, i| m | 1 << emb[i]);
        bits(full_mask(self.n) & !image)
            .all(|x| self.forbidden.iter().any(|&m| m >> x & 1 == 1 && m & !(1 << x) & !acc_image == 0))
    }
}

struct MosMove {
    patterns: Vec<u32>,
    key: CanonicalKey,
    embeddings: Vec<Embedding>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Greedy,
    Optimal,
    Conservative,
}

struct MosSolver {
    index: ElementIndex,
    mode: Mode,
    use_memo: bool,
    budget: u64,
    memo: HashMap<Vec<u8>, i64>,
    stats: SearchStats,
}

impl MosSolver {
    fn new(ss: &SetSystem, mode: Mode, config: &SolverConfig) -> Self {
        MosSolver {
            index: ElementIndex::new(ss),
            mode,
            use_memo: config.use_memo,
            budget: config.node_budget,
            memo: HashMap::new(),
            stats: SearchStats::default(),
        }
    }

    fn moves(&self, trace: &Trace, embs: &[Embedding]) -> Vec<MosMove> {
        let mut seen = HashSet::new();
        let mut moves = Vec::new();
        for (patterns, mut ext) in self.index.extend(embs) {
            if self.mode == Mode::Conservative && trace.blocked(&patterns) {
                ext.retain(|e| self.index.stuck(&e[..e.len() - 1], trace.accepted));
                if ext.is_empty() {
                    continue;
                }
            }
            let key = trace.pending_key(&patterns);
            // conservative positions carry their embedding sets, so keep every move
            if self.mode != Mode::Conservative && !seen.insert(key.clone()) {
                continue;
            }
            ext.sort_unstable();
            moves.push(MosMove { patterns, key, embeddings: ext });
        }
        moves.sort_by(|a, b| a.key.cmp(&b.key).then_with(|| a.patterns.cmp(&b.patterns)));
        moves
    }

    fn memo_key(&self, trace: &Trace, embs: &[Embedding]) -> Vec<u8> {
        if self.mode != Mode::Conservative {
            return trace.key().into_bytes();
        }
        let (key, order) = colored_hypergraph_form(trace.len(), &trace.edges, &trace.colors());
        let mut relabeled: Vec<Vec<u8>> = embs.iter().map(|e| order.iter().map(|&i| e[i]).collect()).collect();
        relabeled.sort_unstable();
        let mut key = key.into_bytes();
        key.push(0xfe);
        key.extend(relabeled.concat());
        key
    }

    fn terminal(&self, trace: &Trace) -> i64 {
        let feasible = trace.edges.iter().all(|&m| m & trace.accepted != m);
        if feasible {
            trace.accepted.count_ones() as i64
        } else {
            i64::MIN
        }
    }

    fn adversary(&mut self, trace: &mut Trace, embs: &[Embedding]) -> Result<i64> {
        if trace.len() == self.index.n {
            return Ok(self.terminal(trace));
        }
        let key = self.use_memo.then(|| self.memo_key(trace, embs));
        if let Some(&v) = key.as_ref().and_then(|k| self.memo.get(k)) {
            self.stats.memo_hits += 1;
            return Ok(v);
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Err(Error::BudgetExhausted { budget: self.budget });
        }
        // rejecting everything from here on keeps the accepted set feasible
        let floor = trace.accepted.count_ones() as i64;
        let mut best = i64::MAX;
        for mv in self.moves(trace, embs) {
            best = best.min(self.after_move(trace, &mv)?);
            if best <= floor {
                break;
            }
        }
        if let Some(k) = key {
            self.memo.insert(k, best);
        }
        Ok(best)
    }

    fn after_move(&mut self, trace: &mut Trace, mv: &MosMove) -> Result<i64> {
        let blocked = trace.blocked(&mv.patterns);
        if self.mode == Mode::Greedy || blocked {
            let mark = if blocked { Mark::Rejected } else { Mark::Accepted };
            return self.decide(trace, mv, mark);
        }
        let ceiling = (trace.accepted.count_ones() as usize + self.index.n - trace.len()) as i64;
        let accept = self.decide(trace, mv, Mark::Accepted)?;
        if accept >= ceiling {
            return Ok(accept);
        }
        Ok(accept.max(self.decide(trace, mv, Mark::Rejected)?))
    }

    fn decide(&mut self, trace: &mut Trace, mv: &MosMove, mark: Mark) -> Result<i64> {
        trace.push(&mv.patterns, mark);
        let v = self.adversary(trace, &mv.embeddings);
        trace.pop();
        v
    }

    fn ordering(&mut self, value: i64) -> Result<Vec<usize>> {
        let mut trace = Trace::default();
        let mut embs: Vec<Embedding> = vec![Vec::new()];
        while trace.len() < self.index.n {
            let mut next = None;
            for mv in self.moves(&trace, &embs) {
                if self.after_move(&mut trace, &mv)? == value {
                    next = Some(mv);
                    break;
                }
            }
            let mv = next.expect("some move attains the node value");
            let mark = if trace.blocked(&mv.patterns) { Mark::Rejected } else { Mark::Accepted };
            trace.push(&mv.patterns, mark);
            embs = mv.embeddings;
        }
        Ok(embs[0].iter().map(|&x| x as usize).collect())
    }
}

fn run(ss: &SetSystem, mode: Mode, limit: usize, config: &SolverConfig) -> Result<GameResult> {
    check_limit(ss.len(), limit.min(config.vertex_limit))?;
    let start = Instant::now();
    let mut solver = MosSolver::new(ss, mode, config);
    let u = solver.adversary(&mut Trace::default(), &[Vec::new()])?;
    let witness =
        if config.witness && mode == Mode::Greedy { Some(Witness::Ordering(solver.ordering(u)?)) } else { None };
    let stats = SearchStats { ms: start.elapsed().as_millis() as u64, ..solver.stats };
    Ok(GameResult { value: GameScore::from_utility(u, true), witness, stats })
}

/// Fewest elements the greedy algorithm (accept whenever feasible) keeps,
/// over all presentation orders.
pub fn gmos_worst(ss: &SetSystem) -> Result<GameResult> {
    gmos_worst_with(ss, &SolverConfig::default())
}

pub fn gmos_worst_with(ss: &SetSystem, config: &SolverConfig) -> Result<GameResult> {
    run(ss, Mode::Greedy, usize::MAX, config)
}

/// MS^O: the best guarantee of any online algorithm.
pub fn mso_value(ss: &SetSystem) -> Result<GameResult> {
    mso_value_with(ss, &SolverConfig::default())
}

pub fn mso_value_with(ss: &SetSystem, config: &SolverConfig) -> Result<GameResult> {
    run(ss, Mode::Optimal, MSO_ELEMENT_LIMIT, config)
}

/// MS^O against adversaries that complete a forbidden set of accepted
/// elements only when every remaining element would do so.
pub fn mso_conservative_value(ss: &SetSystem) -> Result<GameResult> {
    run(ss, Mode::Conservative, MSO_ELEMENT_LIMIT, &SolverConfig::default())
}

/// Presents the elements in `ordering` to the greedy algorithm.
pub fn replay_gmos(ss: &SetSystem, ordering: &[usize]) -> Result<GameScore> {
    let n = ss.len();
    let mut seen = 0u32;
    for &x in ordering {
        if x >= n || seen >> x & 1 == 1 {
            return Err(Error::NotAPermutation { n });
        }
        seen |= 1 << x;
    }
    if ordering.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    let mut revealed = 0u32;
    let mut accepted = 0u32;
    for &x in ordering {
        let bit = 1u32 << x;
        let completes =
            ss.forbidden().iter().any(|&m| m & bit != 0 && m & !bit & !revealed == 0 && m & !bit & !accepted == 0);
        if !completes {
            accepted |= bit;
        }
        revealed |= bit;
    }
    Ok(if ss.feasible(accepted) { GameScore::Value(accepted.count_ones()) } else { GameScore::Infeasible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{make_family, FamilySpec};
    use crate::setsystem::{load_setsystem, setsystem_from_graph};

    fn value(r: Result<GameResult>) -> u32 {
        r.unwrap().value.value().unwrap()
    }

    #[test]
    fn pair_plus_isolated() {
        let ss = load_setsystem(r#"{"elements":["a","b","c"],"forbidden":[["a","b"]]}"#).unwrap();
        assert_eq!(value(gmos_worst(&ss)), 2);
        assert_eq!(value(mso_value(&ss)), 2);
    }

    #[test]
    fn star_encoded() {
        let ss = setsystem_from_graph(&make_family(&FamilySpec::star(3)).unwrap());
        assert_eq!(value(gmos_worst(&ss)), 1);
        assert_eq!(value(mso_value(&ss)), 2);
    }

    #[test]
    fn unconstrained() {
        let names = |k: usize| (0..k).map(|i| i.to_string()).collect();
        assert_eq!(value(gmos_worst(&SetSystem::new(names(4), vec![]).unwrap())), 4);
        assert_eq!(value(mso_value(&SetSystem::new(names(3), vec![]).unwrap())), 3);
    }

    #[test]
    fn witness_replays() {
        let ss = load_setsystem(r#"{"elements":["a","b","c","d"],"forbidden":[["a","b","c"],["c","d"]]}"#).unwrap();
        let r = gmos_worst_with(&ss, &SolverConfig::default().with_witness()).unwrap();
        let order = r.ordering().unwrap().to_vec();
        assert_eq!(replay_gmos(&ss, &order).unwrap(), r.value);
    }

    #[test]
    fn size_limit() {
        let names = (0..11).map(|i| i.to_string()).collect();
        let ss = SetSystem::new(names, vec![]).unwrap();
        assert!(matches!(mso_value(&ss), Err(Error::TooLarge { .. })));
    }
}
