//! Memoized minimax over adversary moves and algorithm decisions.
//!
//! Positions are identified by the canonical key of the marked revealed
//! graph: the hidden embedding into the host is unknown to the algorithm, and
//! the set of embeddings (hence every continuation) depends only on the
//! isomorphism class. Values are kept as algorithm utilities (larger is
//! better, `i64::MIN` is infeasible), so the adversary always minimizes.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use super::{GameResult, GameScore, Problem, RevealedState, SearchStats, SolverConfig, Witness};
use crate::canon::{colored_graph_form, graph_key, CanonicalKey, Embedding, HostIndex, Move};
use crate::error::{Error, Result};
use crate::graph_core::{bits, check_limit, line_graph, Graph};
use crate::policies::{Decision, Policy, StrategyTable};

#[derive(Clone, Copy)]
enum Mode<'p> {
    Optimal { conservative: bool },
    Fixed(&'p Policy),
}

struct Solver<'p> {
    index: HostIndex,
    n: usize,
    problem: Problem,
    maximize: bool,
    mode: Mode<'p>,
    use_memo: bool,
    budget: u64,
    memo: HashMap<Vec<u8>, i64>,
    pending: HashMap<CanonicalKey, i64>,
    stats: SearchStats,
}

impl<'p> Solver<'p> {
    fn new(host: &Graph, problem: Problem, mode: Mode<'p>, config: &SolverConfig) -> Self {
        Solver {
            index: HostIndex::new(host),
            n: host.order(),
            problem,
            maximize: problem.maximizes(),
            mode,
            use_memo: config.use_memo,
            budget: config.node_budget,
            memo: HashMap::new(),
            pending: HashMap::new(),
            stats: SearchStats::default(),
        }
    }

    fn root(&mut self) -> Result<i64> {
        self.adversary(&mut RevealedState::new(), &[Vec::new()])
    }

    fn terminal(&self, state: &RevealedState) -> i64 {
        self.problem.score(state.adjacency(), state.accepted_mask()).utility(self.maximize)
    }

    fn key(&self, state: &RevealedState, embs: &[Embedding]) -> Vec<u8> {
        if self.conservative() {
            // the embedding set depends on history, so it is part of the position
            let (key, order) = colored_graph_form(state.adjacency(), &state.colors());
            let mut relabeled: Vec<Vec<u8>> = embs.iter().map(|e| order.iter().map(|&i| e[i]).collect()).collect();
            relabeled.sort_unstable();
            let mut key = key.into_bytes();
            key.push(0xfe);
            key.extend(relabeled.concat());
            return key;
        }
        let mut key = state.canonical_key().into_bytes();
        if let Mode::Fixed(p) = self.mode {
            key.push(0xff);
            key.extend(p.state_digest(state));
        }
        key
    }

    fn conservative(&self) -> bool {
        matches!(self.mode, Mode::Optimal { conservative: true })
    }

    fn moves(&self, state: &RevealedState, embs: &[Embedding]) -> Vec<Move> {
        if self.conservative() {
            self.conservative_moves(state, embs)
        } else {
            self.index.moves(state, embs)
        }
    }

    /// Moves of an adversary that, for the host embedding it has in mind,
    /// presents a neighbor of an accepted vertex only when every unrevealed
    /// vertex is one. Each move keeps only the embeddings under which it was
    /// such a request, so positions are not deduplicated by key alone.
    fn conservative_moves(&self, state: &RevealedState, embs: &[Embedding]) -> Vec<Move> {
        let adj = self.index.adjacency();
        let accepted = state.accepted_mask();
        let stuck = |e: &[u8]| {
            let image = e.iter().fold(0u32, |m, &h| m | 1 << h);
            let acc_image = bits(accepted).fold(0u32, |m, i| m | 1 << e[i]);
            (0..self.n).filter(|&h| image >> h & 1 == 0).all(|h| adj[h] & acc_image != 0)
        };
        let mut moves = Vec::new();
        for (neighborhood, mut ext) in self.index.extend(embs) {
            if neighborhood & accepted != 0 {
                ext.retain(|e| stuck(&e[..e.len() - 1]));
            }
            if ext.is_empty() {
                continue;
            }
            ext.sort_unstable();
            let witness_vertex = *ext[0].last().expect("extension is nonempty") as usize;
            let successor_key = state.pending_key(neighborhood);
            moves.push(Move { neighborhood, witness_vertex, successor_key, embeddings: ext });
        }
        moves.sort_by(|a, b| a.successor_key.cmp(&b.successor_key).then(a.neighborhood.cmp(&b.neighborhood)));
        moves
    }

    /// A value no adversary move can push the algorithm below.
    fn floor(&self, state: &RevealedState) -> i64 {
        if let Mode::Fixed(_) = self.mode {
            return i64::MIN;
        }
        let acc = state.accepted_count() as i64;
        let all = acc + (self.n - state.len()) as i64;
        let adj = state.adjacency();
        match self.problem {
            Problem::Is | Problem::Forest => acc,
            Problem::Vc => -all,
            Problem::Ds => {
                let accepted = state.accepted_mask();
                let dominated = bits(state.rejected_mask()).all(|v| adj[v] & accepted != 0);
                if dominated {
                    -all
                } else {
                    i64::MIN
                }
            }
        }
    }

    /// A value the algorithm cannot exceed from a pending position.
    fn ceiling(&self, state: &RevealedState) -> i64 {
        let acc = state.accepted_count() as i64;
        if self.maximize {
            acc + (self.n - state.len()) as i64
        } else {
            -acc
        }
    }

    fn allowed(&self, state: &RevealedState, edges: u32) -> Vec<Decision> {
        let mut out = Vec::with_capacity(2);
        let accept_ok = match self.problem {
            Problem::Is => edges & state.accepted_mask() == 0,
            _ => true,
        };
        let reject_ok = match self.problem {
            Problem::Vc => edges & state.rejected_mask() == 0,
            _ => true,
        };
        if accept_ok {
            out.push(Decision::Accept);
        }
        if reject_ok {
            out.push(Decision::Reject);
        }
        out
    }

    fn adversary(&mut self, state: &mut RevealedState, embs: &[Embedding]) -> Result<i64> {
        if state.len() == self.n {
            return Ok(self.terminal(state));
        }
        let key = self.use_memo.then(|| self.key(state, embs));
        if let Some(v) = key.as_ref().and_then(|k| self.memo.get(k)) {
            self.stats.memo_hits += 1;
            return Ok(*v);
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Err(Error::BudgetExhausted { budget: self.budget });
        }
        let floor = self.floor(state);
        let mut best = i64::MAX;
        for mv in self.moves(state, embs) {
            best = best.min(self.after_move(state, &mv)?);
            if best <= floor {
                break;
            }
        }
        if let Some(k) = key {
            self.memo.insert(k, best);
        }
        Ok(best)
    }

    fn after_move(&mut self, state: &mut RevealedState, mv: &Move) -> Result<i64> {
        match self.mode {
            Mode::Fixed(p) => {
                let d = p.decide(state, mv.neighborhood);
                self.decide(state, mv, d)
            }
            Mode::Optimal { conservative } => {
                let memo = self.use_memo && !conservative;
                if memo {
                    if let Some(&v) = self.pending.get(&mv.successor_key) {
                        self.stats.memo_hits += 1;
                        return Ok(v);
                    }
                }
                let ceiling = self.ceiling(state);
                let mut best = i64::MIN;
                for d in self.allowed(state, mv.neighborhood) {
                    best = best.max(self.decide(state, mv, d)?);
                    if best >= ceiling {
                        break;
                    }
                }
                if memo {
                    self.pending.insert(mv.successor_key.clone(), best);
                }
                Ok(best)
            }
        }
    }

    fn decide(&mut self, state: &mut RevealedState, mv: &Move, d: Decision) -> Result<i64> {
        state.push(mv.neighborhood, d.mark());
        let v = self.adversary(state, &mv.embeddings);
        state.pop();
        v
    }

    /// Follows value-preserving adversary moves, lowest successor key first,
    /// and returns the host vertices in presentation order.
    fn ordering(&mut self, value: i64, policy: &Policy) -> Result<Vec<usize>> {
        let mut state = RevealedState::new();
        let mut embs: Vec<Embedding> = vec![Vec::new()];
        while state.len() < self.n {
            let mut next = None;
            for mv in self.moves(&state, &embs) {
                if self.after_move(&mut state, &mv)? == value {
                    next = Some(mv);
                    break;
                }
            }
            let mv = next.expect("some move attains the node value");
            let d = policy.decide(&state, mv.neighborhood);
            state.push(mv.neighborhood, d.mark());
            embs = mv.embeddings;
        }
        Ok(embs[0].iter().map(|&h| h as usize).collect())
    }

    /// Optimal decisions at every pending position reachable when the
    /// algorithm plays them against arbitrary adversary moves.
    fn strategy(&mut self, state: &mut RevealedState, embs: &[Embedding], table: &mut StrategyTable) -> Result<()> {
        if state.len() == self.n {
            return Ok(());
        }
        for mv in self.moves(state, embs) {
            if table.contains_key(&mv.successor_key) {
                continue;
            }
            let mut best: Option<(i64, CanonicalKey, Decision)> = None;
            for d in self.allowed(state, mv.neighborhood) {
                let v = self.decide(state, &mv, d)?;
                state.push(mv.neighborhood, d.mark());
                let child = state.canonical_key();
                state.pop();
                let better = match &best {
                    None => true,
                    Some((bv, bk, _)) => v > *bv || (v == *bv && child < *bk),
                };
                if better {
                    best = Some((v, child, d));
                }
            }
            let (_, _, d) = best.expect("at least one decision is allowed");
            table.insert(mv.successor_key.clone(), d);
            state.push(mv.neighborhood, d.mark());
            self.strategy(state, &mv.embeddings, table)?;
            state.pop();
        }
        Ok(())
    }
}

fn cache_key(host: &Graph) -> Result<String> {
    let mut key = graph_key(host)?.into_bytes();
    key.extend(RevealedState::new().canonical_key().into_bytes());
    Ok(hex::encode(key))
}

fn run(
    host: &Graph,
    problem: Problem,
    mode: Mode<'_>,
    tag: Option<String>,
    config: &SolverConfig,
) -> Result<GameResult> {
    check_limit(host.order(), config.vertex_limit)?;
    let start = Instant::now();
    let elapsed = |stats: SearchStats| SearchStats { ms: start.elapsed().as_millis() as u64, ..stats };
    let cached = match (&config.cache, &tag) {
        (Some(cache), Some(tag)) if !config.witness => {
            let key = cache_key(host)?;
            cache.get(&key, tag).map(|v| (cache, key, v))
        }
        _ => None,
    };
    if let Some((_, _, value)) = cached {
        return Ok(GameResult { value, witness: None, stats: elapsed(SearchStats::default()) });
    }
    let mut solver = Solver::new(host, problem, mode, config);
    let u = solver.root()?;
    let value = GameScore::from_utility(u, solver.maximize);
    let witness = if config.witness {
        match mode {
            Mode::Fixed(p) => Some(Witness::Ordering(solver.ordering(u, p)?)),
            Mode::Optimal { conservative: false } => {
                let mut table = StrategyTable::new();
                solver.strategy(&mut RevealedState::new(), &[Vec::new()], &mut table)?;
                Some(Witness::Strategy(table))
            }
            Mode::Optimal { conservative: true } => None,
        }
    } else {
        None
    };
    if let (Some(cache), Some(tag)) = (&config.cache, &tag) {
        cache.insert(&cache_key(host)?, tag, value)?;
    }
    Ok(GameResult { value, witness, stats: elapsed(solver.stats) })
}

/// Online optimum of `problem` on `host`: I^O, V^O or D^O.
pub fn solve_value(host: &Graph, problem: Problem) -> Result<GameResult> {
    solve_value_with(host, problem, &SolverConfig::default())
}

pub fn solve_value_with(host: &Graph, problem: Problem, config: &SolverConfig) -> Result<GameResult> {
    if problem == Problem::Forest {
        return Err(Error::Unsupported("online optimum is defined for is, vc and ds".into()));
    }
    run(host, problem, Mode::Optimal { conservative: false }, Some(problem.tag().to_string()), config)
}

/// I^O(host) against an adversary that avoids presenting neighbors of
/// accepted vertices while it has any other option.
pub fn solve_conservative_is(host: &Graph) -> Result<GameResult> {
    solve_conservative_is_with(host, &SolverConfig::default())
}

pub fn solve_conservative_is_with(host: &Graph, config: &SolverConfig) -> Result<GameResult> {
    let tag = Some("is-conservative".to_string());
    run(host, Problem::Is, Mode::Optimal { conservative: true }, tag, config)
}

/// Score of `policy` under its worst presentation order of `host`.
pub fn policy_worst_case(host: &Graph, problem: Problem, policy: &Policy) -> Result<GameResult> {
    policy_worst_case_with(host, problem, policy, &SolverConfig::default())
}

pub fn policy_worst_case_with(
    host: &Graph,
    problem: Problem,
    policy: &Policy,
    config: &SolverConfig,
) -> Result<GameResult> {
    let tag = policy.is_named().then(|| format!("worst:{policy}:{problem}"));
    run(host, problem, Mode::Fixed(policy), tag, config)
}

/// Presents the host vertices in `ordering` to `policy` and scores the result.
pub fn replay(
    host: &Graph,
    ordering: &[usize],
    policy: &Policy,
    problem: Problem,
) -> Result<(RevealedState, GameScore)> {
    let n = host.order();
    let mut seen = 0u64;
    for &v in ordering {
        if v >= n || seen >> v & 1 == 1 {
            return Err(Error::NotAPermutation { n });
        }
        seen |= 1 << v;
    }
    if ordering.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    let mut state = RevealedState::new();
    for (i, &v) in ordering.iter().enumerate() {
        let edges =
            ordering[..i].iter().enumerate().filter(|(_, &u)| host.adjacent(u, v)).fold(0u32, |m, (j, _)| m | 1 << j);
        let d = policy.decide(&state, edges);
        state.push(edges, d.mark());
    }
    let score = problem.score(state.adjacency(), state.accepted_mask());
    Ok((state, score))
}

/// M^O(host), the online matching number, as I^O of the line graph.
/// Witness vertices index `host.edges()`.
pub fn online_matching_number(host: &Graph) -> Result<GameResult> {
    let (lg, _) = line_graph(host)?;
    solve_value(&lg, Problem::Is)
}

/// Worst case of the greedy matching algorithm, i.e. GIS on the line graph.
pub fn greedy_matching_worst(host: &Graph) -> Result<GameResult> {
    let (lg, _) = line_graph(host)?;
    policy_worst_case_with(&lg, Problem::Is, &Policy::Gis, &SolverConfig::default().with_witness())
}

/// Checks a strategy table against every adversary by solving its worst case.
pub fn strategy_value(host: &Graph, problem: Problem, table: StrategyTable) -> Result<GameScore> {
    Ok(policy_worst_case(host, problem, &Policy::Table(Arc::new(table)))?.value)
}
