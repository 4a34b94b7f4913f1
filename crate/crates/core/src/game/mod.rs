//! The adversary-versus-algorithm game on a known host graph.

mod cache;
mod solver;
mod state;

pub use cache::ResultCache;
pub use solver::{
    greedy_matching_worst, online_matching_number, policy_worst_case, policy_worst_case_with, replay,
    solve_conservative_is, solve_conservative_is_with, solve_value, solve_value_with, strategy_value,
};
pub use state::RevealedState;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_core::{is_acyclic, is_dominating, is_independent, is_vertex_cover, DEFAULT_VERTEX_LIMIT};
use crate::policies::StrategyTable;

/// Environment variable overriding the default node budget.
pub const NODE_BUDGET_ENV: &str = "ONLINEGRAPH_NODE_BUDGET";

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Is,
    Vc,
    Ds,
    Forest,
}

impl Problem {
    pub fn maximizes(self) -> bool {
        matches!(self, Problem::Is | Problem::Forest)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Problem::Is => "is",
            Problem::Vc => "vc",
            Problem::Ds => "ds",
            Problem::Forest => "forest",
        }
    }

    pub fn feasible(self, adj: &[u32], set: u32) -> bool {
        match self {
            Problem::Is => is_independent(adj, set),
            Problem::Vc => is_vertex_cover(adj, set),
            Problem::Ds => is_dominating(adj, set),
            Problem::Forest => is_acyclic(adj, set),
        }
    }

    /// Score of a final accepted set in a graph with adjacency `adj`.
    pub fn score(self, adj: &[u32], set: u32) -> GameScore {
        if self.feasible(adj, set) {
            GameScore::Value(set.count_ones())
        } else {
            GameScore::Infeasible
        }
    }

    /// Orders scores from the algorithm's point of view.
    pub fn compare(self, a: GameScore, b: GameScore) -> Ordering {
        a.utility(self.maximizes()).cmp(&b.utility(self.maximizes()))
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "is" => Ok(Problem::Is),
            "vc" => Ok(Problem::Vc),
            "ds" => Ok(Problem::Ds),
            "forest" => Ok(Problem::Forest),
            _ => Err(Error::UnknownProblem(s.to_string())),
        }
    }
}

/// Score of a finished game. `Infeasible` stands for minus infinity when
/// maximizing and plus infinity when minimizing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameScore {
    Value(u32),
    Infeasible,
}

impl GameScore {
    pub fn value(self) -> Option<u32> {
        match self {
            GameScore::Value(v) => Some(v),
            GameScore::Infeasible => None,
        }
    }

    /// Larger is better for the algorithm.
    pub(crate) fn utility(self, maximize: bool) -> i64 {
        match (self, maximize) {
            (GameScore::Infeasible, _) => i64::MIN,
            (GameScore::Value(v), true) => v as i64,
            (GameScore::Value(v), false) => -(v as i64),
        }
    }

    pub(crate) fn from_utility(u: i64, maximize: bool) -> Self {
        match (u, maximize) {
            (i64::MIN, _) => GameScore::Infeasible,
            (u, true) => GameScore::Value(u as u32),
            (u, false) => GameScore::Value((-u) as u32),
        }
    }
}

impl fmt::Display for GameScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameScore::Value(v) => write!(f, "{v}"),
            GameScore::Infeasible => f.write_str("infeasible"),
        }
    }
}

impl Serialize for GameScore {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GameScore::Value(v) => s.serialize_u32(*v),
            GameScore::Infeasible => s.serialize_str("infeasible"),
        }
    }
}

impl<'de> Deserialize<'de> for GameScore {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Value(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Value(v) => Ok(GameScore::Value(v)),
            Raw::Text(t) if t == "infeasible" => Ok(GameScore::Infeasible),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad score `{t}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    /// Host vertices in presentation order.
    Ordering(Vec<usize>),
    /// An optimal online algorithm.
    Strategy(StrategyTable),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub memo_hits: u64,
    pub ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GameResult {
    pub value: GameScore,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

impl GameResult {
    pub fn ordering(&self) -> Option<&[usize]> {
        match &self.witness {
            Some(Witness::Ordering(o)) => Some(o),
            _ => None,
        }
    }

    pub fn strategy(&self) -> Option<&StrategyTable> {
        match &self.witness {
            Some(Witness::Strategy(t)) => Some(t),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Maximum number of expanded adversary positions.
    pub node_budget: u64,
    pub use_memo: bool,
    pub vertex_limit: usize,
    /// Produce an ordering (fixed policy) or strategy table (optimal play).
    pub witness: bool,
    pub cache: Option<Arc<ResultCache>>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let node_budget =
            std::env::var(NODE_BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_NODE_BUDGET);
        SolverConfig { node_budget, use_memo: true, vertex_limit: DEFAULT_VERTEX_LIMIT, witness: false, cache: None }
    }
}

impl SolverConfig {
    pub fn with_witness(mut self) -> Self {
        self.witness = true;
        self
    }

    pub fn without_memo(mut self) -> Self {
        self.use_memo = false;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_cache(mut self, cache: Arc<ResultCache>) -> Self {
        self.cache = Some(cache);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn score_order() {
        let (a, b) = (GameScore::Value(2), GameScore::Value(3));
        assert_eq!(Problem::Is.compare(a, b), Ordering::Less);
        assert_eq!(Problem::Vc.compare(a, b), Ordering::Greater);
        assert_eq!(Problem::Is.compare(GameScore::Infeasible, GameScore::Value(0)), Ordering::Less);
        assert_eq!(Problem::Ds.compare(GameScore::Infeasible, GameScore::Value(9)), Ordering::Less);
    }

    #[test]
    fn score_json() {
        assert_eq!(serde_json::to_string(&GameScore::Value(4)).unwrap(), "4");
        assert_eq!(serde_json::to_string(&GameScore::Infeasible).unwrap(), "\"infeasible\"");
        let back: GameScore = serde_json::from_str("\"infeasible\"").unwrap();
        assert_eq!(back, GameScore::Infeasible);
        assert_eq!(serde_json::from_str::<GameScore>("7").unwrap(), GameScore::Value(7));
    }

    #[test]
    fn utility_round_trip() {
        for maximize in [true, false] {
            for s in [GameScore::Value(0), GameScore::Value(5), GameScore::Infeasible] {
                assert_eq!(GameScore::from_utility(s.utility(maximize), maximize), s);
            }
        }
    }
}
