use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_core::{bits, check_limit, full_mask, Graph, DEFAULT_VERTEX_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    MaxIs,
    MinMaximalIs,
    MinVc,
    MinDs,
}

impl FromStr for OracleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "max_is" => Ok(OracleKind::MaxIs),
            "min_maximal_is" => Ok(OracleKind::MinMaximalIs),
            "min_vc" => Ok(OracleKind::MinVc),
            "min_ds" => Ok(OracleKind::MinDs),
            _ => Err(Error::UnknownProblem(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub size: usize,
    /// Sorted vertex list.
    pub witness: Vec<usize>,
}

impl OracleResult {
    fn from_mask(mask: u32) -> Self {
        OracleResult { size: mask.count_ones() as usize, witness: bits(mask).collect() }
    }
}

/// Exact offline optimum by branch and bound.
pub fn offline_oracle(g: &Graph, kind: OracleKind) -> Result<OracleResult> {
    check_limit(g.order(), DEFAULT_VERTEX_LIMIT)?;
    let adj = g.adjacency();
    let all = full_mask(adj.len());
    let mask = match kind {
        OracleKind::MaxIs => max_independent(adj),
        OracleKind::MinVc => all & !max_independent(adj),
        OracleKind::MinMaximalIs => min_dominating(adj, true),
        OracleKind::MinDs => min_dominating(adj, false),
    };
    Ok(OracleResult::from_mask(mask))
}

pub(crate) fn max_independent(adj: &[u32]) -> u32 {
    fn go(adj: &[u32], cand: u32, cur: u32, best: &mut u32) {
        if cur.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        if cand == 0 {
            *best = cur;
            return;
        }
        let v = bits(cand).max_by_key(|&v| (adj[v] & cand).count_ones()).expect("nonempty");
        let bit = 1 << v;
        if adj[v] & cand == 0 {
            return go(adj, cand & !bit, cur | bit, best);
        }
        go(adj, cand & !bit & !adj[v], cur | bit, best);
        go(adj, cand & !bit, cur, best);
    }
    let mut best = 0;
    go(adj, full_mask(adj.len()), 0, &mut best);
    best
}

/// Smallest dominating set, restricted to independent sets when `independent`
/// (i.e. a smallest inclusion-maximal independent set).
pub(crate) fn min_dominating(adj: &[u32], independent: bool) -> u32 {
    let n = adj.len();
    let closed: Vec<u32> = (0..n).map(|v| adj[v] | 1 << v).collect();
    let all = full_mask(n);
    fn go(closed: &[u32], all: u32, independent: bool, cur: u32, dom: u32, best: &mut u32) {
        if dom == all {
            if cur.count_ones() < best.count_ones() {
                *best = cur;
            }
            return;
        }
        if cur.count_ones() + 1 >= best.count_ones() {
            return;
        }
        let blocked = if independent { dom } else { cur };
        let u = bits(all & !dom).min_by_key(|&u| (closed[u] & !blocked).count_ones()).expect("undominated vertex");
        for w in bits(closed[u] & !blocked) {
            go(closed, all, independent, cur | 1 << w, dom | closed[w], best);
        }
    }
    let mut best = all;
    go(&closed, all, independent, 0, 0, &mut best);
    best
}
