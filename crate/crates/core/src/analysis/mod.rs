//! Per-graph analyses built on the solvers: Freckle recognition, per-ordering
//! comparison of two policies, hardness reductions, and consolidated reports.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::game::{policy_worst_case_with, replay, solve_value_with, GameScore, Problem, SolverConfig};
use crate::graph_core::{add_isolated, check_limit, encode_graph6, split_isolated, Graph, DEFAULT_VERTEX_LIMIT};
use crate::policies::{offline_oracle, OracleKind, Policy};

/// Largest graph for which all orderings are enumerated.
pub const BIJECTIVE_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreckleCertificate {
    /// Number of isolated vertices.
    pub k: usize,
    /// Size of a smallest maximal independent set of the non-isolated part.
    pub s_size: usize,
    /// I^O of the non-isolated part; not computed when the shortcut applies.
    pub io_core: Option<u32>,
    pub is_freckle: bool,
    /// At least half of the vertices are isolated, which suffices.
    pub shortcut: bool,
}

pub fn freckle_check(g: &Graph) -> Result<FreckleCertificate> {
    freckle_check_with(g, true, &SolverConfig::default())
}

/// Decides `k + s(G') >= I^O(G')`. With `shortcut`, graphs with at least half
/// of their vertices isolated are accepted without solving.
pub fn freckle_check_with(g: &Graph, shortcut: bool, config: &SolverConfig) -> Result<FreckleCertificate> {
    check_limit(g.order(), config.vertex_limit)?;
    let (k, core) = split_isolated(g);
    let s_size = offline_oracle(&core, OracleKind::MinMaximalIs)?.size;
    if shortcut && 2 * k >= g.order() {
        return Ok(FreckleCertificate { k, s_size, io_core: None, is_freckle: true, shortcut: true });
    }
    let io = solve_value_with(&core, Problem::Is, config)?.value.value().expect("independent sets are feasible");
    Ok(FreckleCertificate { k, s_size, io_core: Some(io), is_freckle: k + s_size >= io as usize, shortcut: false })
}

fn serialize_ratio<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Exact {
        numerator: u64,
        denominator: u64,
    }
    r.map(|r| Exact { numerator: *r.numer(), denominator: *r.denom() }).serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectiveReport {
    pub orderings_total: u64,
    /// `a` does at least as well as `b` on every ordering.
    pub dominance: bool,
    /// Lexicographically first ordering where `a` does strictly better.
    pub strict_witness: Option<Vec<usize>>,
    /// Lexicographically first ordering where `b` does strictly better.
    pub counter_witness: Option<Vec<usize>>,
    /// Mean score over all orderings; absent if some ordering is infeasible.
    #[serde(serialize_with = "serialize_ratio")]
    pub mean_a: Option<Ratio<u64>>,
    #[serde(serialize_with = "serialize_ratio")]
    pub mean_b: Option<Ratio<u64>>,
}

#[derive(Default)]
struct Tally {
    total: u64,
    sum_a: Option<u64>,
    sum_b: Option<u64>,
    strict: Option<Vec<usize>>,
    counter: Option<Vec<usize>>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.sum_a = self.sum_a.zip(other.sum_a).map(|(x, y)| x + y);
        self.sum_b = self.sum_b.zip(other.sum_b).map(|(x, y)| x + y);
        self.strict = self.strict.or(other.strict);
        self.counter = self.counter.or(other.counter);
        self
    }
}

/// Replays both policies on every ordering of `g` (the identity bijection).
pub fn bijective_compare(g: &Graph, a: &Policy, b: &Policy, problem: Problem) -> Result<BijectiveReport> {
    let n = g.order();
    check_limit(n, BIJECTIVE_LIMIT)?;
    let score = |p: &Policy, order: &[usize]| replay(g, order, p, problem).map(|(_, s)| s);
    let tally_from = |first: usize| -> Result<Tally> {
        let rest: Vec<usize> = (0..n).filter(|&v| v != first).collect();
        let mut t = Tally { sum_a: Some(0), sum_b: Some(0), ..Tally::default() };
        for perm in rest.iter().copied().permutations(n - 1) {
            let order: Vec<usize> = std::iter::once(first).chain(perm).collect();
            let (sa, sb) = (score(a, &order)?, score(b, &order)?);
            t.total += 1;
            t.sum_a = t.sum_a.zip(sa.value()).map(|(x, y)| x + y as u64);
            t.sum_b = t.sum_b.zip(sb.value()).map(|(x, y)| x + y as u64);
            match problem.compare(sa, sb) {
                std::cmp::Ordering::Greater if t.strict.is_none() => t.strict = Some(order),
                std::cmp::Ordering::Less if t.counter.is_none() => t.counter = Some(order),
                _ => {}
            }
        }
        Ok(t)
    };
    let tally = if n == 0 {
        let empty = score(a, &[])?.value().zip(score(b, &[])?.value());
        Tally { total: 1, sum_a: empty.map(|e| e.0 as u64), sum_b: empty.map(|e| e.1 as u64), ..Tally::default() }
    } else {
        let parts: Vec<Tally> = (0..n).into_par_iter().map(tally_from).collect::<Result<_>>()?;
        parts.into_iter().reduce(Tally::merge).expect("n > 0")
    };
    let mean = |sum: Option<u64>| sum.map(|s| Ratio::new(s, tally.total));
    Ok(BijectiveReport {
        orderings_total: tally.total,
        dominance: tally.counter.is_none(),
        strict_witness: tally.strict.clone(),
        counter_witness: tally.counter.clone(),
        mean_a: mean(tally.sum_a),
        mean_b: mean(tally.sum_b),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub graph: Graph,
    pub bound: usize,
}

/// Independent domination to online independent set: add `|V|` isolated
/// vertices; `s(g) <= l` iff `I^O(output) <= l + |V|`.
pub fn reduce_mmis_to_online_is(g: &Graph, l: usize) -> Result<ReductionOutput> {
    check_limit(2 * g.order(), DEFAULT_VERTEX_LIMIT)?;
    Ok(ReductionOutput { graph: add_isolated(g, g.order())?, bound: l + g.order() })
}

/// Independent set to online dominating set: add one isolated vertex;
/// `alpha(g) >= l` iff `D^O(output) >= l + 1`.
pub fn reduce_is_to_online_ds(g: &Graph, l: usize) -> Result<ReductionOutput> {
    Ok(ReductionOutput { graph: add_isolated(g, 1)?, bound: l + 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    MmisToOis,
    IsToOds,
}

impl std::str::FromStr for ReductionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mmis-to-ois" => Ok(ReductionKind::MmisToOis),
            "is-to-ods" => Ok(ReductionKind::IsToOds),
            _ => Err(Error::Unsupported(format!("unknown reduction `{s}`"))),
        }
    }
}

/// Both sides of a reduction's correctness statement, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCheck {
    pub kind: ReductionKind,
    pub bound: usize,
    /// `s(g)` or `alpha(g)`.
    pub offline: usize,
    /// `I^O` or `D^O` of the produced graph.
    pub online: u32,
    pub source_holds: bool,
    pub target_holds: bool,
}

impl ReductionCheck {
    pub fn equivalent(&self) -> bool {
        self.source_holds == self.target_holds
    }
}

pub fn reduce(g: &Graph, kind: ReductionKind, l: usize) -> Result<ReductionOutput> {
    match kind {
        ReductionKind::MmisToOis => reduce_mmis_to_online_is(g, l),
        ReductionKind::IsToOds => reduce_is_to_online_ds(g, l),
    }
}

pub fn check_reduction(g: &Graph, kind: ReductionKind, l: usize, config: &SolverConfig) -> Result<ReductionCheck> {
    let out = reduce(g, kind, l)?;
    let (oracle, problem) = match kind {
        ReductionKind::MmisToOis => (OracleKind::MinMaximalIs, Problem::Is),
        ReductionKind::IsToOds => (OracleKind::MaxIs, Problem::Ds),
    };
    let offline = offline_oracle(g, oracle)?.size;
    let online = solve_value_with(&out.graph, problem, config)?.value.value().expect("feasible optimum");
    let (source_holds, target_holds) = match kind {
        ReductionKind::MmisToOis => (offline <= l, online as usize <= out.bound),
        ReductionKind::IsToOds => (offline >= l, online as usize >= out.bound),
    };
    Ok(ReductionCheck { kind, bound: out.bound, offline, online, source_holds, target_holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSizes {
    pub max_is: usize,
    pub min_maximal_is: usize,
    pub min_vc: usize,
    pub min_ds: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub n: usize,
    pub edges: usize,
    pub graph6: String,
    #[serde(rename = "I^O")]
    pub io: GameScore,
    #[serde(rename = "V^O")]
    pub vo: GameScore,
    #[serde(rename = "D^O")]
    pub dom: GameScore,
    pub offline: OracleSizes,
    /// Worst-case score of each policy on the problem it is designed for.
    pub worst: BTreeMap<String, GameScore>,
    pub freckle: FreckleCertificate,
    /// I^O + V^O = n.
    pub obs2: bool,
    /// The complement of IS-STAR covers exactly the vertices IS-STAR leaves out.
    pub obs1: bool,
    /// GIS worst case equals k + s(G').
    pub gis_formula: bool,
    /// GIS and GVC are optimal; reported for Freckle graphs only.
    pub gis_optimal: Option<bool>,
    pub gvc_optimal: Option<bool>,
    /// GDS is optimal; reported when an isolated vertex exists.
    pub gds_optimal: Option<bool>,
}

const REPORT_POLICIES: [(&str, Problem); 6] = [
    ("gis", Problem::Is),
    ("gvc", Problem::Vc),
    ("gds", Problem::Ds),
    ("is-star", Problem::Is),
    ("is-star-bar", Problem::Vc),
    ("almost-gis", Problem::Is),
];

pub fn theorem_report(g: &Graph) -> Result<TheoremReport> {
    theorem_report_with(g, &SolverConfig::default())
}

pub fn theorem_report_with(g: &Graph, config: &SolverConfig) -> Result<TheoremReport> {
    check_limit(g.order(), config.vertex_limit)?;
    let config = SolverConfig { witness: false, ..config.clone() };
    let n = g.order();
    let io = solve_value_with(g, Problem::Is, &config)?.value;
    let vo = solve_value_with(g, Problem::Vc, &config)?.value;
    let dom = solve_value_with(g, Problem::Ds, &config)?.value;
    let oracle = |kind| offline_oracle(g, kind).map(|r| r.size);
    let offline = OracleSizes {
        max_is: oracle(OracleKind::MaxIs)?,
        min_maximal_is: oracle(OracleKind::MinMaximalIs)?,
        min_vc: oracle(OracleKind::MinVc)?,
        min_ds: oracle(OracleKind::MinDs)?,
    };
    let mut worst = BTreeMap::new();
    for (name, problem) in REPORT_POLICIES {
        let p: Policy = name.parse()?;
        worst.insert(name.to_string(), policy_worst_case_with(g, problem, &p, &config)?.value);
    }
    let freckle = freckle_check_with(g, false, &config)?;
    let k = freckle.k;
    let obs2 = io.value().zip(vo.value()).is_some_and(|(i, v)| (i + v) as usize == n);
    let obs1 = match (worst["is-star"].value(), worst["is-star-bar"].value()) {
        (Some(p), Some(c)) => (p + c) as usize == n,
        (p, c) => p.is_none() && c.is_none(),
    };
    let gis_formula = worst["gis"] == GameScore::Value((k + freckle.s_size) as u32);
    let optimal = |name: &str, value: GameScore| freckle.is_freckle.then(|| worst[name] == value);
    Ok(TheoremReport {
        n,
        edges: g.edge_count(),
        graph6: encode_graph6(g)?,
        io,
        vo,
        dom,
        offline,
        gis_optimal: optimal("gis", io),
        gvc_optimal: optimal("gvc", vo),
        gds_optimal: (k > 0).then(|| worst["gds"] == dom),
        worst,
        freckle,
        obs2,
        obs1,
        gis_formula,
    })
}

/// I^O before and after adding one isolated vertex. Whether the second can
/// be smaller is not known in general; this only reports the two values.
pub fn isolated_vertex_effect(g: &Graph, config: &SolverConfig) -> Result<(GameScore, GameScore)> {
    let before = solve_value_with(g, Problem::Is, config)?.value;
    let after = solve_value_with(&add_isolated(g, 1)?, Problem::Is, config)?.value;
    Ok((before, after))
}
