//! Deterministic online algorithms as decision functions over the revealed history.

mod oracle;

pub use oracle::{offline_oracle, OracleKind, OracleResult};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::canon::{CanonicalKey, Mark};
use crate::error::{Error, Result};
use crate::game::RevealedState;
use crate::graph_core::{bits, component_masks};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
}

impl Decision {
    pub fn mark(self) -> Mark {
        match self {
            Decision::Accept => Mark::Accepted,
            Decision::Reject => Mark::Rejected,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Decision::Accept => Decision::Reject,
            Decision::Reject => Decision::Accept,
        }
    }
}

/// Decisions of an explicit online algorithm, keyed by the canonical key of
/// the revealed graph extended with the pending vertex.
pub type StrategyTable = BTreeMap<CanonicalKey, Decision>;

#[derive(Clone, Debug)]
pub enum Policy {
    /// Accept iff no neighbor has been accepted.
    Gis,
    /// Accept iff some neighbor has been rejected.
    Gvc,
    /// Same decisions as `Gis`, scored as a dominating set.
    Gds,
    /// Reject the first vertex; accept the second iff it is not adjacent to
    /// the first; afterwards accept iff at most one neighbor is revealed.
    IsStar,
    /// Reject vertices with two or more revealed neighbors, otherwise `Gis`.
    AlmostGis,
    /// Accept iff the accepted set stays acyclic.
    Gf,
    /// Accept iff the vertex has at most two revealed neighbors and each of
    /// them already had at least two.
    ForestDegree,
    /// Accepts exactly what the inner policy rejects.
    Complement(Box<Policy>),
    /// Lookup in a strategy table; unknown positions are rejected.
    Table(Arc<StrategyTable>),
}

impl Policy {
    pub fn complement(inner: Policy) -> Self {
        Policy::Complement(Box::new(inner))
    }

    pub fn decide(&self, history: &RevealedState, edges: u32) -> Decision {
        let accepted = history.accepted_mask();
        let accept_if = |b: bool| if b { Decision::Accept } else { Decision::Reject };
        match self {
            Policy::Gis | Policy::Gds => accept_if(edges & accepted == 0),
            Policy::Gvc => accept_if(edges & history.rejected_mask() != 0),
            Policy::IsStar => match history.len() {
                0 => Decision::Reject,
                1 => accept_if(edges == 0),
                _ => accept_if(edges.count_ones() <= 1),
            },
            Policy::AlmostGis => accept_if(edges.count_ones() < 2 && edges & accepted == 0),
            Policy::Gf => {
                let touched = edges & accepted;
                let comps = component_masks(history.adjacency(), accepted);
                accept_if(comps.iter().all(|c| (c & touched).count_ones() <= 1))
            }
            Policy::ForestDegree => {
                let adj = history.adjacency();
                accept_if(edges.count_ones() <= 2 && bits(edges).all(|u| adj[u].count_ones() >= 2))
            }
            Policy::Complement(inner) => inner.decide(&history.flipped(), edges).flip(),
            Policy::Table(table) => table.get(&history.pending_key(edges)).copied().unwrap_or(Decision::Reject),
        }
    }

    /// Everything beyond the canonical marked graph that future decisions
    /// depend on.
    pub fn state_digest(&self, history: &RevealedState) -> Vec<u8> {
        match self {
            Policy::IsStar => {
                let len = history.len().min(2) as u8;
                let first_adjacent = history.len() >= 2 && history.back_edges(1) != 0;
                vec![len, first_adjacent as u8]
            }
            Policy::Complement(inner) => inner.state_digest(&history.flipped()),
            _ => Vec::new(),
        }
    }

    /// Whether results for this policy may be stored in a persistent cache.
    pub fn is_named(&self) -> bool {
        match self {
            Policy::Table(_) => false,
            Policy::Complement(inner) => inner.is_named(),
            _ => true,
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Gis => f.write_str("gis"),
            Policy::Gvc => f.write_str("gvc"),
            Policy::Gds => f.write_str("gds"),
            Policy::IsStar => f.write_str("is-star"),
            Policy::AlmostGis => f.write_str("almost-gis"),
            Policy::Gf => f.write_str("gf"),
            Policy::ForestDegree => f.write_str("forest-deg"),
            Policy::Complement(inner) => write!(f, "{inner}-bar"),
            Policy::Table(table) => write!(f, "table[{}]", table.len()),
        }
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let name = s.trim().to_ascii_lowercase().replace('_', "-");
        if let Some(inner) = name.strip_suffix("-bar") {
            return Ok(Policy::complement(inner.parse()?));
        }
        if let Some(inner) = name.strip_prefix("complement(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Policy::complement(inner.parse()?));
        }
        match name.as_str() {
            "gis" => Ok(Policy::Gis),
            "gvc" => Ok(Policy::Gvc),
            "gds" => Ok(Policy::Gds),
            "is-star" => Ok(Policy::IsStar),
            "almost-gis" => Ok(Policy::AlmostGis),
            "gf" => Ok(Policy::Gf),
            "forest-deg" | "forest-degree" => Ok(Policy::ForestDegree),
            _ => Err(Error::UnknownPolicy(s.to_string())),
        }
    }
}

/// Looks up a policy by its command-line name (`gis`, `is-star-bar`, ...).
pub fn make_policy(name: &str) -> Result<Policy> {
    name.parse()
}
