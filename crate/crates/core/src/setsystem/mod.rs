//! Maximum Online Set: base elements with a family of minimal forbidden subsets.

mod game;

pub use game::{gmos_worst, gmos_worst_with, mso_conservative_value, mso_value, mso_value_with, replay_gmos};

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_core::{bits, check_limit, full_mask, Graph, DEFAULT_VERTEX_LIMIT};

/// Largest base set accepted by the exact online solver.
pub const MSO_ELEMENT_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    elements: Vec<String>,
    /// Minimal forbidden sets as element bitmasks, sorted.
    forbidden: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RawSetSystem {
    elements: Vec<String>,
    forbidden: Vec<Vec<String>>,
}

impl SetSystem {
    /// Validates minimality; rejects the empty set and duplicate sets.
    pub fn new(elements: Vec<String>, forbidden: Vec<u32>) -> Result<Self> {
        check_limit(elements.len(), DEFAULT_VERTEX_LIMIT)?;
        if let Some(dup) = elements.iter().duplicates().next() {
            return Err(Error::InvalidSetSystem(format!("duplicate element `{dup}`")));
        }
        let all = full_mask(elements.len());
        for (i, &a) in forbidden.iter().enumerate() {
            if a == 0 {
                return Err(Error::InvalidSetSystem("the empty set cannot be forbidden".into()));
            }
            if a & !all != 0 {
                return Err(Error::InvalidSetSystem(format!("forbidden set {a:#b} mentions unknown elements")));
            }
            for &b in &forbidden[i + 1..] {
                if a & b == a || a & b == b {
                    return Err(Error::InvalidSetSystem("forbidden family is not minimal".into()));
                }
            }
        }
        let mut forbidden = forbidden;
        forbidden.sort_unstable();
        Ok(SetSystem { elements, forbidden })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn forbidden(&self) -> &[u32] {
        &self.forbidden
    }

    pub fn feasible(&self, set: u32) -> bool {
        self.forbidden.iter().all(|&m| m & set != m)
    }

    /// Elements lying in no forbidden set.
    pub fn isolated(&self) -> u32 {
        let covered = self.forbidden.iter().fold(0, |a, &m| a | m);
        full_mask(self.len()) & !covered
    }

    /// Restriction to the elements of `keep`, relabeled in increasing order.
    pub fn restrict(&self, keep: u32) -> SetSystem {
        let kept: Vec<usize> = bits(keep).collect();
        let pos: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let forbidden = self
            .forbidden
            .iter()
            .filter(|&&m| m & keep == m)
            .map(|&m| bits(m).fold(0u32, |a, v| a | 1 << pos[&v]))
            .sorted()
            .collect();
        let elements = kept.iter().map(|&v| self.elements[v].clone()).collect();
        SetSystem { elements, forbidden }
    }

    pub fn names(&self, set: u32) -> Vec<String> {
        bits(set).map(|v| self.elements[v].clone()).collect()
    }

    /// Identifies the system up to renaming elements.
    pub fn canonical_form(&self) -> Vec<u32> {
        let n = self.len();
        (0..n)
            .permutations(n)
            .map(|p| {
                let mut fam: Vec<u32> =
                    self.forbidden.iter().map(|&m| bits(m).fold(0u32, |a, v| a | 1 << p[v])).collect();
                fam.sort_unstable();
                fam
            })
            .min()
            .unwrap_or_default()
    }

    pub fn to_json(&self) -> String {
        let raw = RawSetSystem {
            elements: self.elements.clone(),
            forbidden: self.forbidden.iter().map(|&m| self.names(m)).collect(),
        };
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}

/// Parses `{"elements": [...], "forbidden": [[...], ...]}`.
pub fn load_setsystem(text: &str) -> Result<SetSystem> {
    let raw: RawSetSystem = serde_json::from_str(text)?;
    let index: HashMap<&str, usize> = raw.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    let mut forbidden = Vec::with_capacity(raw.forbidden.len());
    for set in &raw.forbidden {
        let mut mask = 0u32;
        for name in set {
            let &i =
                index.get(name.as_str()).ok_or_else(|| Error::InvalidSetSystem(format!("unknown element `{name}`")))?;
            mask |= 1 << i;
        }
        forbidden.push(mask);
    }
    SetSystem::new(raw.elements, forbidden)
}

/// Independent set as a set system: vertices with the edges forbidden.
pub fn setsystem_from_graph(g: &Graph) -> SetSystem {
    let elements = (0..g.order()).map(|v| g.label(v)).collect();
    let forbidden = g.edges().into_iter().map(|(u, v)| 1u32 << u | 1 << v).sorted().collect();
    SetSystem { elements, forbidden }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetSystemStats {
    pub isolated_count: usize,
    #[serde(serialize_with = "serialize_system")]
    pub core: SetSystem,
    /// Size of a smallest inclusion-maximal feasible set of the whole system.
    pub s_size: usize,
    pub s_witness: Vec<String>,
}

fn serialize_system<S: serde::Serializer>(ss: &SetSystem, s: S) -> std::result::Result<S::Ok, S::Error> {
    RawSetSystem { elements: ss.elements.clone(), forbidden: ss.forbidden.iter().map(|&m| ss.names(m)).collect() }
        .serialize(s)
}

pub fn setsystem_stats(ss: &SetSystem) -> Result<SetSystemStats> {
    check_limit(ss.len(), DEFAULT_VERTEX_LIMIT)?;
    let isolated = ss.isolated();
    let s = min_maximal_feasible(ss);
    Ok(SetSystemStats {
        isolated_count: isolated.count_ones() as usize,
        core: ss.restrict(full_mask(ss.len()) & !isolated),
        s_size: s.count_ones() as usize,
        s_witness: ss.names(s),
    })
}

/// Smallest feasible set to which no element can be added, lowest mask on ties.
pub(crate) fn min_maximal_feasible(ss: &SetSystem) -> u32 {
    let n = ss.len();
    let mut best: Option<u32> = None;
    for set in 0..=full_mask(n) {
        if best.is_some_and(|b| set.count_ones() >= b.count_ones()) || !ss.feasible(set) {
            continue;
        }
        let maximal = bits(full_mask(n) & !set).all(|x| !ss.feasible(set | 1 << x));
        if maximal {
            best = Some(set);
        }
    }
    best.unwrap_or(0)
}

/// One representative of every set system on `m` elements (named `a`, `b`,
/// ...) up to renaming, in canonical-form order.
pub fn set_systems_on(m: usize) -> Result<Vec<SetSystem>> {
    check_limit(m, 4)?;
    let elements: Vec<String> = (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let subsets: Vec<u32> = (1..=full_mask(m)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for choice in 0u64..1 << subsets.len() {
        let fam: Vec<u32> = (0..subsets.len()).filter(|&i| choice >> i & 1 == 1).map(|i| subsets[i]).collect();
        let antichain = fam.iter().tuple_combinations().all(|(&a, &b)| a & b != a && a & b != b);
        if !antichain {
            continue;
        }
        let ss = SetSystem { elements: elements.clone(), forbidden: fam };
        let form = ss.canonical_form();
        if seen.insert(form.clone()) {
            out.push((form, SetSystem { elements: elements.clone(), forbidden: form_sorted(ss.forbidden) }));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, ss)| ss).collect())
}

fn form_sorted(mut fam: Vec<u32>) -> Vec<u32> {
    fam.sort_unstable();
    fam
}

/// Every set system with at most `m` elements, up to renaming.
pub fn set_systems_up_to(m: usize) -> Result<Vec<SetSystem>> {
    let mut out = Vec::new();
    for k in 0..=m {
        out.extend(set_systems_on(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_core::{make_family, FamilySpec};

    #[test]
    fn load_examples() {
        let ss = load_setsystem(r#"{"elements":["a","b","c"],"forbidden":[["a","b"]]}"#).unwrap();
        assert_eq!(ss.isolated(), 0b100);
        let err = load_setsystem(r#"{"elements":["a","b"],"forbidden":[["a"],["a","b"]]}"#).unwrap_err();
        assert!(err.to_string().contains("minimal"));
        let ss = load_setsystem(r#"{"elements":["a"],"forbidden":[]}"#).unwrap();
        assert!(ss.feasible(1));
        assert!(load_setsystem(r#"{"elements":["a"],"forbidden":[["z"]]}"#).is_err());
        assert!(load_setsystem(r#"{"elements":["a"],"forbidden":[[]]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"elements":["a","b","c"],"forbidden":[["a","b"]]}"#;
        assert_eq!(load_setsystem(text).unwrap().to_json(), text);
    }

    #[test]
    fn from_graph() {
        let k3 = make_family(&FamilySpec::complete(3)).unwrap();
        assert_eq!(setsystem_from_graph(&k3).forbidden(), &[0b011, 0b101, 0b110]);
        assert!(setsystem_from_graph(&Graph::empty(2).unwrap()).forbidden().is_empty());
        let s2 = make_family(&FamilySpec::star(2)).unwrap();
        assert_eq!(setsystem_from_graph(&s2).forbidden(), &[0b011, 0b101]);
    }

    #[test]
    fn stats_examples() {
        let ss = load_setsystem(r#"{"elements":["a","b","c"],"forbidden":[["a","b"]]}"#).unwrap();
        let st = setsystem_stats(&ss).unwrap();
        assert_eq!((st.isolated_count, st.s_size), (1, 2));
        assert_eq!(st.core.len(), 2);
        let s4 = setsystem_from_graph(&make_family(&FamilySpec::star(4)).unwrap());
        assert_eq!(setsystem_stats(&s4).unwrap().s_size, 1);
        let free = SetSystem::new(vec!["a".into(), "b".into(), "c".into()], vec![]).unwrap();
        let st = setsystem_stats(&free).unwrap();
        assert_eq!((st.isolated_count, st.s_size), (3, 3));
    }

    #[test]
    fn enumeration_counts() {
        // inequivalent monotone Boolean functions minus the constant false one
        let counts: Vec<usize> = (0..=4).map(|m| set_systems_on(m).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 9, 29]);
    }
}
