use serde::{Deserialize, Serialize};

use super::{check_limit, Graph, DEFAULT_VERTEX_LIMIT};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Empty,
    Path,
    Complete,
    Star,
    CompleteBipartite,
    /// `x_i - y_i - z - u_i` for `i = 1..=n`.
    Agi,
    /// Edge `x-y`, both joined to `v_1..v_n`, plus `k` isolated vertices.
    ForestGadget,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('-', "_").as_str() {
            "empty" => Family::Empty,
            "path" => Family::Path,
            "complete" => Family::Complete,
            "star" => Family::Star,
            "complete_bipartite" | "knn" => Family::CompleteBipartite,
            "agi" => Family::Agi,
            "forest_gadget" => Family::ForestGadget,
            _ => return Err(Error::InvalidFamily(format!("unknown family `{s}`"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    /// Isolated-vertex padding; only meaningful for `forest_gadget`.
    #[serde(default)]
    pub k: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n, k: 0 }
    }
    pub fn empty(n: usize) -> Self {
        Self::new(Family::Empty, n)
    }
    pub fn path(n: usize) -> Self {
        Self::new(Family::Path, n)
    }
    pub fn complete(n: usize) -> Self {
        Self::new(Family::Complete, n)
    }
    pub fn star(n: usize) -> Self {
        Self::new(Family::Star, n)
    }
    pub fn complete_bipartite(n: usize) -> Self {
        Self::new(Family::CompleteBipartite, n)
    }
    pub fn agi(n: usize) -> Self {
        Self::new(Family::Agi, n)
    }
    pub fn forest_gadget(n: usize, k: usize) -> Self {
        FamilySpec { family: Family::ForestGadget, n, k }
    }

    pub fn order(&self) -> usize {
        match self.family {
            Family::Empty | Family::Path | Family::Complete => self.n,
            Family::Star => self.n + 1,
            Family::CompleteBipartite => 2 * self.n,
            Family::Agi => 3 * self.n + 1,
            Family::ForestGadget => self.n + 2 + self.k,
        }
    }

    fn validate(&self) -> Result<()> {
        let min = match self.family {
            Family::Empty | Family::Path | Family::Complete => 0,
            Family::Star | Family::CompleteBipartite | Family::ForestGadget => 1,
            Family::Agi => 2,
        };
        if self.n < min {
            return Err(Error::InvalidFamily(format!("{:?} needs n >= {min}, got {}", self.family, self.n)));
        }
        if self.k != 0 && self.family != Family::ForestGadget {
            return Err(Error::InvalidFamily(format!("{:?} takes no k parameter", self.family)));
        }
        Ok(())
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = serde_json::to_value(self.family).unwrap();
        write!(f, "{}({}", name.as_str().unwrap(), self.n)?;
        if self.family == Family::ForestGadget {
            write!(f, ",{}", self.k)?;
        }
        write!(f, ")")
    }
}

/// Builds a named family member. Vertex numbering:
/// star: center 0, leaves `1..=n`; complete_bipartite: sides `0..n` and `n..2n`;
/// agi: `x_i = i-1`, `y_i = n+i-1`, `z = 2n`, `u_i = 2n+i`;
/// forest_gadget: `x = 0`, `y = 1`, `v_i = i+1`, isolated vertices last.
pub fn make_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let order = spec.order();
    check_limit(order, DEFAULT_VERTEX_LIMIT)?;
    let n = spec.n;
    let mut edges = Vec::new();
    let mut names: Vec<String> = (0..order).map(|v| v.to_string()).collect();
    match spec.family {
        Family::Empty => {}
        Family::Path => edges.extend((1..n).map(|i| (i - 1, i))),
        Family::Complete => {
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
        }
        Family::Star => {
            edges.extend((1..=n).map(|leaf| (0, leaf)));
            names[0] = "s".into();
            for (leaf, name) in names.iter_mut().enumerate().skip(1) {
                *name = format!("l{leaf}");
            }
        }
        Family::CompleteBipartite => {
            for u in 0..n {
                edges.extend((n..2 * n).map(|v| (u, v)));
                names[u] = format!("a{}", u + 1);
                names[n + u] = format!("b{}", u + 1);
            }
        }
        Family::Agi => {
            let z = 2 * n;
            for i in 0..n {
                let (x, y, u) = (i, n + i, 2 * n + 1 + i);
                edges.extend([(x, y), (y, z), (z, u)]);
                names[x] = format!("x{}", i + 1);
                names[y] = format!("y{}", i + 1);
                names[u] = format!("u{}", i + 1);
            }
            names[z] = "z".into();
        }
        Family::ForestGadget => {
            edges.push((0, 1));
            names[0] = "x".into();
            names[1] = "y".into();
            for i in 0..n {
                edges.extend([(0, 2 + i), (1, 2 + i)]);
                names[2 + i] = format!("v{}", i + 1);
            }
            for j in 0..spec.k {
                names[n + 2 + j] = format!("i{}", j + 1);
            }
        }
    }
    Ok(Graph::from_edges(order, &edges)?.with_names(names))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_three() {
        let g = make_family(&FamilySpec::star(3)).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn agi_four_matches_figure() {
        let g = make_family(&FamilySpec::agi(4)).unwrap();
        assert_eq!((g.order(), g.edge_count()), (13, 12));
        let z = 8;
        assert_eq!(g.degree(z), 8);
        for i in 0..4 {
            assert!(g.adjacent(i, 4 + i));
            assert!(g.adjacent(4 + i, z));
            assert!(g.adjacent(z, 9 + i));
            assert_eq!(g.degree(i), 1);
            assert_eq!(g.degree(9 + i), 1);
        }
        assert_eq!(g.label(z), "z");
    }

    #[test]
    fn forest_gadget_five_matches_figure() {
        let g = make_family(&FamilySpec::forest_gadget(5, 0)).unwrap();
        assert_eq!((g.order(), g.edge_count()), (7, 11));
        assert!(g.adjacent(0, 1));
        assert_eq!(g.degree(0), 6);
        assert!((2..7).all(|v| g.degree(v) == 2));

        let padded = make_family(&FamilySpec::forest_gadget(4, 2)).unwrap();
        assert_eq!(padded.isolated_vertices(), vec![6, 7]);
    }

    #[test]
    fn complete_bipartite() {
        let g = make_family(&FamilySpec::complete_bipartite(3)).unwrap();
        assert_eq!((g.order(), g.edge_count()), (6, 9));
        assert!(!g.adjacent(0, 1));
        assert!(g.adjacent(0, 3));
    }

    #[test]
    fn invalid_parameters() {
        assert!(make_family(&FamilySpec::star(0)).is_err());
        assert!(make_family(&FamilySpec::agi(1)).is_err());
        assert!(make_family(&FamilySpec::forest_gadget(0, 1)).is_err());
        assert!(make_family(&FamilySpec { family: Family::Path, n: 3, k: 1 }).is_err());
        assert!(matches!(make_family(&FamilySpec::agi(6)), Err(Error::TooLarge { .. })));
    }
}
