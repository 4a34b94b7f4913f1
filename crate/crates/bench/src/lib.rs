//! Benchmark inputs shared by the criterion suites.

use onlinegraph::{make_family, FamilySpec, Graph};

/// Named hosts of increasing difficulty.
pub fn hosts() -> Vec<(&'static str, Graph)> {
    [
        ("star6", FamilySpec::star(6)),
        ("path8", FamilySpec::path(8)),
        ("k33", FamilySpec::complete_bipartite(3)),
        ("agi2", FamilySpec::agi(2)),
        ("gadget5", FamilySpec::forest_gadget(5, 1)),
    ]
    .into_iter()
    .map(|(name, spec)| (name, make_family(&spec).expect("valid family")))
    .collect()
}
