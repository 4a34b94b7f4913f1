//! Exact evaluation of online graph problems in the vertex-arrival model.
//!
//! An adversary reveals the vertices of a known graph one at a time, each with
//! its edges to earlier vertices, and an online algorithm irrevocably accepts
//! or rejects each one. The crate computes worst-case scores of fixed
//! algorithms, optimal online values by game-tree search, and related
//! structural quantities on small graphs.

pub mod analysis;
pub mod canon;
pub mod error;
pub mod game;
pub mod graph_core;
pub mod policies;
pub mod setsystem;

pub use canon::{adversary_moves, canonical_key, isomorphic, CanonicalKey, Mark, MarkedGraph, Move};
pub use error::{Error, Result};
pub use game::{
    policy_worst_case, replay, solve_conservative_is, solve_value, GameResult, GameScore, Problem, RevealedState,
    SolverConfig, Witness,
};
pub use graph_core::{add_isolated, line_graph, make_family, split_isolated, Family, FamilySpec, Graph};
pub use policies::{make_policy, offline_oracle, Decision, OracleKind, OracleResult, Policy, StrategyTable};
