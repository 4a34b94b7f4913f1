//! `onlinegraph`: exact online graph games from the command line.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "onlinegraph", version, about = "Exact values of online graph problems on small graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Plain text instead of JSON.
    #[arg(long, global = true)]
    pub human: bool,
    /// Maximum number of expanded adversary states (default 10^8, or ONLINEGRAPH_NODE_BUDGET).
    #[arg(long, global = true)]
    pub node_budget: Option<u64>,
    /// JSON-lines file memoizing solved root values.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Include worst orderings or strategy tables.
    #[arg(long, global = true)]
    pub witness: bool,
    /// Worker threads for ordering enumeration.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Graph file.
    #[arg(long, conflicts_with = "family")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    pub format: Format,
    /// empty, path, complete, star, complete-bipartite, agi or forest-gadget.
    #[arg(long, requires = "n")]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Isolated vertices added to a forest gadget.
    #[arg(long, default_value_t = 0)]
    pub k: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    Edges,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Optimal online value (I^O, V^O or D^O).
    Solve {
        #[arg(long)]
        problem: String,
        /// Adversary that avoids pointless requests (independent set only).
        #[arg(long)]
        conservative: bool,
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Worst-case score of a fixed algorithm.
    Worst {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        problem: String,
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Runs an algorithm on one presentation order.
    Replay {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        problem: String,
        /// Comma-separated host vertices in arrival order.
        #[arg(long)]
        order: String,
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Decides k + s(G') >= I^O(G').
    Freckle {
        /// Solve I^O(G') even when half of the vertices are isolated.
        #[arg(long)]
        no_shortcut: bool,
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Compares two algorithms by worst case, or over every ordering.
    Compare {
        #[arg(long)]
        alg_a: String,
        #[arg(long)]
        alg_b: String,
        #[arg(long, default_value = "is")]
        problem: String,
        #[arg(long)]
        bijective: bool,
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Builds a reduction instance.
    Reduce {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        bound: usize,
        /// Also evaluate both sides of the equivalence.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Maximum Online Set instances.
    Mos {
        #[arg(value_enum)]
        action: MosAction,
        /// Set system JSON: {"elements": [...], "forbidden": [[...], ...]}.
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        conservative: bool,
    },
    /// Every quantity and relation for one graph.
    Report {
        #[command(flatten)]
        input: GraphArgs,
    },
    /// Online matching number and the greedy matching worst case.
    Matching {
        #[command(flatten)]
        input: GraphArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MosAction {
    Solve,
    Greedy,
    Stats,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let limit =
                e.chain().any(|c| c.downcast_ref::<onlinegraph::Error>().is_some_and(|e| e.is_resource_limit()));
            ExitCode::from(if limit { 2 } else { 1 })
        }
    }
}
