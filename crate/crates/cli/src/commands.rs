use std::fs;
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use onlinegraph::analysis::{bijective_compare, check_reduction, freckle_check_with, reduce, theorem_report_with};
use onlinegraph::game::{
    policy_worst_case_with, replay, solve_conservative_is_with, solve_value_with, GameResult, ResultCache, SearchStats,
};
use onlinegraph::graph_core::{encode_graph6, load_graph, GraphFormat};
use onlinegraph::setsystem::{
    gmos_worst_with, load_setsystem, mso_conservative_value, mso_value_with, setsystem_stats,
};
use onlinegraph::{line_graph, make_family, Family, FamilySpec, Graph, Policy, Problem, SolverConfig};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Cli, Command, Format, GraphArgs, MosAction};

#[derive(Serialize)]
struct Output {
    subcommand: &'static str,
    input: Value,
    value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
    stats: SearchStats,
}

/// Runs one invocation and renders its output.
pub fn run(cli: &Cli) -> Result<String> {
    let start = Instant::now();
    if let Some(jobs) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global()?;
    }
    let config = solver_config(cli)?;
    let mut out = dispatch(&cli.command, &config)?;
    out.stats.ms = start.elapsed().as_millis() as u64;
    if cli.global.human {
        Ok(human(&out))
    } else {
        Ok(serde_json::to_string(&out)?)
    }
}

fn solver_config(cli: &Cli) -> Result<SolverConfig> {
    let mut config = SolverConfig::default();
    if let Some(budget) = cli.global.node_budget {
        config = config.with_budget(budget);
    }
    if cli.global.witness {
        config = config.with_witness();
    }
    if let Some(path) = &cli.global.cache {
        let cache = ResultCache::open(path).with_context(|| format!("opening cache {}", path.display()))?;
        config = config.with_cache(Arc::new(cache));
    }
    Ok(config)
}

fn load_input(args: &GraphArgs) -> Result<(Graph, Value)> {
    let (g, source) = match (&args.graph, &args.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let format = match args.format {
                Format::Graph6 => GraphFormat::Graph6,
                Format::Edges => GraphFormat::EdgeList,
            };
            (load_graph(&text, format)?, path.display().to_string())
        }
        (None, Some(name)) => {
            let family: Family = name.replace('-', "_").parse()?;
            let n = args.n.ok_or_else(|| anyhow!("--family needs --n"))?;
            let spec = FamilySpec { family, n, k: args.k };
            let source = match family {
                Family::ForestGadget => format!("{name} n={n} k={}", args.k),
                _ => format!("{name} n={n}"),
            };
            (make_family(&spec)?, source)
        }
        (None, None) => bail!("give either --graph FILE or --family NAME --n K"),
    };
    let input = json!({
        "source": source,
        "n": g.order(),
        "edges": g.edge_count(),
        "graph6": encode_graph6(&g).ok(),
    });
    Ok((g, input))
}

fn output(subcommand: &'static str, input: Value, value: impl Serialize) -> Result<Output> {
    Ok(Output { subcommand, input, value: serde_json::to_value(value)?, witness: None, stats: SearchStats::default() })
}

fn from_game(subcommand: &'static str, input: Value, r: GameResult) -> Result<Output> {
    let mut out = output(subcommand, input, r.value)?;
    out.witness = r.witness.map(serde_json::to_value).transpose()?;
    out.stats = r.stats;
    Ok(out)
}

fn add_stats(total: &mut SearchStats, s: &SearchStats) {
    total.nodes += s.nodes;
    total.memo_hits += s.memo_hits;
}

fn dispatch(command: &Command, config: &SolverConfig) -> Result<Output> {
    match command {
        Command::Solve { problem, conservative, input } => {
            let (g, input) = load_input(input)?;
            let problem: Problem = problem.parse()?;
            let r = if *conservative {
                if problem != Problem::Is {
                    bail!("--conservative is only defined for the independent set problem");
                }
                solve_conservative_is_with(&g, config)?
            } else {
                solve_value_with(&g, problem, config)?
            };
            from_game("solve", input, r)
        }
        Command::Worst { alg, problem, input } => {
            let (g, input) = load_input(input)?;
            let policy: Policy = alg.parse()?;
            from_game("worst", input, policy_worst_case_with(&g, problem.parse()?, &policy, config)?)
        }
        Command::Replay { alg, problem, order, input } => {
            let (g, input) = load_input(input)?;
            let policy: Policy = alg.parse()?;
            let order = parse_order(order)?;
            let (state, score) = replay(&g, &order, &policy, problem.parse()?)?;
            let mut out = output("replay", input, score)?;
            if config.witness {
                let mut accepted: Vec<usize> =
                    (0..order.len()).filter(|&i| state.accepted_mask() >> i & 1 == 1).map(|i| order[i]).collect();
                accepted.sort_unstable();
                out.witness = Some(json!(accepted));
            }
            Ok(out)
        }
        Command::Freckle { no_shortcut, input } => {
            let (g, input) = load_input(input)?;
            output("freckle", input, freckle_check_with(&g, !no_shortcut, config)?)
        }
        Command::Compare { alg_a, alg_b, problem, bijective, input } => {
            let (g, input) = load_input(input)?;
            let (a, b): (Policy, Policy) = (alg_a.parse()?, alg_b.parse()?);
            let problem: Problem = problem.parse()?;
            let ra = policy_worst_case_with(&g, problem, &a, config)?;
            let rb = policy_worst_case_with(&g, problem, &b, config)?;
            let report = if *bijective { Some(bijective_compare(&g, &a, &b, problem)?) } else { None };
            let mut out = output(
                "compare",
                input,
                json!({
                    "alg_a": a.to_string(),
                    "alg_b": b.to_string(),
                    "problem": problem.to_string(),
                    "worst_a": ra.value,
                    "worst_b": rb.value,
                    "bijective": report,
                }),
            )?;
            if config.witness {
                out.witness = Some(json!({ "worst_a": ra.witness, "worst_b": rb.witness }));
            }
            add_stats(&mut out.stats, &ra.stats);
            add_stats(&mut out.stats, &rb.stats);
            Ok(out)
        }
        Command::Reduce { kind, bound, check, input } => {
            let (g, input) = load_input(input)?;
            let kind = kind.parse()?;
            let reduced = reduce(&g, kind, *bound)?;
            let check = if *check { Some(check_reduction(&g, kind, *bound, config)?) } else { None };
            output(
                "reduce",
                input,
                json!({
                    "n": reduced.graph.order(),
                    "edges": reduced.graph.edges(),
                    "graph6": encode_graph6(&reduced.graph).ok(),
                    "bound": reduced.bound,
                    "check": check,
                }),
            )
        }
        Command::Mos { action, instance, conservative } => mos(*action, instance, *conservative, config),
        Command::Report { input } => {
            let (g, input) = load_input(input)?;
            output("report", input, theorem_report_with(&g, config)?)
        }
        Command::Matching { input } => {
            let (g, input) = load_input(input)?;
            let (lg, edges) = line_graph(&g)?;
            let online = solve_value_with(&lg, Problem::Is, &SolverConfig { witness: false, ..config.clone() })?;
            let greedy = policy_worst_case_with(&lg, Problem::Is, &Policy::Gis, config)?;
            let mut out = output("matching", input, json!({ "online": online.value, "greedy": greedy.value }))?;
            if let Some(order) = greedy.ordering() {
                let arrival: Vec<(usize, usize)> = order.iter().map(|&e| edges[e]).collect();
                out.witness = Some(json!(arrival));
            }
            add_stats(&mut out.stats, &online.stats);
            add_stats(&mut out.stats, &greedy.stats);
            Ok(out)
        }
    }
}

fn mos(action: MosAction, path: &Path, conservative: bool, config: &SolverConfig) -> Result<Output> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let ss = load_setsystem(&text)?;
    let input = json!({
        "source": path.display().to_string(),
        "elements": ss.len(),
        "forbidden": ss.forbidden().len(),
    });
    match action {
        MosAction::Solve if conservative => from_game("mos", input, mso_conservative_value(&ss)?),
        MosAction::Solve => from_game("mos", input, mso_value_with(&ss, config)?),
        MosAction::Greedy => {
            let r = gmos_worst_with(&ss, config)?;
            let names = r.ordering().map(|o| o.iter().map(|&x| ss.elements()[x].clone()).collect::<Vec<_>>());
            let mut out = from_game("mos", input, r)?;
            out.witness = names.map(|n| json!(n));
            Ok(out)
        }
        MosAction::Stats => output("mos", input, setsystem_stats(&ss)?),
    }
}

fn parse_order(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().with_context(|| format!("bad vertex `{s}` in --order")))
        .collect()
}

fn human(out: &Output) -> String {
    let mut lines = vec![format!("{}: {}", out.subcommand, compact(&out.input))];
    match &out.value {
        Value::Object(map) => {
            lines.push("value:".into());
            lines.extend(map.iter().map(|(k, v)| format!("  {k}: {}", compact(v))));
        }
        v => lines.push(format!("value: {}", compact(v))),
    }
    if let Some(w) = &out.witness {
        lines.push(format!("witness: {}", compact(w)));
    }
    lines.push(format!("nodes: {}, memo hits: {}, {} ms", out.stats.nodes, out.stats.memo_hits, out.stats.ms));
    lines.join("\n")
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(map) => map
            .iter()
            .filter(|(_, v)| !v.is_null())
            .map(|(k, v)| format!("{k}={}", compact(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}
