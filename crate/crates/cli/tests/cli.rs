use std::path::Path;
use std::process::{Command, Output};

use onlinegraph::analysis::theorem_report;
use onlinegraph::canon::graphs_up_to;
use onlinegraph::game::{policy_worst_case, replay, solve_value};
use onlinegraph::graph_core::encode_graph6;
use onlinegraph::{make_family, FamilySpec, Policy, Problem};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onlinegraph")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn star_examples() {
    let v = json(&["solve", "--problem", "is", "--family", "star", "--n", "4"]);
    assert_eq!(v["value"], 3);
    assert_eq!(v["subcommand"], "solve");
    let v = json(&["worst", "--alg", "gis", "--problem", "is", "--family", "star", "--n", "4", "--witness"]);
    assert_eq!(v["value"], 1);
    let order: Vec<usize> = serde_json::from_value(v["witness"].clone()).unwrap();
    let star = make_family(&FamilySpec::star(4)).unwrap();
    assert_eq!(star.degree(order[0]), 4, "center first");
    assert_eq!(replay(&star, &order, &Policy::Gis, Problem::Is).unwrap().1.value(), Some(1));
}

#[test]
fn schema_and_key_order() {
    let out = run(&["worst", "--alg", "gvc", "--problem", "vc", "--family", "path", "--n", "4", "--witness"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let positions: Vec<usize> = ["\"subcommand\"", "\"input\"", "\"value\"", "\"witness\"", "\"stats\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    for key in ["nodes", "memo_hits", "ms"] {
        assert!(v["stats"][key].is_u64());
    }
    let v = json(&["solve", "--problem", "vc", "--family", "path", "--n", "4"]);
    assert!(v.get("witness").is_none());
}

#[test]
fn input_errors_exit_one() {
    let out = run(&["solve", "--problem", "is", "--graph", "missing.g6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.g6"));
    assert_eq!(run(&["solve", "--problem", "is", "--family", "star", "--n", "3", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--problem", "xx", "--family", "star", "--n", "3"]).status.code(), Some(1));
    assert_eq!(
        run(&["worst", "--alg", "nope", "--problem", "is", "--family", "star", "--n", "3"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["replay", "--alg", "gis", "--problem", "is", "--order", "0,0,1,2", "--family", "star", "--n", "3"])
            .status
            .code(),
        Some(1)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"elements":["a"],"forbidden":[["z"]]}"#);
    assert_eq!(run(&["mos", "solve", "--instance", &bad]).status.code(), Some(1));
}

#[test]
fn resource_limits_exit_two() {
    let out = run(&["solve", "--problem", "ds", "--family", "complete-bipartite", "--n", "3", "--node-budget", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    assert_eq!(run(&["solve", "--problem", "is", "--family", "path", "--n", "20"]).status.code(), Some(2));
}

#[test]
fn values_match_library_calls() {
    let dir = tempfile::tempdir().unwrap();
    for g in graphs_up_to(4).unwrap().iter().filter(|g| g.order() > 0) {
        let file = write(dir.path(), "g.g6", &encode_graph6(g).unwrap());
        for p in [Problem::Is, Problem::Vc, Problem::Ds] {
            let v = json(&["solve", "--problem", &p.to_string(), "--graph", &file]);
            assert_eq!(v["value"], serde_json::to_value(solve_value(g, p).unwrap().value).unwrap());
        }
        let v = json(&["worst", "--alg", "is-star-bar", "--problem", "vc", "--graph", &file]);
        let lib = policy_worst_case(g, Problem::Vc, &"is-star-bar".parse().unwrap()).unwrap().value;
        assert_eq!(v["value"], serde_json::to_value(lib).unwrap());
        let v = json(&["report", "--graph", &file]);
        assert_eq!(v["value"], serde_json::to_value(theorem_report(g).unwrap()).unwrap());
    }
}

#[test]
fn edge_list_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "p.txt", "4 3\n0 1\n1 2\n2 3\n");
    let v = json(&["solve", "--problem", "vc", "--graph", &file, "--format", "edges"]);
    let path = make_family(&FamilySpec::path(4)).unwrap();
    assert_eq!(v["value"], serde_json::to_value(solve_value(&path, Problem::Vc).unwrap().value).unwrap());
}

#[test]
fn cache_does_not_change_values() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache = cache.to_str().unwrap();
    for n in ["3", "4", "5"] {
        for (sub, extra) in [("solve", vec!["--problem", "ds"]), ("worst", vec!["--alg", "is-star", "--problem", "is"])]
        {
            let mut args = vec![sub, "--family", "star", "--n", n];
            args.extend(extra);
            let plain = json(&args)["value"].clone();
            args.extend(["--cache", cache]);
            assert_eq!(json(&args)["value"], plain);
            assert_eq!(json(&args)["value"], plain);
        }
    }
    assert!(std::fs::read_to_string(cache).unwrap().lines().count() >= 6);
}

#[test]
fn jobs_do_not_change_results() {
    let base = ["compare", "--alg-a", "almost-gis", "--alg-b", "gis", "--bijective", "--family", "agi", "--n", "2"];
    let one = json(&[&base[..], &["--jobs", "1"]].concat());
    let four = json(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one["value"], four["value"]);
    assert_eq!(one["value"]["bijective"]["dominance"], true);
    assert_eq!(one["value"]["bijective"]["orderings_total"], 5040);
}

#[test]
fn set_system_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "ss.json", r#"{"elements":["a","b","c"],"forbidden":[["a","b"]]}"#);
    assert_eq!(json(&["mos", "solve", "--instance", &file])["value"], 2);
    assert_eq!(json(&["mos", "solve", "--instance", &file, "--conservative"])["value"], 2);
    let v = json(&["mos", "greedy", "--instance", &file, "--witness"]);
    assert_eq!(v["value"], 2);
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
    let v = json(&["mos", "stats", "--instance", &file]);
    assert_eq!(v["value"]["isolated_count"], 1);
    assert_eq!(v["value"]["s_size"], 2);
}

#[test]
fn remaining_subcommands() {
    let v = json(&["freckle", "--family", "complete", "--n", "4"]);
    assert_eq!(v["value"]["is_freckle"], true);
    let v = json(&["reduce", "--kind", "mmis-to-ois", "--bound", "1", "--family", "path", "--n", "3", "--check"]);
    assert_eq!(v["value"]["check"]["source_holds"], v["value"]["check"]["target_holds"]);
    let v = json(&["matching", "--family", "path", "--n", "4"]);
    assert_eq!(v["value"]["online"], 1);
    let v = json(&["replay", "--alg", "gis", "--problem", "is", "--order", "1,0,2,3", "--family", "star", "--n", "3"]);
    assert_eq!(v["value"], 3);
    let v = json(&["worst", "--alg", "gf", "--problem", "forest", "--family", "forest-gadget", "--n", "4", "--k", "1"]);
    assert_eq!(v["value"], 3);
    let out = run(&["solve", "--problem", "is", "--family", "star", "--n", "4", "--human"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("value: 3"));
}
