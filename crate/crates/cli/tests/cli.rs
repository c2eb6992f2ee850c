//! End-to-end tests of the binary: output formats, exit codes, and
//! run-to-run determinism.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::Command;

fn curvkit() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curvkit"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(cmd: &mut Command) -> (i32, String, String) {
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).expect("create temp file");
    f.write_all(contents.as_bytes()).expect("write temp file");
    path
}

#[test]
fn compute_reports_the_reference_tree_exactly() {
    let (code, stdout, _) = run(curvkit()
        .arg("compute")
        .arg(fixture("tree10.edges"))
        .args(["--alpha", "1/2"]));
    assert_eq!(code, 0, "compute succeeds on the reference tree");
    assert!(
        stdout.starts_with("i\tj\talpha\torc\tlly\tmethod\n"),
        "edge table carries the documented header"
    );
    for expected in [
        "0\t7\t1/2\t1/2 (0.5)\t1 (1)\tclosed-form",
        "1\t4\t1/2\t-1/6 (-0.166667)\t-1/3 (-0.333333)\tclosed-form",
        "1\t7\t1/2\t0 (0)\t0 (0)\tclosed-form",
        "4\t5\t1/2\t-1/3 (-0.333333)\t-2/3 (-0.666667)\tclosed-form",
        "5\t9\t1/2\t1/3 (0.333333)\t2/3 (0.666667)\tclosed-form",
        "3\t-10/9 (-1.11111)\tclosed-form",
        "7\t0 (0)\tclosed-form",
        "9\t10/9 (1.11111)\tclosed-form",
    ] {
        assert!(
            stdout.lines().any(|l| l == expected),
            "expected row `{expected}` in:\n{stdout}"
        );
    }
}

#[test]
fn compute_json_is_well_formed_and_exact() {
    let (code, stdout, _) = run(curvkit()
        .arg("compute")
        .arg(fixture("tree10.edges"))
        .args(["--alpha", "0,1/2", "--format", "json"]));
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).expect("output parses as JSON");
    assert_eq!(doc["n"], 10);
    assert_eq!(doc["m"], 9);
    assert_eq!(doc["is_tree"], true);
    assert_eq!(doc["arithmetic"], "exact");
    assert_eq!(doc["alphas"], serde_json::json!(["0", "1/2"]));
    let edges = doc["edges"].as_array().expect("edges array");
    assert_eq!(edges.len(), 18, "nine edges at two laziness values");
    let first = &edges[0];
    assert_eq!(first["i"], 0);
    assert_eq!(first["j"], 7);
    assert_eq!(first["alpha"], "0");
    assert_eq!(first["orc"]["exact"], "0");
    assert_eq!(first["lly"]["exact"], "1");
    assert_eq!(doc["nodes"].as_array().expect("nodes array").len(), 10);
    assert_eq!(doc["node_system"]["solvable"], true);
    assert_eq!(doc["node_system"]["residual"]["exact"], "0");
}

fn parse_dot(text: &str) -> (Vec<u64>, Vec<(u64, u64)>) {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        let Some(rest) = line.strip_prefix('"') else {
            continue;
        };
        let (first, rest) = rest.split_once('"').expect("closing quote");
        let rest = rest.trim_start();
        if let Some(tail) = rest.strip_prefix("--") {
            let tail = tail.trim_start().strip_prefix('"').expect("second node");
            let (second, attrs) = tail.split_once('"').expect("closing quote");
            assert!(
                attrs.contains("orc=") && attrs.contains("lly="),
                "edge label names both curvatures: {line}"
            );
            edges.push((first.parse().unwrap(), second.parse().unwrap()));
        } else if rest.starts_with('[') {
            assert!(rest.contains("ks="), "node label names the node curvature");
            nodes.push(first.parse().unwrap());
        }
    }
    (nodes, edges)
}

#[test]
fn dot_output_round_trips_through_the_parser() {
    let (code, dot, _) = run(curvkit()
        .arg("compute")
        .arg(fixture("tree10.edges"))
        .args(["--alpha", "1/2", "--format", "dot"]));
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph curvature {\n") && dot.trim_end().ends_with('}'));

    let (nodes, edges) = parse_dot(&dot);
    assert_eq!(nodes, (0..10).collect::<Vec<u64>>());
    assert_eq!(edges.len(), 9);

    // Rebuild an edge list from the parsed drawing and confirm the binary
    // reproduces the original report byte for byte.
    let dir = tempfile::tempdir().unwrap();
    let rebuilt = write_temp(
        &dir,
        "rebuilt.edges",
        &edges
            .iter()
            .map(|(u, v)| format!("{u} {v}\n"))
            .collect::<String>(),
    );
    let (_, original, _) = run(curvkit()
        .arg("compute")
        .arg(fixture("tree10.edges"))
        .args(["--alpha", "1/2"]));
    let (code, reparsed, _) = run(curvkit().arg("compute").arg(&rebuilt).args(["--alpha", "1/2"]));
    assert_eq!(code, 0);
    assert_eq!(reparsed, original, "round-tripped graph yields the same report");
}

#[test]
fn parse_and_graph_failures_use_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_temp(&dir, "empty.edges", "");
    let (code, _, stderr) = run(curvkit().arg("compute").arg(&empty));
    assert_eq!(code, 2, "empty input is a parse error: {stderr}");

    let garbled = write_temp(&dir, "garbled.edges", "0 one\n");
    let (code, _, _) = run(curvkit().arg("compute").arg(&garbled));
    assert_eq!(code, 2, "unreadable node id is a parse error");

    let loopy = write_temp(&dir, "loop.edges", "0 0\n");
    let (code, _, _) = run(curvkit().arg("compute").arg(&loopy));
    assert_eq!(code, 3, "self-loop violates a graph invariant");

    let split = write_temp(&dir, "split.edges", "0 1\n2 3\n");
    let (code, _, _) = run(curvkit().arg("compute").arg(&split));
    assert_eq!(code, 3, "disconnected input violates a graph invariant");
}

#[test]
fn the_size_bound_is_enforced_by_flag_and_environment() {
    let tree = fixture("tree10.edges");
    let (code, _, _) = run(curvkit().arg("compute").arg(&tree).args(["--max-n", "5"]));
    assert_eq!(code, 4, "flag bound rejects the ten-node tree");

    let (code, _, _) = run(curvkit()
        .arg("compute")
        .arg(&tree)
        .env("CURVKIT_MAX_N", "5"));
    assert_eq!(code, 4, "environment bound rejects the ten-node tree");

    let (code, _, _) = run(curvkit()
        .arg("compute")
        .arg(&tree)
        .env("CURVKIT_MAX_N", "5")
        .args(["--max-n", "100"]));
    assert_eq!(code, 0, "explicit flag overrides the environment");

    let (code, _, _) = run(curvkit()
        .arg("compute")
        .arg(&tree)
        .env("CURVKIT_MAX_N", "not-a-number"));
    assert_eq!(code, 2, "unreadable environment bound is a parse error");
}

#[test]
fn identical_runs_are_byte_identical() {
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let (code, stdout, _) = run(curvkit()
            .arg("compute")
            .arg(fixture("tree10.edges"))
            .args(["--alpha", "0,1/4,1/2", "--all-pairs", "--format", "json"]));
        assert_eq!(code, 0);
        outputs.push(stdout);
    }
    assert_eq!(outputs[0], outputs[1], "repeated runs agree byte for byte");

    let mut verifies = Vec::new();
    for threads in ["1", "8"] {
        let (code, stdout, _) = run(curvkit()
            .args(["verify", "--suite", "all", "--count", "10"])
            .args(["--seed", "42", "--threads", threads]));
        assert_eq!(code, 0);
        verifies.push(stdout);
    }
    assert_eq!(
        verifies[0], verifies[1],
        "verification output is independent of worker-thread count"
    );
}

#[test]
fn all_pairs_covers_non_adjacent_curvature() {
    let dir = tempfile::tempdir().unwrap();
    let path3 = write_temp(&dir, "p3.edges", "0 1\n1 2\n");
    let (code, stdout, _) = run(curvkit()
        .arg("compute")
        .arg(&path3)
        .args(["--alpha", "1/2", "--all-pairs"]));
    assert_eq!(code, 0);
    assert!(
        stdout
            .lines()
            .any(|l| l == "0\t2\t1/2\t1/2 (0.5)\t1 (1)\tclosed-form"),
        "the endpoint pair of a two-edge path appears with its exact values:\n{stdout}"
    );
    let edge_rows = stdout
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .count();
    assert_eq!(edge_rows, 3, "three node pairs on three nodes");
}

#[test]
fn oracle_backends_agree_on_a_dirac_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path3 = write_temp(&dir, "p3.edges", "0 1\n1 2\n");
    let mu = write_temp(&dir, "mu.json", "[1, 0, 0]\n");
    let nu = write_temp(&dir, "nu.json", "[0, 0, 1]\n");
    let (code, stdout, _) = run(curvkit()
        .arg("oracle")
        .arg(&path3)
        .arg("--mu")
        .arg(&mu)
        .arg("--nu")
        .arg(&nu)
        .arg("--emit-witness"));
    assert_eq!(code, 0);
    for method in ["tree", "mcf", "lp"] {
        assert!(
            stdout.lines().any(|l| l == format!("method={method} cost=2 (2)")),
            "point masses two hops apart cost exactly 2 via {method}:\n{stdout}"
        );
    }
    assert!(stdout.contains("agreement: exact"));
    let witnesses: Vec<&str> = stdout
        .lines()
        .filter_map(|l| l.strip_prefix("witness="))
        .collect();
    assert_eq!(witnesses.len(), 3, "one witness per backend");
    for w in witnesses {
        let parsed: serde_json::Value = serde_json::from_str(w).expect("witness parses as JSON");
        assert!(!parsed.as_array().expect("witness is an array").is_empty());
    }
}

#[test]
fn oracle_rejects_malformed_measures() {
    let dir = tempfile::tempdir().unwrap();
    let path3 = write_temp(&dir, "p3.edges", "0 1\n1 2\n");
    let nu = write_temp(&dir, "nu.json", "[0, 0, 1]\n");
    let cases = [
        ("negative.json", "[\"-1/2\", \"1\", \"1/2\"]", 6),
        ("unnormalized.json", "[1, 1, 0]", 6),
        ("short.json", "[1, 0]", 6),
        ("float.json", "[0.5, 0.5, 0]", 2),
        ("object.json", "{\"0\": 1}", 2),
        ("syntax.json", "[1, 0,", 2),
    ];
    for (name, contents, expected) in cases {
        let mu = write_temp(&dir, name, contents);
        let (code, _, stderr) = run(curvkit()
            .arg("oracle")
            .arg(&path3)
            .arg("--mu")
            .arg(&mu)
            .arg("--nu")
            .arg(&nu));
        assert_eq!(code, expected, "{name} exits {expected}: {stderr}");
    }
}

#[test]
fn verify_passes_on_the_reference_tree() {
    for suite in ["identities", "comparisons", "oracles", "bounds"] {
        let (code, stdout, _) = run(curvkit()
            .args(["verify", "--suite", suite, "--alpha", "1/2"])
            .arg(fixture("tree10.edges")));
        assert_eq!(code, 0, "suite {suite} passes on the reference tree");
        assert!(stdout.ends_with("result: PASS\n"));
        assert!(
            stdout.lines().any(|l| l.starts_with(&format!("{suite} input n=10"))),
            "per-instance line present for {suite}:\n{stdout}"
        );
    }
}

#[test]
fn laziness_values_parse_as_fractions_and_decimals() {
    let tree = fixture("tree10.edges");
    let (_, as_fraction, _) = run(curvkit().arg("compute").arg(&tree).args(["--alpha", "1/4"]));
    let (_, as_decimal, _) = run(curvkit().arg("compute").arg(&tree).args(["--alpha", "0.25"]));
    assert_eq!(as_fraction, as_decimal, "0.25 and 1/4 are the same exact value");

    let (_, listed, _) = run(curvkit()
        .arg("compute")
        .arg(&tree)
        .args(["--alpha", "1/2,0,1/2"]));
    let (_, sorted, _) = run(curvkit().arg("compute").arg(&tree).args(["--alpha", "0,1/2"]));
    assert_eq!(listed, sorted, "laziness grid is sorted and deduplicated");

    for bad in ["5/4", "1", "-1/2", "x"] {
        let (code, _, _) = run(curvkit().arg("compute").arg(&tree).args(["--alpha", bad]));
        assert_eq!(code, 2, "laziness `{bad}` is rejected as a parse error");
    }
}

#[test]
fn dot_format_requires_a_single_laziness_value() {
    let (code, _, stderr) = run(curvkit()
        .arg("compute")
        .arg(fixture("tree10.edges"))
        .args(["--alpha", "0,1/2", "--format", "dot"]));
    assert_eq!(code, 2, "dot output with two laziness values is rejected: {stderr}");
}

#[test]
fn float_mode_labels_its_arithmetic() {
    let (code, stdout, _) = run(curvkit()
        .arg("compute")
        .arg(fixture("tree10.edges"))
        .args(["--alpha", "1/2", "--float", "--format", "json"]));
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(doc["arithmetic"], "float");
    assert_eq!(doc["node_system"]["solvable"], true);
    let ks = doc["nodes"][0]["ks"]["decimal"].as_str().expect("decimal field");
    let value: f64 = ks.parse().expect("float renders digits");
    assert!((value - 10.0 / 9.0).abs() < 1e-5, "leaf value near 10/9, got {ks}");
}
