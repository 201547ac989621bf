use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hyperdetect::fixture::{self, WORKED_CONFIGURATIONS};
use hyperdetect::{is_detected, ErrorConfiguration, Hypergraph};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperdetect"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn fixture_file(dir: &Path) -> PathBuf {
    let path = dir.join("fig1.json");
    let out = run(&["fixture", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    path
}

const TWO_VERTEX: &str =
    r#"{"modulus":2,"inputs":[0],"outputs":[1],"edges":[[0,1]],"implicit_input_adjacency":false}"#;

#[test]
fn check_worked_configuration_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let graph = fixture_file(dir.path());
    let out = run(&["check", "--graph", graph.to_str().unwrap(), "--errors", "1,2,3,4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("detected"));
}

#[test]
fn check_two_vertex_graph_reports_witness() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "two_vertex.json", TWO_VERTEX);
    let out = run(&[
        "check",
        "--graph",
        graph.to_str().unwrap(),
        "--errors",
        "1",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["detected"], false);
    assert_eq!(v["witness"], serde_json::json!({"0": 1}));
}

#[test]
fn cost_reports_advantage() {
    let dir = tempfile::tempdir().unwrap();
    let graph = fixture_file(dir.path());
    let out = run(&["cost", "--graph", graph.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["advantage"], 15);
    assert_eq!(v["total_hyper"], 60);
    assert_eq!(v["total_clique"], 75);
}

#[test]
fn malformed_graph_is_a_one_line_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let bad = [
        r#"{"modulus":2,"inputs":[0],"outputs":[0,1],"edges":[]}"#,
        r#"{"modulus":2,"inputs":[0],"outputs":[1,2],"edges":[[1,2],[2,1]]}"#,
        r#"{"modulus":2,"inputs":[0],"outputs":[1],"edges":[[1,5]]}"#,
        "not json",
    ];
    for (i, body) in bad.iter().enumerate() {
        let graph = write(dir.path(), &format!("bad{i}.json"), body);
        let out = run(&["radius", "--graph", graph.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{body}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert_eq!(stderr.trim_end().lines().count(), 1, "{stderr}");
        assert!(stderr.starts_with("error: "));
    }
}

#[test]
fn non_output_error_vertex_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let graph = fixture_file(dir.path());
    let out = run(&["check", "--graph", graph.to_str().unwrap(), "--errors", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["check", "--graph", graph.to_str().unwrap(), "--errors", "1,x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let graph = fixture_file(dir.path());
    let g = graph.to_str().unwrap();
    let invocations: [&[&str]; 5] = [
        &["enumerate", "--graph", g, "--size", "5", "--output", "json"],
        &["check", "--graph", g, "--errors", "1,3,5,7", "--output", "json"],
        &["radius", "--graph", g, "--output", "json"],
        &["cost", "--graph", g, "--output", "json"],
        &["enumerate", "--graph", g, "--size", "3", "--modulus", "3", "--output", "json"],
    ];
    for args in invocations {
        let first = run(args);
        let second = run(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert!(!first.stdout.is_empty());
    }
}

#[test]
fn enumerate_report_shape() {
    let dir = tempfile::tempdir().unwrap();
    let graph = fixture_file(dir.path());
    let out = run(&[
        "enumerate",
        "--graph",
        graph.to_str().unwrap(),
        "--size",
        "5",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for key in ["graph", "modulus", "size", "total", "detected", "undetected"] {
        assert!(keys.contains(&key), "{key}");
    }
    assert_eq!(v["total"], 3003);
    assert_eq!(
        v["graph"],
        serde_json::from_str::<Value>(fixture::FIFTEEN_VERTEX_JSON).unwrap()
    );
    let first = &v["undetected"][0];
    assert_eq!(first["config"], serde_json::json!([1, 2, 3, 4, 13]));
}

#[test]
fn fixture_output_reparses_and_detects_worked_configurations() {
    let out = run(&["fixture"]);
    assert_eq!(out.status.code(), Some(0));
    let g = Hypergraph::from_json(std::str::from_utf8(&out.stdout).unwrap().trim()).unwrap();
    for config in WORKED_CONFIGURATIONS {
        let e = ErrorConfiguration::new(&g, config).unwrap();
        assert!(is_detected(&g, &e, g.modulus()).unwrap().detected);
    }
}

#[test]
fn modulus_override_is_applied() {
    let dir = tempfile::tempdir().unwrap();
    let graph = fixture_file(dir.path());
    let out = run(&[
        "check",
        "--graph",
        graph.to_str().unwrap(),
        "--errors",
        "2,5,8,11",
        "--modulus",
        "5",
        "--output",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["modulus"], 5);
    let out = run(&["check", "--graph", graph.to_str().unwrap(), "--errors", "1", "--modulus", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn state_stabilizers_and_oracle_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let small = write(
        dir.path(),
        "tri.json",
        r#"{"modulus":2,"inputs":[0],"outputs":[1,2,3],"edges":[[0,1,2],[0,2,3],[0,1,3]]}"#,
    );
    let s = small.to_str().unwrap();

    let out = run(&["state", "--graph", s, "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 16);
    assert_eq!(v["truncated"], false);
    assert_eq!(v["amplitudes"].as_array().unwrap().len(), 16);

    let out = run(&["stabilizers", "--graph", s, "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["stabilizers"].as_array().unwrap().len(), 4);

    let out = run(&["oracle", "--graph", s, "--errors", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["oracle", "--graph", s, "--errors", ""]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["stabilizers", "--graph", s, "--modulus", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn state_dump_is_capped() {
    let out = run(&["fixture"]);
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "g.json", std::str::from_utf8(&out.stdout).unwrap());
    let out = run(&["state", "--graph", graph.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 1 << 16);
    assert_eq!(v["truncated"], true);
    assert_eq!(
        v["amplitudes"].as_array().unwrap().len(),
        hyperdetect::cli::STATE_DUMP_LIMIT
    );
}
