use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn maptool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maptool")).args(args).output().expect("maptool runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_solve_gap() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("gap.json");
    let report = dir.path().join("report.json");
    assert!(maptool(&["gen", "gap", "--k", "1", "-o", path(&inst)]).status.success());

    let out = maptool(&["solve", path(&inst), "--diagnostics", "--oracle", "--json", path(&report)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["lp_cost"], "3/1");
    assert_eq!(v["report"]["total_cost"], 4);
    assert_eq!(v["report"]["ratio_vs_lp"], "4/3");
    assert_eq!(v["report"]["opt_cost"], 4);
    assert!(v["report"]["diagnostics"]["x_prime_feasible"].as_bool().unwrap());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written, v);
}

#[test]
fn lp_with_exact_check() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("r.json");
    let gen = maptool(&["gen", "random", "--n", "8", "--extra-heavy", "6", "--seed", "3", "-o", path(&inst)]);
    assert!(gen.status.success());
    let out = maptool(&["lp", path(&inst), "--exact-check"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["objective"], v["enumerated_objective"]);
}

#[test]
fn oracle_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("b.json");
    assert!(maptool(&["gen", "baddfs", "--depth", "4", "-o", path(&inst)]).status.success());
    let out = maptool(&["oracle", path(&inst)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["opt_cost"], 5);

    let out = maptool(&["oracle", path(&inst), "--budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn invalid_instance_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("path.json");
    std::fs::write(&inst, r#"{"n": 3, "edges": [{"u": 0, "v": 1, "w": 1}, {"u": 1, "v": 2, "w": 1}]}"#).unwrap();
    let out = maptool(&["solve", path(&inst)]);
    assert_eq!(out.status.code(), Some(3));

    std::fs::write(&inst, r#"{"n": 2, "edges": [{"u": 0, "v": 0, "w": 1}]}"#).unwrap();
    assert_eq!(maptool(&["lp", path(&inst)]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(maptool(&["solve"]).status.code(), Some(1));
    assert_eq!(maptool(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(maptool(&["solve", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(maptool(&["gen", "baddfs", "--depth", "1", "-o", "/tmp/unused.json"]).status.code(), Some(1));
}

#[test]
fn experiment_writes_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"generator": "random", "sizes": [5, 6, 7], "count": 9, "seed": 4, "oracle": true}"#)
        .unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let json = dir.path().join(format!("out{run}.json"));
        let csv = dir.path().join(format!("out{run}.csv"));
        let out = maptool(&["experiment", path(&spec), "--json", path(&json), "--csv", path(&csv)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        outputs.push((std::fs::read(&json).unwrap(), std::fs::read(&csv).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let report: Value = serde_json::from_slice(&outputs[0].0).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 9);
    let csv = String::from_utf8(outputs[0].1.clone()).unwrap();
    assert_eq!(csv.lines().count(), 10);
}
