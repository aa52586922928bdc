use std::process::{Command, Output};

use serde_json::Value;

fn cdlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdlat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn lattice_json(spec: &str) -> Value {
    let out = cdlat(&["cd", spec, "--json", "-"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).expect("valid JSON")
}

#[test]
fn quaternion_lattice_is_quasi_antichain() {
    let v = lattice_json("dic:2");
    assert_eq!(v["m_star"], 16);
    assert_eq!(v["shape"]["tag"], "quasi_antichain");
    assert_eq!(v["shape"]["param"], 3);
    assert_eq!(v["members"].as_array().unwrap().len(), 5);
}

#[test]
fn abelian_group_is_its_own_lattice() {
    let v = lattice_json("ab:2,2");
    assert_eq!(v["m_star"], 16);
    assert_eq!(v["shape"]["tag"], "chain");
    assert_eq!(v["shape"]["param"], 0);
}

#[test]
fn extraspecial_32_has_67_members() {
    let v = lattice_json("xsp:2,5,minus");
    assert_eq!(v["members"].as_array().unwrap().len(), 67);
    assert_eq!(v["shape"]["tag"], "general");
    assert_eq!(v["shape"]["param"], Value::Null);
}

#[test]
fn json_schema() {
    let v = lattice_json("dic:3");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["spec", "group_order", "center_order", "m_star", "shape", "members", "hasse", "minimum", "maximum"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    let member = &v["members"][0];
    for k in ["id", "order", "measure", "normal", "abelian"] {
        assert!(member.get(k).is_some(), "member missing {k}");
    }
    assert!(member.get("elements").is_none());
    assert_eq!(v["spec"], "dic:3");
    assert_eq!(v["group_order"], 12);
    assert_eq!(v["m_star"], 36);
}

#[test]
fn elements_flag_lists_members() {
    let out = cdlat(&["cd", "dic:3", "--json", "-", "--elements"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["members"][0]["elements"].as_array().unwrap().len(), 6);
}

#[test]
fn dot_and_json_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("q8.dot");
    let json = dir.path().join("q8.json");
    let out = cdlat(&["cd", "dic:2", "--dot", dot.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("quasi-antichain of width 3"));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph cd {"));
    assert!(text.contains("rankdir=BT"));
    assert_eq!(text.matches("->").count(), 6);
    assert!(text.contains("[label=\"2/16\"]"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["hasse"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_dicyclic_suite() {
    let out = cdlat(&["verify", "dic", "--max-n", "12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 12);
    assert!(text.contains("12 reports: 12 pass, 0 fail, 0 not applicable"));
}

#[test]
fn verify_json_reports() {
    let out = cdlat(&["verify", "coprime", "--json", "-"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert!(reports.iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn build_reports_invariants() {
    let out = cdlat(&["build", "heis:3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["order"], 27);
    assert_eq!(v["center_order"], 3);
    assert_eq!(v["nilpotency_class"], 2);
}

#[test]
fn measure_table_marks_members() {
    let out = cdlat(&["measure-table", "dic:2", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows.iter().filter(|r| r["member"] == true).count(), 5);
}

#[test]
fn parse_error_exits_with_2() {
    let out = cdlat(&["cd", "dic:x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_rejected() {
    let out = cdlat(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn order_limit_is_enforced() {
    let out = cdlat(&["--max-order", "100", "cd", "pres:sg_729_99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn environment_sets_budget() {
    let out = Command::new(env!("CARGO_BIN_EXE_cdlat"))
        .args(["cd", "dic:4"])
        .env("CDL_MAX_SUBGROUPS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn sequential_and_parallel_agree() {
    let a = cdlat(&["cd", "gdic:2,2,4", "--json", "-", "--elements"]);
    let b = cdlat(&["--sequential", "cd", "gdic:2,2,4", "--json", "-", "--elements"]);
    assert_eq!(a.stdout, b.stdout);
}
