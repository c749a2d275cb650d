use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sqcolor(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqcolor"))
        .args(args)
        .current_dir(dir)
        .env_remove("SQCOLOR_WORKERS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const K33: &str = r#"{"n":6,"edges":[[0,3],[0,4],[0,5],[1,3],[1,4],[1,5],[2,3],[2,4],[2,5]]}"#;

#[test]
fn construct_writes_graphs() {
    let dir = TempDir::new().unwrap();
    let out = sqcolor(dir.path(), &["construct", "--n", "3", "--rounds", "1", "--out", "g.json", "--dot", "g.dot"]);
    assert_eq!(code(&out), 0);
    let g = json(&dir.path().join("g.json"));
    assert_eq!(g["n"], 42);
    assert_eq!(g["labels"].as_array().unwrap().len(), 42);
    assert!(fs::read_to_string(dir.path().join("g.dot")).unwrap().starts_with("graph G {"));

    let out = sqcolor(dir.path(), &["construct", "--n", "3", "--rounds", "0", "--out", "h.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&dir.path().join("h.json"))["n"], 18);
}

#[test]
fn construct_rejects_composite_order() {
    let dir = TempDir::new().unwrap();
    let out = sqcolor(dir.path(), &["construct", "--n", "4", "--rounds", "1", "--manifest", "m.json"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("n must be prime"));
    let manifest = json(&dir.path().join("m.json"));
    assert_eq!(manifest["exit_code"], 3);
    assert!(manifest["error"].as_str().unwrap().contains("n must be prime"));
}

#[test]
fn verify_writes_certificates() {
    let dir = TempDir::new().unwrap();
    let out = sqcolor(dir.path(), &["verify", "--n", "3", "--rounds", "1", "--claims", "all", "--out-dir", "certs"]);
    assert_eq!(code(&out), 0);
    let ind = json(&dir.path().join("certs/lemma-independent.json"));
    assert_eq!(ind["status"], "pass");
    assert_eq!(ind["stats"]["parts"], 14);
    assert_eq!(ind["inputs"]["n"], 3);
    let main = json(&dir.path().join("certs/thm-main-bipartite.json"));
    assert_eq!(main["status"], "pass");
    assert_eq!(main["stats"]["parts"], 9);

    let out = sqcolor(dir.path(), &["verify", "--n", "3", "--rounds", "2", "--out-dir", "t2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&dir.path().join("t2/lemma-independent.json"))["stats"]["parts"], 34);
    assert_eq!(json(&dir.path().join("t2/thm-main-bipartite.json"))["stats"]["parts"], 27);
}

#[test]
fn verify_flags_a_mutated_graph() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&sqcolor(dir.path(), &["construct", "--n", "3", "--out", "g.json"])), 0);
    let mut g = json(&dir.path().join("g.json"));
    g["edges"].as_array_mut().unwrap().remove(0);
    fs::write(dir.path().join("bad.json"), g.to_string()).unwrap();
    let out = sqcolor(dir.path(), &["verify", "--graph", "bad.json", "--out-dir", "certs", "--manifest", "m.json"]);
    assert_eq!(code(&out), 1);
    let failing: Vec<Value> = fs::read_dir(dir.path().join("certs"))
        .unwrap()
        .map(|e| json(&e.unwrap().path()))
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| !c["witness"].as_array().unwrap().is_empty()));
    let manifest = json(&dir.path().join("m.json"));
    assert_eq!(manifest["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn verify_output_is_independent_of_workers() {
    let dir = TempDir::new().unwrap();
    let one = sqcolor(dir.path(), &["verify", "--n", "5", "--workers", "1"]);
    let four = sqcolor(dir.path(), &["verify", "--n", "5", "--workers", "4"]);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn bounds_exit_codes() {
    let dir = TempDir::new().unwrap();
    let out = sqcolor(dir.path(), &["bounds", "--n", "7", "--rounds", "1", "--out", "b.json"]);
    assert_eq!(code(&out), 0);
    let b = json(&dir.path().join("b.json"));
    assert_eq!(b["gap_lower"], 17);
    assert_eq!(b["certified"], true);

    let out = sqcolor(dir.path(), &["bounds", "--n", "3", "--rounds", "2", "--out", "b2.json"]);
    assert_eq!(code(&out), 0);
    let b2 = json(&dir.path().join("b2.json"));
    assert_eq!((b2["chi_upper"].clone(), b2["list_lower"].clone()), (34.into(), 36.into()));

    assert_eq!(code(&sqcolor(dir.path(), &["bounds", "--n", "3", "--rounds", "1"])), 1);
}

#[test]
fn solve_exit_codes() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("c4.json"), r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}"#).unwrap();
    fs::write(dir.path().join("k3.json"), r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
    fs::write(dir.path().join("two.json"), r#"{"lists":{"0":[1,2],"1":[1,2],"2":[1,2],"3":[1,2]}}"#).unwrap();
    fs::write(dir.path().join("three.json"), r#"{"lists":{"0":[1,2],"1":[1,2],"2":[1,2]}}"#).unwrap();

    let out = sqcolor(dir.path(), &["solve", "--graph", "c4.json", "--lists", "two.json", "--out", "s.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&dir.path().join("s.json"))["coloring"]["colors"], serde_json::json!([1, 2, 1, 2]));
    assert_eq!(code(&sqcolor(dir.path(), &["solve", "--graph", "k3.json", "--lists", "three.json"])), 1);
    assert_eq!(code(&sqcolor(dir.path(), &["solve", "--graph", "k3.json", "--lists", "two.json"])), 3);
}

#[test]
fn oracle_and_badsearch_on_k33() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("k33.json"), K33).unwrap();
    let out = sqcolor(dir.path(), &["oracle", "--graph", "k33.json", "--max-k", "3", "--out", "o.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&dir.path().join("o.json"))["list_chromatic"], 3);

    let out = sqcolor(dir.path(), &["oracle", "--graph", "k33.json", "--max-k", "2"]);
    assert_eq!(code(&out), 2);

    let out = sqcolor(dir.path(), &["badsearch", "--graph", "k33.json", "--k", "2", "--palette", "3", "--out", "bad.json"]);
    assert_eq!(code(&out), 0);
    let bad = json(&dir.path().join("bad.json"));
    assert_eq!(bad["result"], "found");
    assert_eq!(bad["assignment"]["lists"].as_object().unwrap().len(), 6);
}

#[test]
fn oracle_refuses_large_graphs() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&sqcolor(dir.path(), &["construct", "--n", "3", "--out", "g.json"])), 0);
    assert_eq!(code(&sqcolor(dir.path(), &["oracle", "--graph", "g.json"])), 3);
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = sqcolor(dir.path(), &["construct", "--n", "5", "--rounds", "1"]);
    let b = sqcolor(dir.path(), &["construct", "--n", "5", "--rounds", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let c = sqcolor(dir.path(), &["bounds", "--n", "5", "--rounds", "1"]);
    let d = sqcolor(dir.path(), &["bounds", "--n", "5", "--rounds", "1"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn export_dot_reads_plain_and_labeled_graphs() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("p.json"), r#"{"n":2,"edges":[[0,1]]}"#).unwrap();
    let out = sqcolor(dir.path(), &["export-dot", "--graph", "p.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "graph G {\n  0;\n  1;\n  0 -- 1;\n}\n");

    assert_eq!(code(&sqcolor(dir.path(), &["construct", "--n", "3", "--rounds", "0", "--out", "h.json"])), 0);
    let out = sqcolor(dir.path(), &["export-dot", "--graph", "h.json"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("label=\"w_{1,1}\""));
}

#[test]
fn usage_errors_exit_three() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&sqcolor(dir.path(), &["frobnicate"])), 3);
    assert_eq!(code(&sqcolor(dir.path(), &["verify", "--n", "3", "--claims", "nope"])), 3);
    assert_eq!(code(&sqcolor(dir.path(), &["verify"])), 3);
    assert_eq!(code(&sqcolor(dir.path(), &["--help"])), 0);
}
