use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn natext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_natext"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("examples"))
        .env_remove("NATEXT_MAX_RADIUS")
        .env_remove("NATEXT_WORD_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn check_empty_on_shipped_fig1() {
    let out = natext(&["check-empty", "--spec", "fig1_z3.json", "--group", "BS(1,2)", "--max-radius", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["verdict"], "EmptyProven");
    assert!(v["result"]["radius"].as_u64().unwrap() <= 3);
    assert_eq!(v["result"]["core"].as_array().unwrap().len(), 6);
}

#[test]
fn grothendieck_from_presentation() {
    let v = json(&natext(&["grothendieck", "--pres", "gens: x y; rels: xy = yx;"]));
    assert_eq!(v["result"]["rank"], 2);
    assert_eq!(v["result"]["torsion"], serde_json::json!([]));
}

#[test]
fn run_all_is_byte_identical_and_succeeds() {
    let a = natext(&["examples", "run-all"]);
    let b = natext(&["examples", "run-all"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["examples"].as_array().unwrap().len(), 11);
}

#[test]
fn list_and_unknown_example() {
    let out = natext(&["examples", "list"]);
    assert!(String::from_utf8(out.stdout).unwrap().lines().count() >= 10);
    let out = natext(&["examples", "run", "no-such-example"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_override_and_validation() {
    let out = Command::new(env!("CARGO_BIN_EXE_natext"))
        .args(["fractions-test", "--group", "Z^2"])
        .env("NATEXT_MAX_RADIUS", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bounds"]["radius"], 2);
    assert_eq!(v["result"]["radii"].as_array().unwrap().len(), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_natext")).args(["examples", "list"]).env("NATEXT_WORD_BUDGET", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dot_core_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("core.dot");
    let report = dir.path().join("report.json");
    let out = natext(&[
        "extend",
        "--group",
        "BS(1,2)",
        "--spec",
        "fig1_z3.json",
        "--radius",
        "3",
        "--dot-core",
        dot.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("[label=\"") && !l.contains("->")).count(), 6);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["result"]["verdict"], "EmptyProven");
}

#[test]
fn entropy_compare_csv() {
    let out = natext(&["entropy", "--builtin", "golden-mean", "--compare", "--n-max", "20", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 20);
    for r in rows {
        let f: Vec<&str> = r.split(',').collect();
        assert_eq!(f[2], f[3]);
    }
}

#[test]
fn coset_via_finite_group_flags() {
    // η(a) = (12) has order 2, but a shifts colors by 1 mod 3
    let v = json(&natext(&["check-empty", "--builtin", "fig1", "--group", "symmetric:3", "--phi", "(12),(13)", "--max-radius", "2"]));
    assert_eq!(v["result"]["verdict"], "EmptyProven");
    assert_eq!(v["result"]["radius"], 1);
    let v = json(&natext(&["check-empty", "--builtin", "fig1", "--group", "cyclic:3", "--phi", "1,2", "--max-radius", "3"]));
    assert_eq!(v["result"]["verdict"], "ConsistentUpTo");
}
