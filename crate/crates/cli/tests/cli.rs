use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "tests", "data", "obstructions", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homorder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    let n31 = data("rg_n31.st");
    let n42 = data("rg_n42.st");
    let c5 = data("rg_c5.st");
    let k1 = data("rg_k1.st");
    let arc = data("d_arc.st");
    let cases: &[(&[&str], i32)] = &[
        (&["compare", &n31, &n42], 0),
        (&["compare", &k1, &k1], 0),
        (&["compare", &n42, &c5], 0),
        (&["compare", &data("rg_e2.st"), &n31], 1),
        (&["compare", &n31, "/nonexistent.st"], 2),
        (&["compare", &k1, &arc, "--strength", "sideways"], 2),
        (&["classify", &n42], 0),
        (&["classify", "--class", "reflexive-graphs", &arc], 2),
        (&["family", "parity-tournament", "4"], 2),
        (&["family", "parity-tournament", "5"], 0),
        (&["family", "subcomplete-graph", "4", "3"], 2),
        (&["family", "no-such-family", "3"], 2),
        (&["verify", "partial-order", "--bound", "3"], 0),
        (&["verify", "PO", "--bound", "2"], 0),
        (&["verify", "no-such-check"], 2),
        (&["antichain", &n42, &c5], 1),
        (&["antichain", &k1], 0),
        (&["enumerate", "3"], 2),
        (&["images", &n31], 0),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "{args:?}");
    }
}

#[test]
fn compare_reports_direction() {
    let out = stdout(&["compare", &data("rg_n31.st"), &data("rg_n42.st")]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("A < B"));
    assert!(lines.next().unwrap().starts_with("witness B -> A:"));
    let out = stdout(&["compare", &data("rg_n42.st"), &data("rg_n31.st")]);
    assert!(out.starts_with("B < A\n"));
    let out = run(&["compare", "--strength", "strong", &data("rg_e2.st"), &data("rg_n31.st")]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "incomparable");
}

#[test]
fn family_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (args, n) in [
        (&["family", "subcomplete-graph", "6", "2"][..], 6),
        (&["family", "parity-tournament", "7"][..], 7),
        (&["family", "complete-digraph", "3", "--model", "irreflexive"][..], 3),
    ] {
        let text = stdout(args);
        let path = dir.path().join(format!("{}.st", args[1]));
        std::fs::write(&path, &text).unwrap();
        let p = path.to_str().unwrap();
        assert!(stdout(&["compare", p, p]).starts_with("A = B (isomorphic)"));
        let images: Value = serde_json::from_str(&stdout(&["images", p, "--format", "record"])).unwrap();
        let structures = images["structures"].as_array().unwrap();
        assert!(structures.iter().any(|s| s["vertices"] == n));
        assert!(structures.iter().all(|s| s["vertices"].as_u64().unwrap() <= n as u64));
    }
}

#[test]
fn classify_records() {
    let v: Value = serde_json::from_str(&stdout(&["classify", "--format", "record", &data("rg_n31.st")])).unwrap();
    assert_eq!(v["outcome"], "wqo");
    let v: Value = serde_json::from_str(&stdout(&[
        "classify",
        "--format",
        "record",
        "--witness",
        "2",
        &data("rt_t3.st"),
    ]))
    .unwrap();
    assert_eq!(v["outcome"], "not-wqo");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
    let v: Value = serde_json::from_str(&stdout(&[
        "classify",
        "--strength",
        "strong",
        "--format",
        "record",
        &data("rg_n41.st"),
    ]))
    .unwrap();
    assert_eq!(v["outcome"], "open");
    assert!(v["witness_family"].is_null());
}

#[test]
fn enumerate_counts() {
    let count = |args: &[&str]| {
        let v: Value = serde_json::from_str(&stdout(args)).unwrap();
        v["count"].as_u64().unwrap()
    };
    assert_eq!(count(&["enumerate", "--shape", "graph", "--model", "irreflexive", "4", "--format", "record"]), 11);
    assert_eq!(count(&["enumerate", "--shape", "digraph", "3", "--format", "record"]), 104);
    assert_eq!(count(&["enumerate", "--class", "reflexive-tournaments", "4", "--format", "record"]), 4);
}

#[test]
fn dot_output() {
    let out = stdout(&["family", "complete-graph", "3", "--dot"]);
    assert!(out.contains("graph"));
    assert!(out.contains("--"));
}
