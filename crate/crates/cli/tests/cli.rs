// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/toy")
}

fn topicnet(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_topicnet"))
        .args(args)
        .env("RUST_BACKTRACE", "0")
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "topicnet {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn induce_compare_classify() {
    let dir = tempfile::tempdir().unwrap();
    let nets = dir.path().join("nets");
    for c in ["toy", "toy-b", "toy-shifted", "toy-shifted-b"] {
        topicnet(&[
            "induce",
            s(&fixtures().join(format!("{c}.json"))),
            "--out",
            s(&nets),
            "--dot",
        ]);
    }
    let wtn = std::fs::read_to_string(nets.join("toy.wtn.json")).unwrap();
    let wtn = topicnet_core::TopicNetwork64::from_json(&wtn).unwrap();
    assert_eq!(wtn.arc_weight("510", "520"), Some(4.0));
    assert!(nets.join("toy-b.atn.dot").exists());

    let matrix = dir.path().join("ttn.csv");
    topicnet(&[
        "similarity",
        "--networks",
        s(&nets),
        "--mode",
        "ttn",
        "--measure",
        "cosAV_w_phi1",
        "--out",
        s(&matrix),
    ]);
    let gold = dir.path().join("gold.tsv");
    std::fs::write(
        &gold,
        "toy\ts\ntoy-b\ts\ntoy-shifted\tt\ntoy-shifted-b\tt\n",
    )
    .unwrap();
    let out = topicnet(&[
        "classify",
        "--matrix",
        s(&matrix),
        "--gold",
        s(&gold),
        "--mode",
        "opt",
        "--rounds",
        "5",
    ]);
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["report"]["macro_f"], 1.0);

    let out = topicnet(&[
        "baseline",
        "--kind",
        "b1",
        "--gold",
        s(&gold),
        "--iterations",
        "2000",
    ]);
    let d: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(d["mean"].as_f64().unwrap() > 0.3);

    let out = topicnet(&[
        "powerfit",
        s(&nets.join("toy.ttn.json")),
        s(&nets.join("toy-b.ttn.json")),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("network,exponent"));
}

#[test]
fn same_author_communities_overlap_fully() {
    let out = topicnet(&[
        "jaccard",
        s(&fixtures().join("toy.json")),
        s(&fixtures().join("toy-b.json")),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("toy,toy-b,1\n"), "{text}");
}

#[test]
fn mixed_modes_need_a_filter() {
    let dir = tempfile::tempdir().unwrap();
    let nets = dir.path().join("nets");
    topicnet(&["induce", s(&fixtures().join("toy.json")), "--out", s(&nets)]);
    topicnet(&[
        "induce",
        s(&fixtures().join("toy-b.json")),
        "--out",
        s(&nets),
    ]);
    let out = Command::new(env!("CARGO_BIN_EXE_topicnet"))
        .args(["similarity", "--networks", s(&nets), "--measure", "ges"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--mode"));
}

#[test]
fn synth_then_ingest() {
    let dir = tempfile::tempdir().unwrap();
    topicnet(&[
        "synth",
        "--out",
        s(dir.path()),
        "--genres",
        "2",
        "--corpora-per-genre",
        "2",
        "--texts",
        "10",
    ]);
    let gold = std::fs::read_to_string(dir.path().join("gold.tsv")).unwrap();
    assert_eq!(gold.lines().count(), 4);
    let out = topicnet(&["ingest", s(&dir.path().join("g1-c01.json"))]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["texts"], 10);
}

#[test]
fn run_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    for f in [
        "toy.json",
        "toy-b.json",
        "toy-shifted.json",
        "toy-shifted-b.json",
    ] {
        std::fs::copy(fixtures().join(f), dir.path().join(f)).unwrap();
    }
    let cfg = std::fs::read_to_string(fixtures().join("run.toml")).unwrap();
    std::fs::write(dir.path().join("run.toml"), cfg).unwrap();
    topicnet(&["run", s(&dir.path().join("run.toml"))]);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/report.json")).unwrap())
            .unwrap();
    assert_eq!(report["name"], "toy");
    assert!(dir.path().join("out/matrices/wtn.ges.csv").exists());
    assert!(dir.path().join("out/baselines/scores.csv").exists());
}

#[test]
fn lexicon_classification() {
    let dir = tempfile::tempdir().unwrap();
    topicnet(&[
        "induce",
        s(&fixtures().join("toy.json")),
        "--out",
        s(dir.path()),
        "--modes",
        "ttn",
        "--lexicon",
        s(&fixtures().join("lexicon.tsv")),
    ]);
    let ttn = std::fs::read_to_string(dir.path().join("toy.ttn.json")).unwrap();
    let ttn = topicnet_core::TopicNetwork64::from_json(&ttn).unwrap();
    assert!(ttn.vertex_weight("510").is_some());
    assert!(ttn.vertex_weight("530").is_some());
}
