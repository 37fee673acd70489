//! End-to-end runs of the binary: exit codes, determinism of JSON payloads,
//! and file round-trips through the subcommands.

use std::path::PathBuf;
use std::process::{Command, Output};

fn revgate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revgate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("revgate-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn components_counts_weight_classes() {
    let out = revgate(&["components", "--kind", "g2", "--q", "2", "--n", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("5 components"), "{}", stdout(&out));
}

#[test]
fn components_json_is_deterministic_modulo_timing() {
    let args = ["components", "--kind", "g4", "--q", "3", "--n", "3", "--json"];
    let a: serde_json::Value = serde_json::from_str(&stdout(&revgate(&args))).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&revgate(&args))).unwrap();
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["inputs"], b["inputs"]);
    assert_eq!(a["result"]["count"], 11);
}

#[test]
fn verify_generation_pass_and_fail_exit_codes() {
    let out = revgate(&[
        "verify-generation",
        "--family",
        "p3",
        "--class",
        "alt",
        "--q",
        "2",
        "--n",
        "4",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS"));

    let out = revgate(&[
        "verify-generation",
        "--family",
        "p4",
        "--class",
        "altcons",
        "--q",
        "3",
        "--n",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("FAIL"));

    // a generator outside the class is an input error, not a FAIL
    let out = revgate(&[
        "verify-generation",
        "--family",
        "p1",
        "--class",
        "cons",
        "--q",
        "2",
        "--n",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = revgate(&["check-paper", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = revgate(&["decompose", "--target", "rot3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_finds_and_certifies() {
    let out = revgate(&[
        "decompose",
        "--target",
        "cycle:0001,0010,0100",
        "--base",
        "controlled:0:rot3",
        "--n",
        "4",
        "--algo",
        "mitm",
        "--max-depth",
        "6",
        "--json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["result"]["status"]["found"], true);
    assert_eq!(report["result"]["status"]["depth"], 6);
    assert_eq!(report["result"]["instance_count"], 8);

    let out = revgate(&[
        "decompose",
        "--target",
        "cycle:0001,0010,0100",
        "--base",
        "controlled:0:rot3",
        "--n",
        "4",
        "--algo",
        "bfs",
        "--max-depth",
        "5",
        "--json",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["result"]["status"]["found"], false);
    assert_eq!(report["result"]["status"]["exhausted_to_depth"], 5);
}

#[test]
fn decompose_writes_simulatable_circuits() {
    let path = tmp("fredkin_found.rg");
    let out = revgate(&[
        "decompose",
        "--target",
        "fredkin",
        "--base",
        "controlled:1:swap:0,1",
        "--base",
        "fredkin",
        "--n",
        "3",
        "--algo",
        "bfs",
        "--max-depth",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("revgate v1"));

    // the found circuit is the Fredkin gate itself: control 1 swaps wires 1,2
    let out = revgate(&[
        "simulate",
        "--circuit",
        path.to_str().unwrap(),
        "--input",
        "110",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "101");
}

#[test]
fn lift_adds_control_wires() {
    let path = tmp("one_fredkin.rg");
    std::fs::write(
        &path,
        "revgate v1\nalphabet 2\nwires 3\ngate f controlled 1 base 0 2 1 3\napply f 0,1,2\n",
    )
    .unwrap();
    let lifted = tmp("lifted.rg");
    let out = revgate(&[
        "lift",
        "--circuit",
        path.to_str().unwrap(),
        "--prefix",
        "1",
        "--out",
        lifted.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&lifted).unwrap();
    assert!(text.contains("wires 4"));
    assert!(text.contains("controlled 11"));

    // the lifted gate fires only when both controls are set
    let out = revgate(&["simulate", "--circuit", lifted.to_str().unwrap(), "--input", "1110"]);
    assert_eq!(stdout(&out).trim(), "1101");
    let out = revgate(&["simulate", "--circuit", lifted.to_str().unwrap(), "--input", "0110"]);
    assert_eq!(stdout(&out).trim(), "0110");
}

#[test]
fn synthesize_produces_verified_circuit_files() {
    let path = tmp("synth.rg");
    let out = revgate(&[
        "synthesize",
        "--target",
        "cycle:001,010,100",
        "--basis",
        "p3",
        "--q",
        "2",
        "--out",
        path.to_str().unwrap(),
        "--json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["result"]["verified"], true);
    assert!(path.exists());
}

#[test]
fn parity_seq_reports_span() {
    let out = revgate(&["parity-seq", "--gens", "fredkin", "--n", "4", "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["result"]["span_size"].as_u64().unwrap() <= 2);
}

#[test]
fn check_paper_quick_passes() {
    let out = revgate(&["check-paper", "--suite", "quick"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("overall: PASS"));
}
