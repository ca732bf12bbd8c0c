//! End-to-end tests of the `modcat` binary: output shapes, determinism,
//! JSON round-tripping, file I/O, and exit statuses.

use std::path::Path;
use std::process::{Command, Output};

use modcat_core::cochain::Cochain;
use modcat_core::group::{FiniteGroup, Subgroup};
use modcat_core::modcat::rank_table;

fn modcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modcat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = modcat(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    modcat(args).status.code().expect("exit code")
}

#[test]
fn klein_rank_table_csv() {
    let csv = stdout(&["ranks", "--builtin-group", "Z2xZ2", "--omega", "trivial", "--format", "csv"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 7, "header plus six rows");
    // The diagonal is 4 everywhere and the two order-4 classes meet the
    // unit class in a single simple.
    assert_eq!(lines[1], "\"(<e>, 1)\",4,2,2,2,1,1");
    assert_eq!(lines[5], "\"(<x,y>, 1)\",1,2,2,2,4,1");
    assert_eq!(lines[6], "\"(<x,y>, h2#1)\",1,2,2,2,1,4");
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["ranks", "--builtin-group", "D8", "--omega", "d8"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["modcats", "--builtin-group", "D8", "--omega", "trivial"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn json_rank_table_round_trips() {
    let text = stdout(&["ranks", "--builtin-group", "S3", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");

    let g = FiniteGroup::s3();
    let omega = Cochain::trivial(Subgroup::whole(g), 3);
    let table = rank_table(&omega).unwrap();
    let labels: Vec<String> = parsed["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(labels, table.labels());
    let entries: Vec<Vec<usize>> = parsed["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect())
        .collect();
    assert_eq!(entries, table.entries);
}

#[test]
fn modcats_counts_match_the_classification() {
    for (group, omega, expected) in [
        ("Z2xZ2", "trivial", 6),
        ("S3", "trivial", 4),
        ("D8", "trivial", 11),
        ("D8", "d8", 6),
    ] {
        let text = stdout(&["modcats", "--builtin-group", group, "--omega", omega, "--format", "json"]);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["count"].as_u64(), Some(expected), "{group} with omega = {omega}");
    }
}

#[test]
fn group_info_on_the_trivial_group() {
    let text = stdout(&["group-info", "--builtin-group", "trivial"]);
    assert!(text.contains("order: 1"));
    assert!(text.contains("subgroups: 1"));
}

#[test]
fn group_file_input_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let group_path = dir.path().join("z2.json");
    std::fs::write(
        &group_path,
        r#"{"order": 2, "table": [[0, 1], [1, 0]], "identity": 0}"#,
    )
    .unwrap();
    let out_path = dir.path().join("report.txt");
    let status = modcat(&[
        "group-info",
        "--group",
        group_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ])
    .status;
    assert!(status.success());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.contains("order: 2"));
    assert!(written.contains("subgroups: 2"));
}

#[test]
fn cochain_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let mu_path = dir.path().join("mu.json");
    // The Klein-group Schur cocycle: bilinear pairing on <x> x <y>.
    std::fs::write(
        &mu_path,
        r#"{
            "group": [0, 1, 2, 3],
            "degree": 2,
            "modulus": 2,
            "values": [[1, 2, 1], [1, 3, 1], [3, 2, 1], [3, 3, 1]]
        }"#,
    )
    .unwrap();
    let text = stdout(&[
        "conjugacy",
        "--builtin-group",
        "Z2xZ2",
        "--K",
        "0,1,2,3",
        "--alpha",
        mu_path.to_str().unwrap(),
        "--K2",
        "0",
        "--format",
        "json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    // A(Z2xZ2, mu) is a matrix algebra: one simple module over the unit.
    assert_eq!(parsed["rank"].as_u64(), Some(1));
}

#[test]
fn sampled_rank_check_prints_seed_and_verifies() {
    let text = stdout(&["ranks", "--builtin-group", "S3", "--sample", "2", "--seed", "7"]);
    assert!(text.contains("seed = 7"));
    assert_eq!(text.matches("confirmed").count(), 2);
}

#[test]
fn h8_verify_all_reports_the_case_study() {
    let text = stdout(&["h8", "--verify-all", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["hopf_axioms"].as_str(), Some("ok"));
    assert_eq!(parsed["morita_dims"], serde_json::json!([1, 2, 2, 4, 4, 8]));
    let matching = parsed["matching"].as_array().unwrap();
    assert_eq!(matching.len(), 6);
    let vi = matching.iter().find(|m| m["tag"] == "(vi)").unwrap();
    assert_eq!(vi["label"].as_str(), Some("(<x,y>, 1)"));
    assert_eq!(vi["multiplicities"], serde_json::json!([2, 1, 1, 1, 1]));
}

#[test]
fn exit_statuses_distinguish_domain_and_io_errors() {
    // Unknown builtin: domain error.
    assert_eq!(exit_code(&["group-info", "--builtin-group", "Q8"]), 1);
    // Not a subgroup: domain error.
    assert_eq!(exit_code(&["fiber", "--builtin-group", "D8", "--K", "0,1,4"]), 1);
    // CSV requested where no table exists: domain error.
    assert_eq!(exit_code(&["h8", "--format", "csv"]), 1);
    // Missing input file: I/O error.
    let missing = Path::new("definitely-not-here.json");
    assert!(!missing.exists());
    assert_eq!(exit_code(&["group-info", "--group", "definitely-not-here.json"]), 2);
    // Malformed JSON: parse error.
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(exit_code(&["group-info", "--group", bad.to_str().unwrap()]), 2);
}
