//! End-to-end runs of the compiled binary: certificate contents, exit
//! codes, determinism, and the fake-matrix round trip.

use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ruse"))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .expect("fixture path is valid unicode")
        .to_string()
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn certificate(args: &[&str]) -> Value {
    let output = run(args);
    assert!(
        output.status.success(),
        "command failed, stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("standard output is a JSON certificate")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("terminated by a signal")
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).expect("temp file is writable");
    path
}

#[test]
fn maximin_reports_the_guarantee_and_witness() {
    let cert = certificate(&["maximin", &fixture("strict_margin_3x2.json")]);
    assert_eq!(cert["command"], "maximin");
    assert_eq!(cert["inputs"][0]["role"], "game");
    assert_eq!(cert["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(cert["result"]["maximin"], "1/2");
    assert_eq!(cert["result"]["witness"], json!(["1/2", "1/2", "0"]));
}

#[test]
fn sse_reports_the_honest_equilibrium() {
    let cert = certificate(&["sse", &fixture("mixing_2x2.json")]);
    assert_eq!(cert["result"]["profile"]["strategy"], json!(["1/2", "1/2"]));
    assert_eq!(cert["result"]["profile"]["response"], 1);
    assert_eq!(cert["result"]["leader_value"], "1/2");
    assert_eq!(cert["result"]["follower_value"], "1/2");
    assert_eq!(cert["result"]["column_values"], json!(["1/2", "0"]));
}

#[test]
fn inducible_finds_the_best_commitment() {
    let cert = certificate(&["inducible", &fixture("strict_margin_3x2.json")]);
    assert_eq!(cert["result"]["profile"]["strategy"], json!(["0", "0", "1"]));
    assert_eq!(cert["result"]["profile"]["response"], 1);
    assert_eq!(cert["result"]["follower_value"], "1");
    assert_eq!(cert["result"]["column_values"], json!(["1", "1/2"]));
}

#[test]
fn deceive_emits_a_verified_fake() {
    let cert = certificate(&["deceive", &fixture("mixing_2x2.json")]);
    let result = &cert["result"];
    assert_eq!(result["target"]["strategy"], json!(["0", "1"]));
    assert_eq!(result["target"]["response"], 1);
    assert_eq!(result["follower_value"], "1");
    assert_eq!(result["maximin"], "0");
    assert_eq!(result["branch"], "punish-all");
    assert_eq!(result["punishment_set"], json!([2]));
    assert_eq!(result["tie_break_column"], 2);
    assert_eq!(result["alpha"], "1");
    assert_eq!(result["fake"], json!([["-1", "0"], ["0", "0"]]));
    assert_eq!(result["fake_entry_bits"], 1);
    assert_eq!(cert["verification"]["is_sse"], true);
    assert_eq!(cert["verification"]["violations"], json!([]));
    assert!(cert["verification"].get("is_unique").is_none());
}

#[test]
fn deceive_strong_names_the_margin() {
    let cert = certificate(&[
        "deceive-strong",
        &fixture("strict_margin_3x2.json"),
        "--epsilon",
        "3/100",
    ]);
    let result = &cert["result"];
    assert_eq!(result["epsilon"], "3/100");
    assert_eq!(result["base_follower_value"], "1");
    assert_eq!(result["delta"], "1/50");
    assert_eq!(result["profile"]["strategy"], json!(["1/25", "0", "24/25"]));
    assert_eq!(result["profile"]["response"], 1);
    assert_eq!(result["follower_value"], "97/100");
    assert_eq!(result["branch"], "margin");
    assert_eq!(result["boundary"], json!([2]));
    assert_eq!(result["tie_break_column"], 2);
    assert_eq!(result["alpha"], "250");
    assert_eq!(result["fake"], json!([["-120", "0"], ["128", "-1"], ["19/4", "-1/4"]]));
    assert_eq!(cert["verification"]["is_sse"], true);
    assert_eq!(cert["verification"]["is_unique"], true);
}

#[test]
fn deceive_strong_defaults_to_a_thousandth() {
    let cert = certificate(&["deceive-strong", &fixture("strict_margin_3x2.json")]);
    assert_eq!(cert["result"]["epsilon"], "1/1000");
    assert_eq!(cert["verification"]["is_unique"], true);
}

#[test]
fn deceive_strong_refuses_tied_maxima_with_exit_3() {
    let output = run(&["deceive-strong", &fixture("tied_column_3x2.json")]);
    assert_eq!(exit_code(&output), 3);
    assert!(stderr_text(&output).contains("column 1"));
}

#[test]
fn certificates_are_byte_identical_across_runs() {
    let args = ["deceive-strong", &fixture("strict_margin_3x2.json"), "--epsilon", "3/100"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn emitted_certificates_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("deceive.json");
    let output = run(&[
        "deceive",
        &fixture("mixing_2x2.json"),
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let cert: Value =
        serde_json::from_slice(&std::fs::read(&cert_path).unwrap()).expect("certificate parses");

    let strategy: Vec<String> = cert["result"]["target"]["strategy"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let profile = format!("{};{}", strategy.join(","), cert["result"]["target"]["response"]);
    let audit = certificate(&[
        "verify",
        &fixture("mixing_2x2.json"),
        cert_path.to_str().unwrap(),
        "--profile",
        &profile,
    ]);
    assert_eq!(audit["result"]["is_sse"], true);
    assert_eq!(audit["result"]["violations"], json!([]));
}

#[test]
fn verify_reads_bare_matrices_and_applies_the_uniqueness_flag() {
    let dir = tempfile::tempdir().unwrap();
    let fake = write_temp(&dir, "fake.json", r#"[[1, 0], [1, 0], [1, 0]]"#);
    let game = fixture("tied_column_3x2.json");
    let fake_path = fake.to_str().unwrap();

    let audit = certificate(&["verify", &game, fake_path, "--profile", "0,0,1;1"]);
    assert_eq!(audit["result"]["is_sse"], true);
    assert_eq!(audit["inputs"][1]["role"], "fake");

    let strict = run(&["verify", &game, fake_path, "--profile", "0,0,1;1", "--unique"]);
    assert_eq!(exit_code(&strict), 4);
    let cert: Value = serde_json::from_slice(&strict.stdout).unwrap();
    assert_eq!(cert["result"]["is_unique"], false);
    assert!(stderr_text(&strict).contains("equilibria other than the target"));
}

#[test]
fn verify_fails_a_dishonest_profile_with_exit_4() {
    let game = fixture("mixing_2x2.json");
    let output = run(&["verify", &game, &game, "--profile", "1,0;1"]);
    assert_eq!(exit_code(&output), 4);
    let cert: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(cert["result"]["is_sse"], false);
    assert_eq!(cert["result"]["violations"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_inputs_exit_2_with_field_diagnostics() {
    let dir = tempfile::tempdir().unwrap();

    let float = write_temp(&dir, "float.json", r#"{"m":1,"n":1,"leader":[[0.5]]}"#);
    let output = run(&["maximin", float.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("leader[1][1]"));

    let ragged = write_temp(&dir, "ragged.json", r#"{"m":2,"n":2,"leader":[[1,0],[1]]}"#);
    let output = run(&["maximin", ragged.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("row 2"));

    let output = run(&["sse", &fixture("threat_3x3_leader.json")]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("follower"));

    let output = run(&["maximin", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);

    let game = fixture("mixing_2x2.json");
    let output = run(&["verify", &game, &game, "--profile", "1,0"]);
    assert_eq!(exit_code(&output), 2);

    let output = run(&["deceive-strong", &game, "--epsilon", "0"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_text(&output).contains("positive"));
}

#[test]
fn leader_only_games_still_answer_maximin() {
    let cert = certificate(&["maximin", &fixture("threat_3x3_leader.json")]);
    assert_eq!(cert["result"]["maximin"], "1/2");
}
