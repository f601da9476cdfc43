//! End-to-end tests of the `cartan` binary: exit codes, JSON shapes, and
//! byte stability of the dumps.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cartan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn temp_form(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cartan-test-{}-{name}", std::process::id()));
    std::fs::write(&path, content).expect("temp file writes");
    path
}

const BASIC_ONE_FORM: &str = r#"{"n": 1, "terms": [{"indices": [2], "coeff": "1"}]}"#;

#[test]
fn charges_suite_passes_and_lists_every_relation() {
    let out = run(&["verify", "--suite", "charges", "--n", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("charge-k-kbar"));
    assert!(text.contains("charge-nilpotency"));
    assert!(text.contains("overall: pass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn exterior_derivative_dump_has_the_four_expected_entries() {
    let out = run(&["dump-op", "--op", "d", "--n", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(doc["op"], "d");
    assert_eq!(doc["parity"], "odd");
    let entries = doc["entries"].as_array().expect("entries array");
    assert_eq!(entries.len(), 4);
    // (row 1, col 0) carries ∂q1: derivative multi-index [0, 1].
    let first = entries[0].as_array().unwrap();
    assert_eq!(first[0], 1);
    assert_eq!(first[1], 0);
    assert_eq!(first[2][0]["coeff"], "1");
    assert_eq!(first[2][0]["deriv"], serde_json::json!([0, 1]));
}

#[test]
fn free_evolution_of_the_position_one_form() {
    let path = temp_form("basic.json", BASIC_ONE_FORM);
    let out = run(&[
        "evolve",
        "--free",
        "--t",
        "1",
        "--in",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let _ = std::fs::remove_file(&path);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(doc["t"], "1");
    assert_eq!(doc["method"], "free");
    let values: Vec<&str> = doc["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["0", "1", "-1", "0"]);
}

#[test]
fn evolution_reads_stdin_when_asked() {
    let out = run_with_stdin(
        &["evolve", "--free", "--t", "3/2", "--in", "-", "--format", "json"],
        BASIC_ONE_FORM,
    );
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(doc["t"], "3/2");
    assert_eq!(doc["components"][2]["value"], "-3/2");
}

#[test]
fn dumps_are_byte_stable_across_runs() {
    let args = [
        "dump-op",
        "--op",
        "H",
        "--n",
        "1",
        "--hamiltonian",
        "1/2*p1^2 + 1/3*q1^3",
        "--format",
        "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let verify_args = [
        "verify",
        "--suite",
        "geometry",
        "--n",
        "1",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let first = run(&verify_args);
    let second = run(&verify_args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_all_reports_every_suite() {
    let out = run(&["verify", "--all", "--n", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(doc["passed"], true);
    let suites: Vec<&str> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["suite"].as_str().unwrap())
        .collect();
    for name in [
        "grassmann",
        "charges",
        "susy",
        "cartan",
        "hodge",
        "geometry",
        "superalgebra",
        "evolution",
        "intertwine",
    ] {
        assert!(suites.contains(&name), "missing suite {name}");
    }
}

#[test]
fn each_mutation_flips_verification_to_exit_one() {
    for mutation in ["grading-sigma-x", "grading-dropped", "omega-sign-flip"] {
        let out = run(&["verify", "--all", "--n", "1", "--mutate", mutation]);
        assert_eq!(code(&out), 1, "mutation {mutation} went unnoticed");
        assert!(stdout_of(&out).contains("FAIL"));
    }
}

#[test]
fn bad_inputs_exit_two() {
    // Malformed polynomial.
    let out = run(&[
        "dump-op",
        "--op",
        "lie",
        "--n",
        "1",
        "--hamiltonian",
        "p1 + * q1",
    ]);
    assert_eq!(code(&out), 2);

    // Unknown operator.
    let out = run(&["dump-op", "--op", "nonsense", "--n", "1"]);
    assert_eq!(code(&out), 2);

    // Degrees of freedom above the default ceiling.
    let out = run(&["dump-op", "--op", "d", "--n", "5"]);
    assert_eq!(code(&out), 2);

    // Unknown suite name.
    let out = run(&["verify", "--suite", "nonsense", "--n", "1"]);
    assert_eq!(code(&out), 2);

    // Malformed form JSON.
    let out = run_with_stdin(&["evolve", "--free", "--t", "1", "--in", "-"], "not json");
    assert_eq!(code(&out), 2);

    // Generator index out of range for the declared n.
    let bad = r#"{"n": 1, "terms": [{"indices": [3], "coeff": "1"}]}"#;
    let out = run_with_stdin(&["evolve", "--free", "--t", "1", "--in", "-"], bad);
    assert_eq!(code(&out), 2);

    // Taylor evolution without its order.
    let out = run_with_stdin(
        &["evolve", "--method", "taylor", "--t", "1", "--hamiltonian", "1/2*p1^2", "--in", "-"],
        BASIC_ONE_FORM,
    );
    assert_eq!(code(&out), 2);
}

#[test]
fn raising_the_ceiling_warns_but_works() {
    let out = run(&["basis", "--n", "4", "--max-n", "4"]);
    assert_eq!(code(&out), 0);
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("warning"));
    assert!(stdout_of(&out).lines().count() > 256);
}

#[test]
fn output_flag_writes_the_same_bytes_as_stdout() {
    let path = std::env::temp_dir().join(format!("cartan-out-{}.json", std::process::id()));
    let to_file = run(&[
        "hodge",
        "--n",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&to_file), 0);
    let from_file = std::fs::read(&path).expect("output file written");
    let _ = std::fs::remove_file(&path);
    let to_stdout = run(&["hodge", "--n", "2", "--format", "json"]);
    assert_eq!(from_file, to_stdout.stdout);
}

#[test]
fn taylor_evolution_matches_free_at_terminating_order() {
    let out = run_with_stdin(
        &[
            "evolve",
            "--method",
            "taylor",
            "--order",
            "2",
            "--hamiltonian",
            "1/2*p1^2",
            "--t",
            "-2",
            "--in",
            "-",
            "--format",
            "json",
        ],
        BASIC_ONE_FORM,
    );
    assert_eq!(code(&out), 0);
    let taylor: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    let free = run_with_stdin(
        &["evolve", "--free", "--t", "-2", "--in", "-", "--format", "json"],
        BASIC_ONE_FORM,
    );
    let free: serde_json::Value = serde_json::from_str(&stdout_of(&free)).expect("valid JSON");
    assert_eq!(taylor["components"], free["components"]);
}
