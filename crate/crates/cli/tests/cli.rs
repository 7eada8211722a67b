//! End-to-end tests of the `latgame` binary: JSON outputs, the exit-code
//! contract (0 success / property holds, 1 violation or invalid game,
//! 2 usage or I/O), stdin input, and the region-cap environment override.

use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const NIM3: &str = r#"{"d":3,"moves":[[1,0,0],[0,1,0],[0,0,1],[-1,1,0],[-1,0,1],[0,-1,1]]}"#;
const ERRATUM: &str = r#"{"d":3,"moves":[[1,0,0],[0,1,0],[0,0,1],[1,1,0]]}"#;
const UNPOINTED: &str = r#"{"d":2,"moves":[[1,-1],[-1,1],[0,1]]}"#;

fn latgame() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_latgame"));
    cmd.env_remove("LATGAME_MAX_REGION");
    cmd
}

fn run(args: &[&str]) -> Output {
    latgame().args(args).output().expect("spawn latgame")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = latgame()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn latgame");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait latgame")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_str(stdout_str(out).trim()).expect("stdout is JSON")
}

fn rules_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn solve_prints_nim3_p0() {
    let dir = tempfile::tempdir().unwrap();
    let rules = rules_file(&dir, "nim3.json", NIM3);
    let out = run(&["solve", "--rules", rules.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["p0"], serde_json::json!([[0, 0, 0], [1, 1, 1]]));
    assert_eq!(json["stats"]["positions_computed"], 8);
}

#[test]
fn solve_rejects_non_squarefree_games() {
    let out = run_stdin(&["solve"], ERRATUM);
    assert_eq!(code(&out), 1);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("squarefree"), "stderr: {stderr}");
}

#[test]
fn classify_reports_weakly_squarefree_only() {
    let out = run_stdin(&["classify"], ERRATUM);
    assert_eq!(code(&out), 0);
    let json = stdout_json(&out);
    assert_eq!(json["level"], "weakly_squarefree_only");
    assert_eq!(json["witnesses"][0]["move"], serde_json::json!([1, 1, 0]));
}

#[test]
fn counterexample_finds_the_erratum_pair() {
    let out = run_stdin(&["counterexample", "--budget", "4"], ERRATUM);
    assert_eq!(code(&out), 1);
    let json = stdout_json(&out);
    assert_eq!(json["found"], true);
    assert_eq!(json["violation"]["p"], serde_json::json!([1, 0, 1]));
    assert_eq!(json["violation"]["q"], serde_json::json!([0, 1, 1]));
    assert_eq!(json["violation"]["sum"], serde_json::json!([1, 1, 2]));
}

#[test]
fn counterexample_absent_for_nim() {
    let out = run_stdin(&["counterexample", "--budget", "8"], NIM3);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["found"], false);
}

#[test]
fn check_property_exit_codes() {
    let clean = run_stdin(&["check", "--property", "monoid"], NIM3);
    assert_eq!(code(&clean), 0);
    assert_eq!(stdout_json(&clean)["violations"], serde_json::json!([]));

    let dirty = run_stdin(&["check", "--property", "monoid", "--budget", "4"], ERRATUM);
    assert_eq!(code(&dirty), 1);
    assert_eq!(stdout_json(&dirty)["property"], "monoid_closure");

    let mod2 = run_stdin(&["check", "--property", "mod2"], NIM3);
    assert_eq!(code(&mod2), 0);
}

#[test]
fn check_equiv_zero_needs_a_position() {
    let missing = run_stdin(&["check", "--property", "equiv-zero"], NIM3);
    assert_eq!(code(&missing), 2);

    let clean = run_stdin(
        &["check", "--property", "equiv-zero", "--position", "1,1,1"],
        NIM3,
    );
    assert_eq!(code(&clean), 0);

    let dirty = run_stdin(
        &[
            "check",
            "--property",
            "equiv-zero",
            "--position",
            "1,0,1",
            "--budget",
            "4",
        ],
        ERRATUM,
    );
    assert_eq!(code(&dirty), 1);
}

#[test]
fn validate_exit_codes_and_certificate() {
    let good = run_stdin(&["validate"], NIM3);
    assert_eq!(code(&good), 0);
    let json = stdout_json(&good);
    assert_eq!(json["pointed"], true);
    assert_eq!(json["contains_orthant"], true);
    assert_eq!(json["certificate"], serde_json::json!(["1", "2", "3"]));

    let bad = run_stdin(&["validate"], UNPOINTED);
    assert_eq!(code(&bad), 1);
    assert_eq!(stdout_json(&bad)["pointed"], false);
}

#[test]
fn io_errors_exit_two() {
    let missing = run(&["solve", "--rules", "/nonexistent/rules.json"]);
    assert_eq!(code(&missing), 2);

    let malformed = run_stdin(&["solve"], "{not json");
    assert_eq!(code(&malformed), 2);

    let invalid_rules = run_stdin(&["classify"], r#"{"d":2,"moves":[[0,0]]}"#);
    assert_eq!(code(&invalid_rules), 2);

    let unknown_flag = run(&["solve", "--no-such-flag"]);
    assert_eq!(code(&unknown_flag), 2);
}

#[test]
fn encode_octal_round_trips() {
    let out = run(&["encode-octal", "--code", "0.333", "--max-heap", "3"]);
    assert_eq!(code(&out), 0);
    let emitted: lattice_games::RuleSet = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    let direct = lattice_games::rules_from_octal(
        &lattice_games::OctalCode::parse("0.333", 3).unwrap(),
    )
    .unwrap();
    assert_eq!(emitted, direct);
    // And the emitted JSON re-serializes identically.
    assert_eq!(
        serde_json::to_string(&emitted).unwrap(),
        stdout_str(&out).trim()
    );
}

#[test]
fn encode_octal_warns_about_ignored_digits() {
    let out = run(&["encode-octal", "--code", "0.333", "--max-heap", "2"]);
    assert_eq!(code(&out), 0);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("position 3"), "stderr: {stderr}");

    let bad = run(&["encode-octal", "--code", "junk", "--max-heap", "2"]);
    assert_eq!(code(&bad), 2);
}

#[test]
fn outcome_text_and_json_forms() {
    let dir = tempfile::tempdir().unwrap();
    let rules = rules_file(&dir, "nim3.json", NIM3);
    let rules = rules.to_str().unwrap();

    // Text is the default for `outcome`: it prints just P or N.
    let text = run(&["outcome", "--rules", rules, "--position", "3,1,1"]);
    assert_eq!(code(&text), 0);
    assert_eq!(stdout_str(&text), "P\n");

    let json = run(&[
        "outcome", "--rules", rules, "--position", "2,0,1", "--format", "json",
    ]);
    assert_eq!(code(&json), 0);
    let v = stdout_json(&json);
    assert_eq!(v["outcome"], "N");
    assert_eq!(v["position"], serde_json::json!([2, 0, 1]));

    let mismatch = run(&["outcome", "--rules", rules, "--position", "1,1"]);
    assert_eq!(code(&mismatch), 2);
}

#[test]
fn oracle_streams_sorted_ndjson() {
    let out = run_stdin(&["oracle", "--budget", "6"], NIM3);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let rows: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).expect("NDJSON row"))
        .collect();
    assert!(rows.len() > 3);
    assert_eq!(rows[0]["position"], serde_json::json!([0, 0, 0]));
    assert_eq!(rows[0]["outcome"], "P");
    let positions: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r["position"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect()
        })
        .collect();
    let mut sorted = positions.clone();
    sorted.sort();
    assert_eq!(positions, sorted, "oracle output must be in lex order");

    let only_p = run_stdin(&["oracle", "--budget", "6", "--p-only"], NIM3);
    assert_eq!(code(&only_p), 0);
    for line in stdout_str(&only_p).lines() {
        let row: Value = serde_json::from_str(line).unwrap();
        assert_eq!(row["outcome"], "P");
    }
}

#[test]
fn rules_from_stdin_and_dash() {
    let direct = run_stdin(&["classify"], NIM3);
    assert_eq!(code(&direct), 0);
    let dashed = run_stdin(&["classify", "--rules", "-"], NIM3);
    assert_eq!(code(&dashed), 0);
    assert_eq!(stdout_str(&direct), stdout_str(&dashed));
}

#[test]
fn region_cap_flag_and_environment() {
    let capped = run_stdin(&["oracle", "--budget", "6", "--max-region", "3"], NIM3);
    assert_eq!(code(&capped), 2);

    let mut via_env = latgame();
    via_env.args(["oracle", "--budget", "6"]).env("LATGAME_MAX_REGION", "3");
    let out = run_stdin_with(via_env, NIM3);
    assert_eq!(code(&out), 2);

    // An explicit flag overrides the environment.
    let mut flag_wins = latgame();
    flag_wins
        .args(["oracle", "--budget", "6", "--max-region", "100000"])
        .env("LATGAME_MAX_REGION", "3");
    let out = run_stdin_with(flag_wins, NIM3);
    assert_eq!(code(&out), 0);

    let mut bad_env = latgame();
    bad_env.args(["oracle", "--budget", "6"]).env("LATGAME_MAX_REGION", "soup");
    let out = run_stdin_with(bad_env, NIM3);
    assert_eq!(code(&out), 2);
}

fn run_stdin_with(mut cmd: Command, input: &str) -> Output {
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn latgame");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("wait latgame")
}

#[test]
fn bench_sweep_reports_counters() {
    let out = run(&[
        "bench", "--min-d", "4", "--max-d", "8", "--step", "2", "--reps", "1",
    ]);
    assert_eq!(code(&out), 0);
    let rows = stdout_json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["d"], 4);
    assert_eq!(rows[0]["positions_computed"], 16);
    assert_eq!(rows[2]["positions_computed"], 256);
    let evals: Vec<u64> = rows
        .iter()
        .map(|r| r["option_evaluations"].as_u64().unwrap())
        .collect();
    assert!(evals.windows(2).all(|w| w[0] <= w[1]), "counters must grow");

    let random = run(&[
        "bench", "--min-d", "4", "--max-d", "5", "--step", "1", "--reps", "1",
        "--family", "random", "--seed", "5",
    ]);
    assert_eq!(code(&random), 0);
}
