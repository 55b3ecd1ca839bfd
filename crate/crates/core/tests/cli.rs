//! End-to-end runs of the `evalrel` binary against fixtures and golden files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    manifest_dir().join("tests/fixtures").join(name).to_str().unwrap().to_string()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(manifest_dir().join("tests/golden").join(name)).unwrap()
}

fn evalrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evalrel")).args(args).output().unwrap()
}

fn stdout_ok(args: &[&str]) -> String {
    let out = evalrel(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stderr.is_empty());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn analyze_matches_golden_json() {
    let input = fixture("three_question.jsonl");
    let out = stdout_ok(&["analyze", "--input", &input, "--agent", "a1", "--benchmark", "gaia", "--alpha", "0.05"]);
    assert_eq!(out, golden("analyze_three_question.json"));
    assert!(out.contains(r#""icc":0.600000,"icc_variant":"paper_naive""#));
    assert!(out.contains(r#""icc":0.500000,"icc_variant":"anova_corrected""#));
    serde_json::from_str::<serde_json::Value>(&out).unwrap();
}

#[test]
fn analyze_matches_golden_markdown() {
    let input = fixture("three_question.jsonl");
    let out = stdout_ok(&["analyze", "--input", &input, "--agent", "a1", "--benchmark", "gaia", "--format", "md"]);
    assert_eq!(out, golden("analyze_three_question.md"));
}

#[test]
fn analyze_csv_with_level_filter() {
    let input = fixture("three_question.csv");
    let out = stdout_ok(&["analyze", "--input", &input, "--agent", "a1", "--benchmark", "gaia", "--level", "L1"]);
    assert_eq!(out, golden("analyze_three_question_csv_l1.json"));

    let missing = evalrel(&["analyze", "--input", &input, "--agent", "a1", "--benchmark", "gaia", "--level", "L3"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(missing.stdout.is_empty());
}

#[test]
fn analyze_out_writes_file_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let input = fixture("three_question.jsonl");
    let out = evalrel(&[
        "analyze", "--input", &input, "--agent", "a1", "--benchmark", "gaia", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty() && out.stderr.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), golden("analyze_three_question.json"));
}

#[test]
fn card_matches_golden() {
    let meta = fixture("card_meta.json");
    let analysis = manifest_dir().join("tests/golden/analyze_three_question_csv_l1.json");
    let analysis = analysis.to_str().unwrap();
    let json = stdout_ok(&["card", "--meta", &meta, "--analysis", analysis]);
    assert_eq!(json, golden("card_three_question.json"));
    let md = stdout_ok(&["card", "--meta", &meta, "--analysis", analysis, "--format", "md"]);
    assert_eq!(md, golden("card_three_question.md"));
}

#[test]
fn card_missing_metadata_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let meta = dir.path().join("meta.json");
    std::fs::write(&meta, r#"{"benchmark":"gaia","agent":"a1"}"#).unwrap();
    let analysis = manifest_dir().join("tests/golden/analyze_three_question.json");
    let out = evalrel(&["card", "--meta", meta.to_str().unwrap(), "--analysis", analysis.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing field: trials_and_seeds"));
}

#[test]
fn compare_and_converge_match_golden() {
    let input = fixture("two_agents.jsonl");
    let compare = [
        "compare", "--input", &input, "--agent-a", "base", "--agent-b", "tuned", "--benchmark", "swe", "--replicates",
        "2000", "--seed", "42",
    ];
    assert_eq!(stdout_ok(&compare), golden("compare_two_agents.json"));
    let converge = [
        "converge", "--input", &input, "--agent", "base", "--benchmark", "swe", "--trials", "2,3", "--resamples", "10",
        "--seed", "3",
    ];
    assert_eq!(stdout_ok(&converge), golden("converge_two_agents.csv"));
}

#[test]
fn seeded_commands_are_byte_reproducible() {
    let input = fixture("two_agents.jsonl");
    let compare = [
        "compare", "--input", &input, "--agent-a", "base", "--agent-b", "tuned", "--benchmark", "swe", "--replicates",
        "500", "--seed", "7", "--selector", "majority",
    ];
    assert_eq!(stdout_ok(&compare), stdout_ok(&compare));

    let dir = tempfile::tempdir().unwrap();
    let sim = |name: &str| -> (String, String, PathBuf) {
        let out = dir.path().join(name);
        let stdout = stdout_ok(&[
            "simulate", "--questions", "30", "--trials", "5", "--beta", "2,3", "--seed", "11", "--out",
            out.to_str().unwrap(),
        ]);
        (stdout, std::fs::read_to_string(&out).unwrap(), out)
    };
    let (truth_a, log_a, path_a) = sim("a.jsonl");
    let (truth_b, log_b, _) = sim("b.jsonl");
    assert_eq!(truth_a, truth_b);
    assert_eq!(log_a, log_b);
    assert_eq!(log_a.lines().count(), 150);
    assert_eq!(std::fs::read_to_string(path_a.with_extension("truth.json")).unwrap(), truth_a);
    assert_eq!(truth_a, "{\"sigma_b2_true\":0.0400000,\"sigma_w2_true\":0.200000,\"icc_true\":0.166667}\n");

    // The simulated log feeds straight back into analysis.
    let analysis = stdout_ok(&["analyze", "--input", path_a.to_str().unwrap(), "--agent", "simulated", "--benchmark", "synthetic"]);
    serde_json::from_str::<serde_json::Value>(&analysis).unwrap();
}

#[test]
fn budget_outputs_plan() {
    let out = stdout_ok(&["budget", "--sigma-b", "5", "--sigma-w", "1", "--budget", "400", "--n-max", "1000"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["recommended"]["n"], 400);
    assert_eq!(v["recommended"]["t"], 1);
}

#[test]
fn exit_codes() {
    let bad_flag = evalrel(&["budget", "--sigma-b", "1", "--sigma-w", "1", "--budget", "10", "--n-max", "5", "--nope"]);
    assert_eq!(bad_flag.status.code(), Some(1));
    assert!(bad_flag.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad_flag.stderr).contains("Usage"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sim.jsonl");
    let bad_prob = evalrel(&[
        "simulate", "--questions", "10", "--trials", "4", "--fixed", "1,1,0,1.5", "--seed", "1", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(bad_prob.status.code(), Some(1));
    assert!(bad_prob.stdout.is_empty());

    // All-correct data: zero total variance.
    let flat = dir.path().join("flat.jsonl");
    let ok = evalrel(&[
        "simulate", "--questions", "4", "--trials", "3", "--fixed", "1", "--seed", "1", "--out", flat.to_str().unwrap(),
    ]);
    assert_eq!(ok.status.code(), Some(0));
    let degenerate = evalrel(&["analyze", "--input", flat.to_str().unwrap(), "--agent", "simulated", "--benchmark", "synthetic"]);
    assert_eq!(degenerate.status.code(), Some(2));
    assert!(degenerate.stdout.is_empty());
    assert!(String::from_utf8_lossy(&degenerate.stderr).contains("zero total variance"));

    let no_file = evalrel(&["analyze", "--input", "/nonexistent/x.jsonl", "--agent", "a", "--benchmark", "b"]);
    assert_eq!(no_file.status.code(), Some(1));

    let help = evalrel(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(!help.stdout.is_empty());
}

#[test]
fn malformed_input_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(
        &path,
        "{\"benchmark\":\"b\",\"agent\":\"a\",\"question_id\":\"q\",\"trial\":0,\"correct\":1}\n{\"benchmark\":\"b\",\"agent\":\"a\",\"question_id\":\"q\",\"trial\":1,\"correct\":2}\n",
    )
    .unwrap();
    let out = evalrel(&["analyze", "--input", path.to_str().unwrap(), "--agent", "a", "--benchmark", "b"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
