use std::process::{Command, Output};

use qkernel::verify::VerificationReport;

fn qkernel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkernel"))
        .args(args)
        .env_remove("QKERNEL_TOL")
        .output()
        .expect("spawn qkernel")
}

fn qkernel_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkernel"))
        .args(args)
        .env(key, value)
        .output()
        .expect("spawn qkernel")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn eval_documented_values() {
    let cases: &[(&[&str], &str)] = &[
        (&["eval", "C", "--n", "1", "--beta", "0.5", "--q", "0.3", "--theta", "0"], "1.4285714285714286"),
        (&["eval", "T", "--n", "3", "--x", "1"], "1"),
        (&["eval", "qpoch", "--a", "0.5", "--q", "0.3", "--n", "2"], "0.425"),
    ];
    for (args, want) in cases {
        let out = qkernel(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        assert_eq!(stdout(&out).trim(), *want, "{args:?}");
    }
}

#[test]
fn eval_errors_map_to_exit_codes() {
    assert_eq!(code(&qkernel(&["eval", "nope"])), 2);
    assert_eq!(code(&qkernel(&["eval", "qpoch", "--a", "0.5"])), 2);
    assert_eq!(code(&qkernel(&["eval", "qpoch", "--a", "x", "--q", "0.3", "--n", "2"])), 2);
    assert_eq!(code(&qkernel(&["frobnicate"])), 2);

    let pole = qkernel(&["eval", "qpoch", "--a", "0.09", "--q", "0.3", "--n", "-2"]);
    assert_eq!(code(&pole), 1);
    assert!(!stderr(&pole).is_empty());
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&qkernel(&["--help"])), 0);
}

#[test]
fn check_pass_and_forced_failure() {
    let args = ["check", "thm-1.1", "--m", "3", "--n", "3", "--beta", "0.6", "--q", "0.3"];
    let out = qkernel(&args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.pass);
    assert_eq!(report.check_id.as_str(), "thm-1.1");

    let mut tight = args.to_vec();
    tight.extend(["--tol", "1e-30"]);
    let out = qkernel(&tight);
    assert_eq!(code(&out), 1);
    let report: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!report.pass);
    assert_eq!(report.tol, 1e-30);
}

#[test]
fn check_parity_case_has_zero_rhs() {
    let out = qkernel(&["check", "thm-1.2", "--m", "2", "--n", "1", "--beta", "0.25", "--gamma", "0.5", "--q", "0.4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.rhs.norm(), 0.0);
}

#[test]
fn check_usage_errors() {
    assert_eq!(code(&qkernel(&["check", "thm-9.9", "--q", "0.3"])), 2);
    assert_eq!(code(&qkernel(&["check", "thm-1.1", "--m", "2", "--bogus", "1"])), 2);
    assert_eq!(code(&qkernel(&["check", "thm-1.1", "--m", "2", "--n", "2", "--beta", "0.5"])), 2);
}

#[test]
fn check_pole_reports_failure_with_diagnostic() {
    let out = qkernel(&["check", "prop-3.2", "--n", "2", "--a", "0.3", "--b", "0.2", "--x", "0.5", "--y", "0.5", "--q", "0.3"]);
    assert_eq!(code(&out), 1);
    let report: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!report.pass);
    assert!(report.diagnostic.is_some());
}

#[test]
fn suite_only_subset() {
    let out = qkernel(&["suite", "--only", "thm-1.4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let reports: Vec<VerificationReport> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 12);
    assert!(reports.iter().all(|r| r.check_id.as_str() == "thm-1.4" && r.pass));
    assert!(stderr(&out).contains("PASS 12/12"));

    assert_eq!(code(&qkernel(&["suite", "--only", "nope"])), 2);
}

#[test]
fn suite_csv_has_header() {
    let out = qkernel(&["suite", "--only", "qbinomial", "--format", "csv"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "check_id,params,lhs,rhs,abs_err,rel_err,tol,nodes_used,pass,runtime_ms,diagnostic"
    );
    assert_eq!(lines.count(), 10);
}

#[test]
fn suite_out_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qkernel(&["suite", "--only", "prop-3.1,qbinomial", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let reports: Vec<VerificationReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 20);
    assert_eq!(serde_json::to_string_pretty(&reports).unwrap().trim(), text.trim());
}

#[test]
fn suite_config_handling() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"checks": []}"#).unwrap();
    let out = qkernel(&["suite", "--config", empty.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("PASS 0/0"));

    let custom = dir.path().join("custom.json");
    std::fs::write(
        &custom,
        r#"{"checks": [{"check": "thm-1.1", "m": 2, "n": 2, "beta": 0.5, "q": 0.3},
                       {"check": "qbinomial", "a": [0.3, 0.1], "z": 0.4, "q": 0.5}]}"#,
    )
    .unwrap();
    let out = qkernel(&["suite", "--config", custom.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("PASS 2/2"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"checks": [{"check": "thm-1.1", "m": 2}]}"#).unwrap();
    assert_eq!(code(&qkernel(&["suite", "--config", bad.to_str().unwrap()])), 2);

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&qkernel(&["suite", "--config", missing.to_str().unwrap()])), 2);
}

#[test]
fn suite_forced_failure_exits_one() {
    let out = qkernel(&["suite", "--only", "thm-1.1", "--tol", "1e-30"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("FAIL"));
}

#[test]
fn tolerance_environment_variable() {
    let args = ["check", "thm-1.1", "--m", "3", "--n", "3", "--beta", "0.6", "--q", "0.3"];
    assert_eq!(code(&qkernel_env(&args, "QKERNEL_TOL", "1e-30")), 1);
    assert_eq!(code(&qkernel_env(&args, "QKERNEL_TOL", "abc")), 2);
    assert_eq!(code(&qkernel_env(&args, "QKERNEL_TOL", "1e-6")), 0);
}
