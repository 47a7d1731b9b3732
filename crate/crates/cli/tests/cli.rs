//! End-to-end tests of the command-line interface.

use std::process::Command;

fn howe(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_howe"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn theta_bipartition_example() {
    let out = howe(&[
        "theta-bipartition",
        "--kind",
        "unitary",
        "--k",
        "1",
        "--r",
        "1",
        "--r-prime",
        "3",
        "--bp",
        "[[1],[]]",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[[2],[1]]");
}

#[test]
fn theta_bipartition_rejects_shrinking() {
    let out = howe(&[
        "theta-bipartition",
        "--kind",
        "unitary",
        "--k",
        "1",
        "--r-prime",
        "0",
        "--bp",
        "[[1],[]]",
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("first-occurrence"), "stderr: {err}");
}

#[test]
fn weak_key_example() {
    let out = howe(&["weak-key", "--mu", "[3,1]"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "[]");
}

#[test]
fn unknown_check_fails() {
    let out = howe(&["verify", "no-such-check"]);
    assert!(!out.status.success());
}

#[test]
fn json_reports_are_deterministic_modulo_timing() {
    let run = || {
        let out = howe(&[
            "--format",
            "json",
            "verify",
            "partitions",
        ]);
        assert!(out.status.success());
        let mut v: serde_json::Value =
            serde_json::from_slice(&out.stdout).expect("valid JSON report");
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn report_embeds_manifest() {
    let out = howe(&["--format", "json", "--seed", "7", "verify", "weak-keys"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["manifest"]["command"], "verify weak-keys");
    assert_eq!(v["manifest"]["seed"], 7);
    assert_eq!(v["manifest"]["q"], 3);
    assert!(v["manifest"]["checks"][0]["pass"].as_bool().unwrap());
    assert!(v["timing"]["wall_ms"].is_number());
}

#[test]
fn enumerate_group_csv() {
    let out = howe(&["--format", "csv", "enumerate-group", "--kind", "o-", "--n", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    // One line per conjugacy class of the dihedral group of order 8.
    assert_eq!(text.trim().lines().count(), 5);
}

#[test]
fn scale_guard_exits_nonzero() {
    let out = howe(&["enumerate-group", "--kind", "sp", "--n", "3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("scale guard"));
}

#[test]
fn single_acceptance_criterion_runs() {
    let out = howe(&["acceptance", "--only", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("criterion 01"), "stdout: {text}");
    assert!(text.contains("PASS"));
}

#[test]
fn out_dir_writes_report_files() {
    let dir = std::env::temp_dir().join(format!("howe-cli-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let out = howe(&[
        "--out",
        dir.to_str().unwrap(),
        "verify",
        "weak-keys",
    ]);
    assert!(out.status.success());
    let json_path = dir.join("verify-weak-keys.json");
    assert!(json_path.exists());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(json_path).unwrap()).unwrap();
    assert!(report["manifest"]["checks"][0]["pass"].as_bool().unwrap());
    let _ = std::fs::remove_dir_all(&dir);
}
