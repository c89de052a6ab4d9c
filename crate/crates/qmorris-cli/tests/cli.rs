//! CLI behavior: argument validation, JSON shape, exit codes.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qmorris"))
}

#[test]
fn rejects_non_decreasing_partition() {
    let out = bin()
        .args(["verify", "aflt", "--n", "1", "--lambda", "1,3"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invalid partition literal"), "{err}");
}

#[test]
fn rejects_unknown_flag() {
    let out = bin().args(["verify", "aflt", "--frobnicate"]).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn json_stream_shape() {
    let out = bin()
        .args([
            "verify", "aflt", "--n", "2", "--a", "1", "--b", "1", "--c", "2", "--lambda", "1",
            "--mu", "1", "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    let v: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    for key in ["check", "params", "lhs", "rhs", "equal", "notes", "millis", "terms_peak"] {
        assert!(v.get(key).is_some(), "missing field {key}");
    }
    assert_eq!(v["check"], "aflt");
    assert_eq!(v["equal"], true);
    assert_eq!(v["params"]["lambda"], "1");
}

#[test]
fn refusal_keeps_exit_zero_with_reason() {
    let out = bin()
        .args([
            "verify", "roots", "--n", "1", "--b", "1", "--c", "1", "--lambda", "1", "--json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(String::from_utf8(out.stdout).unwrap().lines().next().unwrap())
            .unwrap();
    assert_eq!(v["refused"], true);
    assert!(v["notes"].as_str().unwrap().contains("refused"));
}

#[test]
fn empty_partition_literals() {
    for mu in ["", "0"] {
        let out = bin()
            .args([
                "verify", "qmorris", "--n", "1", "--a", "1", "--b", "1", "--mu", mu,
            ])
            .output()
            .unwrap();
        assert!(out.status.success(), "mu = {mu:?}");
    }
}

#[test]
fn sweep_runs_and_reports() {
    let out = bin()
        .args([
            "sweep", "--max-n", "1", "--max-a", "1", "--max-b", "1", "--max-c", "1", "--max-wt",
            "1", "--workers", "1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("summary:"), "{stdout}");
    assert!(stdout.contains("0 failed"), "{stdout}");
}

#[test]
fn mac_show_bases() {
    for basis in ["m", "p", "g"] {
        let out = bin()
            .args(["mac", "show", "--lambda", "2,1", "--basis", basis])
            .output()
            .unwrap();
        assert!(out.status.success());
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(!stdout.trim().is_empty());
    }
}

#[test]
fn dump_integrand_renders() {
    let out = bin()
        .args([
            "verify", "aflt", "--n", "1", "--a", "1", "--c", "1", "--lambda", "1",
            "--dump-integrand",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("x0^-1*x1"), "{stdout}");
}
