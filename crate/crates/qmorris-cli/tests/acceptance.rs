//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line. Everything is exact rational arithmetic; there are no
//! tolerances anywhere.
//!
//! Run with `cargo test -p qmorris-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use std::process::Command;

use qmorris::report::{summarize, CheckRecord};
use qmorris::suites::*;

fn report(criterion: &str, records: &[CheckRecord]) {
    let (pass, fail, refused) = summarize(records);
    let verdict = if fail == 0 { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion}: {verdict} ({pass} passed, {fail} failed, {refused} refused)"
    );
    for r in records.iter().filter(|r| !r.passed()).take(10) {
        println!("  failing: {} {:?} {}", r.check, r.params, r.notes);
    }
    assert_eq!(fail, 0, "criterion {criterion} has failing checks");
}

#[test]
fn criterion_1_qmorris_identity() {
    // n in {1,2,3}, a,b,c in {0..3}: constant term equals the product side.
    let records = suite_qmorris(3, 3);
    assert_eq!(records.len(), 3 * 4 * 4 * 4);
    report("1 (q-Morris identity)", &records);
}

#[test]
fn criterion_2_aflt_identity() {
    // n in {1,2}, a <= 3, b <= 2, c in {1..3}, |lambda|,|mu| <= 2,
    // l(lambda) <= n; spot set at n = 3 with |lambda|+|mu| <= 2, a,b <= 2,
    // c <= 2.
    let mut grid = aflt_grid(&[1, 2], 3, 2, 3, 2, None);
    grid.extend(aflt_grid(&[3], 2, 2, 2, 2, Some(2)));
    let records = suite_aflt(&grid);
    assert_eq!(records.len(), grid.len());
    report("2 (AFLT identity)", &records);
}

#[test]
fn criterion_3_reduction_consistency() {
    // closed form at lambda = mu = 0 equals the q-Morris product for
    // n <= 4, a,b,c <= 4.
    let records = suite_reduction(4, 4);
    assert_eq!(records.len(), 4 * 5 * 5 * 5);
    report("3 (reduction to q-Morris)", &records);
}

#[test]
fn criterion_4_polynomiality_and_roots() {
    // n <= 2, b <= 2, |lambda|,|mu| <= 2, c = b+lambda_1+mu_1+1 and c+1:
    // interpolation degree bound, root vanishing, disjoint root families.
    let records = suite_roots();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| !r.refused), "no refusals expected");
    report("4 (polynomiality and roots)", &records);
}

#[test]
fn criterion_5_recursion_and_addpoints() {
    // exact wherever the regime preconditions hold, over the criterion-2
    // sweep including the n = 3 spot set.
    let mut grid = aflt_grid(&[1, 2], 3, 2, 3, 2, None);
    grid.extend(aflt_grid(&[3], 2, 2, 2, 2, Some(2)));
    let records = suite_recursion_addpoints(&grid);
    assert!(!records.is_empty());
    report("5 (recursion and additional points)", &records);
}

#[test]
fn criterion_6_macdonald_suite() {
    // all |lambda| <= 4 at generic (q,t).
    let records = suite_macdonald(4, 2022);
    assert!(!records.is_empty());
    report("6 (Macdonald suite)", &records);
}

#[test]
fn criterion_7_proof_toolkit() {
    let mut records = suite_cai(2022);
    records.extend(suite_vanishing());
    records.extend(suite_keylemma());
    assert!(!records.is_empty());
    report("7 (proof toolkit)", &records);
}

#[test]
fn criterion_8_determinism() {
    // Same configuration and seed: byte-identical JSON, timing fields
    // excluded.
    let bin = env!("CARGO_BIN_EXE_qmorris");
    let run = |args: &[&str]| -> Vec<String> {
        let out = Command::new(bin)
            .args(args)
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "command failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        String::from_utf8(out.stdout)
            .expect("utf8 output")
            .lines()
            .map(|line| {
                let mut v: serde_json::Value =
                    serde_json::from_str(line).expect("each line is one JSON object");
                if let Some(obj) = v.as_object_mut() {
                    obj.remove("millis");
                }
                serde_json::to_string(&v).unwrap()
            })
            .collect()
    };
    let configs: Vec<Vec<&str>> = vec![
        vec![
            "sweep", "--max-n", "2", "--max-a", "1", "--max-b", "1", "--max-c", "2", "--max-wt",
            "1", "--json", "--seed", "42",
        ],
        vec!["props", "run", "--suite", "cai", "--json", "--seed", "7"],
        vec!["props", "run", "--suite", "symfunc", "--json", "--seed", "3"],
    ];
    for args in &configs {
        let first = run(args);
        let second = run(args);
        assert_eq!(first, second, "output differs for {args:?}");
        assert!(!first.is_empty());
    }
    println!("criterion 8 (determinism): PASS ({} configurations)", configs.len());
}
