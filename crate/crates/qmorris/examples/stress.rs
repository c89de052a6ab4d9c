use qmorris::report::summarize;
use qmorris::suites::*;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let mut grid = aflt_grid(&[1, 2], 4, 2, 4, 3, None);
    grid.extend(aflt_grid(&[3], 2, 2, 2, 3, Some(3)));
    println!("stress grid: {} points", grid.len());
    let records = suite_aflt(&grid);
    let (pass, fail, refused) = summarize(&records);
    println!(
        "identity: {pass} pass, {fail} fail, {refused} refused in {:?}",
        t0.elapsed()
    );
    for r in records.iter().filter(|r| !r.passed()).take(10) {
        println!("  FAIL {:?} lhs={} rhs={}", r.params, r.lhs, r.rhs);
    }
    let t1 = Instant::now();
    let records = suite_recursion_addpoints(&grid);
    let (pass, fail, refused) = summarize(&records);
    println!(
        "recursion/addpoints: {pass} pass, {fail} fail, {refused} refused in {:?}",
        t1.elapsed()
    );
    for r in records.iter().filter(|r| !r.passed()).take(10) {
        println!("  FAIL {} {:?} lhs={} rhs={}", r.check, r.params, r.lhs, r.rhs);
    }
    std::process::exit(if fail == 0 { 0 } else { 1 });
}
