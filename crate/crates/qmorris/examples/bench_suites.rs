use qmorris::report::summarize;
use qmorris::suites::*;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(|s| s.as_str()).unwrap_or("all");
    let timed = |name: &str, f: &dyn Fn() -> Vec<qmorris::report::CheckRecord>| {
        let t0 = Instant::now();
        let recs = f();
        let (pass, fail, refused) = summarize(&recs);
        println!(
            "{name}: {} records ({pass} pass, {fail} fail, {refused} refused) in {:?}",
            recs.len(),
            t0.elapsed()
        );
        if fail > 0 {
            for r in recs.iter().filter(|r| !r.passed()).take(5) {
                println!("  FAIL {} {:?} {}", r.check, r.params, r.notes);
            }
        }
    };
    match which {
        "qmorris" => timed("qmorris n<=3 abc<=3", &|| suite_qmorris(3, 3)),
        "aflt2" => {
            let grid = aflt_grid(&[1, 2], 3, 2, 3, 2, None);
            println!("criterion-2 grid: {} points", grid.len());
            timed("aflt n<=2", &|| suite_aflt(&grid));
        }
        "aflt3" => {
            let grid = aflt_grid(&[3], 2, 2, 2, 2, Some(2));
            println!("n=3 spot grid: {} points", grid.len());
            timed("aflt n=3 spot", &|| suite_aflt(&grid));
        }
        "reduction" => timed("reduction n<=4 abc<=4", &|| suite_reduction(4, 4)),
        "roots" => timed("roots", &suite_roots),
        "recur" => {
            let grid = aflt_grid(&[1, 2], 3, 2, 3, 2, None);
            timed("recursion+addpoints", &|| suite_recursion_addpoints(&grid));
        }
        "mac" => timed("macdonald |lambda|<=4", &|| suite_macdonald(4, 2024)),
        "cai" => timed("cai", &|| suite_cai(2024)),
        "vanish" => timed("vanishing", &suite_vanishing),
        "keylemma" => timed("keylemma", &suite_keylemma),
        other => println!("unknown: {other}"),
    }
}
