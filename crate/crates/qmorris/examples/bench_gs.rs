use qmorris::macdonald::{b_norm, mac_P};
use qmorris::partition::partitions_of;
use qmorris::symfunc::hall_scalar;
use std::time::Instant;

fn main() {
    for d in 1..=5 {
        let t0 = Instant::now();
        for lam in partitions_of(d) {
            let _ = mac_P(&lam);
            let _ = b_norm(&lam);
        }
        println!("degree {d}: GS+norms {:?}", t0.elapsed());
    }
    let t0 = Instant::now();
    let parts = partitions_of(4);
    for a in &parts {
        for b in &parts {
            let _ = hall_scalar(&mac_P(a), &mac_P(b));
        }
    }
    println!("deg4 pairwise hall: {:?}", t0.elapsed());
}
