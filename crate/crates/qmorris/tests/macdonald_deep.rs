//! Orthogonality and unitriangularity of the cached Macdonald family up to
//! degree 5 at generic (q, t), plus the size-2 duality pipeline example.

use qmorris::macdonald::{duality_apply, mac_P, mac_Q};
use qmorris::partition::{partitions_of, Partition};
use qmorris::symfunc::{hall_scalar, m_coords};

#[test]
fn degree_five_orthogonality_and_triangularity() {
    let parts = partitions_of(5);
    for a in &parts {
        let pa = mac_P(a);
        for (mu, c) in m_coords(&pa) {
            if mu == *a {
                assert!(c.is_one(), "P_{a} not monic");
            } else {
                assert!(
                    mu.dominance_leq(a) && mu != *a,
                    "P_{a} has support at {mu} outside the dominance cone"
                );
            }
        }
        for b in &parts {
            let pairing = hall_scalar(&pa, &mac_Q(b));
            if a == b {
                assert!(pairing.is_one(), "<P_{a}, Q_{b}> != 1");
            } else {
                assert!(pairing.is_zero(), "<P_{a}, Q_{b}> != 0");
            }
        }
    }
}

#[test]
fn duality_size_two_full_pipeline() {
    // omega_{q,t} P_(2)(q,t) = Q_(1,1)(t,q) via the complete skew machinery
    let (lhs, rhs) = duality_apply(&Partition::new(vec![2]), &Partition::empty());
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, mac_Q(&Partition::new(vec![1, 1])).swap_qt());
}
