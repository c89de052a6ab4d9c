//! Property tests for the arithmetic and Laurent layers: ring laws,
//! canonical forms, specialization compatibility, and exactness of the
//! polynomial pipeline against random rational evaluation.

use num_bigint::BigInt;
use proptest::prelude::*;

use qmorris::arith::{eval_point, rat, BigRat, QtPoly, RatFunc};
use qmorris::laurent::{ExpVec, LaurentPoly};

fn qtpoly_strategy() -> impl Strategy<Value = QtPoly> {
    proptest::collection::vec(((0u32..4, 0u32..3), -4i64..=4), 0..5).prop_map(|terms| {
        let mut acc = QtPoly::zero();
        for ((dq, dt), c) in terms {
            acc = acc.add(&QtPoly::monomial(BigInt::from(c), dq, dt));
        }
        acc
    })
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (
        qtpoly_strategy(),
        qtpoly_strategy().prop_filter("nonzero denominator", |p| !p.is_zero()),
    )
        .prop_map(|(n, d)| RatFunc::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ratfunc_ring_laws(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inverse()).is_one());
        }
    }

    #[test]
    fn canonical_form_idempotent(a in ratfunc_strategy()) {
        let again = RatFunc::new(a.num().clone(), a.den().clone());
        prop_assert_eq!(a.num(), again.num());
        prop_assert_eq!(a.den(), again.den());
    }

    #[test]
    fn specialize_commutes_with_ops(a in ratfunc_strategy(), b in ratfunc_strategy(), c in 0u32..4) {
        let sa = a.specialize_t(c);
        let sb = b.specialize_t(c);
        if let (Ok(sa), Ok(sb)) = (sa, sb) {
            if let Ok(sum) = a.add(&b).specialize_t(c) {
                prop_assert_eq!(sum, sa.add(&sb));
            }
            if let Ok(prod) = a.mul(&b).specialize_t(c) {
                prop_assert_eq!(prod, sa.mul(&sb));
            }
        }
    }

    #[test]
    fn eval_respects_ops(a in ratfunc_strategy(), b in ratfunc_strategy()) {
        let q0 = rat(2, 3);
        let t0 = rat(-3, 5);
        if let (Ok(va), Ok(vb)) = (eval_point(&a, &q0, &t0), eval_point(&b, &q0, &t0)) {
            if let Ok(vs) = eval_point(&a.add(&b), &q0, &t0) {
                prop_assert_eq!(vs, &va + &vb);
            }
            if let Ok(vp) = eval_point(&a.mul(&b), &q0, &t0) {
                prop_assert_eq!(vp, &va * &vb);
            }
        }
    }
}

fn coeff_strategy() -> impl Strategy<Value = RatFunc> {
    (-3i64..=3, 0i64..3).prop_map(|(c, e)| RatFunc::from_int(c).mul(&RatFunc::q_pow(e)))
}

fn laurent_strategy(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec(
        (
            proptest::collection::vec(-3i64..=3, nvars),
            coeff_strategy(),
        ),
        0..6,
    )
    .prop_map(move |terms| {
        let mut acc = LaurentPoly::zero(nvars);
        for (exps, c) in terms {
            acc = acc.add(&LaurentPoly::monomial(nvars, ExpVec::from_slice(&exps), c));
        }
        acc
    })
}

fn sample_xs(n: usize) -> Vec<BigRat> {
    // fixed distinct nonzero rationals
    (0..n).map(|i| rat(2 * i as i64 + 3, 2)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laurent_mul_exact_at_points(a in laurent_strategy(3), b in laurent_strategy(3)) {
        let xs = sample_xs(3);
        let q0 = rat(2, 7);
        let t0 = rat(0, 1);
        let va = a.eval(&xs, &q0, &t0).unwrap();
        let vb = b.eval(&xs, &q0, &t0).unwrap();
        let vp = a.mul(&b).eval(&xs, &q0, &t0).unwrap();
        prop_assert_eq!(vp, va * vb);
    }

    #[test]
    fn ct_var_commutes(f in laurent_strategy(3), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(f.ct_var(i).ct_var(j), f.ct_var(j).ct_var(i));
    }

    #[test]
    fn homogeneous_nonzero_degree_has_zero_ct(
        exps in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 2), 1..5),
        cs in proptest::collection::vec(coeff_strategy(), 5),
        d in prop_oneof![-3i64..0, 1i64..4],
    ) {
        // force every term to total degree d != 0 by fixing the last slot
        let mut acc = LaurentPoly::zero(3);
        for (e2, c) in exps.iter().zip(cs) {
            let mut v = e2.clone();
            v.push(d - e2.iter().sum::<i64>());
            acc = acc.add(&LaurentPoly::monomial(3, ExpVec::from_slice(&v), c));
        }
        prop_assert!(acc.ct_all().is_zero());
    }

    #[test]
    fn add_is_exact_at_points(a in laurent_strategy(2), b in laurent_strategy(2)) {
        let xs = sample_xs(2);
        let q0 = rat(3, 5);
        let t0 = rat(1, 4);
        let va = a.eval(&xs, &q0, &t0).unwrap();
        let vb = b.eval(&xs, &q0, &t0).unwrap();
        let vs = a.add(&b).eval(&xs, &q0, &t0).unwrap();
        prop_assert_eq!(vs, va + vb);
    }
}
