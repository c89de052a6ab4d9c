//! The integrand of `A_n(a,b,c,lambda,mu)`, the constant-term pipeline, and
//! the closed-form product side.

use std::time::Instant;

use crate::arith::{qpoch_scalar, RatFunc};
use crate::laurent::{ct_product, qpoch_monomial, ExpVec, LaurentPoly};
use crate::macdonald::{mac_P, principal_spec};
use crate::symfunc::{sym_eval, Alphabet};
use crate::Error;

use super::{AfltParams, VerifyReport};

/// `(q^e)_k`; every order in the closed forms is nonnegative, so this cannot
/// pole.
fn qp(e: i64, k: i64) -> RatFunc {
    qpoch_scalar(e, k).expect("nonnegative order cannot pole")
}

fn binom2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// The factors of the `A_n` integrand over the arena `x_0..x_n`:
/// the monomial shift, both Macdonald evaluations at `t = q^c`, and all
/// q-shifted-factorial factors.
pub fn integrand_factors(p: &AfltParams) -> Result<Vec<LaurentPoly>, Error> {
    p.check_direct()?;
    let n = p.n;
    let nv = n + 1;
    if p.lambda.length() > n {
        // P_lambda(x_1..x_n) = 0 for l(lambda) > n
        return Ok(vec![LaurentPoly::zero(nv)]);
    }
    let c = p.c as u32;
    let mut factors = Vec::new();

    // x_0^{-|lambda|-|mu|}
    let mut shift = ExpVec::zeros(nv);
    shift.set(0, -(p.lambda.size() + p.mu.size()));
    factors.push(LaurentPoly::monomial(nv, shift, RatFunc::one()));

    // P_mu([ (q^{c-b-1}-q^a)/(1-q^c) x_0 + x_1 + ... + x_n ]; q, q^c)
    if !p.mu.is_empty() {
        let mut alpha = Alphabet::new(nv);
        alpha.push_geometric(
            RatFunc::q_pow(p.c - p.b - 1),
            RatFunc::q_pow(p.a + p.b + 1 - p.c),
            RatFunc::q_pow(p.c),
            ExpVec::unit(nv, 0),
        );
        for i in 1..=n {
            alpha.push_letter(RatFunc::one(), ExpVec::unit(nv, i));
        }
        let pmu = mac_P(&p.mu).specialize_t(c)?;
        factors.push(sym_eval(&pmu, &alpha));
    }

    // P_lambda(x_1..x_n; q, q^c)
    if !p.lambda.is_empty() {
        let alpha = Alphabet::plain_vars(nv, 1..=n);
        let plam = mac_P(&p.lambda).specialize_t(c)?;
        factors.push(sym_eval(&plam, &alpha));
    }

    // prod_i (x_0/x_i)_a (q x_i/x_0)_b
    for i in 1..=n {
        let mut e = ExpVec::zeros(nv);
        e.set(0, 1);
        e.set(i, -1);
        factors.push(qpoch_monomial(nv, &RatFunc::one(), &e, p.a));
        factors.push(qpoch_monomial(nv, &RatFunc::q_pow(1), &e.neg(), p.b));
    }

    // prod_{i<j} (x_i/x_j)_c (q x_j/x_i)_c
    for i in 1..=n {
        for j in (i + 1)..=n {
            let mut e = ExpVec::zeros(nv);
            e.set(i, 1);
            e.set(j, -1);
            factors.push(qpoch_monomial(nv, &RatFunc::one(), &e, p.c));
            factors.push(qpoch_monomial(nv, &RatFunc::q_pow(1), &e.neg(), p.c));
        }
    }
    Ok(factors)
}

/// The full integrand of `A_n(a,b,c,lambda,mu)` as one Laurent polynomial.
pub fn build_integrand(p: &AfltParams) -> Result<LaurentPoly, Error> {
    let factors = integrand_factors(p)?;
    let mut acc = LaurentPoly::one(p.n + 1);
    for f in &factors {
        acc = acc.mul(f);
    }
    Ok(acc)
}

/// Constant term of the integrand over all of `x_0..x_n`, with the peak
/// intermediate term count of the pruned product pipeline.
pub fn lhs_value_with_stats(p: &AfltParams) -> Result<(RatFunc, usize), Error> {
    let factors = integrand_factors(p)?;
    let refs: Vec<&LaurentPoly> = factors.iter().collect();
    Ok(ct_product(&refs))
}

/// `A_n(a,b,c,lambda,mu)` by direct expansion.
pub fn lhs_value(p: &AfltParams) -> Result<RatFunc, Error> {
    lhs_value_with_stats(p).map(|(v, _)| v)
}

/// The closed-form product side of the main identity. Defined for any
/// integer `a` (negative included); requires `c >= 1` when `mu` is nonempty.
pub fn rhs_aflt(p: &AfltParams) -> Result<RatFunc, Error> {
    if p.b < 0 || p.c < 0 {
        return Err(Error::Refused("b and c must be nonnegative".into()));
    }
    if p.c == 0 && !p.mu.is_empty() {
        return Err(Error::Refused(
            "c = 0 with nonempty mu makes the principal weight singular".into(),
        ));
    }
    if p.n == 0 {
        // CT over x_0 alone: 1 when both partitions are empty, else 0.
        return Ok(if p.lambda.is_empty() && p.mu.is_empty() {
            RatFunc::one()
        } else {
            RatFunc::zero()
        });
    }
    let n = p.n as i64;
    let c = p.c;
    let lam = &p.lambda;
    let mu = &p.mu;
    let l = mu.length();

    // (-1)^{|lambda|} q^{sum binom(lambda_i,2) - c n(lambda)}
    let sign = if lam.size() % 2 == 0 {
        RatFunc::one()
    } else {
        RatFunc::from_int(-1)
    };
    let qexp: i64 = lam.parts().iter().map(|&x| binom2(x)).sum::<i64>() - c * lam.nstat();
    let mut acc = sign.mul(&RatFunc::q_pow(qexp));

    // P_lambda[(1-q^{nc})/(1-q^c)]
    let ambient_l = lam.length().max(p.n);
    let p_lam = principal_spec(lam, &RatFunc::t_pow(n), ambient_l).specialize_t(c as u32)?;
    acc = acc.mul(&p_lam);

    // P_mu[(q^{c-b-1}-q^{a+nc})/(1-q^c)]
    //   = q^{(c-b-1)|mu|} P_mu[(1-q^{a+b+1+(n-1)c})/(1-q^c)]
    if !mu.is_empty() {
        let a_arg = RatFunc::q_pow(p.a + p.b + 1).mul(&RatFunc::t_pow(n - 1));
        let p_mu = principal_spec(mu, &a_arg, mu.length()).specialize_t(c as u32)?;
        acc = acc.mul(&RatFunc::q_pow((c - p.b - 1) * mu.size()));
        acc = acc.mul(&p_mu);
    }

    // double product over i=1..n, j=1..l
    for i in 1..=n {
        for j in 1..=(l as i64) {
            let base = p.b + (n - i - j) * c + lam.part(i as usize) + mu.part(j as usize + 1) + 1;
            let ord = mu.part(j as usize) - mu.part(j as usize + 1);
            acc = acc.mul(&qp(base, ord));
        }
    }

    // prod_i (q^{a+(i-1)c-lambda_i+1})_{b+lambda_i} (q)_{ic}
    //        / ((q)_{b+(n-i)c+lambda_i+mu_1} (q)_c)
    for i in 1..=n {
        let li = lam.part(i as usize);
        let num1 = qp(p.a + (i - 1) * c - li + 1, p.b + li);
        let num2 = qp(1, i * c);
        let den1 = qp(1, p.b + (n - i) * c + li + mu.part(1));
        let den2 = qp(1, c);
        acc = acc.mul(&num1).mul(&num2).div(&den1.mul(&den2));
    }
    Ok(acc)
}

/// The q-Morris product `prod_{i=0}^{n-1} (q)_{a+b+ic} (q)_{(i+1)c} /
/// ((q)_{a+ic} (q)_{b+ic} (q)_c)`.
pub fn rhs_qmorris(n: usize, a: i64, b: i64, c: i64) -> RatFunc {
    assert!(a >= 0 && b >= 0 && c >= 0, "q-Morris needs a,b,c >= 0");
    let mut acc = RatFunc::one();
    for i in 0..n as i64 {
        let num = qp(1, a + b + i * c).mul(&qp(1, (i + 1) * c));
        let den = qp(1, a + i * c).mul(&qp(1, b + i * c)).mul(&qp(1, c));
        acc = acc.mul(&num.div(&den));
    }
    acc
}

/// Compare both pipelines for the main identity.
pub fn verify_aflt(p: &AfltParams) -> Result<VerifyReport, Error> {
    let start = Instant::now();
    let (lhs, peak) = lhs_value_with_stats(p)?;
    let rhs = rhs_aflt(p)?;
    let equal = lhs == rhs;
    Ok(VerifyReport {
        params: p.clone(),
        lhs,
        rhs,
        equal,
        millis: start.elapsed().as_millis(),
        terms_peak: peak,
        notes: String::new(),
    })
}

/// Compare the expanded constant term against the q-Morris product.
pub fn verify_qmorris(n: usize, a: i64, b: i64, c: i64) -> Result<VerifyReport, Error> {
    let p = AfltParams::new(n, a, b, c, Default::default(), Default::default());
    let start = Instant::now();
    let (lhs, peak) = lhs_value_with_stats(&p)?;
    let rhs = rhs_qmorris(n, a, b, c);
    let equal = lhs == rhs;
    Ok(VerifyReport {
        params: p,
        lhs,
        rhs,
        equal,
        millis: start.elapsed().as_millis(),
        terms_peak: peak,
        notes: String::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Partition;

    fn prm(n: usize, a: i64, b: i64, c: i64, lam: &[i64], mu: &[i64]) -> AfltParams {
        AfltParams::new(
            n,
            a,
            b,
            c,
            Partition::new(lam.to_vec()),
            Partition::new(mu.to_vec()),
        )
    }

    fn q() -> RatFunc {
        RatFunc::q_pow(1)
    }

    #[test]
    fn integrand_examples() {
        // n=1, a=b=0, c=1, lambda=(1), mu=0: x_1/x_0
        let f = build_integrand(&prm(1, 0, 0, 1, &[1], &[])).unwrap();
        assert_eq!(f.num_terms(), 1);
        assert_eq!(f.coeff(&ExpVec::from_slice(&[-1, 1])), RatFunc::one());
        // n=1, a=1: x_1/x_0 - 1
        let f = build_integrand(&prm(1, 1, 0, 1, &[1], &[])).unwrap();
        assert_eq!(f.coeff(&ExpVec::from_slice(&[-1, 1])), RatFunc::one());
        assert_eq!(f.ct_all(), RatFunc::from_int(-1));
        // n=2, a=b=0, c=1, both empty: (1 - x1/x2)(1 - q x2/x1)
        let f = build_integrand(&prm(2, 0, 0, 1, &[], &[])).unwrap();
        assert_eq!(f.ct_all(), RatFunc::one().add(&q()));
        assert_eq!(
            f.coeff(&ExpVec::from_slice(&[0, 1, -1])),
            RatFunc::from_int(-1)
        );
        assert_eq!(f.coeff(&ExpVec::from_slice(&[0, -1, 1])), q().neg());
    }

    #[test]
    fn integrand_is_homogeneous_degree_zero() {
        for p in [
            prm(2, 1, 1, 1, &[1], &[1]),
            prm(2, 2, 0, 2, &[2], &[]),
            prm(1, 1, 2, 2, &[], &[2]),
        ] {
            let f = build_integrand(&p).unwrap();
            for (e, _) in f.terms() {
                assert_eq!(e.total(), 0, "term {e:?} of {p}");
            }
            // hence CT after x_0 = 1 equals the full CT
            let collapsed = f.subst_one(0);
            let mut ct = collapsed;
            for i in 1..=p.n {
                ct = ct.ct_var(i);
            }
            assert_eq!(ct.ct_all(), f.ct_all());
        }
    }

    #[test]
    fn lhs_examples() {
        assert_eq!(
            lhs_value(&prm(1, 1, 0, 1, &[1], &[])).unwrap(),
            RatFunc::from_int(-1)
        );
        assert!(lhs_value(&prm(1, 0, 0, 1, &[1], &[])).unwrap().is_zero());
        // n=1, a=b=1, c=0, trivial partitions: 1 + q
        assert_eq!(
            lhs_value(&prm(1, 1, 1, 0, &[], &[])).unwrap(),
            RatFunc::one().add(&q())
        );
    }

    #[test]
    fn lhs_matches_full_expansion() {
        for p in [
            prm(2, 1, 1, 1, &[1], &[1]),
            prm(2, 0, 1, 2, &[2], &[1]),
            prm(1, 2, 1, 2, &[2], &[2]),
        ] {
            let full = build_integrand(&p).unwrap().ct_all();
            assert_eq!(lhs_value(&p).unwrap(), full, "{p}");
        }
    }

    #[test]
    fn rhs_examples() {
        // (n=1,a=1,b=0,c=1,(1),0) -> -1
        assert_eq!(
            rhs_aflt(&prm(1, 1, 0, 1, &[1], &[])).unwrap(),
            RatFunc::from_int(-1)
        );
        // factor (q^0)_1 = 0
        assert!(rhs_aflt(&prm(1, 0, 0, 1, &[1], &[])).unwrap().is_zero());
        // lambda = mu = 0 reduces to q-Morris
        for n in 1..=3 {
            for a in 0..=2 {
                for b in 0..=2 {
                    for c in 0..=2 {
                        let r1 = rhs_aflt(&prm(n, a, b, c, &[], &[])).unwrap();
                        let r2 = rhs_qmorris(n, a, b, c);
                        assert_eq!(r1, r2, "n={n} a={a} b={b} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn qmorris_examples() {
        // n=1, a=b=1: (q)_2/((q)_1 (q)_1) = 1 + q
        assert_eq!(rhs_qmorris(1, 1, 1, 0), RatFunc::one().add(&q()));
        // n=2, a=b=0, c=1: telescopes to 1 + q; matches the CT oracle
        assert_eq!(rhs_qmorris(2, 0, 0, 1), RatFunc::one().add(&q()));
        assert_eq!(
            lhs_value(&prm(2, 0, 0, 1, &[], &[])).unwrap(),
            rhs_qmorris(2, 0, 0, 1)
        );
        // a = b = c = 0: empty product
        assert!(rhs_qmorris(3, 0, 0, 0).is_one());
    }

    #[test]
    fn verify_examples() {
        let r = verify_aflt(&prm(1, 1, 0, 1, &[1], &[])).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, RatFunc::from_int(-1));
        let r = verify_aflt(&prm(2, 0, 0, 1, &[], &[])).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, RatFunc::one().add(&q()));
        // dual-pipeline as its own oracle
        let r = verify_aflt(&prm(1, 1, 1, 2, &[1], &[])).unwrap();
        assert!(r.equal);
    }

    #[test]
    fn aflt_with_mu_small() {
        // hand-checked point: n=1,a=1,b=0,c=2,mu=(1): both sides -1
        let p = prm(1, 1, 0, 2, &[], &[1]);
        let lhs = lhs_value(&p).unwrap();
        let rhs = rhs_aflt(&p).unwrap();
        assert_eq!(lhs, RatFunc::from_int(-1));
        assert_eq!(rhs, RatFunc::from_int(-1));
    }

    #[test]
    fn degenerate_inputs() {
        // c = 0 with nonempty mu refuses
        assert!(lhs_value(&prm(1, 0, 0, 0, &[], &[1])).is_err());
        assert!(rhs_aflt(&prm(1, 0, 0, 0, &[], &[1])).is_err());
        // negative a refuses on the expansion side
        assert!(lhs_value(&prm(1, -1, 0, 1, &[], &[])).is_err());
        // l(lambda) > n gives the zero integrand
        assert!(lhs_value(&prm(1, 1, 0, 1, &[1, 1], &[])).unwrap().is_zero());
        assert!(rhs_aflt(&prm(1, 1, 0, 1, &[1, 1], &[])).unwrap().is_zero());
    }
}
