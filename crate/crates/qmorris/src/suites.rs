//! Runnable check suites: parameter sweeps over the main identity and
//! property batteries for the supporting machinery. Each suite returns one
//! [`CheckRecord`] per check, in a deterministic order independent of the
//! worker count.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::aflt::{
    key_lemma_classify, subs_alphabet_check, verify_addpoint_1, verify_addpoint_2,
    verify_aflt, verify_cai_split, verify_kernel_identity, verify_qmorris, verify_recursion,
    verify_roots, verify_symmetrization, verify_vanishing_h, verify_vanishing_skew, AfltParams,
    KeyCase,
};
use crate::arith::{BigRat, RatFunc};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::macdonald::{
    duality_apply, expand_in_P, g_expansion, mac_P, mac_Q, pieri_expand, principal_spec,
    skew, SkewKind,
};
use crate::partition::{enumerate, partitions_of, Partition};
use crate::report::CheckRecord;
use crate::symfunc::{
    hall_scalar, m_coords, mul_symf, sym_eval, sym_eval_scalar, Alphabet,
};
use crate::Error;

fn record_from_result(
    check: &str,
    params: BTreeMap<String, String>,
    res: Result<crate::aflt::VerifyReport, Error>,
) -> CheckRecord {
    match res {
        Ok(v) => CheckRecord::from_verify(check, &v),
        Err(Error::Refused(msg)) | Err(Error::Pole(msg)) => {
            CheckRecord::refused(check, params, msg)
        }
        Err(e) => {
            let mut r = CheckRecord::new(check, params);
            r.notes = format!("error: {e}");
            r
        }
    }
}

/// Criterion sweep: the q-Morris identity for `n <= max_n`, `a,b,c <= max_abc`.
pub fn suite_qmorris(max_n: usize, max_abc: i64) -> Vec<CheckRecord> {
    let mut points = Vec::new();
    for n in 1..=max_n {
        for a in 0..=max_abc {
            for b in 0..=max_abc {
                for c in 0..=max_abc {
                    points.push((n, a, b, c));
                }
            }
        }
    }
    points
        .into_par_iter()
        .map(|(n, a, b, c)| {
            let p = AfltParams::new(n, a, b, c, Partition::empty(), Partition::empty());
            record_from_result("qmorris", p.params_map(), verify_qmorris(n, a, b, c))
        })
        .collect()
}

/// The AFLT sweep grid: all admissible parameter points.
pub fn aflt_grid(
    ns: &[usize],
    max_a: i64,
    max_b: i64,
    max_c: i64,
    max_wt: i64,
    joint_wt: Option<i64>,
) -> Vec<AfltParams> {
    let mut out = Vec::new();
    let parts = enumerate(max_wt, max_wt.max(0) as usize, max_wt);
    for &n in ns {
        for lam in &parts {
            if lam.length() > n {
                continue;
            }
            for mu in &parts {
                if let Some(j) = joint_wt {
                    if lam.size() + mu.size() > j {
                        continue;
                    }
                }
                for a in 0..=max_a {
                    for b in 0..=max_b {
                        for c in 1..=max_c {
                            out.push(AfltParams::new(n, a, b, c, lam.clone(), mu.clone()));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Main identity sweep: exact equality of both pipelines at every point.
pub fn suite_aflt(points: &[AfltParams]) -> Vec<CheckRecord> {
    points
        .par_iter()
        .map(|p| record_from_result("aflt", p.params_map(), verify_aflt(p)))
        .collect()
}

/// Reduction consistency: the closed form at `lambda = mu = 0` equals the
/// q-Morris product for `n <= max_n`, `a,b,c <= max_abc`.
pub fn suite_reduction(max_n: usize, max_abc: i64) -> Vec<CheckRecord> {
    let mut points = Vec::new();
    for n in 1..=max_n {
        for a in 0..=max_abc {
            for b in 0..=max_abc {
                for c in 0..=max_abc {
                    points.push((n, a, b, c));
                }
            }
        }
    }
    points
        .into_par_iter()
        .map(|(n, a, b, c)| {
            let start = Instant::now();
            let p = AfltParams::new(n, a, b, c, Partition::empty(), Partition::empty());
            let mut rec = CheckRecord::new("reduction", p.params_map());
            match crate::aflt::rhs_aflt(&p) {
                Ok(lhs) => {
                    let rhs = crate::aflt::rhs_qmorris(n, a, b, c);
                    rec.equal = lhs == rhs;
                    rec.lhs = lhs.to_string();
                    rec.rhs = rhs.to_string();
                }
                Err(e) => rec.notes = format!("error: {e}"),
            }
            rec.millis = start.elapsed().as_millis();
            rec
        })
        .collect()
}

/// Polynomiality and roots: for `n <= 2`, `b <= 2`, `|lambda|,|mu| <= 2`,
/// at `c = b + lambda_1 + mu_1 + 1` and `c + 1`: interpolation degree,
/// root vanishing, and disjointness of the three root families.
pub fn suite_roots() -> Vec<CheckRecord> {
    let parts = enumerate(2, 2, 2);
    let mut points = Vec::new();
    for n in 1..=2usize {
        for lam in &parts {
            if lam.length() > n {
                continue;
            }
            for mu in &parts {
                for b in 0..=2 {
                    let base = b + lam.part(1) + mu.part(1);
                    for c in [base + 1, base + 2] {
                        points.push(AfltParams::new(n, 0, b, c, lam.clone(), mu.clone()));
                    }
                }
            }
        }
    }
    points
        .into_par_iter()
        .map(|p| {
            let start = Instant::now();
            let params = p.params_map();
            match verify_roots(&p) {
                Ok(rep) => {
                    let mut rec = CheckRecord::new("roots", params);
                    rec.equal = rep.passed();
                    rec.lhs = format!("degree {}", rep.actual_degree);
                    rec.rhs = format!("degree bound {}", rep.degree_bound);
                    rec.notes = if rep.failures.is_empty() {
                        format!(
                            "{} roots vanish; disjoint={} distinct={}",
                            rep.roots.union().len(),
                            rep.pairwise_disjoint,
                            rep.all_distinct
                        )
                    } else {
                        rep.failures.join("; ")
                    };
                    rec.millis = start.elapsed().as_millis();
                    rec
                }
                Err(Error::Refused(msg)) | Err(Error::Pole(msg)) => {
                    CheckRecord::refused("roots", params, msg)
                }
                Err(e) => {
                    let mut rec = CheckRecord::new("roots", params);
                    rec.notes = format!("error: {e}");
                    rec
                }
            }
        })
        .collect()
}

/// Recursion and additional-point identities over a sweep grid, at every
/// point whose regime preconditions hold.
pub fn suite_recursion_addpoints(points: &[AfltParams]) -> Vec<CheckRecord> {
    let mut recursion_points = Vec::new();
    let mut addpoint_points = Vec::new();
    let mut seen_addpoint = std::collections::BTreeSet::new();
    for p in points {
        if p.mu.length() <= p.n && p.c - p.b > 0 && p.lambda.length() <= p.n {
            recursion_points.push(p.clone());
        }
        // the additional points do not involve a
        let key = (
            p.n,
            p.b,
            p.c,
            p.lambda.clone(),
            p.mu.clone(),
        );
        if seen_addpoint.insert(key) {
            addpoint_points.push(p.clone());
        }
    }
    let mut records: Vec<CheckRecord> = recursion_points
        .par_iter()
        .map(|p| record_from_result("recursion", p.params_map(), verify_recursion(p)))
        .collect();
    let add1: Vec<CheckRecord> = addpoint_points
        .par_iter()
        .filter(|p| p.mu.length() < p.n && p.c >= 1 && p.lambda.length() <= p.n)
        .map(|p| record_from_result("addpoint-1", p.params_map(), verify_addpoint_1(p)))
        .collect();
    let add2: Vec<CheckRecord> = addpoint_points
        .par_iter()
        .filter(|p| {
            p.mu.length() >= p.n && !p.mu.is_empty() && p.c >= 1 && p.lambda.length() <= p.n
        })
        .map(|p| record_from_result("addpoint-2", p.params_map(), verify_addpoint_2(p)))
        .collect();
    records.extend(add1);
    records.extend(add2);
    records
}

fn simple_record(check: &str, params: BTreeMap<String, String>, ok: bool, notes: String) -> CheckRecord {
    let mut rec = CheckRecord::new(check, params);
    rec.equal = ok;
    rec.lhs = if ok { "pass".into() } else { "fail".into() };
    rec.rhs = "pass".into();
    rec.notes = notes;
    rec
}

fn pmap(entries: &[(&str, String)]) -> BTreeMap<String, String> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn rand_rat(rng: &mut ChaCha8Rng) -> BigRat {
    let num = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = rng.gen_range(1..=9i64);
    BigRat::new(num.into(), den.into())
}

/// Macdonald property suite at generic (q, t) for `|lambda| <= max_size`.
pub fn suite_macdonald(max_size: i64, seed: u64) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let q = RatFunc::q_pow(1);
    let t = RatFunc::t_pow(1);

    // triangularity + orthogonality + <P,Q> = delta, one record per degree
    for d in 0..=max_size {
        let start = Instant::now();
        let parts = partitions_of(d);
        let mut ok = true;
        let mut notes = String::new();
        for a in &parts {
            let pa = mac_P(a);
            for (mu, c) in m_coords(&pa) {
                if mu == *a {
                    if !c.is_one() {
                        ok = false;
                        notes.push_str(&format!("P_{a} not monic; "));
                    }
                } else if !(mu != *a && mu.dominance_leq(a)) {
                    ok = false;
                    notes.push_str(&format!("P_{a} support above {mu}; "));
                }
            }
            for b in &parts {
                let pairing = hall_scalar(&pa, &mac_Q(b));
                let expect_one = a == b;
                if pairing.is_one() != expect_one || (!expect_one && !pairing.is_zero()) {
                    ok = false;
                    notes.push_str(&format!("<P_{a}, Q_{b}> wrong; "));
                }
            }
        }
        let mut rec = simple_record(
            "mac-orthogonality",
            pmap(&[("degree", d.to_string())]),
            ok,
            format!("{notes}{} partitions", parts.len()),
        );
        rec.millis = start.elapsed().as_millis();
        records.push(rec);
    }

    // skew duality under the parameter swap, over all skew pairs
    for d in 0..=max_size {
        for lam in partitions_of(d) {
            for e in 0..=d {
                for mu in partitions_of(e) {
                    if !lam.contains(&mu) {
                        continue;
                    }
                    let start = Instant::now();
                    let (lhs, rhs) = duality_apply(&lam, &mu);
                    let mut rec = simple_record(
                        "mac-duality",
                        pmap(&[("lambda", lam.to_string()), ("mu", mu.to_string())]),
                        lhs == rhs,
                        String::new(),
                    );
                    rec.millis = start.elapsed().as_millis();
                    records.push(rec);
                }
            }
        }
    }

    // branching rule on random 2+2-letter scalar alphabets
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in 1..=max_size {
        for lam in partitions_of(d) {
            let start = Instant::now();
            let xs: Vec<BigRat> = (0..2).map(|_| rand_rat(&mut rng)).collect();
            let ys: Vec<BigRat> = (0..2).map(|_| rand_rat(&mut rng)).collect();
            let mk = |vals: &[BigRat]| {
                let mut a = Alphabet::new(0);
                for v in vals {
                    a.push_letter(RatFunc::from_bigrat(v), ExpVec::zeros(0));
                }
                a
            };
            let both = {
                let mut a = mk(&xs);
                for l in mk(&ys).letters() {
                    a.push_composite(l.clone());
                }
                a
            };
            let lhs = sym_eval_scalar(&mac_P(&lam), &both);
            let mut rhs = RatFunc::zero();
            for e in 0..=d {
                for mu in partitions_of(e) {
                    if !lam.contains(&mu) {
                        continue;
                    }
                    let s = sym_eval_scalar(&skew(&lam, &mu, SkewKind::P), &mk(&xs));
                    let pm = sym_eval_scalar(&mac_P(&mu), &mk(&ys));
                    rhs = rhs.add(&s.mul(&pm));
                }
            }
            let mut rec = simple_record(
                "mac-branching",
                pmap(&[("lambda", lam.to_string())]),
                lhs == rhs,
                "P[X+Y] vs sum of skew products on random 2+2 letters".into(),
            );
            rec.millis = start.elapsed().as_millis();
            records.push(rec);
        }
    }

    // vanishing on short alphabets; factorization at full length
    for d in 1..=max_size {
        for lam in partitions_of(d) {
            let l = lam.length();
            if l >= 2 {
                let start = Instant::now();
                let e = sym_eval(&mac_P(&lam), &Alphabet::plain_vars(l - 1, 0..l - 1));
                let mut rec = simple_record(
                    "mac-vanish-short",
                    pmap(&[("lambda", lam.to_string()), ("n", (l - 1).to_string())]),
                    e.is_zero(),
                    "P_lambda on fewer letters than rows".into(),
                );
                rec.millis = start.elapsed().as_millis();
                records.push(rec);
            }
            // factorization at n = l(lambda)
            let start = Instant::now();
            let full = sym_eval(&mac_P(&lam), &Alphabet::plain_vars(l, 0..l));
            let reduced = Partition::new(lam.parts().iter().map(|p| p - 1).collect());
            let shifted = sym_eval(&mac_P(&reduced), &Alphabet::plain_vars(l, 0..l));
            let mono = LaurentPoly::monomial(
                l,
                ExpVec::from_slice(&vec![1; l]),
                RatFunc::one(),
            );
            let mut rec = simple_record(
                "mac-factorization",
                pmap(&[("lambda", lam.to_string())]),
                full == shifted.mul(&mono),
                "P_lambda = (x_1..x_n) P_{lambda - 1^n} at n = l(lambda)".into(),
            );
            rec.millis = start.elapsed().as_millis();
            records.push(rec);
        }
    }

    // skew column bound (the vanishing direction)
    for d in 1..=max_size {
        for lam in partitions_of(d) {
            for e in 0..d {
                for mu in partitions_of(e) {
                    if !lam.contains(&mu) {
                        continue;
                    }
                    for nvars in 1..=2usize {
                        let lc = lam.conjugate();
                        let mc = mu.conjugate();
                        let violated = (1..=lc.length())
                            .any(|i| lc.part(i) - mc.part(i) > nvars as i64);
                        if !violated {
                            continue;
                        }
                        let start = Instant::now();
                        let ev = sym_eval(
                            &skew(&lam, &mu, SkewKind::Q),
                            &Alphabet::plain_vars(nvars, 0..nvars),
                        );
                        let mut rec = simple_record(
                            "mac-skew-columns",
                            pmap(&[
                                ("lambda", lam.to_string()),
                                ("mu", mu.to_string()),
                                ("n", nvars.to_string()),
                            ]),
                            ev.is_zero(),
                            "Q_{lambda/mu} vanishes beyond the column bound".into(),
                        );
                        rec.millis = start.elapsed().as_millis();
                        records.push(rec);
                    }
                }
            }
        }
    }

    // Pieri support
    for wt in 0..=(max_size - 1).max(0) {
        for mu in partitions_of(wt) {
            for r in 1..=(max_size - wt) {
                let start = Instant::now();
                let got = pieri_expand(&mu, r);
                let expect: Vec<Partition> = partitions_of(wt + r)
                    .into_iter()
                    .filter(|lam| lam.is_horizontal_strip(&mu, r))
                    .collect();
                let support: Vec<Partition> = got.keys().cloned().collect();
                let mut rec = simple_record(
                    "mac-pieri-support",
                    pmap(&[("mu", mu.to_string()), ("r", r.to_string())]),
                    support == expect,
                    format!("support size {}", support.len()),
                );
                rec.millis = start.elapsed().as_millis();
                records.push(rec);
            }
        }
    }

    // Lassalle dominance triangularity
    for d in 1..=max_size {
        for lam in partitions_of(d) {
            let start = Instant::now();
            let exp = g_expansion(&lam);
            let ok = exp.keys().all(|mu| lam.dominance_leq(mu));
            let mut rec = simple_record(
                "mac-lassalle",
                pmap(&[("lambda", lam.to_string())]),
                ok,
                format!("{} g-basis terms, all upward in dominance", exp.len()),
            );
            rec.millis = start.elapsed().as_millis();
            records.push(rec);
        }
    }

    // skew P-expansion support bound
    for d in 2..=max_size {
        for lam in partitions_of(d) {
            for e in 0..d {
                for mu in partitions_of(e) {
                    if !lam.contains(&mu) || mu.length() >= lam.length() {
                        continue;
                    }
                    let start = Instant::now();
                    let coeffs = expand_in_P(&skew(&lam, &mu, SkewKind::P));
                    let bound = lam.part(mu.length() + 1);
                    let ok = coeffs.keys().all(|nu| nu.part(1) >= bound);
                    let mut rec = simple_record(
                        "mac-skew-support",
                        pmap(&[("lambda", lam.to_string()), ("mu", mu.to_string())]),
                        ok,
                        format!("all P-support has first part >= {bound}"),
                    );
                    rec.millis = start.elapsed().as_millis();
                    records.push(rec);
                }
            }
        }
    }

    // principal specialization against direct plethysm, plus n-independence
    for d in 1..=max_size.min(3) {
        for lam in partitions_of(d) {
            for a_val in [t.pow(2), q.mul(&t.pow(3)), q.pow(2)] {
                let start = Instant::now();
                let closed = principal_spec(&lam, &a_val, lam.length());
                let bigger = principal_spec(&lam, &a_val, lam.length() + 2);
                let mut alpha = Alphabet::new(0);
                alpha.push_geometric(RatFunc::one(), a_val.clone(), t.clone(), ExpVec::zeros(0));
                let direct = sym_eval_scalar(&mac_P(&lam), &alpha);
                let mut rec = simple_record(
                    "mac-principal",
                    pmap(&[("lambda", lam.to_string()), ("a", a_val.to_string())]),
                    closed == direct && closed == bigger,
                    "closed hook form vs plethysm, and ambient-n independence".into(),
                );
                rec.millis = start.elapsed().as_millis();
                records.push(rec);
            }
        }
    }

    // P_lambda[(1-q)/(t-1)(m_1+..+m_{lambda_i-1}) + n_1+..+n_{i-1}] = 0
    for d in 1..=max_size {
        for lam in partitions_of(d) {
            for i in 1..=lam.length() {
                let li = lam.part(i);
                let start = Instant::now();
                let mut alpha = Alphabet::new(0);
                for _ in 0..(li - 1) {
                    let m = rand_rat(&mut rng);
                    // (1-q)/(t-1) m_j = -(1-q)/(1-t) m_j as a binomial element
                    alpha.push_composite(crate::symfunc::AlphabetLetter {
                        linear: RatFunc::from_int(-1),
                        scale: RatFunc::from_bigrat(&m),
                        geometric: Some((q.clone(), t.clone())),
                        mono: ExpVec::zeros(0),
                    });
                }
                for _ in 0..(i - 1) {
                    alpha.push_letter(RatFunc::from_bigrat(&rand_rat(&mut rng)), ExpVec::zeros(0));
                }
                let v = sym_eval_scalar(&mac_P(&lam), &alpha);
                let mut rec = simple_record(
                    "mac-vanish-mixed",
                    pmap(&[("lambda", lam.to_string()), ("i", i.to_string())]),
                    v.is_zero(),
                    "vanishing at the mixed geometric alphabet".into(),
                );
                rec.millis = start.elapsed().as_millis();
                records.push(rec);
            }
        }
    }

    // skewP pairing: <P_{lambda/mu}, Q_nu> = <P_lambda, Q_mu Q_nu>
    for d in 0..=max_size {
        for lam in partitions_of(d) {
            for e in 0..=d {
                for mu in partitions_of(e) {
                    if !lam.contains(&mu) {
                        continue;
                    }
                    let start = Instant::now();
                    let skp = skew(&lam, &mu, SkewKind::P);
                    let mut ok = true;
                    for nu in partitions_of(d - e) {
                        let lhs = hall_scalar(&skp, &mac_Q(&nu));
                        let rhs = hall_scalar(&mac_P(&lam), &mul_symf(&mac_Q(&mu), &mac_Q(&nu)));
                        if lhs != rhs {
                            ok = false;
                        }
                    }
                    let mut rec = simple_record(
                        "mac-skew-pairing",
                        pmap(&[("lambda", lam.to_string()), ("mu", mu.to_string())]),
                        ok,
                        String::new(),
                    );
                    rec.millis = start.elapsed().as_millis();
                    records.push(rec);
                }
            }
        }
    }

    // P_{lambda/mu} at the scaled finite alphabet vs Q_{l'/m'}(t,q)
    for d in 1..=max_size {
        for lam in partitions_of(d) {
            for e in 0..d {
                for mu in partitions_of(e) {
                    if !lam.contains(&mu) {
                        continue;
                    }
                    let start = Instant::now();
                    let letters: Vec<BigRat> = (0..2).map(|_| rand_rat(&mut rng)).collect();
                    let mut scaled = Alphabet::new(0);
                    let mut plain = Alphabet::new(0);
                    for m in &letters {
                        scaled.push_composite(crate::symfunc::AlphabetLetter {
                            linear: RatFunc::from_int(-1),
                            scale: RatFunc::from_bigrat(m),
                            geometric: Some((q.clone(), t.clone())),
                            mono: ExpVec::zeros(0),
                        });
                        plain.push_letter(RatFunc::from_bigrat(m), ExpVec::zeros(0));
                    }
                    let lhs = sym_eval_scalar(&skew(&lam, &mu, SkewKind::P), &scaled);
                    let sign = if (d - e) % 2 == 0 {
                        RatFunc::one()
                    } else {
                        RatFunc::from_int(-1)
                    };
                    let rhs_f = skew(&lam.conjugate(), &mu.conjugate(), SkewKind::Q).swap_qt();
                    let rhs = sign.mul(&sym_eval_scalar(&rhs_f, &plain));
                    let mut rec = simple_record(
                        "mac-scaled-alphabet",
                        pmap(&[("lambda", lam.to_string()), ("mu", mu.to_string())]),
                        lhs == rhs,
                        String::new(),
                    );
                    rec.millis = start.elapsed().as_millis();
                    records.push(rec);
                }
            }
        }
    }

    // degree bound after identifying variables
    for d in 1..=max_size {
        for lam in partitions_of(d) {
            let n = (lam.length() + 1).min(3);
            for s in 1..=n {
                let start = Instant::now();
                // substitute x_i = c_i x_s for i < s, keep x_s and the rest
                let mut alpha = Alphabet::new(n);
                for _ in 1..s {
                    let c = rand_rat(&mut rng);
                    alpha.push_letter(RatFunc::from_bigrat(&c), ExpVec::unit(n, s - 1));
                }
                alpha.push_letter(RatFunc::one(), ExpVec::unit(n, s - 1));
                for i in s..n {
                    alpha.push_letter(RatFunc::one(), ExpVec::unit(n, i));
                }
                let ev = sym_eval(&mac_P(&lam), &alpha);
                let bound: i64 = (1..=s).map(|i| lam.part(i)).sum();
                let ok = if ev.is_zero() {
                    true
                } else {
                    ev.degree_in(s - 1).map(|(_, max)| max <= bound).unwrap_or(false)
                };
                let mut rec = simple_record(
                    "mac-degree-bound",
                    pmap(&[("lambda", lam.to_string()), ("s", s.to_string())]),
                    ok,
                    format!("degree in the merged variable bounded by {bound}"),
                );
                rec.millis = start.elapsed().as_millis();
                records.push(rec);
            }
        }
    }

    records
}

/// Symmetric-function property suite: monomial reproduction, plethystic
/// additivity, the g/h relation, Hall symmetry, omega involution.
pub fn suite_symfunc(seed: u64) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let q = RatFunc::q_pow(1);
    let t = RatFunc::t_pow(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // monomial reproduction against the orbit-sum construction
    for lam in enumerate(4, 4, 4) {
        let n = lam.length().clamp(2, 4);
        let start = Instant::now();
        let got = sym_eval(&crate::symfunc::m_in_p(&lam), &Alphabet::plain_vars(n, 0..n));
        let expect = monomial_oracle(&lam, n);
        let mut rec = simple_record(
            "symfunc-monomial",
            pmap(&[("lambda", lam.to_string()), ("n", n.to_string())]),
            got == expect,
            "orbit-sum oracle".into(),
        );
        rec.millis = start.elapsed().as_millis();
        records.push(rec);
    }

    // plethystic additivity on random alphabets
    for trial in 0..3 {
        let start = Instant::now();
        let mut x = Alphabet::new(2);
        x.push_letter(RatFunc::from_bigrat(&rand_rat(&mut rng)), ExpVec::unit(2, 0));
        let mut y = Alphabet::new(2);
        y.push_letter(RatFunc::from_bigrat(&rand_rat(&mut rng)), ExpVec::unit(2, 1));
        let u = x.union(&y);
        let ok = (1..=4).all(|r| u.p_eval(r) == x.p_eval(r).add(&y.p_eval(r)));
        let mut rec = simple_record(
            "symfunc-additivity",
            pmap(&[("trial", trial.to_string())]),
            ok,
            String::new(),
        );
        rec.millis = start.elapsed().as_millis();
        records.push(rec);
    }

    // g_r = h_r[(1-t)X/(1-q)] on finite alphabets
    for r in 1..=4 {
        let start = Instant::now();
        let x = Alphabet::plain_vars(2, 0..2);
        let lhs = sym_eval(&crate::symfunc::g_in_p(r), &x);
        let mut scaled = Alphabet::new(2);
        for i in 0..2 {
            scaled.push_geometric(RatFunc::one(), t.clone(), q.clone(), ExpVec::unit(2, i));
        }
        let rhs = sym_eval(&crate::symfunc::h_in_p(r), &scaled);
        let mut rec = simple_record(
            "symfunc-g-relation",
            pmap(&[("r", r.to_string())]),
            lhs == rhs,
            String::new(),
        );
        rec.millis = start.elapsed().as_millis();
        records.push(rec);
    }

    // Hall symmetry and bilinearity on random small elements
    {
        let start = Instant::now();
        let mut ok = true;
        for _ in 0..3 {
            let parts3 = partitions_of(3);
            let mut f = crate::symfunc::SymF::zero(3);
            let mut g = crate::symfunc::SymF::zero(3);
            for p in &parts3 {
                f.set_coeff(p.clone(), RatFunc::from_bigrat(&rand_rat(&mut rng)));
                g.set_coeff(p.clone(), RatFunc::from_bigrat(&rand_rat(&mut rng)));
            }
            if hall_scalar(&f, &g) != hall_scalar(&g, &f) {
                ok = false;
            }
            let h = f.add(&g);
            let lhs = hall_scalar(&h, &g);
            let rhs = hall_scalar(&f, &g).add(&hall_scalar(&g, &g));
            if lhs != rhs {
                ok = false;
            }
        }
        let mut rec = simple_record("symfunc-hall", pmap(&[]), ok, "symmetry and bilinearity".into());
        rec.millis = start.elapsed().as_millis();
        records.push(rec);
    }

    // omega_{q,t} then omega_{t,q} is the identity
    {
        let start = Instant::now();
        let f = crate::symfunc::h_in_p(4);
        let back = crate::symfunc::omega_uv(&crate::symfunc::omega_uv(&f, &q, &t), &t, &q);
        let mut rec = simple_record("symfunc-omega", pmap(&[]), back == f, String::new());
        rec.millis = start.elapsed().as_millis();
        records.push(rec);
    }

    records
}

fn monomial_oracle(lambda: &Partition, nvars: usize) -> LaurentPoly {
    fn perms(v: &mut Vec<i64>, k: usize, out: &mut Vec<Vec<i64>>) {
        if k == v.len() {
            out.push(v.clone());
            return;
        }
        let mut used = Vec::new();
        for i in k..v.len() {
            if used.contains(&v[i]) {
                continue;
            }
            used.push(v[i]);
            v.swap(k, i);
            perms(v, k + 1, out);
            v.swap(k, i);
        }
    }
    let mut padded: Vec<i64> = lambda.parts().to_vec();
    padded.resize(nvars, 0);
    let mut all = Vec::new();
    perms(&mut padded, 0, &mut all);
    all.sort();
    all.dedup();
    let mut acc = LaurentPoly::zero(nvars);
    for v in all {
        acc = acc.add(&LaurentPoly::monomial(
            nvars,
            ExpVec::from_slice(&v),
            RatFunc::one(),
        ));
    }
    acc
}

/// Cai splitting suite: `n in {2,3}`, `c in {1,2}`, three exact random
/// points each, plus the n = 1 partial-fraction degenerate case and the
/// symmetrization identity.
pub fn suite_cai(seed: u64) -> Vec<CheckRecord> {
    let mut jobs = vec![(1usize, 1i64), (1, 2)];
    for n in 2..=3usize {
        for c in 1..=2i64 {
            jobs.push((n, c));
        }
    }
    let mut records: Vec<CheckRecord> = jobs
        .par_iter()
        .map(|&(n, c)| match verify_cai_split(n, c, seed) {
            Ok(rec) => rec,
            Err(e) => CheckRecord::refused(
                "cai-split",
                pmap(&[("n", n.to_string()), ("c", c.to_string())]),
                e.to_string(),
            ),
        })
        .collect();
    // symmetrization rides along: constant f and a symmetric power sum
    for n in 1..=3usize {
        for c in 1..=2i64 {
            let f = LaurentPoly::one(n);
            match verify_symmetrization(n, c, &f, seed) {
                Ok(rec) => records.push(rec),
                Err(e) => records.push(CheckRecord::refused(
                    "symmetrization",
                    pmap(&[("n", n.to_string()), ("c", c.to_string())]),
                    e.to_string(),
                )),
            }
        }
    }
    for n in 2..=4usize {
        for c in 1..=2i64 {
            match verify_kernel_identity(n, c, seed) {
                Ok(rec) => records.push(rec),
                Err(e) => records.push(CheckRecord::refused(
                    "sym-kernel",
                    pmap(&[("n", n.to_string()), ("c", c.to_string())]),
                    e.to_string(),
                )),
            }
        }
    }
    records
}

/// Vanishing constant-term suite over `n <= 2`, `c <= 2`, `|lambda| <= 3`:
/// the `h_lambda` family and the skew Macdonald companion.
pub fn suite_vanishing() -> Vec<CheckRecord> {
    let mut h_jobs = Vec::new();
    for n in 1..=2usize {
        for c in 1..=2i64 {
            for d in 1..=3i64 {
                for lam in partitions_of(d) {
                    for v in exponent_vectors(n, d, lam.part(1)) {
                        h_jobs.push((n, c, v, lam.clone()));
                    }
                }
            }
        }
    }
    let mut records: Vec<CheckRecord> = h_jobs
        .par_iter()
        .map(|(n, c, v, lam)| match verify_vanishing_h(*n, *c, v, lam) {
            Ok(rec) => rec,
            Err(e) => CheckRecord::refused(
                "vanishing-h",
                pmap(&[
                    ("n", n.to_string()),
                    ("c", c.to_string()),
                    ("v", format!("{v:?}")),
                    ("lambda", lam.to_string()),
                ]),
                e.to_string(),
            ),
        })
        .collect();

    let mut skew_jobs = Vec::new();
    for n in 1..=2usize {
        for c in 1..=2i64 {
            for d in 2..=3i64 {
                for lam in partitions_of(d) {
                    for e in 0..d {
                        for mu in partitions_of(e) {
                            if !lam.contains(&mu) || mu.length() >= lam.length() {
                                continue;
                            }
                            let bound = lam.part(mu.length() + 1);
                            for v in exponent_vectors(n, d - e, bound) {
                                skew_jobs.push((n, c, v, lam.clone(), mu.clone()));
                            }
                        }
                    }
                }
            }
        }
    }
    let skew_records: Vec<CheckRecord> = skew_jobs
        .par_iter()
        .map(
            |(n, c, v, lam, mu)| match verify_vanishing_skew(*n, *c, v, lam, mu) {
                Ok(rec) => rec,
                Err(e) => CheckRecord::refused(
                    "vanishing-skew",
                    pmap(&[
                        ("n", n.to_string()),
                        ("c", c.to_string()),
                        ("v", format!("{v:?}")),
                        ("lambda", lam.to_string()),
                        ("mu", mu.to_string()),
                    ]),
                    e.to_string(),
                ),
            },
        )
        .collect();
    records.extend(skew_records);
    records
}

/// Integer vectors of length n summing to `total` with every entry strictly
/// below `strict_bound` and bounded below by -2.
fn exponent_vectors(n: usize, total: i64, strict_bound: i64) -> Vec<Vec<i64>> {
    let lo = -2i64;
    let hi = strict_bound - 1;
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(
        out: &mut Vec<Vec<i64>>,
        cur: &mut Vec<i64>,
        idx: usize,
        rem: i64,
        lo: i64,
        hi: i64,
    ) {
        let n = cur.len();
        if idx == n {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots_left = (n - idx - 1) as i64;
        for v in lo..=hi {
            let rest = rem - v;
            if rest < lo * slots_left || rest > hi * slots_left {
                continue;
            }
            cur[idx] = v;
            rec(out, cur, idx + 1, rest, lo, hi);
        }
    }
    if hi < lo {
        return out;
    }
    rec(&mut out, &mut cur, 0, total, lo, hi);
    out
}

/// Key-lemma suite: exhaustive classification for `s <= 3`, `b,c,t <= 3`,
/// cross-checked against brute-force predicates, plus the alphabet
/// substitution on every Case-3 instance found.
pub fn suite_keylemma() -> Vec<CheckRecord> {
    let mut records = Vec::new();
    let start = Instant::now();
    let mut tuples = 0usize;
    let mut case3 = Vec::new();
    let mut failures = Vec::new();
    for s in 1..=3usize {
        for b in 0..=3i64 {
            for c in 0..=3i64 {
                for t in 0..=3i64 {
                    let upper = (s as i64 - 1) * c + b + t;
                    if upper < 1 {
                        continue;
                    }
                    let mut k = vec![1i64; s];
                    loop {
                        tuples += 1;
                        match key_lemma_classify(&k, b, c, t) {
                            Ok(case) => {
                                if let Some(msg) = brute_force_check(&k, b, c, t, &case) {
                                    failures.push(msg);
                                }
                                if matches!(case, KeyCase::Case3 { .. }) && t >= 1 {
                                    case3.push((s, b, c, t, k.clone()));
                                }
                            }
                            Err(e) => {
                                failures.push(format!("k={k:?} b={b} c={c} t={t}: {e}"))
                            }
                        }
                        // next tuple
                        let mut idx = 0;
                        loop {
                            if idx == s {
                                break;
                            }
                            k[idx] += 1;
                            if k[idx] <= upper {
                                break;
                            }
                            k[idx] = 1;
                            idx += 1;
                        }
                        if idx == s {
                            break;
                        }
                    }
                }
            }
        }
    }
    let mut rec = simple_record(
        "keylemma-exhaustive",
        pmap(&[("s_max", "3".into()), ("bct_max", "3".into())]),
        failures.is_empty(),
        if failures.is_empty() {
            format!("{tuples} tuples classified and re-verified by brute force")
        } else {
            failures.join("; ")
        },
    );
    rec.millis = start.elapsed().as_millis();
    records.push(rec);

    // substitution cardinality on all Case-3 instances found above
    let start = Instant::now();
    let mut ok = true;
    let mut notes = String::new();
    let total = case3.len();
    for (s, b, c, t, k) in case3 {
        match subs_alphabet_check(s, b, c, t, &k) {
            Ok(rep) if rep.ok => {}
            Ok(rep) => {
                ok = false;
                notes.push_str(&format!(
                    "k={k:?} b={b} c={c} t={t}: got {} exponents, expected {}; ",
                    rep.exponents.len(),
                    rep.expected_cardinality
                ));
            }
            Err(e) => {
                ok = false;
                notes.push_str(&format!("k={k:?}: {e}; "));
            }
        }
    }
    let mut rec = simple_record(
        "keylemma-subs",
        pmap(&[("instances", total.to_string())]),
        ok,
        if notes.is_empty() {
            format!("{total} Case-3 substitutions collapse to t-1 distinct powers")
        } else {
            notes
        },
    );
    rec.millis = start.elapsed().as_millis();
    records.push(rec);
    records
}

/// Independent predicate check for what the classifier returned.
fn brute_force_check(k: &[i64], b: i64, c: i64, t: i64, case: &KeyCase) -> Option<String> {
    let s = k.len();
    match case {
        KeyCase::Case1 { i } => {
            let ki = k[i - 1];
            if !(1..=b).contains(&ki) {
                return Some(format!("case1 witness invalid for k={k:?}"));
            }
        }
        KeyCase::Case2 { i, j } => {
            let d = k[i - 1] - k[j - 1];
            if !(i < j && -c <= d && d < c) {
                return Some(format!("case2 witness invalid for k={k:?}"));
            }
        }
        KeyCase::Case3 { w, tvec } => {
            if tvec.len() != s || w.len() != s {
                return Some(format!("case3 witness malformed for k={k:?}"));
            }
            if k[w[0] - 1] != b + tvec[0] {
                return Some(format!("case3 first equation fails for k={k:?}"));
            }
            for j in 1..s {
                if k[w[j] - 1] - k[w[j - 1] - 1] != c + tvec[j] {
                    return Some(format!("case3 step equation fails for k={k:?}"));
                }
            }
            let sum: i64 = tvec.iter().sum();
            if !(1 <= sum && sum <= t) || tvec.iter().any(|&x| x < 0) {
                return Some(format!("case3 t-range fails for k={k:?}"));
            }
            let mut prev = 0usize;
            for j in 0..s {
                if prev < w[j] && tvec[j] == 0 {
                    return Some(format!("case3 ascent condition fails for k={k:?}"));
                }
                prev = w[j];
            }
            // t = 1 forces the canonical tuple
            if t == 1 {
                for (i, &ki) in k.iter().enumerate() {
                    if ki != (s as i64 - 1 - i as i64) * c + b + 1 {
                        return Some(format!("case3 t=1 special form fails for k={k:?}"));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::summarize;

    #[test]
    fn qmorris_tiny_sweep() {
        let records = suite_qmorris(2, 1);
        let (pass, fail, refused) = summarize(&records);
        assert_eq!(fail, 0, "{records:#?}");
        assert_eq!(refused, 0);
        assert_eq!(pass, 2 * 2 * 2 * 2);
    }

    #[test]
    fn reduction_tiny() {
        let records = suite_reduction(2, 2);
        let (_, fail, _) = summarize(&records);
        assert_eq!(fail, 0);
    }

    #[test]
    fn aflt_tiny_sweep() {
        let grid = aflt_grid(&[1], 1, 1, 2, 1, None);
        let records = suite_aflt(&grid);
        let (pass, fail, _) = summarize(&records);
        assert_eq!(fail, 0, "{:#?}", records.iter().filter(|r| !r.passed()).collect::<Vec<_>>());
        assert!(pass > 0);
    }

    #[test]
    fn recursion_tiny_sweep() {
        let grid = aflt_grid(&[1, 2], 1, 1, 2, 1, None);
        let records = suite_recursion_addpoints(&grid);
        let (pass, fail, _) = summarize(&records);
        assert_eq!(fail, 0, "{:#?}", records.iter().filter(|r| !r.passed()).collect::<Vec<_>>());
        assert!(pass > 0);
    }

    #[test]
    fn keylemma_suite_passes() {
        let records = suite_keylemma();
        let (_, fail, _) = summarize(&records);
        assert_eq!(fail, 0, "{records:#?}");
    }

    #[test]
    fn symfunc_suite_passes() {
        let records = suite_symfunc(17);
        let (_, fail, _) = summarize(&records);
        assert_eq!(fail, 0);
    }

    #[test]
    fn macdonald_suite_small() {
        let records = suite_macdonald(3, 23);
        let (_, fail, _) = summarize(&records);
        assert_eq!(
            fail,
            0,
            "{:#?}",
            records.iter().filter(|r| !r.passed()).collect::<Vec<_>>()
        );
    }
}
