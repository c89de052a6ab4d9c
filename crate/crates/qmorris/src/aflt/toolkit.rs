//! Proof toolkit: symmetrization of constant terms, the partial-fraction
//! splitting of the Dyson-style kernel, families of vanishing constant
//! terms, and the classification lemma for integer tuples with its
//! companion alphabet substitution.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{qpoch_scalar, BigRat, RatFunc};
use crate::laurent::{ct_product, qpoch_monomial, ExpVec, LaurentPoly};
use crate::macdonald::{skew, SkewKind};
use crate::partition::Partition;
use crate::report::CheckRecord;
use crate::symfunc::{h_in_p, sym_eval, Alphabet};
use crate::Error;

fn rat_i(n: i64) -> BigRat {
    BigRat::from_integer(n.into())
}

fn rand_rat(rng: &mut ChaCha8Rng) -> BigRat {
    let num = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = rng.gen_range(1..=9i64);
    BigRat::new(num.into(), den.into())
}

fn rand_distinct_rats(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRat> {
    let mut out: Vec<BigRat> = Vec::with_capacity(n);
    while out.len() < n {
        let r = rand_rat(rng);
        if !r.is_zero() && !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// Numeric q-shifted factorial `(z)_k` at a rational point.
fn num_qpoch(z: &BigRat, q0: &BigRat, k: i64) -> BigRat {
    let mut acc = BigRat::one();
    let mut zq = z.clone();
    for _ in 0..k {
        acc *= BigRat::one() - &zq;
        zq *= q0;
    }
    acc
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == v.len() {
            out.push(v.clone());
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            rec(v, k + 1, out);
            v.swap(k, i);
        }
    }
    let mut v: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    rec(&mut v, 0, &mut out);
    out
}

/// The Dyson-style kernel `prod_{i<j} (x_i/x_j)_c (q x_j/x_i)_c` over an
/// n-variable arena (slots are `x_1..x_n`).
pub(crate) fn pair_kernel(n: usize, c: i64) -> Vec<LaurentPoly> {
    let mut factors = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut e = ExpVec::zeros(n);
            e.set(i, 1);
            e.set(j, -1);
            factors.push(qpoch_monomial(n, &RatFunc::one(), &e, c));
            factors.push(qpoch_monomial(n, &RatFunc::q_pow(1), &e.neg(), c));
        }
    }
    factors
}

/// Symmetrization identity: for symmetric `f`,
/// `CT f prod_{i<j} (x_i/x_j)_c (q x_j/x_i)_c` equals
/// `(1/n!) prod_{i=1}^{n-1} (1-q^{(i+1)c})/(1-q^c)` times
/// `CT f prod_{i != j} (x_i/x_j)_c`. Also spot-checks the symmetric-group
/// kernel identity behind it by exact random evaluation.
pub fn verify_symmetrization(
    n: usize,
    c: i64,
    f: &LaurentPoly,
    seed: u64,
) -> Result<CheckRecord, Error> {
    let start = Instant::now();
    assert_eq!(f.nvars(), n, "f must live on an n-variable arena");
    if n == 0 || c < 1 {
        return Err(Error::Refused("symmetrization needs n >= 1, c >= 1".into()));
    }
    // adjacent transpositions generate the symmetric group
    for i in 0..n.saturating_sub(1) {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        if f.permute_vars(&perm) != *f {
            return Err(Error::Refused(format!(
                "f is not symmetric (transposition {i} <-> {})",
                i + 1
            )));
        }
    }
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("c".into(), c.to_string());
    params.insert("terms_f".into(), f.num_terms().to_string());

    // left side
    let mut factors = vec![f.clone()];
    factors.extend(pair_kernel(n, c));
    let refs: Vec<&LaurentPoly> = factors.iter().collect();
    let (lhs, peak1) = ct_product(&refs);

    // right side: full product over ordered pairs
    let mut factors = vec![f.clone()];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = ExpVec::zeros(n);
                e.set(i, 1);
                e.set(j, -1);
                factors.push(qpoch_monomial(n, &RatFunc::one(), &e, c));
            }
        }
    }
    let refs: Vec<&LaurentPoly> = factors.iter().collect();
    let (ct_full, peak2) = ct_product(&refs);
    let mut scale = RatFunc::from_int(factorial(n)).inverse();
    for i in 1..n as i64 {
        let num = RatFunc::one().sub(&RatFunc::q_pow((i + 1) * c));
        let den = RatFunc::one().sub(&RatFunc::q_pow(c));
        scale = scale.mul(&num.div(&den));
    }
    let rhs = scale.mul(&ct_full);

    let mut equal = lhs == rhs;
    let mut notes = String::new();
    if n <= 4 {
        let kernel_ok = verify_kernel_identity(n, c, seed)?;
        if !kernel_ok.equal {
            equal = false;
            notes.push_str("symmetric-group kernel identity failed; ");
        } else {
            notes.push_str("kernel identity spot-checked; ");
        }
    }

    let mut rec = CheckRecord::new("symmetrization", params);
    rec.lhs = lhs.to_string();
    rec.rhs = rhs.to_string();
    rec.equal = equal;
    rec.notes = notes;
    rec.millis = start.elapsed().as_millis();
    rec.terms_peak = peak1.max(peak2);
    Ok(rec)
}

/// The symmetric-group kernel identity
/// `sum_w w(prod_{i<j} (1-q^c x_j/x_i)/(1-x_j/x_i)) = prod_{i=1}^{n-1} (1-q^{(i+1)c})/(1-q^c)`,
/// checked exactly at random rational points.
pub fn verify_kernel_identity(n: usize, c: i64, seed: u64) -> Result<CheckRecord, Error> {
    let start = Instant::now();
    if n == 0 || c < 1 {
        return Err(Error::Refused("kernel identity needs n >= 1, c >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("c".into(), c.to_string());
    let perms = permutations(n);
    let mut checked = 0;
    let mut attempts = 0;
    let mut all_ok = true;
    let mut last = (String::new(), String::new());
    'points: while checked < 3 {
        attempts += 1;
        if attempts > 200 {
            return Err(Error::Pole("no pole-free sample points found".into()));
        }
        let mut vals = rand_distinct_rats(&mut rng, n + 1);
        let q0 = vals.pop().unwrap();
        if q0 == BigRat::one() {
            continue;
        }
        let mut qc = BigRat::one();
        for _ in 0..c {
            qc *= &q0;
        }
        let mut total = BigRat::zero();
        for w in &perms {
            let mut term = BigRat::one();
            for i in 0..n {
                for j in (i + 1)..n {
                    let ratio = &vals[w[j]] / &vals[w[i]];
                    let den = BigRat::one() - &ratio;
                    if den.is_zero() {
                        continue 'points;
                    }
                    term *= (BigRat::one() - &qc * &ratio) / den;
                }
            }
            total += term;
        }
        let mut expect = BigRat::one();
        let mut qic = qc.clone();
        for _ in 1..n {
            qic *= &qc;
            let den = BigRat::one() - &qc;
            if den.is_zero() {
                continue 'points;
            }
            expect *= (BigRat::one() - &qic) / den;
        }
        last = (total.to_string(), expect.to_string());
        if total != expect {
            all_ok = false;
            break;
        }
        checked += 1;
    }
    let mut rec = CheckRecord::new("sym-kernel", params);
    rec.lhs = last.0;
    rec.rhs = last.1;
    rec.equal = all_ok;
    rec.notes = format!("{checked} exact random points");
    rec.millis = start.elapsed().as_millis();
    Ok(rec)
}

/// Partial-fraction splitting of the Dyson kernel over `prod (z_i/w)_c`:
/// verifies the decomposition at exact random points and verifies that
/// every coefficient `A_ij` is a polynomial in `z_i`.
pub fn verify_cai_split(n: usize, c: i64, seed: u64) -> Result<CheckRecord, Error> {
    let start = Instant::now();
    if n < 1 || c < 1 {
        return Err(Error::Refused("splitting needs n >= 1, c >= 1".into()));
    }
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("c".into(), c.to_string());
    params.insert("seed".into(), seed.to_string());

    // Build every A_ij symbolically over the z arena.
    let mut coeffs: Vec<(usize, i64, LaurentPoly)> = Vec::new();
    let mut peak = 0usize;
    let mut notes = String::new();
    let mut ok = true;
    for i in 1..=n {
        for j in 0..c {
            let scalar = RatFunc::q_pow(c * ((j + 1) * n as i64 - i as i64 - j))
                .div(&qpoch_scalar(-j, j).expect("pole-free"))
                .div(&qpoch_scalar(1, c - j - 1).expect("pole-free"));
            let mut acc = LaurentPoly::constant(n, scalar);
            for l in 1..i {
                let mut e = ExpVec::zeros(n);
                e.set(i - 1, 1);
                e.set(l - 1, -1);
                acc = acc.mul(&qpoch_monomial(n, &RatFunc::q_pow(1 - c), &e, j));
                acc = acc.mul(&qpoch_monomial(n, &RatFunc::q_pow(j + 1), &e, c - j));
            }
            for l in (i + 1)..=n {
                let mut e = ExpVec::zeros(n);
                e.set(i - 1, 1);
                e.set(l - 1, -1);
                acc = acc.mul(&qpoch_monomial(n, &RatFunc::q_pow(-c), &e, j + 1));
                acc = acc.mul(&qpoch_monomial(n, &RatFunc::q_pow(j + 1), &e, c - j - 1));
            }
            for u in 1..=n {
                for v in (u + 1)..=n {
                    if u == i || v == i {
                        continue;
                    }
                    let mut e = ExpVec::zeros(n);
                    e.set(u - 1, 1);
                    e.set(v - 1, -1);
                    acc = acc.mul(&qpoch_monomial(n, &RatFunc::one(), &e, c));
                    acc = acc.mul(&qpoch_monomial(n, &RatFunc::q_pow(1), &e.neg(), c));
                }
            }
            peak = peak.max(acc.num_terms());
            let (zmin, _) = acc.degree_in(i - 1)?;
            if zmin < 0 {
                ok = false;
                notes.push_str(&format!("A_{i}{j} is not polynomial in z_{i}; "));
            }
            coeffs.push((i, j, acc));
        }
    }

    // Exact random-point comparison of both sides.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t0 = rat_i(0);
    let mut points_done = 0;
    let mut attempts = 0;
    let mut last = (String::new(), String::new());
    'outer: while points_done < 3 && attempts < 60 {
        attempts += 1;
        let mut vals = rand_distinct_rats(&mut rng, n + 2);
        let q0 = vals.pop().unwrap();
        let w0 = vals.pop().unwrap();
        if q0 == BigRat::one() || q0.is_zero() {
            continue;
        }
        let qpow = |k: i64| -> BigRat {
            let mut acc = BigRat::one();
            for _ in 0..k {
                acc *= &q0;
            }
            acc
        };
        // LHS = kernel / prod_i (z_i/w)_c
        let mut num = BigRat::one();
        for u in 0..n {
            for v in (u + 1)..n {
                num *= num_qpoch(&(&vals[u] / &vals[v]), &q0, c);
                num *= num_qpoch(&(&q0 * &vals[v] / &vals[u]), &q0, c);
            }
        }
        let mut den = BigRat::one();
        for z in vals.iter() {
            den *= num_qpoch(&(z / &w0), &q0, c);
        }
        if den.is_zero() {
            continue;
        }
        let lhs_val = num / den;
        // RHS = sum_ij A_ij / (1 - q^j z_i/w)
        let mut rhs_val = BigRat::zero();
        for (i, j, a) in &coeffs {
            let pole = BigRat::one() - qpow(*j) * &vals[i - 1] / &w0;
            if pole.is_zero() {
                continue 'outer;
            }
            let aval = a.eval(&vals, &q0, &t0)?;
            rhs_val += aval / pole;
        }
        last = (lhs_val.to_string(), rhs_val.to_string());
        if lhs_val != rhs_val {
            ok = false;
            notes.push_str("splitting identity failed at a sample point; ");
            break;
        }
        points_done += 1;
    }
    if points_done < 3 && ok {
        return Err(Error::Pole(
            "could not find enough pole-free sample points".into(),
        ));
    }

    let mut rec = CheckRecord::new("cai-split", params);
    rec.lhs = last.0;
    rec.rhs = last.1;
    rec.equal = ok;
    rec.notes = format!("{notes}{points_done} exact random points, all A_ij polynomial in z_i");
    rec.millis = start.elapsed().as_millis();
    rec.terms_peak = peak;
    Ok(rec)
}

/// Vanishing family: `CT z^{-v} h_lambda[(1-q^c)/(1-q) (z_1+..+z_n)]`
/// times the Dyson kernel is zero whenever `|v| = |lambda|` and
/// `lambda_1 > max(v)`.
pub fn verify_vanishing_h(
    n: usize,
    c: i64,
    v: &[i64],
    lambda: &Partition,
) -> Result<CheckRecord, Error> {
    let start = Instant::now();
    if v.len() != n {
        return Err(Error::Refused("need one exponent per variable".into()));
    }
    let total: i64 = v.iter().sum();
    if total != lambda.size() {
        return Err(Error::Refused("lemma needs |v| = |lambda|".into()));
    }
    let vmax = v.iter().copied().max().unwrap_or(0);
    if lambda.part(1) <= vmax {
        return Err(Error::Refused("lemma needs lambda_1 > max(v)".into()));
    }
    if c < 0 {
        return Err(Error::Refused("c must be nonnegative".into()));
    }
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("c".into(), c.to_string());
    params.insert("v".into(), format!("{v:?}"));
    params.insert("lambda".into(), lambda.to_string());

    let mut factors = Vec::new();
    let mono = ExpVec::from_slice(&v.iter().map(|&e| -e).collect::<Vec<_>>());
    factors.push(LaurentPoly::monomial(n, mono, RatFunc::one()));
    let mut alpha = Alphabet::new(n);
    for i in 0..n {
        alpha.push_geometric(
            RatFunc::one(),
            RatFunc::q_pow(c),
            RatFunc::q_pow(1),
            ExpVec::unit(n, i),
        );
    }
    for &part in lambda.parts() {
        factors.push(sym_eval(&h_in_p(part), &alpha));
    }
    factors.extend(pair_kernel(n, c));
    let refs: Vec<&LaurentPoly> = factors.iter().collect();
    let (ct, peak) = ct_product(&refs);

    let mut rec = CheckRecord::new("vanishing-h", params);
    rec.lhs = ct.to_string();
    rec.rhs = "0".into();
    rec.equal = ct.is_zero();
    rec.millis = start.elapsed().as_millis();
    rec.terms_peak = peak;
    Ok(rec)
}

/// Companion family with a skew Macdonald polynomial in place of
/// `h_lambda`: `CT x^{-v} P_{lambda/mu}(x; q, q^c)` times the kernel is
/// zero when `mu` sits inside `lambda`, `l(mu) < l(lambda)`,
/// `|lambda| - |mu| = |v|` and `lambda_{l(mu)+1} > max(v)`.
pub fn verify_vanishing_skew(
    n: usize,
    c: i64,
    v: &[i64],
    lambda: &Partition,
    mu: &Partition,
) -> Result<CheckRecord, Error> {
    let start = Instant::now();
    if v.len() != n {
        return Err(Error::Refused("need one exponent per variable".into()));
    }
    if !lambda.contains(mu) || mu.length() >= lambda.length() {
        return Err(Error::Refused(
            "needs mu inside lambda with l(mu) < l(lambda)".into(),
        ));
    }
    let total: i64 = v.iter().sum();
    if total != lambda.size() - mu.size() {
        return Err(Error::Refused("needs |lambda| - |mu| = |v|".into()));
    }
    let vmax = v.iter().copied().max().unwrap_or(0);
    if lambda.part(mu.length() + 1) <= vmax {
        return Err(Error::Refused(
            "needs lambda_{l(mu)+1} > max(v)".into(),
        ));
    }
    if c < 1 {
        return Err(Error::Refused("c must be at least 1".into()));
    }
    let mut params = BTreeMap::new();
    params.insert("n".into(), n.to_string());
    params.insert("c".into(), c.to_string());
    params.insert("v".into(), format!("{v:?}"));
    params.insert("lambda".into(), lambda.to_string());
    params.insert("mu".into(), mu.to_string());

    let mut factors = Vec::new();
    let mono = ExpVec::from_slice(&v.iter().map(|&e| -e).collect::<Vec<_>>());
    factors.push(LaurentPoly::monomial(n, mono, RatFunc::one()));
    let skewp = skew(lambda, mu, SkewKind::P).specialize_t(c as u32)?;
    factors.push(sym_eval(&skewp, &Alphabet::plain_vars(n, 0..n)));
    factors.extend(pair_kernel(n, c));
    let refs: Vec<&LaurentPoly> = factors.iter().collect();
    let (ct, peak) = ct_product(&refs);

    let mut rec = CheckRecord::new("vanishing-skew", params);
    rec.lhs = ct.to_string();
    rec.rhs = "0".into();
    rec.equal = ct.is_zero();
    rec.millis = start.elapsed().as_millis();
    rec.terms_peak = peak;
    Ok(rec)
}

/// Outcome of the classification of a tuple `k_1..k_s` with
/// `1 <= k_i <= (s-1)c + b + t`. Indices are 1-based as in the statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KeyCase {
    /// Some `k_i` lies in `[1, b]`.
    Case1 { i: usize },
    /// Some pair `i < j` has `-c <= k_i - k_j <= c - 1`.
    Case2 { i: usize, j: usize },
    /// A permutation `w` (as the 1-based image list `w(1..s)`) and
    /// nonnegative `t_1..t_s` with `k_{w(1)} = b + t_1`,
    /// `k_{w(j)} - k_{w(j-1)} = c + t_j`, `1 <= sum t_j <= t`, and
    /// `t_j > 0` whenever `w(j-1) < w(j)` (with `w(0) = 0`).
    Case3 { w: Vec<usize>, tvec: Vec<i64> },
}

/// Classify a tuple per the distribution lemma, returning a verified
/// witness for one of the three cases.
pub fn key_lemma_classify(k: &[i64], b: i64, c: i64, t: i64) -> Result<KeyCase, Error> {
    let s = k.len();
    if s == 0 {
        return Err(Error::Refused("need at least one k_i".into()));
    }
    let upper = (s as i64 - 1) * c + b + t;
    if k.iter().any(|&ki| ki < 1 || ki > upper) {
        return Err(Error::Refused(format!(
            "every k_i must satisfy 1 <= k_i <= (s-1)c+b+t = {upper}"
        )));
    }
    // Case 1
    for (i, &ki) in k.iter().enumerate() {
        if (1..=b).contains(&ki) {
            return Ok(KeyCase::Case1 { i: i + 1 });
        }
    }
    // Case 2
    for i in 0..s {
        for j in (i + 1)..s {
            let d = k[i] - k[j];
            if -c <= d && d < c {
                return Ok(KeyCase::Case2 { i: i + 1, j: j + 1 });
            }
        }
    }
    // Case 3: the weighted tournament on the indices is transitive; its
    // Hamilton path gives the permutation.
    let mut w: Vec<usize> = (0..s).collect();
    w.sort_by(|&u, &v| {
        // edge u -> v means u precedes v on the path
        let uv = (u < v && k[u] - k[v] < -c) || (u > v && k[v] - k[u] >= c);
        if uv {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let mut tvec = Vec::with_capacity(s);
    tvec.push(k[w[0]] - b);
    for j in 1..s {
        tvec.push(k[w[j]] - k[w[j - 1]] - c);
    }
    // verify the witness
    let sum: i64 = tvec.iter().sum();
    let mut valid = tvec.iter().all(|&tj| tj >= 0) && sum >= 1 && sum <= t;
    // w(0) := 0 with 1-based w values: the first step is always an ascent
    if tvec[0] <= 0 {
        valid = false;
    }
    for j in 1..s {
        if w[j - 1] < w[j] && tvec[j] <= 0 {
            valid = false;
        }
    }
    if !valid {
        return Err(Error::Refused(format!(
            "no case applies to k={k:?} with b={b} c={c} t={t} (witness check failed)"
        )));
    }
    Ok(KeyCase::Case3 {
        w: w.iter().map(|&u| u + 1).collect(),
        tvec,
    })
}

/// Outcome of the alphabet substitution check: the substituted expression
/// collapses to a sum of `t - 1` distinct powers of q.
#[derive(Clone, Debug)]
pub struct SubsReport {
    pub value: RatFunc,
    pub exponents: Vec<i64>,
    pub expected_cardinality: i64,
    pub ok: bool,
}

/// Substituting `a = -((s-1)c+b+t)` and `x_i = q^{k_s - k_i}` (with
/// `k_0 = 0`) into `-(q^{c-b-1}-q^a)/(1-q) x_0 - sum (1-q^c)/(1-q) x_i`
/// yields `q^{n_1} + ... + q^{n_{t-1}}` with distinct integer exponents
/// (empty when `t = 1`). Requires a Case-3 tuple.
pub fn subs_alphabet_check(s: usize, b: i64, c: i64, t: i64, k: &[i64]) -> Result<SubsReport, Error> {
    if k.len() != s || t < 1 {
        return Err(Error::Refused("need s components and t >= 1".into()));
    }
    match key_lemma_classify(k, b, c, t)? {
        KeyCase::Case3 { .. } => {}
        other => {
            return Err(Error::Refused(format!(
                "tuple is not in Case 3 (classified as {other:?})"
            )))
        }
    }
    let ks = k[s - 1];
    // q^{k_s}/(1-q) (q^{-(s-1)c-b-t} - q^{c-b-1} - sum_i (1-q^c) q^{-k_i})
    let mut bracket = RatFunc::q_pow(-(s as i64 - 1) * c - b - t).sub(&RatFunc::q_pow(c - b - 1));
    let one_minus_qc = RatFunc::one().sub(&RatFunc::q_pow(c));
    for &ki in k {
        bracket = bracket.sub(&one_minus_qc.mul(&RatFunc::q_pow(-ki)));
    }
    let value = RatFunc::q_pow(ks)
        .div(&RatFunc::one().sub(&RatFunc::q_pow(1)))
        .mul(&bracket);

    // the canonical form must be a sum of monomials q^{n_i}, all with
    // coefficient 1, over a pure q-power denominator
    let mut exponents = Vec::new();
    let mut ok = true;
    let den_mono = value.den().num_terms() == 1
        && value
            .den()
            .leading()
            .is_some_and(|(_, c)| c == &num_bigint::BigInt::from(1));
    if !den_mono {
        ok = false;
    } else {
        let shift = value.den().leading().map(|((dq, _), _)| *dq as i64).unwrap();
        for ((dq, dt), coef) in value.num().terms() {
            if *dt != 0 || coef != &num_bigint::BigInt::from(1) {
                ok = false;
            }
            exponents.push(*dq as i64 - shift);
        }
    }
    exponents.sort_unstable();
    let distinct = {
        let mut e = exponents.clone();
        e.dedup();
        e.len() == exponents.len()
    };
    ok = ok && distinct && exponents.len() as i64 == t - 1;
    Ok(SubsReport {
        value,
        exponents,
        expected_cardinality: t - 1,
        ok,
    })
}
