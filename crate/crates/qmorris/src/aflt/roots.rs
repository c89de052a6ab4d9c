//! Root sets of `A_n(a,b,c,lambda,mu)` viewed as a polynomial in `q^a`, and
//! the exact interpolation that extends the constant term to negative `a`.

use crate::arith::RatFunc;
use crate::Error;

use super::identity::{lhs_value, rhs_aflt};
use super::AfltParams;

/// The three families of roots in the variable `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSets {
    pub a1: Vec<i64>,
    pub a2: Vec<i64>,
    pub a3: Vec<i64>,
}

impl RootSets {
    pub fn union(&self) -> Vec<i64> {
        let mut v = self.a1.clone();
        v.extend(&self.a2);
        v.extend(&self.a3);
        v
    }

    /// All elements distinct across the union (guaranteed when
    /// `c > b + lambda_1 + mu_1`).
    pub fn all_distinct(&self) -> bool {
        let mut v = self.union();
        let len = v.len();
        v.sort_unstable();
        v.dedup();
        v.len() == len
    }

    /// The three families pairwise share no element.
    pub fn pairwise_disjoint(&self) -> bool {
        let sets = [&self.a1, &self.a2, &self.a3];
        for i in 0..3 {
            for j in (i + 1)..3 {
                if sets[i].iter().any(|x| sets[j].contains(x)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Instantiate the root families:
/// `A1 = {-ic-1..-ic-b : i < n}`,
/// `A2 = {-(i-1)c..-(i-1)c+lambda_i-1 : i <= l(lambda)}`,
/// `A3 = {-(n-j)c-b-1..-(n-j)c-b-mu_j : j <= l(mu)}`.
pub fn root_sets(p: &AfltParams) -> RootSets {
    let n = p.n as i64;
    let (b, c) = (p.b, p.c);
    let mut a1 = Vec::new();
    for i in 0..n {
        for k in 1..=b {
            a1.push(-i * c - k);
        }
    }
    let mut a2 = Vec::new();
    for i in 1..=(p.lambda.length() as i64) {
        let li = p.lambda.part(i as usize);
        for k in 0..li {
            a2.push(-(i - 1) * c + k);
        }
    }
    let mut a3 = Vec::new();
    for j in 1..=(p.mu.length() as i64) {
        let mj = p.mu.part(j as usize);
        for k in 1..=mj {
            a3.push(-(n - j) * c - b - k);
        }
    }
    RootSets { a1, a2, a3 }
}

/// Polynomial in the symbol `y = q^a` with coefficients exact in `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct QaPoly(pub Vec<RatFunc>);

impl QaPoly {
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Evaluate at `y = q^a` for an integer `a` (negative allowed).
    pub fn eval_at_qa(&self, a: i64) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (k, c) in self.0.iter().enumerate() {
            acc = acc.add(&c.mul(&RatFunc::q_pow(a * k as i64)));
        }
        acc
    }
}

/// Newton interpolation over the rational-function field.
fn interpolate(xs: &[RatFunc], ys: &[RatFunc]) -> QaPoly {
    let n = xs.len();
    let mut dd: Vec<RatFunc> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = dd[i].sub(&dd[i - 1]);
            let den = xs[i].sub(&xs[i - level]);
            dd[i] = num.div(&den);
        }
    }
    let mut coeffs = vec![RatFunc::zero(); n];
    let mut basis = vec![RatFunc::one()];
    for (i, d) in dd.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            coeffs[j] = coeffs[j].add(&b.mul(d));
        }
        if i + 1 < n {
            let mut next = vec![RatFunc::zero(); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] = next[j + 1].add(b);
                next[j] = next[j].sub(&b.mul(&xs[i]));
            }
            basis = next;
        }
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    QaPoly(coeffs)
}

/// Interpolate `A_n(a, ...)` as a polynomial in `q^a` through the given
/// nonnegative sample values of `a`. The first `nb+|lambda|+|mu|+1` samples
/// pin the polynomial; every further sample is checked for consistency.
pub fn poly_interpolate(p: &AfltParams, sample_as: &[i64]) -> Result<QaPoly, Error> {
    let degree_bound = (p.n as i64) * p.b + p.lambda.size() + p.mu.size();
    let needed = (degree_bound + 1) as usize;
    if sample_as.len() < needed {
        return Err(Error::Refused(format!(
            "need at least {needed} sample points for degree bound {degree_bound}"
        )));
    }
    {
        let mut s = sample_as.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != sample_as.len() || s.iter().any(|&a| a < 0) {
            return Err(Error::Refused(
                "sample points must be distinct nonnegative integers".into(),
            ));
        }
    }
    let mut values = Vec::with_capacity(sample_as.len());
    for &a in sample_as {
        let mut q = p.clone();
        q.a = a;
        values.push(lhs_value(&q)?);
    }
    let xs: Vec<RatFunc> = sample_as[..needed]
        .iter()
        .map(|&a| RatFunc::q_pow(a))
        .collect();
    let poly = interpolate(&xs, &values[..needed]);
    if poly.degree() as i64 > degree_bound && !poly.is_zero() {
        return Err(Error::Refused(format!(
            "interpolated degree {} exceeds the bound {degree_bound}",
            poly.degree()
        )));
    }
    for (i, &a) in sample_as.iter().enumerate().skip(needed) {
        if poly.eval_at_qa(a) != values[i] {
            return Err(Error::Refused(format!(
                "extra sample a={a} disagrees with the interpolated polynomial"
            )));
        }
    }
    Ok(poly)
}

/// Outcome of the root verification.
#[derive(Clone, Debug)]
pub struct RootsReport {
    pub params: AfltParams,
    pub roots: RootSets,
    pub degree_bound: i64,
    pub actual_degree: usize,
    pub pairwise_disjoint: bool,
    pub all_distinct: bool,
    pub failures: Vec<String>,
}

impl RootsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.pairwise_disjoint && self.all_distinct
    }
}

/// Check every claimed root of the interpolated polynomial: nonnegative
/// roots directly through the constant term, negative roots through the
/// closed form and through the interpolation.
pub fn verify_roots(p: &AfltParams) -> Result<RootsReport, Error> {
    if p.c <= p.b + p.lambda.part(1) + p.mu.part(1) {
        return Err(Error::Refused(format!(
            "root determination assumes c > b + lambda_1 + mu_1 (c={}, bound={})",
            p.c,
            p.b + p.lambda.part(1) + p.mu.part(1)
        )));
    }
    if p.lambda.length() > p.n {
        return Err(Error::Refused(
            "the constant term vanishes identically for l(lambda) > n".into(),
        ));
    }
    let roots = root_sets(p);
    let degree_bound = (p.n as i64) * p.b + p.lambda.size() + p.mu.size();
    // samples 0..=bound plus one consistency point
    let samples: Vec<i64> = (0..=degree_bound + 1).collect();
    let poly = poly_interpolate(p, &samples)?;
    let mut failures = Vec::new();
    if roots.union().len() as i64 != degree_bound {
        failures.push(format!(
            "root count {} differs from degree bound {degree_bound}",
            roots.union().len()
        ));
    }
    // the polynomial is nonzero here, so its degree must exactly fill the
    // root count (this is what pins it up to a constant)
    if poly.degree() as i64 != degree_bound {
        failures.push(format!(
            "interpolated degree {} does not fill the bound {degree_bound}",
            poly.degree()
        ));
    }
    for a in roots.union() {
        if a >= 0 {
            let mut pa = p.clone();
            pa.a = a;
            if !lhs_value(&pa)?.is_zero() {
                failures.push(format!("constant term nonzero at a={a}"));
            }
        } else {
            let mut pa = p.clone();
            pa.a = a;
            if !rhs_aflt(&pa)?.is_zero() {
                failures.push(format!("closed form nonzero at a={a}"));
            }
        }
        if !poly.eval_at_qa(a).is_zero() {
            failures.push(format!("interpolated polynomial nonzero at a={a}"));
        }
    }
    Ok(RootsReport {
        params: p.clone(),
        degree_bound,
        actual_degree: poly.degree(),
        pairwise_disjoint: roots.pairwise_disjoint(),
        all_distinct: roots.all_distinct(),
        roots,
        failures,
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

    #[test]
    fn root_set_examples() {
        let r = root_sets(&prm(1, 0, 2, 5, &[], &[]));
        assert_eq!(r.a1, vec![-1, -2]);
        assert!(r.a2.is_empty() && r.a3.is_empty());
        let r = root_sets(&prm(1, 0, 0, 5, &[1], &[]));
        assert_eq!(r.a2, vec![0]);
        let r = root_sets(&prm(2, 0, 0, 7, &[], &[1]));
        assert_eq!(r.a3, vec![-8]);
    }

    #[test]
    fn distinctness_under_large_c() {
        let p = prm(2, 0, 1, 5, &[2], &[1]);
        assert!(p.c > p.b + p.lambda.part(1) + p.mu.part(1));
        let r = root_sets(&p);
        assert!(r.all_distinct());
        assert!(r.pairwise_disjoint());
        assert_eq!(
            r.union().len() as i64,
            2 * p.b + p.lambda.size() + p.mu.size()
        );
    }

    #[test]
    fn interpolation_constant_case() {
        // b = 0 and empty partitions: A_1(a, 0, c) = 1, degree 0
        let p = prm(1, 0, 0, 2, &[], &[]);
        let poly = poly_interpolate(&p, &[0, 1]).unwrap();
        assert_eq!(poly.degree(), 0);
        assert!(poly.eval_at_qa(5).is_one());
        assert!(poly.eval_at_qa(-3).is_one());
    }

    #[test]
    fn interpolation_degree_and_consistency() {
        // n=1, b=1: degree <= 1 polynomial through a = 0,1,2; the third
        // point is the consistency sample
        let p = prm(1, 0, 1, 1, &[], &[]);
        let poly = poly_interpolate(&p, &[0, 1, 2]).unwrap();
        assert!(poly.degree() <= 1);
        // evaluating anywhere matches the q-Morris closed form
        for a in 0..4 {
            let direct = super::super::identity::rhs_qmorris(1, a, 1, 1);
            assert_eq!(poly.eval_at_qa(a), direct, "a={a}");
        }
    }

    #[test]
    fn interpolation_zero_polynomial() {
        // l(lambda) > n forces the zero integrand at every sample
        let p = prm(1, 0, 1, 1, &[1, 1], &[]);
        let poly = poly_interpolate(&p, &[0, 1, 2, 3, 4]).unwrap();
        assert!(poly.is_zero());
        assert!(poly.eval_at_qa(7).is_zero());
    }

    #[test]
    fn nonnegative_root_kills_constant_term() {
        // n=1, b=0, c=2, lambda=(1): a = 0 sits in the second root family
        let mut p = prm(1, 0, 0, 2, &[1], &[]);
        p.a = 0;
        assert!(super::super::identity::lhs_value(&p).unwrap().is_zero());
    }

    #[test]
    fn negative_root_through_interpolation() {
        // n=1, b=1, empty partitions: a = -1 is a root of the first family
        let p = prm(1, 0, 1, 3, &[], &[]);
        let poly = poly_interpolate(&p, &[0, 1, 2]).unwrap();
        assert!(poly.eval_at_qa(-1).is_zero());
        let mut at = p.clone();
        at.a = -1;
        assert!(super::super::identity::rhs_aflt(&at).unwrap().is_zero());
    }

    #[test]
    fn positive_roots_for_long_mu() {
        // l(mu) > n puts positive values in the third family; the constant
        // term vanishes there directly
        let p = prm(1, 0, 0, 4, &[], &[1, 1]);
        let r = root_sets(&p);
        assert!(r.a3.contains(&3));
        let mut at = p.clone();
        at.a = 3;
        assert!(super::super::identity::lhs_value(&at).unwrap().is_zero());
        let rep = verify_roots(&p).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn verify_roots_small() {
        // n=1, b=1, lambda=(1): c must exceed b + 1 = 2
        let p = prm(1, 0, 1, 3, &[1], &[]);
        let rep = verify_roots(&p).unwrap();
        assert!(rep.passed(), "failures: {:?}", rep.failures);
        assert_eq!(rep.actual_degree as i64, rep.degree_bound);
        // refused when c is too small
        assert!(verify_roots(&prm(1, 0, 1, 2, &[1], &[])).is_err());
    }
}
