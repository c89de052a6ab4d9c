//! Sparse multivariate Laurent polynomials over the `q,t` coefficient field.
//!
//! Variables are indexed slots `x0..x{nvars-1}`; exponents may be negative.
//! Provides arithmetic, q-shifted-factorial builders for monomial ratios,
//! per-variable and total constant terms, and a pruned product pipeline for
//! large constant-term extractions.

use std::collections::HashMap;
use std::fmt;

use crate::arith::{BigRat, RatFunc};
use crate::Error;

/// Exponent vector: one integer slot per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(Vec<i64>);

impl ExpVec {
    pub fn zeros(nvars: usize) -> Self {
        ExpVec(vec![0; nvars])
    }

    /// Unit vector `e_i`.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut v = vec![0; nvars];
        v[i] = 1;
        ExpVec(v)
    }

    pub fn from_slice(v: &[i64]) -> Self {
        ExpVec(v.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, e: i64) {
        self.0[i] = e;
    }

    pub fn slots(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, o: &ExpVec) -> ExpVec {
        assert_eq!(self.0.len(), o.0.len(), "exponent vector length mismatch");
        ExpVec(
            self.0
                .iter()
                .zip(&o.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn neg(&self) -> ExpVec {
        ExpVec(self.0.iter().map(|e| -e).collect())
    }

    pub fn scale(&self, k: i64) -> ExpVec {
        ExpVec(
            self.0
                .iter()
                .map(|e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Total degree (sum of all slots).
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Sparse Laurent polynomial: map from exponent vectors to nonzero
/// [`RatFunc`] coefficients. All stored vectors have length `nvars`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: HashMap<ExpVec, RatFunc>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, RatFunc::one())
    }

    pub fn constant(nvars: usize, c: RatFunc) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(ExpVec::zeros(nvars), c);
        }
        p
    }

    pub fn monomial(nvars: usize, exp: ExpVec, c: RatFunc) -> Self {
        assert_eq!(exp.len(), nvars, "exponent vector length mismatch");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, ExpVec::unit(nvars, i), RatFunc::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExpVec) -> RatFunc {
        self.terms.get(exp).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn insert(&mut self, exp: ExpVec, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "nvars mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scalar_mul(&RatFunc::from_int(-1)))
    }

    pub fn scalar_mul(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "nvars mismatch");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars);
        }
        let (small, large) = if self.terms.len() <= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut out = Self::zero(self.nvars);
        out.terms.reserve(large.terms.len());
        for (e1, c1) in &small.terms {
            for (e2, c2) in &large.terms {
                out.insert(e1.add(e2), c1.mul(c2));
            }
        }
        out
    }

    /// Apply a map to every coefficient, dropping zeros. The map may fail
    /// (e.g. a pole under specialization).
    pub fn map_coeffs<F>(&self, mut f: F) -> Result<Self, Error>
    where
        F: FnMut(&RatFunc) -> Result<RatFunc, Error>,
    {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let c2 = f(c)?;
            if !c2.is_zero() {
                out.terms.insert(e.clone(), c2);
            }
        }
        Ok(out)
    }

    /// Constant term with respect to `x_i`: terms with exponent 0 in slot i.
    pub fn ct_var(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.get(i) == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Constant term over all variables: the coefficient of the zero vector.
    pub fn ct_all(&self) -> RatFunc {
        self.coeff(&ExpVec::zeros(self.nvars))
    }

    /// Exact (min, max) exponent of `x_i` across the terms.
    pub fn degree_in(&self, i: usize) -> Result<(i64, i64), Error> {
        assert!(i < self.nvars, "variable index out of range");
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut min = i64::MAX;
        let mut max = i64::MIN;
        for e in self.terms.keys() {
            min = min.min(e.get(i));
            max = max.max(e.get(i));
        }
        Ok((min, max))
    }

    /// Substitute `x_i = 1` (project slot i away, collecting terms).
    pub fn subst_one(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.set(i, 0);
            out.insert(e2, c.clone());
        }
        out
    }

    /// Relabel variables: term exponent `e` moves slot `i` to `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars, "permutation length mismatch");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut v = vec![0i64; self.nvars];
            for i in 0..self.nvars {
                v[perm[i]] = e.get(i);
            }
            out.insert(ExpVec(v), c.clone());
        }
        out
    }

    /// Exact evaluation with `x_i = xs[i]`, `q = q0`, `t = t0`.
    pub fn eval(&self, xs: &[BigRat], q0: &BigRat, t0: &BigRat) -> Result<BigRat, Error> {
        use num_traits::{One, Zero};
        assert_eq!(xs.len(), self.nvars, "need one value per variable");
        let mut acc = BigRat::zero();
        for (e, c) in &self.terms {
            let mut m = c.eval(q0, t0)?;
            for (i, x) in xs.iter().enumerate() {
                let exp = e.get(i);
                if exp == 0 {
                    continue;
                }
                if x.is_zero() {
                    return Err(Error::Pole(format!("x{i} = 0 with exponent {exp}")));
                }
                let mut p = BigRat::one();
                for _ in 0..exp.unsigned_abs() {
                    p *= x;
                }
                if exp < 0 {
                    p = p.recip();
                }
                m *= p;
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Sorted terms for deterministic rendering and comparison.
    pub fn sorted_terms(&self) -> Vec<(&ExpVec, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
}

/// Build `(coef * x^mono)_k = prod_{i=0}^{k-1} (1 - coef q^i x^mono)`.
pub fn qpoch_monomial(nvars: usize, coef: &RatFunc, mono: &ExpVec, k: i64) -> LaurentPoly {
    assert!(k >= 0, "qpoch_monomial requires k >= 0");
    assert_eq!(mono.len(), nvars, "exponent vector length mismatch");
    let mut acc = LaurentPoly::one(nvars);
    let mut cq = coef.clone();
    let q = RatFunc::q_pow(1);
    for _ in 0..k {
        let factor = LaurentPoly::one(nvars).sub(&LaurentPoly::monomial(
            nvars,
            mono.clone(),
            cq.clone(),
        ));
        acc = acc.mul(&factor);
        cq = cq.mul(&q);
    }
    acc
}

/// Constant term of a product of factors, pruning terms whose exponents can
/// no longer reach zero given the degree ranges of the unconsumed factors.
///
/// Returns the constant term and the peak intermediate term count.
pub fn ct_product(factors: &[&LaurentPoly]) -> (RatFunc, usize) {
    if factors.is_empty() {
        return (RatFunc::one(), 1);
    }
    let nvars = factors[0].nvars();
    for f in factors {
        assert_eq!(f.nvars(), nvars, "nvars mismatch");
        if f.is_zero() {
            return (RatFunc::zero(), 0);
        }
    }
    // bounds[j][v] = (min, max) exponent of variable v in factor j
    let bounds: Vec<Vec<(i64, i64)>> = factors
        .iter()
        .map(|f| {
            (0..nvars)
                .map(|v| f.degree_in(v).expect("nonzero factor"))
                .collect()
        })
        .collect();
    // suffix[k][v] = sum of bounds over factors k..end
    let mut suffix = vec![vec![(0i64, 0i64); nvars]; factors.len() + 1];
    for k in (0..factors.len()).rev() {
        for v in 0..nvars {
            suffix[k][v] = (
                suffix[k + 1][v].0 + bounds[k][v].0,
                suffix[k + 1][v].1 + bounds[k][v].1,
            );
        }
    }
    let mut acc = LaurentPoly::one(nvars);
    let mut peak = 1usize;
    for (k, f) in factors.iter().enumerate() {
        let rem = &suffix[k + 1];
        let mut next = LaurentPoly::zero(nvars);
        // multiply and prune in one pass
        let (small, large) = if acc.terms.len() <= f.terms.len() {
            (&acc, *f)
        } else {
            (*f, &acc)
        };
        for (e1, c1) in &small.terms {
            'terms: for (e2, c2) in &large.terms {
                let e = e1.add(e2);
                for (v, (lo, hi)) in rem.iter().enumerate() {
                    let ev = e.get(v);
                    if ev + hi < 0 || ev + lo > 0 {
                        continue 'terms;
                    }
                }
                next.insert(e, c1.mul(c2));
            }
        }
        acc = next;
        peak = peak.max(acc.num_terms());
        if acc.is_zero() {
            return (RatFunc::zero(), peak);
        }
    }
    (acc.ct_all(), peak)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms = self.sorted_terms();
        let mut first = true;
        for (e, c) in terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut mono = String::new();
            for (i, &exp) in e.slots().iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if exp == 1 {
                    mono.push_str(&format!("x{i}"));
                } else {
                    mono.push_str(&format!("x{i}^{exp}"));
                }
            }
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qpoch_scalar, rat};

    fn q() -> RatFunc {
        RatFunc::q_pow(1)
    }

    /// (x0/x1)_1 * (q x1/x0)_1 expanded by hand: 1 + q - q x1/x0 - x0/x1.
    fn hook(nvars: usize, i: usize, j: usize) -> LaurentPoly {
        let mut e = ExpVec::zeros(nvars);
        e.set(i, 1);
        e.set(j, -1);
        let a = qpoch_monomial(nvars, &RatFunc::one(), &e, 1);
        let b = qpoch_monomial(nvars, &q(), &e.neg(), 1);
        a.mul(&b)
    }

    #[test]
    fn mul_example() {
        // (1 - x0/x1)(1 - q x1/x0) = 1 + q - q x1/x0 - x0/x1
        let p = hook(2, 0, 1);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.ct_all(), RatFunc::one().add(&q()));
        let e = ExpVec::from_slice(&[-1, 1]);
        assert_eq!(p.coeff(&e), q().neg());
        assert_eq!(p.coeff(&e.neg()), RatFunc::from_int(-1));
    }

    #[test]
    fn mul_by_zero() {
        let p = hook(2, 0, 1);
        let z = LaurentPoly::zero(2);
        assert!(p.mul(&z).is_zero());
    }

    #[test]
    fn qpoch_monomial_examples() {
        // (x0/x1)_1 = 1 - x0/x1
        let e = ExpVec::from_slice(&[1, -1]);
        let p = qpoch_monomial(2, &RatFunc::one(), &e, 1);
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&e), RatFunc::from_int(-1));
        // (z)_0 = 1
        let p = qpoch_monomial(2, &RatFunc::one(), &e, 0);
        assert!(p.ct_all().is_one() && p.num_terms() == 1);
        // (q x1/x0)_2 = 1 - (q+q^2) x1/x0 + q^3 x1^2/x0^2
        let e = ExpVec::from_slice(&[-1, 1]);
        let p = qpoch_monomial(2, &q(), &e, 2);
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coeff(&e), q().add(&q().pow(2)).neg());
        assert_eq!(p.coeff(&e.scale(2)), q().pow(3));
        assert_eq!(p.degree_in(0).unwrap(), (-2, 0));
    }

    #[test]
    fn ct_examples() {
        let p = hook(2, 0, 1);
        let c = p.ct_var(0);
        // 1 + q survives (both terms have x0 exponent 0)
        assert_eq!(c.ct_all(), RatFunc::one().add(&q()));
        // constant stays put
        let k = LaurentPoly::constant(2, q());
        assert_eq!(k.ct_var(1), k);
        // full ct of the n=1, a=b=1, c=0 q-Morris integrand is 1 + q
        assert_eq!(p.ct_all(), RatFunc::one().add(&q()));
        // ct of 1 - x0/x1 is 1
        let e = ExpVec::from_slice(&[1, -1]);
        let p = qpoch_monomial(2, &RatFunc::one(), &e, 1);
        assert!(p.ct_all().is_one());
    }

    #[test]
    fn homogeneous_nonzero_degree_has_no_ct() {
        // x1/x0 * (anything homogeneous of nonzero total degree) -> ct 0
        let m = LaurentPoly::monomial(2, ExpVec::from_slice(&[1, 2]), q());
        assert!(m.ct_all().is_zero());
    }

    #[test]
    fn degree_examples() {
        let e = ExpVec::from_slice(&[1, -1]);
        let p = qpoch_monomial(2, &RatFunc::one(), &e, 1);
        assert_eq!(p.degree_in(0).unwrap(), (0, 1));
        let k = LaurentPoly::constant(2, RatFunc::one());
        assert_eq!(k.degree_in(0).unwrap(), (0, 0));
        assert!(LaurentPoly::zero(2).degree_in(0).is_err());
    }

    #[test]
    fn ct_var_commutes() {
        let p = hook(3, 0, 1).mul(&hook(3, 1, 2)).mul(&hook(3, 0, 2));
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(p.ct_var(i).ct_var(j), p.ct_var(j).ct_var(i));
                }
            }
        }
    }

    #[test]
    fn qpoch_monomial_matches_scalar_at_one() {
        // all x_i -> 1 turns (q^2 x^m)_3 into (q^2)_3
        let e = ExpVec::from_slice(&[2, -1]);
        let p = qpoch_monomial(2, &q().pow(2), &e, 3);
        let ones = vec![rat(1, 1), rat(1, 1)];
        let q0 = rat(2, 7);
        let got = p.eval(&ones, &q0, &rat(0, 1)).unwrap();
        let expect = qpoch_scalar(2, 3).unwrap().eval(&q0, &rat(0, 1)).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn ct_product_matches_full_expansion() {
        let f1 = hook(3, 0, 1);
        let f2 = hook(3, 1, 2);
        let f3 = hook(3, 0, 2);
        let full = f1.mul(&f2).mul(&f3).ct_all();
        let (pruned, peak) = ct_product(&[&f1, &f2, &f3]);
        assert_eq!(full, pruned);
        assert!(peak >= 1);
    }

    #[test]
    fn render_sorted() {
        let p = hook(2, 0, 1);
        let s = p.to_string();
        assert_eq!(s, "(-q)*x0^-1*x1 + (1 + q) + (-1)*x0*x1^-1");
    }
}
