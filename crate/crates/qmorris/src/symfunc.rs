//! Symmetric functions in the power-sum basis over the q,t coefficient
//! field, plethystic alphabets and evaluation, the q,t-Hall scalar product,
//! and the omega_{u,v} endomorphism.
//!
//! A [`SymF`] stores one homogeneous degree as a map from index partitions
//! (of `p_lambda`) to coefficients. Alphabets are finite lists of letters;
//! each letter contributes to `p_r` as
//!
//! ```text
//! linear * scale^r * (1 - u^r)/(1 - v^r) * x^(r*mono)
//! ```
//!
//! where the geometric pair `(u, v)` is optional. Plain letters use `scale`,
//! binomial elements use `linear`, and division alphabets like
//! `(1-t)X/(1-q)` use the geometric pair, so every alphabet in the pipeline
//! has exact closed-form weights.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{BigRat, RatFunc};
use crate::laurent::{ExpVec, LaurentPoly};
use crate::partition::{partitions_of, Partition};

/// Homogeneous symmetric function in the power-sum basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymF {
    degree: i64,
    coeffs: BTreeMap<Partition, RatFunc>,
}

impl SymF {
    pub fn zero(degree: i64) -> Self {
        SymF {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant symmetric function 1 (degree 0).
    pub fn one() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Partition::empty(), RatFunc::one());
        SymF { degree: 0, coeffs }
    }

    /// `p_lambda` with coefficient 1.
    pub fn p_lambda(lambda: &Partition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(lambda.clone(), RatFunc::one());
        SymF {
            degree: lambda.size(),
            coeffs,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, lambda: &Partition) -> RatFunc {
        self.coeffs
            .get(lambda)
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Partition, &RatFunc)> {
        self.coeffs.iter()
    }

    pub fn set_coeff(&mut self, lambda: Partition, c: RatFunc) {
        assert_eq!(lambda.size(), self.degree, "index partition size mismatch");
        if c.is_zero() {
            self.coeffs.remove(&lambda);
        } else {
            self.coeffs.insert(lambda, c);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "degree mismatch");
        let mut out = self.clone();
        for (l, c) in &o.coeffs {
            let sum = out.coeff(l).add(c);
            out.set_coeff(l.clone(), sum);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scalar_mul(&RatFunc::from_int(-1)))
    }

    pub fn scalar_mul(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        SymF {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, a)| (l.clone(), a.mul(c)))
                .collect(),
        }
    }

    /// Substitute `t -> q^c` in every coefficient.
    pub fn specialize_t(&self, c: u32) -> Result<Self, crate::Error> {
        let mut out = SymF::zero(self.degree);
        for (l, a) in &self.coeffs {
            let s = a.specialize_t(c)?;
            if !s.is_zero() {
                out.coeffs.insert(l.clone(), s);
            }
        }
        Ok(out)
    }

    /// Swap q and t in every coefficient.
    pub fn swap_qt(&self) -> Self {
        SymF {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, a)| (l.clone(), a.swap_qt()))
                .collect(),
        }
    }

    /// Lines `(<coef>) * p[<lambda>]` sorted by index partition.
    pub fn render_p_basis(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|(l, c)| format!("({c}) * p[{l}]"))
            .collect()
    }
}

impl fmt::Display for SymF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.render_p_basis().join(" + "))
    }
}

/// Product in the p-basis: concatenate and re-sort index partitions.
pub fn mul_symf(f: &SymF, g: &SymF) -> SymF {
    let mut out = SymF::zero(f.degree + g.degree);
    for (l1, c1) in &f.coeffs {
        for (l2, c2) in &g.coeffs {
            let mut parts: Vec<i64> = l1.parts().to_vec();
            parts.extend_from_slice(l2.parts());
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let idx = Partition::new(parts);
            let sum = out.coeff(&idx).add(&c1.mul(c2));
            out.set_coeff(idx, sum);
        }
    }
    out
}

/// `z_lambda = prod_i i^{m_i} m_i!`.
pub fn z_lambda(lambda: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut run = 0u32;
    let parts = lambda.parts();
    for (i, &p) in parts.iter().enumerate() {
        run += 1;
        let next_differs = i + 1 == parts.len() || parts[i + 1] != p;
        if next_differs {
            for j in 1..=run {
                z *= BigInt::from(p) * BigInt::from(j);
            }
            run = 0;
        }
    }
    z
}

/// q,t-Hall scalar product: `<p_l, p_m> = delta z_l prod (1-q^{l_i})/(1-t^{l_i})`,
/// extended bilinearly. Different degrees pair to zero.
pub fn hall_scalar(f: &SymF, g: &SymF) -> RatFunc {
    if f.degree != g.degree {
        return RatFunc::zero();
    }
    let mut acc = RatFunc::zero();
    for (l, c1) in &f.coeffs {
        let c2 = g.coeff(l);
        if c2.is_zero() {
            continue;
        }
        let mut w = RatFunc::from_poly(crate::arith::QtPoly::constant(z_lambda(l)));
        for &p in l.parts() {
            let num = RatFunc::one().sub(&RatFunc::q_pow(p));
            let den = RatFunc::one().sub(&RatFunc::t_pow(p));
            w = w.mul(&num).div(&den);
        }
        acc = acc.add(&c1.mul(&c2).mul(&w));
    }
    acc
}

/// `omega_{u,v}`: multiplies the `p_lambda` coefficient by
/// `(-1)^{|lambda|-l(lambda)} prod (1-u^{lambda_i})/(1-v^{lambda_i})`.
///
/// # Panics
/// Panics if `v = 1` or `v = -1` (the endomorphism is undefined there).
pub fn omega_uv(f: &SymF, u: &RatFunc, v: &RatFunc) -> SymF {
    assert!(
        *v != RatFunc::one() && *v != RatFunc::from_int(-1),
        "omega_uv requires v != +-1"
    );
    let mut out = SymF::zero(f.degree);
    for (l, c) in &f.coeffs {
        let sign = if (l.size() - l.length() as i64) % 2 == 0 {
            RatFunc::one()
        } else {
            RatFunc::from_int(-1)
        };
        let mut w = sign;
        for &p in l.parts() {
            let num = RatFunc::one().sub(&u.pow(p));
            let den = RatFunc::one().sub(&v.pow(p));
            w = w.mul(&num).div(&den);
        }
        out.set_coeff(l.clone(), c.mul(&w));
    }
    out
}

// ---------------------------------------------------------------------------
// Basis conversions via per-degree transition tables.
// ---------------------------------------------------------------------------

/// Transition data at one degree: partitions of `d` in lexicographic order,
/// the p->m matrix (rows are `p_rho` in m-coordinates) and its inverse.
pub(crate) struct DegreeTables {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    pub p_to_m: Vec<Vec<BigRat>>,
    pub m_to_p: Vec<Vec<BigRat>>,
}

static TABLES: RwLock<Option<HashMap<i64, Arc<DegreeTables>>>> = RwLock::new(None);

/// Coefficient of `m_nu` in `m_mu * p_r`, computed in the nu-frame with `n`
/// variable slots: count slots of nu (padded to length n) whose value w
/// satisfies w >= r and removing r from one such slot re-sorts to mu.
fn mul_pr_coeff(nu: &Partition, mu: &Partition, r: i64, n: usize) -> i64 {
    let mut padded: Vec<i64> = nu.parts().to_vec();
    padded.resize(n, 0);
    let mut count = 0i64;
    let mut seen: Vec<i64> = Vec::new();
    for i in 0..n {
        let w = padded[i];
        if w < r || seen.contains(&w) {
            continue;
        }
        seen.push(w);
        let mut cand = padded.clone();
        cand[i] = w - r;
        cand.sort_unstable_by(|a, b| b.cmp(a));
        while cand.last() == Some(&0) {
            cand.pop();
        }
        if cand == mu.parts() {
            count += padded.iter().filter(|&&x| x == w).count() as i64;
        }
    }
    count
}

fn build_tables(d: i64) -> DegreeTables {
    let parts = partitions_of(d);
    let index: HashMap<Partition, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let n = d.max(1) as usize; // variable count: faithful at this degree
    let mut p_to_m = Vec::with_capacity(parts.len());
    for rho in &parts {
        // expand p_rho = p_{rho_1} p_{rho_2} ... iteratively in m-coordinates
        let mut cur: BTreeMap<Partition, BigRat> = BTreeMap::new();
        cur.insert(Partition::empty(), BigRat::one());
        for &r in rho.parts() {
            let mut next: BTreeMap<Partition, BigRat> = BTreeMap::new();
            for (mu, c) in &cur {
                // candidate nu: add r to one distinct slot value of mu
                let mut padded: Vec<i64> = mu.parts().to_vec();
                padded.resize(n, 0);
                let mut values: Vec<i64> = padded.clone();
                values.sort_unstable();
                values.dedup();
                for &v in &values {
                    let mut cand = padded.clone();
                    let pos = cand.iter().position(|&x| x == v).unwrap();
                    cand[pos] = v + r;
                    cand.sort_unstable_by(|a, b| b.cmp(a));
                    while cand.last() == Some(&0) {
                        cand.pop();
                    }
                    let nu = Partition::new(cand);
                    let mult = mul_pr_coeff(&nu, mu, r, n);
                    if mult != 0 {
                        let add = c * BigRat::from(BigInt::from(mult));
                        *next.entry(nu).or_insert_with(BigRat::zero) += add;
                    }
                }
            }
            cur = next;
        }
        let mut row = vec![BigRat::zero(); parts.len()];
        for (nu, c) in cur {
            row[index[&nu]] = c;
        }
        p_to_m.push(row);
    }
    let m_to_p = invert_matrix(&p_to_m);
    DegreeTables {
        parts,
        index,
        p_to_m,
        m_to_p,
    }
}

fn invert_matrix(m: &[Vec<BigRat>]) -> Vec<Vec<BigRat>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRat>> = m.to_vec();
    let mut inv: Vec<Vec<BigRat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRat::one() } else { BigRat::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("transition matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let av = &a[col][j] * &f;
                    a[r][j] -= av;
                    let iv = &inv[col][j] * &f;
                    inv[r][j] -= iv;
                }
            }
        }
    }
    inv
}

pub(crate) fn degree_tables(d: i64) -> Arc<DegreeTables> {
    {
        let guard = TABLES.read().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(t) = map.get(&d) {
                return Arc::clone(t);
            }
        }
    }
    let built = Arc::new(build_tables(d));
    let mut guard = TABLES.write().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    Arc::clone(map.entry(d).or_insert(built))
}

/// The monomial symmetric function `m_lambda` in the power-sum basis.
pub fn m_in_p(lambda: &Partition) -> SymF {
    let d = lambda.size();
    let tables = degree_tables(d);
    let row = &tables.m_to_p[tables.index[lambda]];
    let mut out = SymF::zero(d);
    for (j, c) in row.iter().enumerate() {
        if !c.is_zero() {
            out.set_coeff(tables.parts[j].clone(), RatFunc::from_bigrat(c));
        }
    }
    out
}

/// Expansion of a p-basis symmetric function in monomial coordinates.
pub fn m_coords(f: &SymF) -> BTreeMap<Partition, RatFunc> {
    let tables = degree_tables(f.degree);
    let mut out: BTreeMap<Partition, RatFunc> = BTreeMap::new();
    for (rho, c) in f.coeffs() {
        let row = &tables.p_to_m[tables.index[rho]];
        for (j, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let add = c.mul(&RatFunc::from_bigrat(a));
            let entry = out
                .entry(tables.parts[j].clone())
                .or_insert_with(RatFunc::zero);
            *entry = entry.add(&add);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// The complete symmetric function `h_r = sum_{rho |- r} p_rho / z_rho`.
pub fn h_in_p(r: i64) -> SymF {
    assert!(r >= 0);
    let mut out = SymF::zero(r);
    for rho in partitions_of(r) {
        let z = z_lambda(&rho);
        out.set_coeff(rho, RatFunc::from_bigrat(&BigRat::new(BigInt::one(), z)));
    }
    out
}

/// The modified complete symmetric function `g_r = h_r[(1-t)X/(1-q)]`: each
/// `p_rho` coefficient of `h_r` picks up `prod_i (1-t^{rho_i})/(1-q^{rho_i})`.
pub fn g_in_p(r: i64) -> SymF {
    let h = h_in_p(r);
    let mut out = SymF::zero(r);
    for (rho, c) in h.coeffs() {
        let mut w = c.clone();
        for &p in rho.parts() {
            let num = RatFunc::one().sub(&RatFunc::t_pow(p));
            let den = RatFunc::one().sub(&RatFunc::q_pow(p));
            w = w.mul(&num).div(&den);
        }
        out.set_coeff(rho.clone(), w);
    }
    out
}

/// `g_lambda = prod g_{lambda_i}` in the p-basis.
pub fn g_lambda_in_p(lambda: &Partition) -> SymF {
    let mut acc = SymF::one();
    for &p in lambda.parts() {
        acc = mul_symf(&acc, &g_in_p(p));
    }
    acc
}

// ---------------------------------------------------------------------------
// Alphabets and plethystic evaluation.
// ---------------------------------------------------------------------------

/// One letter of a plethystic alphabet. Contributes to `p_r` as
/// `linear * scale^r * (1-u^r)/(1-v^r) * x^(r*mono)` where the geometric
/// pair is optional.
#[derive(Clone, Debug)]
pub struct AlphabetLetter {
    pub linear: RatFunc,
    pub scale: RatFunc,
    pub geometric: Option<(RatFunc, RatFunc)>,
    pub mono: ExpVec,
}

/// Finite formal alphabet over a fixed variable arena.
#[derive(Clone, Debug)]
pub struct Alphabet {
    nvars: usize,
    letters: Vec<AlphabetLetter>,
}

impl Alphabet {
    pub fn new(nvars: usize) -> Self {
        Alphabet {
            nvars,
            letters: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn letters(&self) -> &[AlphabetLetter] {
        &self.letters
    }

    /// Plain letter: weight raised to the r-th power at level r.
    pub fn push_letter(&mut self, weight: RatFunc, mono: ExpVec) {
        if weight.is_zero() {
            return;
        }
        assert_eq!(mono.len(), self.nvars);
        self.letters.push(AlphabetLetter {
            linear: RatFunc::one(),
            scale: weight,
            geometric: None,
            mono,
        });
    }

    /// Binomial element: weight enters `p_r` linearly.
    pub fn push_binomial(&mut self, weight: RatFunc, mono: ExpVec) {
        if weight.is_zero() {
            return;
        }
        assert_eq!(mono.len(), self.nvars);
        self.letters.push(AlphabetLetter {
            linear: weight,
            scale: RatFunc::one(),
            geometric: None,
            mono,
        });
    }

    /// Geometric letter: `scale * (1-u)/(1-v)` maps to
    /// `scale^r * (1-u^r)/(1-v^r)` at level r. Dropped if the level-1 weight
    /// vanishes (u = 1).
    pub fn push_geometric(&mut self, scale: RatFunc, u: RatFunc, v: RatFunc, mono: ExpVec) {
        if scale.is_zero() || u.is_one() {
            return;
        }
        assert_eq!(mono.len(), self.nvars);
        self.letters.push(AlphabetLetter {
            linear: RatFunc::one(),
            scale,
            geometric: Some((u, v)),
            mono,
        });
    }

    pub fn push_composite(&mut self, letter: AlphabetLetter) {
        assert_eq!(letter.mono.len(), self.nvars);
        self.letters.push(letter);
    }

    /// The plain variables `x_i` for `i` in the given range.
    pub fn plain_vars(nvars: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        let mut a = Alphabet::new(nvars);
        for i in vars {
            a.push_letter(RatFunc::one(), ExpVec::unit(nvars, i));
        }
        a
    }

    /// Disjoint union of alphabets (plethystic sum).
    pub fn union(&self, o: &Alphabet) -> Alphabet {
        assert_eq!(self.nvars, o.nvars, "nvars mismatch");
        let mut a = self.clone();
        a.letters.extend(o.letters.iter().cloned());
        a
    }

    pub fn is_scalar(&self) -> bool {
        self.letters.iter().all(|l| l.mono.is_zero())
    }

    fn letter_weight(l: &AlphabetLetter, r: i64) -> RatFunc {
        let mut w = l.linear.mul(&l.scale.pow(r));
        if let Some((u, v)) = &l.geometric {
            let den = RatFunc::one().sub(&v.pow(r));
            assert!(!den.is_zero(), "geometric letter with v^r = 1");
            w = w.mul(&RatFunc::one().sub(&u.pow(r))).div(&den);
        }
        w
    }

    /// `p_r` of the alphabet as a Laurent polynomial.
    pub fn p_eval(&self, r: i64) -> LaurentPoly {
        assert!(r >= 1, "power sums are indexed by positive integers");
        let mut acc = LaurentPoly::zero(self.nvars);
        for l in &self.letters {
            let w = Self::letter_weight(l, r);
            acc = acc.add(&LaurentPoly::monomial(self.nvars, l.mono.scale(r), w));
        }
        acc
    }

    /// `p_r` of a scalar alphabet.
    pub fn p_eval_scalar(&self, r: i64) -> RatFunc {
        assert!(self.is_scalar(), "alphabet has variable content");
        let mut acc = RatFunc::zero();
        for l in &self.letters {
            acc = acc.add(&Self::letter_weight(l, r));
        }
        acc
    }
}

/// Plethystic evaluation `f[A]` as a Laurent polynomial.
pub fn sym_eval(f: &SymF, a: &Alphabet) -> LaurentPoly {
    let nvars = a.nvars();
    let mut pcache: HashMap<i64, LaurentPoly> = HashMap::new();
    let mut acc = LaurentPoly::zero(nvars);
    for (lambda, c) in f.coeffs() {
        let mut term = LaurentPoly::constant(nvars, c.clone());
        for &r in lambda.parts() {
            let p = pcache.entry(r).or_insert_with(|| a.p_eval(r)).clone();
            term = term.mul(&p);
        }
        acc = acc.add(&term);
    }
    acc
}

/// Plethystic evaluation `f[A]` for a scalar alphabet.
pub fn sym_eval_scalar(f: &SymF, a: &Alphabet) -> RatFunc {
    let mut pcache: HashMap<i64, RatFunc> = HashMap::new();
    let mut acc = RatFunc::zero();
    for (lambda, c) in f.coeffs() {
        let mut term = c.clone();
        for &r in lambda.parts() {
            let p = pcache
                .entry(r)
                .or_insert_with(|| a.p_eval_scalar(r))
                .clone();
            term = term.mul(&p);
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q() -> RatFunc {
        RatFunc::q_pow(1)
    }

    fn t() -> RatFunc {
        RatFunc::t_pow(1)
    }

    fn p(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// Orbit-sum oracle: m_lambda(x_1..x_N) built directly from distinct
    /// permutations of the padded part vector.
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

    #[test]
    fn p_eval_examples() {
        // plain letters: p_r = sum x_i^r
        let a = Alphabet::plain_vars(3, 0..3);
        let p2 = a.p_eval(2);
        assert_eq!(p2.num_terms(), 3);
        assert_eq!(p2.coeff(&ExpVec::from_slice(&[0, 2, 0])), RatFunc::one());
        // epsilon: p_r[eps X] = (-1)^r p_r[X]
        let mut eps = Alphabet::new(1);
        eps.push_letter(RatFunc::from_int(-1), ExpVec::unit(1, 0));
        assert_eq!(
            eps.p_eval(2).coeff(&ExpVec::from_slice(&[2])),
            RatFunc::one()
        );
        assert_eq!(
            eps.p_eval(3).coeff(&ExpVec::from_slice(&[3])),
            RatFunc::from_int(-1)
        );
        // binomial geometric: weight (1-t)/(1-q) maps to (1-t^r)/(1-q^r)
        let mut g = Alphabet::new(1);
        g.push_geometric(RatFunc::one(), t(), q(), ExpVec::unit(1, 0));
        let w = g.p_eval(3).coeff(&ExpVec::from_slice(&[3]));
        let expect = RatFunc::one()
            .sub(&t().pow(3))
            .div(&RatFunc::one().sub(&q().pow(3)));
        assert_eq!(w, expect);
    }

    #[test]
    fn sym_eval_examples() {
        // p_1 on {x1, x2}
        let a = Alphabet::plain_vars(2, 0..2);
        let f = SymF::p_lambda(&p(&[1]));
        let e = sym_eval(&f, &a);
        assert_eq!(e.num_terms(), 2);
        // h_r[(1-z)/(1-q)] = (z)_r/(q)_r with z = t as a formal letter
        for r in 1..=4 {
            let mut ga = Alphabet::new(0);
            ga.push_geometric(RatFunc::one(), t(), q(), ExpVec::zeros(0));
            let got = sym_eval_scalar(&h_in_p(r), &ga);
            let num = crate::arith::qpoch(&t(), r).unwrap();
            let den = crate::arith::qpoch(&q(), r).unwrap();
            assert_eq!(got, num.div(&den), "r={r}");
        }
        // homogeneity: f[aX] = a^k f[X] for a single-letter scale
        let f = h_in_p(3);
        let mut scaled = Alphabet::new(2);
        let aw = q().add(&RatFunc::from_int(2));
        for i in 0..2 {
            scaled.push_letter(aw.clone(), ExpVec::unit(2, i));
        }
        let plain = Alphabet::plain_vars(2, 0..2);
        let lhs = sym_eval(&f, &scaled);
        let rhs = sym_eval(&f, &plain).scalar_mul(&aw.pow(3));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_constructors() {
        // m_(1) = p_1
        assert_eq!(m_in_p(&p(&[1])), SymF::p_lambda(&p(&[1])));
        // h_2 = p_2/2 + p_1^2/2
        let h2 = h_in_p(2);
        assert_eq!(h2.coeff(&p(&[2])), RatFunc::from_bigrat(&rat(1, 2)));
        assert_eq!(h2.coeff(&p(&[1, 1])), RatFunc::from_bigrat(&rat(1, 2)));
        // g_1 = ((1-t)/(1-q)) p_1
        let g1 = g_in_p(1);
        let expect = RatFunc::one().sub(&t()).div(&RatFunc::one().sub(&q()));
        assert_eq!(g1.coeff(&p(&[1])), expect);
    }

    #[test]
    fn monomial_reproduction_oracle() {
        for lambda in crate::partition::enumerate(4, 4, 4) {
            let n = lambda.length().max(2).min(4);
            let f = m_in_p(&lambda);
            let got = sym_eval(&f, &Alphabet::plain_vars(n, 0..n));
            let expect = monomial_oracle(&lambda, n);
            assert_eq!(got, expect, "lambda={lambda} n={n}");
        }
    }

    #[test]
    fn hall_scalar_examples() {
        let p1 = SymF::p_lambda(&p(&[1]));
        let expect = RatFunc::one().sub(&q()).div(&RatFunc::one().sub(&t()));
        assert_eq!(hall_scalar(&p1, &p1), expect);
        // <p_2, p_1 p_1> = 0
        let p2 = SymF::p_lambda(&p(&[2]));
        let p11 = SymF::p_lambda(&p(&[1, 1]));
        assert!(hall_scalar(&p2, &p11).is_zero());
        // <p_11, p_11> = 2 ((1-q)/(1-t))^2
        let got = hall_scalar(&p11, &p11);
        assert_eq!(got, expect.pow(2).mul(&RatFunc::from_int(2)));
    }

    #[test]
    fn omega_examples() {
        let p1 = SymF::p_lambda(&p(&[1]));
        let w = omega_uv(&p1, &q(), &t());
        let expect = RatFunc::one().sub(&q()).div(&RatFunc::one().sub(&t()));
        assert_eq!(w.coeff(&p(&[1])), expect);
        // omega_{u,v}(p_2) has sign (-1)^{2-1} = -1
        let p2 = SymF::p_lambda(&p(&[2]));
        let u = q().pow(2);
        let v = t().pow(3);
        let w = omega_uv(&p2, &u, &v);
        let expect = RatFunc::one()
            .sub(&u.pow(2))
            .div(&RatFunc::one().sub(&v.pow(2)))
            .neg();
        assert_eq!(w.coeff(&p(&[2])), expect);
        // omega_{q,t} then omega_{t,q} is the identity
        let f = h_in_p(3);
        let back = omega_uv(&omega_uv(&f, &q(), &t()), &t(), &q());
        assert_eq!(back, f);
    }

    #[test]
    fn mul_symf_examples() {
        let p1 = SymF::p_lambda(&p(&[1]));
        let p2 = SymF::p_lambda(&p(&[2]));
        assert_eq!(mul_symf(&p1, &p1), SymF::p_lambda(&p(&[1, 1])));
        assert_eq!(mul_symf(&p2, &p1), SymF::p_lambda(&p(&[2, 1])));
        // h_1 * h_1 = p_(1,1); cross-check m-expansion h_1^2 = m_2 + 2 m_11
        let h1 = h_in_p(1);
        let sq = mul_symf(&h1, &h1);
        assert_eq!(sq, SymF::p_lambda(&p(&[1, 1])));
        let mc = m_coords(&sq);
        assert_eq!(mc[&p(&[2])], RatFunc::one());
        assert_eq!(mc[&p(&[1, 1])], RatFunc::from_int(2));
    }

    #[test]
    fn plethystic_additivity() {
        // p_r[X+Y] = p_r[X] + p_r[Y]
        let x = Alphabet::plain_vars(3, 0..2);
        let mut y = Alphabet::new(3);
        y.push_letter(q(), ExpVec::unit(3, 2));
        let union = x.union(&y);
        for r in 1..=3 {
            assert_eq!(union.p_eval(r), x.p_eval(r).add(&y.p_eval(r)));
        }
    }

    #[test]
    fn g_r_matches_scaled_h_r() {
        // sym_eval(g_r, X) = sym_eval(h_r, (1-t)/(1-q) X) on a finite alphabet
        for r in 1..=3 {
            let x = Alphabet::plain_vars(2, 0..2);
            let lhs = sym_eval(&g_in_p(r), &x);
            let mut scaled = Alphabet::new(2);
            for i in 0..2 {
                scaled.push_geometric(RatFunc::one(), t(), q(), ExpVec::unit(2, i));
            }
            let rhs = sym_eval(&h_in_p(r), &scaled);
            assert_eq!(lhs, rhs, "r={r}");
        }
    }

    #[test]
    fn z_lambda_values() {
        assert_eq!(z_lambda(&p(&[1])), BigInt::from(1));
        assert_eq!(z_lambda(&p(&[1, 1])), BigInt::from(2));
        assert_eq!(z_lambda(&p(&[2])), BigInt::from(2));
        assert_eq!(z_lambda(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(z_lambda(&p(&[2, 2, 1])), BigInt::from(8));
        assert_eq!(z_lambda(&p(&[3, 1, 1])), BigInt::from(6));
    }
}
