//! Exact arithmetic: arbitrary-precision rationals, integer polynomials in the
//! formal variables `q` and `t`, and their fraction field.
//!
//! Provides:
//! - [`BigRat`]: arbitrary-precision rational numbers
//! - [`QtPoly`]: sparse integer polynomials in `q` and `t`
//! - [`RatFunc`]: the fraction field of [`QtPoly`], kept in canonical form
//! - [`qpoch`], [`qpoch_scalar`]: finite q-shifted factorials `(z)_k`
//! - [`qbinom`]: the q-binomial coefficient
//!
//! Denominators occurring in this crate are almost always products of
//! `(1 - q^k)` factors, so normalization first tries to factor the smaller
//! side into cyclotomic polynomials and falls back to a primitive
//! pseudo-remainder gcd only when that fails.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type BigRat = num_rational::BigRational;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> BigRat {
    BigRat::new(BigInt::from(num), BigInt::from(den))
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

// ---------------------------------------------------------------------------
// Dense univariate integer polynomials (internal helper for gcd work).
// ---------------------------------------------------------------------------

/// Dense univariate polynomial over Z, coefficients ascending, no trailing zero.
#[derive(Clone, Debug, PartialEq, Eq)]
struct UPoly(Vec<BigInt>);

impl UPoly {
    fn zero() -> Self {
        UPoly(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn trim(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        UPoly(v)
    }

    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &BigInt {
        self.0.last().expect("lc of zero polynomial")
    }

    fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in o.0.iter().enumerate() {
            v[i] += c;
        }
        Self::trim(v)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Self::trim(v)
    }

    fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly(self.0.iter().map(|a| a * c).collect())
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and force a positive leading coefficient.
    fn primitive_abs(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        UPoly(self.0.iter().map(|c| c / &g).collect())
    }

    /// Exact division; `None` if the remainder is nonzero or a coefficient
    /// quotient is inexact.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            panic!("division by zero polynomial");
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.deg() < d.deg() {
            return None;
        }
        let mut rem = self.0.clone();
        let mut quot = vec![BigInt::zero(); self.deg() - d.deg() + 1];
        let dlc = d.lc();
        for k in (0..quot.len()).rev() {
            let top = rem[k + d.deg()].clone();
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(dlc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let val = &rem[k + j] - &qc * dc;
                rem[k + j] = val;
            }
            quot[k] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::trim(quot))
    }

    /// Pseudo-remainder of `self` by `d` (both nonzero, deg self >= deg d).
    fn prem(&self, d: &Self) -> Self {
        let mut r = self.clone();
        let dlc = d.lc().clone();
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let rlc = r.lc().clone();
            // r <- r*lc(d) - lc(r)*x^shift*d
            let mut v = vec![BigInt::zero(); r.0.len()];
            for (i, c) in r.0.iter().enumerate() {
                v[i] = c * &dlc;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let val = &v[shift + j] - &rlc * dc;
                v[shift + j] = val;
            }
            r = Self::trim(v);
        }
        r
    }

    /// Primitive PRS gcd, positive leading coefficient, content included.
    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.primitive_abs().scale(&o.content().abs());
        }
        if o.is_zero() {
            return self.primitive_abs().scale(&self.content().abs());
        }
        let cont = self.content().gcd(&o.content());
        let mut r0 = self.primitive_abs();
        let mut r1 = o.primitive_abs();
        if r0.deg() < r1.deg() {
            std::mem::swap(&mut r0, &mut r1);
        }
        while !r1.is_zero() {
            let r2 = r0.prem(&r1).primitive_abs();
            r0 = r1;
            r1 = r2;
        }
        r0.scale(&cont)
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomial cache.
// ---------------------------------------------------------------------------

static CYCLOTOMIC: Mutex<Vec<UPoly>> = Mutex::new(Vec::new());

fn with_cyclotomic<R>(d: u32, f: impl FnOnce(&UPoly) -> R) -> R {
    let mut cache = CYCLOTOMIC.lock().unwrap();
    while cache.len() <= d as usize {
        let m = cache.len();
        if m < 2 {
            // index 0 unused; index 1 = x - 1
            cache.push(UPoly(vec![big(-1), big(1)]));
            continue;
        }
        // x^m - 1 divided by the product of all proper cyclotomic divisors
        let mut v = vec![BigInt::zero(); m + 1];
        v[0] = big(-1);
        v[m] = big(1);
        let mut p = UPoly::trim(v);
        for e in 1..m {
            if m.is_multiple_of(e) {
                p = p.div_exact(&cache[e]).expect("cyclotomic division is exact");
            }
        }
        cache.push(p);
    }
    f(&cache[d as usize])
}

/// Factorization of a univariate poly as content * q^shift * prod phi_d,
/// up to sign.
struct CycloFactors {
    content: BigInt,
    qpow: usize,
    mults: BTreeMap<u32, u32>,
}

fn factor_cyclotomic(p: &UPoly) -> Option<CycloFactors> {
    if p.is_zero() {
        return None;
    }
    let qpow = p.0.iter().take_while(|c| c.is_zero()).count();
    let mut cur = UPoly::trim(p.0[qpow..].to_vec());
    let content = cur.content().abs();
    cur = cur.primitive_abs();
    let mut mults = BTreeMap::new();
    // Cyclotomic indices can exceed the remaining degree (phi(d) < d), so
    // scan up to the original degree with a floor for small leftovers.
    let bound = (cur.deg() as u32).max(64);
    for d in 1..=bound {
        if cur.deg() == 0 {
            break;
        }
        let hit = with_cyclotomic(d, |phi| {
            let mut count = 0u32;
            while phi.deg() <= cur.deg() {
                match cur.div_exact(phi) {
                    Some(quot) => {
                        cur = quot;
                        count += 1;
                    }
                    None => break,
                }
            }
            count
        });
        if hit > 0 {
            mults.insert(d, hit);
        }
    }
    if cur.deg() == 0 && cur.0[0].is_one() {
        Some(CycloFactors {
            content,
            qpow,
            mults,
        })
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// QtPoly
// ---------------------------------------------------------------------------

/// Sparse integer polynomial in `q` and `t`.
///
/// Terms map `(deg_q, deg_t)` to a nonzero integer coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QtPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl QtPoly {
    pub fn zero() -> Self {
        QtPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(big(1))
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        QtPoly { terms }
    }

    /// The monomial `c * q^dq * t^dt`.
    pub fn monomial(c: BigInt, dq: u32, dt: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((dq, dt), c);
        }
        QtPoly { terms }
    }

    pub fn q_pow(e: u32) -> Self {
        Self::monomial(big(1), e, 0)
    }

    pub fn t_pow(e: u32) -> Self {
        Self::monomial(big(1), 0, e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    fn insert_term(terms: &mut BTreeMap<(u32, u32), BigInt>, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        match terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            Self::insert_term(&mut terms, *k, c.clone());
        }
        QtPoly { terms }
    }

    pub fn neg(&self) -> Self {
        QtPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (small, large) = if self.terms.len() <= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut terms = BTreeMap::new();
        for ((q1, t1), c1) in &small.terms {
            for ((q2, t2), c2) in &large.terms {
                let key = (
                    q1.checked_add(*q2).expect("q exponent overflow"),
                    t1.checked_add(*t2).expect("t exponent overflow"),
                );
                Self::insert_term(&mut terms, key, c1 * c2);
            }
        }
        QtPoly { terms }
    }

    /// Leading term in lexicographic order, q-major.
    pub fn leading(&self) -> Option<(&(u32, u32), &BigInt)> {
        self.terms.iter().next_back()
    }

    fn has_t(&self) -> bool {
        self.terms.keys().any(|(_, dt)| *dt > 0)
    }

    fn has_q(&self) -> bool {
        self.terms.keys().any(|(dq, _)| *dq > 0)
    }

    /// Substitute `t -> q^c`.
    pub fn specialize_t(&self, c: u32) -> Self {
        let mut terms = BTreeMap::new();
        for ((dq, dt), coef) in &self.terms {
            let e = dq
                .checked_add(dt.checked_mul(c).expect("q exponent overflow"))
                .expect("q exponent overflow");
            Self::insert_term(&mut terms, (e, 0), coef.clone());
        }
        QtPoly { terms }
    }

    /// Substitute `q -> q^r`, `t -> t^r`.
    pub fn frobenius(&self, r: u32) -> Self {
        QtPoly {
            terms: self
                .terms
                .iter()
                .map(|((dq, dt), c)| {
                    (
                        (
                            dq.checked_mul(r).expect("q exponent overflow"),
                            dt.checked_mul(r).expect("t exponent overflow"),
                        ),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Swap the roles of `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        QtPoly {
            terms: self.terms.iter().map(|((dq, dt), c)| ((*dt, *dq), c.clone())).collect(),
        }
    }

    pub fn eval(&self, q0: &BigRat, t0: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        // Walk in key order, reusing powers.
        let mut qpow_cache: BTreeMap<u32, BigRat> = BTreeMap::new();
        let mut tpow_cache: BTreeMap<u32, BigRat> = BTreeMap::new();
        for ((dq, dt), c) in &self.terms {
            let qp = qpow_cache
                .entry(*dq)
                .or_insert_with(|| rat_pow(q0, *dq))
                .clone();
            let tp = tpow_cache
                .entry(*dt)
                .or_insert_with(|| rat_pow(t0, *dt))
                .clone();
            acc += BigRat::from(c.clone()) * qp * tp;
        }
        acc
    }

    // --- univariate views -------------------------------------------------

    fn to_upoly_q(&self) -> Option<UPoly> {
        if self.has_t() {
            return None;
        }
        let deg = self.terms.keys().map(|(dq, _)| *dq).max().unwrap_or(0);
        let mut v = vec![BigInt::zero(); deg as usize + 1];
        for ((dq, _), c) in &self.terms {
            v[*dq as usize] = c.clone();
        }
        Some(UPoly::trim(v))
    }

    fn from_upoly_q(p: &UPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (i, c) in p.0.iter().enumerate() {
            if !c.is_zero() {
                terms.insert((i as u32, 0), c.clone());
            }
        }
        QtPoly { terms }
    }

    /// View as a polynomial in q with coefficients in Z[t].
    fn to_rec_q(&self) -> BTreeMap<u32, UPoly> {
        let mut map: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
        for ((dq, dt), c) in &self.terms {
            let v = map.entry(*dq).or_default();
            if v.len() <= *dt as usize {
                v.resize(*dt as usize + 1, BigInt::zero());
            }
            v[*dt as usize] = c.clone();
        }
        map.into_iter().map(|(k, v)| (k, UPoly::trim(v))).collect()
    }

    fn from_rec_q(map: &BTreeMap<u32, UPoly>) -> Self {
        let mut terms = BTreeMap::new();
        for (dq, p) in map {
            for (dt, c) in p.0.iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((*dq, dt as u32), c.clone());
                }
            }
        }
        QtPoly { terms }
    }

    /// Exact polynomial division, `None` if not divisible.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            panic!("division by zero polynomial");
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.is_one() {
            return Some(self.clone());
        }
        if !self.has_t() && !d.has_t() {
            let a = self.to_upoly_q().unwrap();
            let b = d.to_upoly_q().unwrap();
            return a.div_exact(&b).map(|p| Self::from_upoly_q(&p));
        }
        // Bivariate long division in q with Z[t] coefficient division.
        let mut rem = self.to_rec_q();
        let den = d.to_rec_q();
        let (dq, dlc) = {
            let (k, v) = den.iter().next_back().unwrap();
            (*k, v.clone())
        };
        let mut quot: BTreeMap<u32, UPoly> = BTreeMap::new();
        loop {
            let (rq, rlc) = match rem.iter().next_back() {
                None => break,
                Some((k, v)) => (*k, v.clone()),
            };
            if rq < dq {
                return None;
            }
            let qc = rlc.div_exact(&dlc)?;
            let shift = rq - dq;
            quot.insert(shift, qc.clone());
            for (k, v) in &den {
                let key = k + shift;
                let cur = rem.remove(&key).unwrap_or_else(UPoly::zero);
                let next = cur.sub(&qc.mul(v));
                if !next.is_zero() {
                    rem.insert(key, next);
                }
            }
        }
        Some(Self::from_rec_q(&quot))
    }

    /// Polynomial gcd over Z (content included), positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.abs_normal();
        }
        if o.is_zero() {
            return self.abs_normal();
        }
        if self.is_one() || o.is_one() {
            return Self::one();
        }
        if !self.has_t() && !o.has_t() {
            let a = self.to_upoly_q().unwrap();
            let b = o.to_upoly_q().unwrap();
            // Cyclotomic route: factor whichever side factors.
            for (first, second) in [(&a, &b), (&b, &a)] {
                if let Some(f) = factor_cyclotomic(first) {
                    return Self::from_upoly_q(&cyclo_gcd(second, &f));
                }
            }
            return Self::from_upoly_q(&a.gcd(&b));
        }
        if !self.has_q() && !o.has_q() {
            return self.swap_qt().gcd(&o.swap_qt()).swap_qt();
        }
        if let Some(g) = gcd_bivariate_modular(self, o) {
            return g;
        }
        // Fallback: primitive PRS in Z[t][q].
        let a = self.to_rec_q();
        let b = o.to_rec_q();
        let cont_a = rec_content(&a);
        let cont_b = rec_content(&b);
        let cont = cont_a.gcd(&cont_b);
        let mut r0 = rec_primitive(&a);
        let mut r1 = rec_primitive(&b);
        if rec_deg(&r0) < rec_deg(&r1) {
            std::mem::swap(&mut r0, &mut r1);
        }
        while !r1.is_empty() {
            let r2 = rec_primitive(&rec_prem(&r0, &r1));
            r0 = r1;
            r1 = r2;
        }
        let g = rec_mul_upoly(&r0, &cont);
        let mut g = Self::from_rec_q(&g);
        if g.leading().is_some_and(|(_, c)| c.is_negative()) {
            g = g.neg();
        }
        g
    }

    fn abs_normal(&self) -> Self {
        if self.leading().is_some_and(|(_, c)| c.is_negative()) {
            self.neg()
        } else {
            self.clone()
        }
    }
}

/// gcd of `p` with a fully factored cyclotomic product.
fn cyclo_gcd(p: &UPoly, f: &CycloFactors) -> UPoly {
    let mut acc = UPoly(vec![BigInt::one()]);
    // common q power
    let low = p.0.iter().take_while(|c| c.is_zero()).count().min(f.qpow);
    let mut cur = p.clone();
    for (d, mult) in &f.mults {
        with_cyclotomic(*d, |phi| {
            let mut hits = 0u32;
            while hits < *mult {
                match cur.div_exact(phi) {
                    Some(quot) => {
                        cur = quot;
                        hits += 1;
                    }
                    None => break,
                }
            }
            for _ in 0..hits {
                acc = acc.mul(phi);
            }
        });
    }
    let cont = p.content().abs().gcd(&f.content);
    let mut shifted = vec![BigInt::zero(); low];
    shifted.extend(acc.scale(&cont).0);
    UPoly::trim(shifted)
}

fn rec_deg(m: &BTreeMap<u32, UPoly>) -> u32 {
    m.keys().next_back().copied().unwrap_or(0)
}

/// Brown-style evaluation/interpolation gcd in Z[t][q], certified by exact
/// division. `None` when certification fails (caller falls back to PRS).
fn gcd_bivariate_modular(a: &QtPoly, b: &QtPoly) -> Option<QtPoly> {
    let ra = a.to_rec_q();
    let rb = b.to_rec_q();
    let ca = rec_content(&ra);
    let cb = rec_content(&rb);
    let cont = ca.gcd(&cb);
    let pa = rec_primitive(&ra);
    let pb = rec_primitive(&rb);
    let finish = |pp: BTreeMap<u32, UPoly>| {
        let mut g = QtPoly::from_rec_q(&rec_mul_upoly(&pp, &cont));
        if g.leading().is_some_and(|(_, c)| c.is_negative()) {
            g = g.neg();
        }
        Some(g)
    };
    let one_rec = || {
        let mut m = BTreeMap::new();
        m.insert(0u32, UPoly(vec![BigInt::one()]));
        m
    };
    if rec_deg(&pa) == 0 || rec_deg(&pb) == 0 {
        return finish(one_rec());
    }
    let lca = pa.values().next_back().unwrap();
    let lcb = pb.values().next_back().unwrap();
    let gamma = lca.gcd(lcb);
    let deg_t = |m: &BTreeMap<u32, UPoly>| m.values().map(|p| p.deg()).max().unwrap_or(0);
    let bound = gamma.deg() + deg_t(&pa).min(deg_t(&pb));
    let eval_rec = |m: &BTreeMap<u32, UPoly>, tau: &BigInt| -> UPoly {
        let deg = rec_deg(m) as usize;
        let mut v = vec![BigInt::zero(); deg + 1];
        for (k, p) in m {
            v[*k as usize] = upoly_eval(p, tau);
        }
        UPoly::trim(v)
    };
    for round in 0..3 {
        let mut taus: Vec<BigInt> = Vec::new();
        let mut images: Vec<Vec<BigRat>> = Vec::new();
        let mut gdeg = usize::MAX;
        let mut tau_iter = (2 + round * 37)..;
        while images.len() < bound + 1 {
            let tau = BigInt::from(tau_iter.next().unwrap());
            if upoly_eval(&gamma, &tau).is_zero() {
                continue;
            }
            let ia = eval_rec(&pa, &tau);
            let ib = eval_rec(&pb, &tau);
            if ia.deg() < rec_deg(&pa) as usize || ib.deg() < rec_deg(&pb) as usize {
                continue; // leading coefficient vanished
            }
            let g = ia.gcd(&ib);
            if g.deg() == 0 {
                return finish(one_rec());
            }
            match g.deg().cmp(&gdeg) {
                Ordering::Greater => continue, // unlucky point
                Ordering::Less => {
                    gdeg = g.deg();
                    taus.clear();
                    images.clear();
                }
                Ordering::Equal => {}
            }
            // scale so the leading coefficient is gamma(tau)
            let s = BigRat::new(upoly_eval(&gamma, &tau), g.lc().clone());
            images.push(g.0.iter().map(|c| BigRat::from(c.clone()) * &s).collect());
            taus.push(tau);
        }
        // interpolate each q-coefficient as a polynomial in t
        let xs: Vec<BigRat> = taus.iter().map(|t| BigRat::from(t.clone())).collect();
        let mut cand: BTreeMap<u32, Vec<BigRat>> = BTreeMap::new();
        for qi in 0..=gdeg {
            let ys: Vec<BigRat> = images
                .iter()
                .map(|im| im.get(qi).cloned().unwrap_or_else(BigRat::zero))
                .collect();
            let coeffs = newton_interpolate(&xs, &ys);
            if !coeffs.is_empty() {
                cand.insert(qi as u32, coeffs);
            }
        }
        // clear denominators and take the primitive part
        let mut den_lcm = BigInt::one();
        for v in cand.values() {
            for c in v {
                den_lcm = den_lcm.lcm(c.denom());
            }
        }
        let rec: BTreeMap<u32, UPoly> = cand
            .iter()
            .map(|(k, v)| {
                (
                    *k,
                    UPoly::trim(
                        v.iter()
                            .map(|c| c.numer() * (&den_lcm / c.denom()))
                            .collect(),
                    ),
                )
            })
            .filter(|(_, p)| !p.is_zero())
            .collect();
        if rec.is_empty() || rec_deg(&rec) as usize != gdeg {
            continue;
        }
        let pp = rec_primitive(&rec);
        // certify by exact division of both primitive parts
        let h = QtPoly::from_rec_q(&pp);
        let qa = QtPoly::from_rec_q(&pa);
        let qb = QtPoly::from_rec_q(&pb);
        if qa.div_exact(&h).is_some() && qb.div_exact(&h).is_some() {
            return finish(pp);
        }
    }
    None
}

fn upoly_eval(p: &UPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.0.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Newton interpolation; returns monomial coefficients (ascending), trimmed.
fn newton_interpolate(xs: &[BigRat], ys: &[BigRat]) -> Vec<BigRat> {
    let n = xs.len();
    // divided differences
    let mut dd: Vec<BigRat> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - level];
            dd[i] = num / den;
        }
    }
    // expand the Newton form: basis_i(x) = prod_{j<i} (x - x_j)
    let mut coeffs: Vec<BigRat> = vec![BigRat::zero(); n];
    let mut basis: Vec<BigRat> = vec![BigRat::one()];
    for (i, d) in dd.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let add = b * d;
            coeffs[j] += add;
        }
        if i + 1 < n {
            // basis *= (x - xs[i])
            let mut next = vec![BigRat::zero(); basis.len() + 1];
            for (j, b) in basis.iter().enumerate() {
                next[j + 1] += b;
                let scaled = b * &xs[i];
                next[j] -= scaled;
            }
            basis = next;
        }
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

fn rec_content(m: &BTreeMap<u32, UPoly>) -> UPoly {
    let mut g = UPoly::zero();
    for v in m.values() {
        g = g.gcd(v);
    }
    g
}

fn rec_primitive(m: &BTreeMap<u32, UPoly>) -> BTreeMap<u32, UPoly> {
    if m.is_empty() {
        return BTreeMap::new();
    }
    let c = rec_content(m);
    m.iter()
        .map(|(k, v)| (*k, v.div_exact(&c).expect("content divides")))
        .collect()
}

fn rec_mul_upoly(m: &BTreeMap<u32, UPoly>, f: &UPoly) -> BTreeMap<u32, UPoly> {
    m.iter().map(|(k, v)| (*k, v.mul(f))).collect()
}

fn rec_prem(a: &BTreeMap<u32, UPoly>, b: &BTreeMap<u32, UPoly>) -> BTreeMap<u32, UPoly> {
    let mut r = a.clone();
    let (db, blc) = {
        let (k, v) = b.iter().next_back().unwrap();
        (*k, v.clone())
    };
    loop {
        let (dr, rlc) = match r.iter().next_back() {
            None => return r,
            Some((k, v)) => (*k, v.clone()),
        };
        if dr < db {
            return r;
        }
        let shift = dr - db;
        // r <- r*lc(b) - lc(r)*q^shift*b
        let mut next: BTreeMap<u32, UPoly> = r
            .iter()
            .map(|(k, v)| (*k, v.mul(&blc)))
            .collect();
        for (k, v) in b {
            let key = k + shift;
            let cur = next.remove(&key).unwrap_or_else(UPoly::zero);
            let upd = cur.sub(&rlc.mul(v));
            if !upd.is_zero() {
                next.insert(key, upd);
            }
        }
        r = next;
    }
}

fn rat_pow(r: &BigRat, e: u32) -> BigRat {
    let mut acc = BigRat::one();
    let mut base = r.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

impl fmt::Display for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Terms ascending, q-major then t.
        for (i, ((dq, dt), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || (*dq == 0 && *dt == 0) {
                parts.push(abs.to_string());
            }
            match dq {
                0 => {}
                1 => parts.push("q".into()),
                _ => parts.push(format!("q^{dq}")),
            }
            match dt {
                0 => {}
                1 => parts.push("t".into()),
                _ => parts.push(format!("t^{dt}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// RatFunc
// ---------------------------------------------------------------------------

/// Element of the fraction field of [`QtPoly`], kept in canonical form:
/// numerator and denominator coprime over Z, denominator nonzero with a
/// positive leading coefficient in lexicographic (q-major) order.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: QtPoly,
    den: QtPoly,
}

impl RatFunc {
    pub fn new(num: QtPoly, den: QtPoly) -> Self {
        if den.is_zero() {
            panic!("RatFunc with zero denominator");
        }
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: QtPoly) -> Self {
        RatFunc {
            num: p,
            den: QtPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(QtPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(QtPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(QtPoly::constant(big(n)))
    }

    pub fn from_bigrat(r: &BigRat) -> Self {
        RatFunc::new(
            QtPoly::constant(r.numer().clone()),
            QtPoly::constant(r.denom().clone()),
        )
    }

    /// `q^e` for any integer `e` (negative exponents go to the denominator).
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(QtPoly::q_pow(e as u32))
        } else {
            RatFunc {
                num: QtPoly::one(),
                den: QtPoly::q_pow((-e) as u32),
            }
        }
    }

    /// `t^e` for any integer `e`.
    pub fn t_pow(e: i64) -> Self {
        if e >= 0 {
            Self::from_poly(QtPoly::t_pow(e as u32))
        } else {
            RatFunc {
                num: QtPoly::one(),
                den: QtPoly::t_pow((-e) as u32),
            }
        }
    }

    pub fn num(&self) -> &QtPoly {
        &self.num
    }

    pub fn den(&self) -> &QtPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = QtPoly::one();
            return;
        }
        if !self.den.is_one() {
            let g = self.num.gcd(&self.den);
            if !g.is_one() {
                self.num = self.num.div_exact(&g).expect("gcd divides numerator");
                self.den = self.den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        if self.den.leading().is_some_and(|(_, c)| c.is_negative()) {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc {
                num: self.num.add(&o.num),
                den: QtPoly::one(),
            };
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc {
                num: self.num.mul(&o.num),
                den: QtPoly::one(),
            };
        }
        // Cross-reduce before multiplying to keep degrees low.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = o.den.div_exact(&g1).unwrap();
        let n2 = o.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let mut r = RatFunc {
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        };
        if r.den.leading().is_some_and(|(_, c)| c.is_negative()) {
            r.num = r.num.neg();
            r.den = r.den.neg();
        }
        r
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inverse(&self) -> Self {
        if self.is_zero() {
            panic!("division by zero RatFunc");
        }
        let mut r = RatFunc {
            num: self.den.clone(),
            den: self.num.clone(),
        };
        if r.den.leading().is_some_and(|(_, c)| c.is_negative()) {
            r.num = r.num.neg();
            r.den = r.den.neg();
        }
        r
    }

    /// Division. Panics if `o` is zero.
    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inverse())
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inverse().pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitute `t -> q^c` and re-canonicalize.
    pub fn specialize_t(&self, c: u32) -> Result<Self, Error> {
        let den = self.den.specialize_t(c);
        if den.is_zero() {
            return Err(Error::Pole(format!(
                "denominator vanishes identically at t = q^{c}"
            )));
        }
        Ok(Self::new(self.num.specialize_t(c), den))
    }

    /// Substitute `q -> q^r`, `t -> t^r` (the plethystic power map).
    pub fn frobenius(&self, r: u32) -> Self {
        // Exponent maps preserve coprimality; no re-normalization needed
        // beyond the sign convention, which is also preserved.
        RatFunc {
            num: self.num.frobenius(r),
            den: self.den.frobenius(r),
        }
    }

    /// Swap the roles of q and t.
    pub fn swap_qt(&self) -> Self {
        let mut r = RatFunc {
            num: self.num.swap_qt(),
            den: self.den.swap_qt(),
        };
        if r.den.leading().is_some_and(|(_, c)| c.is_negative()) {
            r.num = r.num.neg();
            r.den = r.den.neg();
        }
        r
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, q0: &BigRat, t0: &BigRat) -> Result<BigRat, Error> {
        let den = self.den.eval(q0, t0);
        if den.is_zero() {
            return Err(Error::Pole(format!("pole at q={q0}, t={t0}")));
        }
        Ok(self.num.eval(q0, t0) / den)
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        // Cross-multiplication avoids gcd work on large operands.
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

// ---------------------------------------------------------------------------
// q-shifted factorials
// ---------------------------------------------------------------------------

/// `(z)_k = (z; q)_k` for an arbitrary base `z` in the coefficient field.
///
/// For `k > 0` this is `prod_{i=0}^{k-1} (1 - z q^i)`; `k = 0` gives 1 and
/// `k < 0` gives `1/(z q^k)_{-k}`, which is a pole when a denominator factor
/// vanishes.
pub fn qpoch(z: &RatFunc, k: i64) -> Result<RatFunc, Error> {
    match k.cmp(&0) {
        Ordering::Equal => Ok(RatFunc::one()),
        Ordering::Greater => {
            let mut acc = RatFunc::one();
            let mut zq = z.clone();
            let q = RatFunc::q_pow(1);
            for _ in 0..k {
                acc = acc.mul(&RatFunc::one().sub(&zq));
                zq = zq.mul(&q);
            }
            Ok(acc)
        }
        Ordering::Less => {
            let base = z.mul(&RatFunc::q_pow(k));
            let den = qpoch(&base, -k)?;
            if den.is_zero() {
                return Err(Error::Pole(format!("(z)_{k} has a vanishing factor")));
            }
            Ok(den.inverse())
        }
    }
}

/// `(q^base_exp)_k` for integer `base_exp` (possibly negative).
pub fn qpoch_scalar(base_exp: i64, k: i64) -> Result<RatFunc, Error> {
    qpoch(&RatFunc::q_pow(base_exp), k)
}

/// The q-binomial coefficient `[n choose k] = (q^{n-k+1})_k / (q)_k`.
pub fn qbinom(n: i64, k: i64) -> RatFunc {
    assert!(k >= 0, "qbinom requires k >= 0");
    let num = qpoch_scalar(n - k + 1, k).expect("nonnegative order cannot pole");
    let den = qpoch_scalar(1, k).expect("nonnegative order cannot pole");
    num.div(&den)
}

/// Exact evaluation of `f` at a rational point (q0, t0).
pub fn eval_point(f: &RatFunc, q0: &BigRat, t0: &BigRat) -> Result<BigRat, Error> {
    f.eval(q0, t0)
}
