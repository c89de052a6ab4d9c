//! Macdonald polynomials `P_lambda(q,t)` and `Q_lambda`, norms `b_lambda`,
//! q,t-Littlewood-Richardson coefficients, skew functions, the Pieri
//! expansion, the Lassalle g-basis expansion, principal specialization, and
//! parameter duality.
//!
//! `P_lambda` is constructed by Gram-Schmidt against the q,t-Hall scalar
//! product over the monomial basis, processed in a linear extension of the
//! dominance order. Generic-(q,t) results are cached; callers needing
//! `t = q^c` specialize afterwards.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicI64, Ordering};
use std::sync::RwLock;

use crate::arith::{qpoch, RatFunc};
use crate::partition::{partitions_of, Partition};
use crate::symfunc::{
    g_lambda_in_p, hall_scalar, m_coords, m_in_p, mul_symf, omega_uv, SymF,
};

/// Cache of Macdonald data per partition: `P_lambda` in the p-basis and the
/// squared norm `<P,P> = 1/b_lambda`.
struct MacCache {
    p: BTreeMap<Partition, SymF>,
    norm: BTreeMap<Partition, RatFunc>,
}

static CACHE: RwLock<Option<MacCache>> = RwLock::new(None);
static CACHE_MAX_DEGREE: AtomicI64 = AtomicI64::new(16);

/// Bound the degree of cached Macdonald polynomials (larger indices are
/// recomputed per call). Controlled by `CT_MACD_CACHE_MAX` in the CLI.
pub fn set_cache_max_degree(d: i64) {
    CACHE_MAX_DEGREE.store(d, Ordering::Relaxed);
}

fn cache_lookup(lambda: &Partition) -> Option<(SymF, RatFunc)> {
    let guard = CACHE.read().unwrap();
    let cache = guard.as_ref()?;
    Some((
        cache.p.get(lambda)?.clone(),
        cache.norm.get(lambda)?.clone(),
    ))
}

fn cache_insert(entries: Vec<(Partition, SymF, RatFunc)>) {
    let maxdeg = CACHE_MAX_DEGREE.load(Ordering::Relaxed);
    let mut guard = CACHE.write().unwrap();
    let cache = guard.get_or_insert_with(|| MacCache {
        p: BTreeMap::new(),
        norm: BTreeMap::new(),
    });
    for (lambda, p, norm) in entries {
        if lambda.size() > maxdeg {
            continue;
        }
        #[cfg(debug_assertions)]
        {
            for (mu, c) in m_coords(&p) {
                if mu == lambda {
                    assert!(c.is_one(), "P_{lambda} is not monic on m_{lambda}");
                } else {
                    assert!(
                        mu.dominance_leq(&lambda),
                        "P_{lambda} has m-support at {mu} above lambda"
                    );
                }
            }
        }
        // first write wins; concurrent computations agree by uniqueness
        cache.p.entry(lambda.clone()).or_insert(p);
        cache.norm.entry(lambda).or_insert(norm);
    }
}

/// Gram-Schmidt over the partitions of one degree, in the given processing
/// order (must be a linear extension of dominance).
fn gram_schmidt(order: &[Partition]) -> Vec<(Partition, SymF, RatFunc)> {
    let mut done: Vec<(Partition, SymF, RatFunc)> = Vec::new();
    for lambda in order {
        let mut v = m_in_p(lambda);
        for (mu, p_mu, norm_mu) in &done {
            if *mu != *lambda && mu.dominance_leq(lambda) {
                let c = hall_scalar(&v, p_mu).div(norm_mu);
                if !c.is_zero() {
                    v = v.sub(&p_mu.scalar_mul(&c));
                }
            }
        }
        let norm = hall_scalar(&v, &v);
        done.push((lambda.clone(), v, norm));
    }
    done
}

/// The Macdonald polynomial `P_lambda(q,t)` in the power-sum basis: the
/// unique m-unitriangular family orthogonal under the q,t-Hall product.
#[allow(non_snake_case)]
pub fn mac_P(lambda: &Partition) -> SymF {
    mac_p_and_norm(lambda).0
}

fn mac_p_and_norm(lambda: &Partition) -> (SymF, RatFunc) {
    if let Some(hit) = cache_lookup(lambda) {
        return hit;
    }
    // lexicographic order on part vectors refines dominance
    let order = partitions_of(lambda.size());
    let computed = gram_schmidt(&order);
    let result = computed
        .iter()
        .find(|(l, _, _)| l == lambda)
        .map(|(_, p, n)| (p.clone(), n.clone()))
        .expect("partition present in its own degree");
    cache_insert(computed);
    result
}

/// `b_lambda = <P_lambda, P_lambda>^{-1}`.
pub fn b_norm(lambda: &Partition) -> RatFunc {
    mac_p_and_norm(lambda).1.inverse()
}

/// `Q_lambda = b_lambda P_lambda`.
#[allow(non_snake_case)]
pub fn mac_Q(lambda: &Partition) -> SymF {
    let (p, norm) = mac_p_and_norm(lambda);
    p.scalar_mul(&norm.inverse())
}

/// q,t-Littlewood-Richardson coefficient `f^lambda_{mu nu} = <Q_lambda, P_mu P_nu>`.
pub fn lr_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> RatFunc {
    if mu.size() + nu.size() != lambda.size() {
        return RatFunc::zero();
    }
    let prod = mul_symf(&mac_P(mu), &mac_P(nu));
    hall_scalar(&mac_Q(lambda), &prod)
}

/// Which normalization of a skew Macdonald function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkewKind {
    P,
    Q,
}

/// Skew Macdonald function `P_{lambda/mu}` or `Q_{lambda/mu}` in the p-basis.
/// Zero unless `mu` is contained in `lambda`.
pub fn skew(lambda: &Partition, mu: &Partition, kind: SkewKind) -> SymF {
    let d = lambda.size() - mu.size();
    if d < 0 || !lambda.contains(mu) {
        return SymF::zero(d.max(0));
    }
    // Q_{lambda/mu} = sum_nu f^lambda_{mu nu} Q_nu
    let mut acc = SymF::zero(d);
    for nu in partitions_of(d) {
        let f = lr_coeff(lambda, mu, &nu);
        if !f.is_zero() {
            acc = acc.add(&mac_Q(&nu).scalar_mul(&f));
        }
    }
    match kind {
        SkewKind::Q => acc,
        // P_{lambda/mu} = (b_mu / b_lambda) Q_{lambda/mu}
        SkewKind::P => acc.scalar_mul(&b_norm(mu).div(&b_norm(lambda))),
    }
}

/// Expand a symmetric function in the P-basis by peeling leading monomial
/// coordinates (P_lambda is m-unitriangular along dominance).
#[allow(non_snake_case)]
pub fn expand_in_P(f: &SymF) -> BTreeMap<Partition, RatFunc> {
    let mut coords = m_coords(f);
    let mut out = BTreeMap::new();
    let mut order = partitions_of(f.degree());
    order.reverse();
    for lambda in order {
        let c = match coords.get(&lambda) {
            None => continue,
            Some(c) => c.clone(),
        };
        if c.is_zero() {
            continue;
        }
        for (mu, a) in m_coords(&mac_P(&lambda)) {
            let entry = coords.entry(mu).or_insert_with(RatFunc::zero);
            *entry = entry.sub(&c.mul(&a));
        }
        out.insert(lambda, c);
    }
    debug_assert!(coords.values().all(|v| v.is_zero()));
    out
}

/// Pieri expansion: the coefficients of `P_mu g_r` in the P-basis. The
/// support is exactly the set of `lambda` with `lambda/mu` a horizontal
/// r-strip.
pub fn pieri_expand(mu: &Partition, r: i64) -> BTreeMap<Partition, RatFunc> {
    let prod = mul_symf(&mac_P(mu), &crate::symfunc::g_in_p(r));
    expand_in_P(&prod)
}

/// Lassalle's generalized Jacobi-Trudi expansion: coefficients `c_mu` of
/// `P_lambda = sum_{mu >= lambda} c_mu g_mu`.
pub fn g_expansion(lambda: &Partition) -> BTreeMap<Partition, RatFunc> {
    let d = lambda.size();
    let parts = partitions_of(d);
    // columns: g_mu in p-coordinates
    let gs: Vec<SymF> = parts.iter().map(g_lambda_in_p).collect();
    let target = mac_P(lambda);
    let mut matrix: Vec<Vec<RatFunc>> = Vec::new();
    let mut rhs: Vec<RatFunc> = Vec::new();
    for rho in &parts {
        matrix.push(gs.iter().map(|g| g.coeff(rho)).collect());
        rhs.push(target.coeff(rho));
    }
    let n = parts.len();
    let mut row_of_col = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for col in 0..n {
        let pivot = (0..n)
            .find(|&r| !used[r] && !matrix[r][col].is_zero())
            .expect("g basis change is invertible");
        used[pivot] = true;
        row_of_col[col] = pivot;
        let pv = matrix[pivot][col].clone();
        for r in 0..n {
            if r != pivot && !matrix[r][col].is_zero() {
                let f = matrix[r][col].div(&pv);
                let pivot_row = matrix[pivot].clone();
                for (j, cell) in matrix[r].iter_mut().enumerate() {
                    *cell = cell.sub(&f.mul(&pivot_row[j]));
                }
                rhs[r] = rhs[r].sub(&f.mul(&rhs[pivot]));
            }
        }
    }
    let mut out = BTreeMap::new();
    for col in 0..n {
        let r = row_of_col[col];
        let c = rhs[r].div(&matrix[r][col]);
        if !c.is_zero() {
            out.insert(parts[col].clone(), c);
        }
    }
    out
}

/// Principal specialization
/// `P_lambda[(1-a)/(1-t)] = t^{n(lambda)} (a;q,t)_lambda / c_lambda(q,t)`,
/// with the generalized hook product `c_lambda` taken over `n >= l(lambda)`
/// rows (the result does not depend on `n`).
pub fn principal_spec(lambda: &Partition, a: &RatFunc, n: usize) -> RatFunc {
    assert!(n >= lambda.length(), "principal_spec needs n >= l(lambda)");
    let t = RatFunc::t_pow(1);
    let mut acc = RatFunc::t_pow(lambda.nstat());
    // (a; q,t)_lambda = prod_i (a t^{1-i})_{lambda_i}
    for i in 1..=lambda.length() {
        let base = a.mul(&RatFunc::t_pow(1 - i as i64));
        acc = acc.mul(&qpoch(&base, lambda.part(i)).expect("nonnegative order"));
    }
    // c_lambda(q,t)
    let mut hook = RatFunc::one();
    for i in 1..=n {
        hook = hook.mul(
            &qpoch(&RatFunc::t_pow((n - i + 1) as i64), lambda.part(i))
                .expect("nonnegative order"),
        );
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            let k = lambda.part(i) - lambda.part(j);
            let num = qpoch(&t.pow((j - i) as i64), k).expect("nonnegative order");
            let den = qpoch(&t.pow((j - i + 1) as i64), k).expect("nonnegative order");
            hook = hook.mul(&num.div(&den));
        }
    }
    acc.div(&hook)
}

/// Both sides of the duality `omega_{q,t} P_{lambda/mu}(q,t) = Q_{lambda'/mu'}(t,q)`.
pub fn duality_apply(lambda: &Partition, mu: &Partition) -> (SymF, SymF) {
    assert!(lambda.contains(mu), "duality_apply needs mu inside lambda");
    let q = RatFunc::q_pow(1);
    let t = RatFunc::t_pow(1);
    let lhs = omega_uv(&skew(lambda, mu, SkewKind::P), &q, &t);
    let rhs = skew(&lambda.conjugate(), &mu.conjugate(), SkewKind::Q).swap_qt();
    (lhs, rhs)
}
