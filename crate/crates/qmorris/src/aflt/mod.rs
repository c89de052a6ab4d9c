//! The main constant-term identity: the integrand attached to a product of
//! two Macdonald polynomials, both evaluation pipelines, root sets, the
//! polynomial interpolation in `q^a`, recursions, and the proof toolkit
//! (symmetrization, splitting, vanishing constant terms, the key
//! classification lemma).

mod identity;
mod recursion;
mod roots;
mod toolkit;

pub use identity::{
    build_integrand, integrand_factors, lhs_value, lhs_value_with_stats, rhs_aflt, rhs_qmorris,
    verify_aflt, verify_qmorris,
};
pub use recursion::{verify_addpoint_1, verify_addpoint_2, verify_recursion};
pub use roots::{poly_interpolate, root_sets, verify_roots, QaPoly, RootSets, RootsReport};
pub use toolkit::{
    key_lemma_classify, subs_alphabet_check, verify_cai_split, verify_kernel_identity,
    verify_symmetrization, verify_vanishing_h, verify_vanishing_skew, KeyCase, SubsReport,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::RatFunc;
use crate::partition::Partition;
use crate::Error;

/// Parameters of the constant term `A_n(a, b, c, lambda, mu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AfltParams {
    pub n: usize,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub lambda: Partition,
    pub mu: Partition,
}

impl AfltParams {
    pub fn new(n: usize, a: i64, b: i64, c: i64, lambda: Partition, mu: Partition) -> Self {
        AfltParams {
            n,
            a,
            b,
            c,
            lambda,
            mu,
        }
    }

    /// Reject parameter combinations outside the directly-computable regime.
    pub fn check_direct(&self) -> Result<(), Error> {
        if self.b < 0 || self.c < 0 {
            return Err(Error::Refused("b and c must be nonnegative".into()));
        }
        if self.a < 0 {
            return Err(Error::Refused(
                "a must be nonnegative for direct expansion; negative a goes through \
                 the interpolated polynomial"
                    .into(),
            ));
        }
        if self.c == 0 && !self.mu.is_empty() {
            return Err(Error::Refused(
                "c = 0 with nonempty mu makes the plethystic weight singular".into(),
            ));
        }
        Ok(())
    }

    pub fn params_map(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("n".into(), self.n.to_string());
        m.insert("a".into(), self.a.to_string());
        m.insert("b".into(), self.b.to_string());
        m.insert("c".into(), self.c.to_string());
        m.insert("lambda".into(), self.lambda.to_string());
        m.insert("mu".into(), self.mu.to_string());
        m
    }
}

impl fmt::Display for AfltParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} a={} b={} c={} lambda={} mu={}",
            self.n, self.a, self.b, self.c, self.lambda, self.mu
        )
    }
}

/// Outcome of one two-pipeline comparison.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub params: AfltParams,
    pub lhs: RatFunc,
    pub rhs: RatFunc,
    pub equal: bool,
    pub millis: u128,
    pub terms_peak: usize,
    pub notes: String,
}
