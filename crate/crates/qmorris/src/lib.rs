//! Exact computer algebra for q-Morris type constant term identities.
//!
//! This crate constructs the constant term `A_n(a,b,c,lambda,mu)` attached to
//! a product of two Macdonald polynomials from first principles — sparse
//! Laurent-polynomial expansion plus plethystic evaluation — and verifies it
//! against the closed-form product side, together with property suites for
//! the supporting symmetric-function machinery.
//!
//! Modules:
//! - [`arith`]: exact rationals, integer polynomials in `q` and `t`, and
//!   their fraction field
//! - [`laurent`]: sparse multivariate Laurent polynomials and constant terms
//! - [`partition`]: partition combinatorics (dominance, strips, conjugation)
//! - [`symfunc`]: symmetric functions in the power-sum basis and plethysm
//! - [`macdonald`]: Macdonald polynomials `P/Q`, norms, Pieri and skew data
//! - [`aflt`]: the main identity, its roots, recursions and proof toolkit
//! - [`report`]: check records and runnable suites

pub mod aflt;
pub mod arith;
pub mod laurent;
pub mod macdonald;
pub mod partition;
pub mod report;
pub mod suites;
pub mod symfunc;

pub use arith::{eval_point, qbinom, qpoch, qpoch_scalar, BigRat, QtPoly, RatFunc};
pub use laurent::{ExpVec, LaurentPoly};
pub use partition::Partition;
pub use symfunc::{Alphabet, SymF};

/// Error type for data-dependent failure conditions.
///
/// Structural misuse (mismatched variable counts, division by a zero value,
/// exponent overflow) panics instead.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A denominator vanished at the requested specialization or point.
    #[error("pole: {0}")]
    Pole(String),
    /// The zero polynomial has no degree.
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    /// A regime precondition does not hold; the check refuses to run.
    #[error("refused: {0}")]
    Refused(String),
}
