//! Exact-arithmetic combinatorics of complete intersections in abelian
//! varieties.
//!
//! The crate computes, with arbitrary-precision integers and rationals
//! throughout (no floating point on any verdict path):
//!
//! - classical and higher-order Eulerian numbers via three independent
//!   routes, together with their structural properties (symmetry,
//!   log-concavity, quantitative bounds) — [`eulerian`];
//! - Euler characteristics `χ(X, Ω^q)` of complete intersections of ample
//!   hypersurfaces in an abelian variety, from user-supplied intersection
//!   numbers or from degree data on a single ample class — [`chi`];
//! - the wedge-power count system that equates binomial-product counts to
//!   those Euler characteristics, with an exhaustive pruned solution
//!   search — [`wedge`];
//! - exact verification of the inequality battery used to rule the wedge
//!   case out at large dimension — [`inequalities`].
//!
//! The `examples/` directory has one runnable program per capability; the
//! `eulerian-chi` binary exposes the same operations as subcommands.

pub mod chi;
pub mod combinatorics;
pub mod eulerian;
pub mod exact;
pub mod inequalities;
pub mod selftest;
pub mod wedge;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Crate-wide error type.
///
/// Variants map onto the CLI exit-code contract: usage problems exit 2,
/// data problems (bad profiles, integrality failures) exit 3, and budget
/// exhaustion exits 4.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("multinomial parts must sum to {expected}, got {got}")]
    PartsSumMismatch { got: usize, expected: usize },

    #[error("brute-force oracle capped at n <= {cap}, got n = {n}")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("invalid intersection profile: {0}")]
    InvalidProfile(String),

    #[error("non-integral Euler characteristic at q = {q}: division by n! leaves a remainder")]
    NonIntegralChi { q: usize },

    #[error("non-integral closed-form value: {0}")]
    NonIntegralValue(String),

    #[error("chi total does not match the positive-support intersection sum: {chi_sum} vs {support_sum}")]
    ChiSumMismatch {
        chi_sum: BigInt,
        support_sum: BigInt,
    },

    #[error("malformed profile document: {0}")]
    ProfileFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
