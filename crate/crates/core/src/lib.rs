//! Exact-arithmetic toolkit for a family of exponential Diophantine problems
//! built on powers of 2 and 3.
//!
//! The centerpiece is the equation
//!
//! ```text
//! 2^a 3^b + 2^c 3^d = 2^e 3^f + 2^g 3^h
//! ```
//!
//! over nonnegative integer exponents. Dividing out the largest common
//! monomial leaves a tuple with a zero in each exponent family, and a parity
//! argument on the remaining factors of 2 and 3 splits the equation into
//! seven smaller cases. This crate provides:
//!
//! * [`arith`] — arbitrary-precision naturals, modular exponentiation, and
//!   base-m valuations computed both naively and by residue probing;
//! * [`lemmas`] — closed-form predicted valuations of `3^n ± 1` at 2,
//!   `2^n ± 1` at 3, and `(m-1)^n - 1` at odd `m`, each checkable against
//!   the naive oracle, plus the divisibility law `p^m - 1 | p^n - 1 ⟺ m | n`;
//! * [`equation`] — evaluation, normalization, canonical forms, and the
//!   seven-way case classification of the master equation;
//! * [`solve`] — complete-within-bounds solvers for
//!   `3^k (2^m - 1) = 2^n - 1` and `(2n+1)^k ((2n)^p - 1) = (2n)^q - 1`,
//!   brute-force case searches, and a scanner collecting evidence for the
//!   inequality `(m^{v_m((m-1)^n - 1)})^2 <= (m-1)^n - 1` at even `m > 3`;
//! * [`suites`] — the self-checking verification suites behind
//!   `expdio verify-lemmas`.
//!
//! All arithmetic is exact; no floating point is involved anywhere.

pub mod arith;
pub mod equation;
pub mod lemmas;
pub mod solve;
pub mod suites;

pub use arith::{
    exact_divides, modpow, nat_pow, valuation, valuation_pow_minus_one, valuation_pow_plus_one,
    Natural, ValuationCertificate,
};
pub use equation::{CaseId, CaseInstance, ExponentTuple};
pub use lemmas::ExponentFactorization;
pub use solve::{
    check_prop6, check_prop9, geometric_cofactor, scan_conjecture, search_case, search_master,
    solve_prop6, solve_prop9, verify_growth_base_case, ConjectureReport, Prop6Solution,
    Prop9Solution, SearchConfig,
};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Every power of the base divides zero, so the valuation is undefined.
    #[error("valuation undefined at zero")]
    ValuationUndefinedAtZero,
    /// The predicted valuation of `(m-1)^n - 1` at `m` requires odd `m`;
    /// for even `m` the square of the base already divides `(m-1)^m - 1`.
    #[error("lemma requires odd base")]
    RequiresOddBase,
    /// The even-base divisibility check is only defined for even bases.
    #[error("check requires even base")]
    RequiresEvenBase,
    /// Zero patterns and classification are defined on normalized tuples.
    #[error("tuple is not normalized (each exponent family must contain a zero)")]
    NotNormalized,
    /// The textual tuple format is eight comma-separated decimal exponents.
    #[error("malformed exponent tuple: {0}")]
    MalformedTuple(String),
    /// The conjecture scan is restricted to even bases greater than 3.
    #[error("conjecture scan requires even bases greater than 3, got {0}")]
    InvalidConjectureBase(u64),
}
