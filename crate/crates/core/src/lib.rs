//! Search, verification, classification and surveying of solutions of the
//! Erdos-Straus equation 4/p = 1/x + 1/y + 1/z for primes p.
//!
//! The crate is organised around a brute-force [`oracle`] that enumerates
//! every solution of a prime from elementary bounds alone, and a [`reduction`]
//! module implementing the gcd-identity dimension reductions (two-variable
//! and one-variable searches, plus the explicit construction for
//! p = 3 (mod 4)). Because the oracle assumes none of the reduction formulas,
//! every identity and bound the reductions rely on is a falsifiable claim
//! that the test suites check differentially. [`structure`] classifies
//! solutions and validates the gcd/divisibility facts on concrete triples;
//! [`survey`] runs deterministic parallel range scans and aggregates exact
//! statistics.

pub mod arith;
pub mod error;
pub mod model;
pub mod oracle;
pub mod reduction;
pub mod structure;
pub mod survey;

pub use error::{Error, Result};
pub use model::{Bounds, Factorization, Prime, Solution, SolutionType};

/// Largest prime (exclusive) accepted by the search and scan operations.
///
/// Intermediate products of the shape x*y*p reach order p^4 (the middle
/// solution value can be as large as p(p+1)/2), so exactness in 128-bit
/// intermediates is guaranteed for p below 2^30 and larger primes are
/// rejected with [`Error::MagnitudeExceeded`].
pub const SEARCH_LIMIT: u64 = 1 << 30;
