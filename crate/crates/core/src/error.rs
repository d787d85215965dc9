//! Crate-wide error type. Every failure mode is a distinct variant so that
//! callers (and exit-code mapping in the CLI) can tell them apart.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by zero in an exact-arithmetic helper.
    DivisionByZero,
    /// An intermediate product left the 128-bit range the crate guarantees
    /// exactness for.
    Overflow { context: &'static str },
    /// Input exceeds the supported search magnitude (see [`crate::SEARCH_LIMIT`])
    /// or a configured cap.
    MagnitudeExceeded { value: u64, limit: u64 },
    /// A value required to be prime is not.
    NotPrime { n: u64 },
    /// Solution values violate x <= y <= z.
    OrderingViolation { x: u64, y: u64, z: u128 },
    /// The triple fails the cleared-denominator identity 4xyz = p(yz+xz+xy).
    EquationViolation { p: u64, x: u64, y: u64, z: u128 },
    /// An operation precondition does not hold (e.g. 4x <= p where the
    /// denominator 4x - p must be positive).
    Precondition { what: String },
    /// `z_from_xy` was called on a pair that does not satisfy the gcd identity.
    NotASolutionPair {
        p: u64,
        x: u64,
        y: u64,
        residual: i128,
    },
    /// The explicit construction requires p = 3 (mod 4).
    ResidueError { p: u64 },
    /// No solution was found for a prime. Finding such a prime would
    /// contradict the conjecture, so this is a first-class reportable event.
    NoSolutionFound { p: u64 },
    /// A solution's gcd pattern matches neither Type I nor Type II. This
    /// would falsify the two-type dichotomy and must never be masked.
    StructureViolation { p: u64, gx: u64, gy: u64, gz: u64 },
    /// The constructive factorization failed to reconstruct; indicates an
    /// arithmetic bug, not bad input.
    InternalInconsistency { detail: String },
    /// Unrecognised scan strategy name.
    UnknownStrategy { name: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Overflow { context } => {
                write!(f, "arithmetic overflow beyond 128-bit intermediates in {context}")
            }
            Error::MagnitudeExceeded { value, limit } => {
                write!(f, "{value} exceeds the supported magnitude (limit {limit})")
            }
            Error::NotPrime { n } => write!(f, "{n} is not prime"),
            Error::OrderingViolation { x, y, z } => {
                write!(f, "solution values must satisfy x <= y <= z, got ({x}, {y}, {z})")
            }
            Error::EquationViolation { p, x, y, z } => write!(
                f,
                "({x}, {y}, {z}) does not solve 4/{p} = 1/x + 1/y + 1/z (4xyz != p(yz+xz+xy))"
            ),
            Error::Precondition { what } => write!(f, "precondition violated: {what}"),
            Error::NotASolutionPair { p, x, y, residual } => write!(
                f,
                "(x={x}, y={y}) is not a solution pair for p={p}: gcd-identity residual {residual} != 0"
            ),
            Error::ResidueError { p } => {
                write!(f, "{p} is not congruent to 3 modulo 4 (remainder {})", p % 4)
            }
            Error::NoSolutionFound { p } => write!(
                f,
                "no solution found for prime {p}: this would contradict the conjecture, please report"
            ),
            Error::StructureViolation { p, gx, gy, gz } => write!(
                f,
                "solution for p={p} has gcd pattern ({gx}, {gy}, {gz}) matching neither Type I nor Type II"
            ),
            Error::InternalInconsistency { detail } => {
                write!(f, "internal inconsistency: {detail}")
            }
            Error::UnknownStrategy { name } => write!(
                f,
                "unknown strategy '{name}' (expected oracle, two-var, one-var or hybrid)"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
