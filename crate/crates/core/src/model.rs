//! Domain types for primes, solutions, their classification and their
//! gcd factorization. Construction validates: a [`Solution`] that exists is
//! a proof that its triple solves the equation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// A validated prime. Construction runs the deterministic primality test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if arith::is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime { n: p })
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A verified ordered triple (x, y, z) solving 4/p = 1/x + 1/y + 1/z.
///
/// The equation is validated in cleared-denominator integer form. Since the
/// largest solution value reaches order p^4, z is held in 128 bits and the
/// identity is checked as z*(4xy - (x+y)p) = xyp, which keeps every
/// intermediate within 128 bits for the whole supported range; anything that
/// would still not fit is a reported error, never a silent wrap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution {
    p: Prime,
    x: u64,
    y: u64,
    z: u128,
}

impl Solution {
    /// Validating constructor. Fails with a distinguishable error for each
    /// violated invariant: primality, ordering, then the equation itself.
    pub fn new(p: u64, x: u64, y: u64, z: u128) -> Result<Solution> {
        let p = Prime::new(p)?;
        Self::with_prime(p, x, y, z)
    }

    /// Same as [`Solution::new`] when the prime is already validated.
    pub fn with_prime(p: Prime, x: u64, y: u64, z: u128) -> Result<Solution> {
        if x < 1 || (x as u128) > (y as u128) || (y as u128) > z {
            return Err(Error::OrderingViolation { x, y, z });
        }
        let pv = p.get();
        let equation_violation = Error::EquationViolation { p: pv, x, y, z };
        let xy = x as u128 * y as u128;
        let four_xy = xy
            .checked_mul(4)
            .ok_or(Error::Overflow { context: "4xy" })?;
        let sum_p = (x as u128 + y as u128)
            .checked_mul(pv as u128)
            .ok_or(Error::Overflow { context: "(x+y)p" })?;
        if four_xy <= sum_p {
            // the equation forces 4xy - (x+y)p = xyp/z > 0
            return Err(equation_violation);
        }
        let divisor = four_xy - sum_p;
        let xyp = xy
            .checked_mul(pv as u128)
            .ok_or(Error::Overflow { context: "xyp" })?;
        // If z*divisor overflows it cannot equal xyp, which fits.
        if z.checked_mul(divisor) != Some(xyp) {
            return Err(equation_violation);
        }
        Ok(Solution { p, x, y, z })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn p(&self) -> u64 {
        self.p.get()
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn z(&self) -> u128 {
        self.z
    }

    pub fn triple(&self) -> (u64, u64, u128) {
        (self.x, self.y, self.z)
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "4/{} = 1/{} + 1/{} + 1/{}",
            self.p.get(),
            self.x,
            self.y,
            self.z
        )
    }
}

/// Classification of a solution by which values the prime divides:
/// Type I has p | z only, Type II has p | y and p | z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolutionType {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

impl fmt::Display for SolutionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionType::TypeI => write!(f, "I"),
            SolutionType::TypeII => write!(f, "II"),
        }
    }
}

/// The gcd decomposition of a solution: d = gcd(x,y,z), the pairwise
/// cofactors a = gcd(x,y)/d, b = gcd(x,z)/d, c = gcd(y,z)/d, and the residual
/// parts x0, y0, z0 with x = x0*a*b*d, y = y0*a*c*d, z = z0*b*c*d.
/// `c_star` is present exactly when p | c, with c = c_star * p.
///
/// Everything except z0 divides x or y and fits in 64 bits; z0 inherits the
/// 128-bit range of z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factorization {
    pub d: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub x0: u64,
    pub y0: u64,
    pub z0: u128,
    pub c_star: Option<u64>,
}

/// Inclusive integer interval; empty when lo > hi.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub lo: u64,
    pub hi: u64,
}

impl Bounds {
    pub fn new(lo: u64, hi: u64) -> Bounds {
        Bounds { lo, hi }
    }

    /// The canonical empty interval.
    pub fn empty() -> Bounds {
        Bounds { lo: 1, hi: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[]")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Serialized form of a solution together with its classification and
/// whether x = ceil(yp/(4y-p)) holds. Field order is fixed for both the JSON
/// object and the CSV row: p,x,y,z,type,eq5.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRow {
    pub p: u64,
    pub x: u64,
    pub y: u64,
    pub z: u128,
    #[serde(rename = "type")]
    pub solution_type: SolutionType,
    pub eq5: bool,
}

impl SolutionRow {
    pub const CSV_HEADER: &'static str = "p,x,y,z,type,eq5";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.p, self.x, self.y, self.z, self.solution_type, self.eq5
        )
    }
}
