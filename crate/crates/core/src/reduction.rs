//! The dimension reductions: the gcd identity linking a solution's x and y,
//! the closed z-formula, the ceiling x-formula for Type I solutions, the
//! sharpened search bounds, the one-variable region/condition search, and the
//! explicit construction for p = 3 (mod 4).

use crate::arith::{gcd, gcd_u128};
use crate::error::{Error, Result};
use crate::model::{Bounds, Prime, Solution};
use crate::SEARCH_LIMIT;

/// Necessary x-range for any solution: [⌈p/4⌉, ⌊3p/4⌋].
pub fn lemma1_x_bounds(p: Prime) -> Bounds {
    let p = p.get();
    Bounds::new(p.div_ceil(4), (3 * p as u128 / 4) as u64)
}

/// Necessary y-range given x: [⌈xp/(4x-p)⌉, ⌊2xp/(4x-p)⌋]. Requires 4x > p.
pub fn lemma1_y_bounds(p: Prime, x: u64) -> Result<Bounds> {
    let pv = p.get() as u128;
    let x = x as u128;
    if 4 * x <= pv {
        return Err(Error::Precondition {
            what: format!("4x > p required, got 4*{x} = {} <= {pv}", 4 * x),
        });
    }
    let r = 4 * x - pv;
    let xp = x * pv;
    let lo = xp.div_ceil(r);
    let hi = xp / r * 2 + xp % r * 2 / r;
    if lo > u64::MAX as u128 {
        return Ok(Bounds::empty());
    }
    Ok(Bounds::new(lo as u64, hi.min(u64::MAX as u128) as u64))
}

/// Sharpened x-range: [⌈p/4⌉, ⌈p/2⌉].
pub fn corollary1_x_bounds(p: Prime) -> Bounds {
    let p = p.get();
    Bounds::new(p.div_ceil(4), p.div_ceil(2))
}

/// Residual of the gcd identity: (4xy - (x+y)p) - gcd(y,p)*gcd(xy, x+y).
///
/// Zero exactly when the identity holds; the signed magnitude is kept as
/// diagnostic data for pattern exploration. Exact for inputs within the
/// supported search magnitude; products beyond 128 bits panic rather than
/// wrap.
pub fn theorem1_residual(p: Prime, x: u64, y: u64) -> i128 {
    debug_assert!(x >= 1 && y >= 1);
    let pv = p.get();
    let xy = x as u128 * y as u128;
    let sum = x as u128 + y as u128;
    let four_xy = i128::try_from(xy.checked_mul(4).expect("4xy exceeds 128 bits"))
        .expect("4xy exceeds 127 bits");
    let sum_p = i128::try_from(sum * pv as u128).expect("(x+y)p exceeds 127 bits");
    let rhs = i128::try_from(
        (gcd(y, pv) as u128)
            .checked_mul(gcd_u128(xy, sum))
            .expect("gcd product exceeds 128 bits"),
    )
    .expect("gcd product exceeds 127 bits");
    four_xy - sum_p - rhs
}

/// The unique z completing a pair that satisfies the gcd identity:
/// z = xyp / (gcd(y,p) * gcd(xy, x+y)).
pub fn z_from_xy(p: Prime, x: u64, y: u64) -> Result<u128> {
    let residual = theorem1_residual(p, x, y);
    if residual != 0 {
        return Err(Error::NotASolutionPair {
            p: p.get(),
            x,
            y,
            residual,
        });
    }
    let pv = p.get();
    let xy = x as u128 * y as u128;
    let divisor = gcd(y, pv) as u128 * gcd_u128(xy, x as u128 + y as u128);
    let xyp = xy
        .checked_mul(pv as u128)
        .ok_or(Error::Overflow { context: "x*y*p" })?;
    debug_assert_eq!(
        xyp % divisor,
        0,
        "z must be integral when the identity holds"
    );
    Ok(xyp / divisor)
}

/// x = ⌈yp/(4y-p)⌉, the forced x of a Type I solution. Requires 4y > p.
pub fn x_from_y(p: Prime, y: u64) -> Result<u64> {
    let pv = p.get() as u128;
    let y = y as u128;
    if 4 * y <= pv {
        return Err(Error::Precondition {
            what: format!("4y > p required, got 4*{y} = {} <= {pv}", 4 * y),
        });
    }
    let r = 4 * y - pv;
    u64::try_from((y * pv).div_ceil(r)).map_err(|_| Error::Overflow {
        context: "x = ⌈yp/(4y-p)⌉",
    })
}

/// The y-interval of the one-variable search:
/// [⌈p/2⌉, ⌊2⌈p/4⌉p / (4⌈p/4⌉ - p)⌋].
pub fn one_var_y_region(p: Prime) -> Bounds {
    let pv = p.get() as u128;
    let x_min = pv.div_ceil(4);
    let r = 4 * x_min - pv;
    let xp = x_min * pv;
    let hi = xp / r * 2 + xp % r * 2 / r;
    Bounds::new(p.get().div_ceil(2), hi.min(u64::MAX as u128) as u64)
}

/// The one-variable solvability condition at y, with x = ⌈yp/(4y-p)⌉:
/// (4y-p)x - yp = gcd(y,p) * gcd(xy, x+y).
pub fn one_var_condition(p: Prime, y: u64) -> Result<bool> {
    let x = x_from_y(p, y)?;
    let pv = p.get();
    let r = 4 * y as u128 - pv as u128;
    let yp = y as u128 * pv as u128;
    // r * ⌈yp/r⌉ < yp + r, so the left side fits and is nonnegative.
    let lhs = r * x as u128 - yp;
    let rhs =
        (gcd(y, pv) as u128).checked_mul(gcd_u128(x as u128 * y as u128, x as u128 + y as u128));
    Ok(rhs == Some(lhs))
}

fn check_magnitude(p: Prime) -> Result<()> {
    if p.get() >= SEARCH_LIMIT {
        Err(Error::MagnitudeExceeded {
            value: p.get(),
            limit: SEARCH_LIMIT,
        })
    } else {
        Ok(())
    }
}

fn two_var_scan(p: Prime, stop_at_first: bool) -> Result<Vec<Solution>> {
    check_magnitude(p)?;
    let pv = p.get();
    let mut out = Vec::new();
    let emit = |x: u64, y: u64, out: &mut Vec<Solution>| {
        debug_assert_eq!(theorem1_residual(p, x, y), 0);
        let z = z_from_xy(p, x, y).expect("residual is zero");
        let s = Solution::with_prime(p, x, y, z)
            .expect("identity pairs inside the region complete to valid solutions");
        out.push(s);
    };
    for x in lemma1_x_bounds(p).iter() {
        // 4x > p holds throughout the range: 4⌈p/4⌉ = p needs 4 | p.
        let yb = lemma1_y_bounds(p, x).expect("4x > p inside the Lemma 1 x-range");
        let lo = yb.lo.max(x);
        if lo > yb.hi {
            continue;
        }
        // The identity requires gcd(y,p)*gcd(xy,x+y) = D = ry - xp to
        // divide xyp, so a single division filters y before any gcd work;
        // D >= 0 on the range and advances by r per step.
        if pv < crate::oracle::U64_LOOP_LIMIT {
            let r = 4 * x - pv;
            let xp = x * pv;
            let mut d = r * lo - xp;
            let mut xyp = xp * lo;
            for y in lo..=yb.hi {
                if d != 0 && xyp.is_multiple_of(d) && theorem1_residual(p, x, y) == 0 {
                    emit(x, y, &mut out);
                    if stop_at_first {
                        return Ok(out);
                    }
                }
                d += r;
                xyp += xp;
            }
        } else {
            let r = 4 * x as u128 - pv as u128;
            let xp = x as u128 * pv as u128;
            let mut d = r * lo as u128 - xp;
            let mut xyp = xp * lo as u128;
            for y in lo..=yb.hi {
                if d != 0 && xyp.is_multiple_of(d) && theorem1_residual(p, x, y) == 0 {
                    emit(x, y, &mut out);
                    if stop_at_first {
                        return Ok(out);
                    }
                }
                d += r;
                xyp += xp;
            }
        }
    }
    Ok(out)
}

/// All solutions of p via the two-variable reduction: every (x, y) in the
/// necessary region with gcd-identity residual zero, completed by the
/// z-formula. Ordered by (x asc, y asc).
pub fn search_two_var(p: Prime) -> Result<Vec<Solution>> {
    two_var_scan(p, false)
}

/// First solution of the two-variable scan, if any, without completing the
/// full region sweep.
pub fn search_two_var_first(p: Prime) -> Result<Option<Solution>> {
    Ok(two_var_scan(p, true)?.into_iter().next())
}

/// One-variable search: for each y in the region satisfying the condition,
/// recover x by the ceiling formula and z by the z-formula. Ordered by the
/// scanned y ascending. Candidates whose completion is not an ordered triple
/// produce no new solution (their reordering is found at its own middle
/// value) and are skipped.
pub fn search_one_var(p: Prime, stop_at_first: bool) -> Result<Vec<Solution>> {
    check_magnitude(p)?;
    let mut out = Vec::new();
    for y in one_var_y_region(p).iter() {
        // y >= ⌈p/2⌉ gives 4y >= 2p > p, so the condition is well defined.
        if one_var_condition(p, y).expect("4y > p inside the one-variable region") {
            let x = x_from_y(p, y).expect("4y > p inside the one-variable region");
            let z = z_from_xy(p, x, y).expect("condition holds, so the residual is zero");
            match Solution::with_prime(p, x, y, z) {
                Ok(s) => {
                    out.push(s);
                    if stop_at_first {
                        return Ok(out);
                    }
                }
                Err(Error::OrderingViolation { .. }) => {}
                Err(e) => panic!("one-variable candidate failed unexpectedly: {e}"),
            }
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0].y() < w[1].y()));
    Ok(out)
}

/// The explicit Type I solution for p = 3 (mod 4):
/// x = y = (p+1)/2, z = p(p+1)/4.
pub fn special_3mod4(p: Prime) -> Result<Solution> {
    let pv = p.get();
    if pv % 4 != 3 {
        return Err(Error::ResidueError { p: pv });
    }
    let half = pv.div_ceil(2);
    let z = pv as u128 * ((pv as u128 + 1) / 4);
    Solution::with_prime(p, half, half, z)
}

/// First solution from the one-variable search, falling back to the
/// two-variable scan; an error from this function would be a conjecture
/// counterexample and is reported as such, never masked.
pub fn hybrid_search(p: Prime) -> Result<Solution> {
    check_magnitude(p)?;
    if let Some(s) = search_one_var(p, true)?.into_iter().next() {
        return Ok(s);
    }
    if let Some(s) = search_two_var_first(p)? {
        return Ok(s);
    }
    Err(Error::NoSolutionFound { p: p.get() })
}
