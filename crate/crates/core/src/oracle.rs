//! Independent brute-force enumeration of all solutions for a prime.
//!
//! The ranges used here come from elementary fraction comparison only and are
//! deliberately weaker than the sharper bounds the reduction module uses, so
//! that those bounds stay falsifiable claims the test suites check against
//! this module rather than baked-in assumptions.

use crate::error::{Error, Result};
use crate::model::{Bounds, Prime, Solution};
use crate::SEARCH_LIMIT;

/// Default cap on oracle-backed enumeration at the CLI boundary. Enumeration
/// is O(p^2); beyond this the reduction searches are the right tool.
pub const DEFAULT_ORACLE_CAP: u64 = 50_000;

/// Interval guaranteed to contain the x of every solution, from
/// 1/x < 4/p <= 3/x alone: x in [max(1, ⌊p/4⌋), ⌊3p/4⌋ + 1].
pub fn elementary_x_range(p: Prime) -> Bounds {
    let p = p.get();
    Bounds::new((p / 4).max(1), (3 * p as u128 / 4) as u64 + 1)
}

/// Interval containing the y of every solution with this x, from
/// 1/y < 4/p - 1/x <= 2/y; empty when 4x <= p (no positive remainder).
pub fn elementary_y_range(p: Prime, x: u64) -> Bounds {
    let pv = p.get() as u128;
    let x = x as u128;
    if 4 * x <= pv {
        return Bounds::empty();
    }
    let r = 4 * x - pv;
    let xp = x * pv;
    let lo = (xp / r + 1).max(x);
    // ⌊2xp/r⌋ without forming 2xp, which can exceed u128 for extreme inputs
    let hi = xp / r * 2 + xp % r * 2 / r;
    if lo > hi || lo > u64::MAX as u128 {
        return Bounds::empty();
    }
    Bounds::new(lo as u64, hi.min(u64::MAX as u128) as u64)
}

/// The unique z completing (x, y), when it exists: z = xyp / D with
/// D = 4xy - (x+y)p, provided D > 0, D | xyp and z >= y.
pub fn z_candidate(p: Prime, x: u64, y: u64) -> Option<u128> {
    debug_assert!(x <= y);
    let pv = p.get() as u128;
    let xy = x as u128 * y as u128;
    let four_xy = xy.checked_mul(4)?;
    let sum_p = (x as u128 + y as u128).checked_mul(pv)?;
    if four_xy <= sum_p {
        return None;
    }
    let d = four_xy - sum_p;
    let xyp = xy.checked_mul(pv)?;
    if xyp % d != 0 {
        return None;
    }
    let z = xyp / d;
    if z < y as u128 {
        return None;
    }
    Some(z)
}

/// Every solution for p, each exactly once, ordered by (x asc, y asc).
pub fn enumerate_all(p: Prime) -> Result<Vec<Solution>> {
    scan_solutions(p, false)
}

/// First solution of the elementary scan, if any, without completing the
/// full sweep.
pub fn first_solution(p: Prime) -> Result<Option<Solution>> {
    Ok(scan_solutions(p, true)?.into_iter().next())
}

/// Primes below this use the all-u64 inner loop; above it intermediates are
/// tracked in u128 (x*y*p stays under 2^63 for p < 2^15).
pub(crate) const U64_LOOP_LIMIT: u64 = 1 << 15;

fn scan_solutions(p: Prime, stop_at_first: bool) -> Result<Vec<Solution>> {
    let pv = p.get();
    if pv >= SEARCH_LIMIT {
        return Err(Error::MagnitudeExceeded {
            value: pv,
            limit: SEARCH_LIMIT,
        });
    }
    let mut out = Vec::new();
    for x in elementary_x_range(p).iter() {
        let ys = elementary_y_range(p, x);
        if ys.is_empty() {
            continue;
        }
        // D = 4xy - (x+y)p = ry - xp with r = 4x - p > 0 on a nonempty
        // range, and D > 0 throughout since y > xp/r; advance D and xyp
        // incrementally instead of recomputing per y.
        if pv < U64_LOOP_LIMIT {
            let r = 4 * x - pv;
            let xp = x * pv;
            let mut d = r * ys.lo - xp;
            let mut xyp = xp * ys.lo;
            for y in ys.iter() {
                debug_assert_eq!(Some(d), (4 * x * y).checked_sub((x + y) * pv));
                if xyp.is_multiple_of(d) {
                    let z = xyp / d;
                    if z >= y {
                        out.push(solution_at(p, x, y, z as u128));
                        if stop_at_first {
                            return Ok(out);
                        }
                    }
                }
                d += r;
                xyp += xp;
            }
        } else {
            let r = (4 * x - pv) as u128;
            let xp = x as u128 * pv as u128;
            let mut d = r * ys.lo as u128 - xp;
            let mut xyp = xp * ys.lo as u128;
            for y in ys.iter() {
                if xyp.is_multiple_of(d) {
                    let z = xyp / d;
                    if z >= y as u128 {
                        out.push(solution_at(p, x, y, z));
                        if stop_at_first {
                            return Ok(out);
                        }
                    }
                }
                d += r;
                xyp += xp;
            }
        }
    }
    // The (x asc, y asc) scan with z determined by divisibility cannot
    // produce duplicates; assert rather than filter.
    debug_assert!(out
        .windows(2)
        .all(|w| (w[0].x(), w[0].y()) < (w[1].x(), w[1].y())));
    Ok(out)
}

fn solution_at(p: Prime, x: u64, y: u64, z: u128) -> Solution {
    Solution::with_prime(p, x, y, z)
        .expect("a divisibility hit inside the elementary ranges is a valid solution")
}

/// True iff (x, y, z) is a valid ordered solution for p.
pub fn is_solution(p: u64, x: u64, y: u64, z: u128) -> bool {
    Solution::new(p, x, y, z).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn triples(solutions: &[Solution]) -> Vec<(u64, u64, u128)> {
        solutions.iter().map(|s| s.triple()).collect()
    }

    #[test]
    fn x_range_examples() {
        assert_eq!(elementary_x_range(prime(5)), Bounds::new(1, 4));
        assert_eq!(elementary_x_range(prime(2)), Bounds::new(1, 2));
        assert_eq!(elementary_x_range(prime(13)), Bounds::new(3, 10));
    }

    #[test]
    fn y_range_examples() {
        // 4/5 - 1/2 = 3/10, so y in (10/3, 20/3]
        assert_eq!(elementary_y_range(prime(5), 2), Bounds::new(4, 6));
        assert!(elementary_y_range(prime(5), 1).is_empty());
        // 4/7 - 1/4 = 9/28, so y in (28/9, 56/9]
        assert_eq!(elementary_y_range(prime(7), 4), Bounds::new(4, 6));
    }

    #[test]
    fn z_candidate_examples() {
        assert_eq!(z_candidate(prime(5), 2, 4), Some(20)); // D=2, 40/2=20
        assert_eq!(z_candidate(prime(5), 2, 6), None); // D=8 does not divide 60
        assert_eq!(z_candidate(prime(3), 1, 3), None); // D=0
    }

    #[test]
    fn enumerate_small_primes() {
        assert_eq!(
            triples(&enumerate_all(prime(5)).unwrap()),
            vec![(2, 4, 20), (2, 5, 10)]
        );
        assert_eq!(triples(&enumerate_all(prime(2)).unwrap()), vec![(1, 2, 2)]);
        assert_eq!(
            triples(&enumerate_all(prime(3)).unwrap()),
            vec![(1, 4, 12), (1, 6, 6), (2, 2, 3)]
        );
    }

    #[test]
    fn enumerate_rejects_oversized_prime() {
        let p = Prime::new(1_073_741_827).unwrap(); // first prime above 2^30
        assert!(matches!(
            enumerate_all(p),
            Err(Error::MagnitudeExceeded { .. })
        ));
    }

    #[test]
    fn is_solution_examples() {
        assert!(is_solution(7, 4, 4, 14)); // 1/4+1/4+1/14 = 16/28
        assert!(!is_solution(7, 4, 4, 15));
        assert!(!is_solution(7, 14, 4, 4)); // ordering violated
    }

    /// Oracle-of-the-oracle: the most naive possible triple scan, using no
    /// range reasoning beyond y <= p^2 and divisibility.
    fn naive_enumerate(p: u64) -> Vec<(u64, u64, u128)> {
        let mut out = Vec::new();
        for x in 1..=p {
            for y in x..=p * p {
                let d_pos = 4 * x * y > (x + y) * p;
                if !d_pos {
                    continue;
                }
                let d = 4 * x * y - (x + y) * p;
                let xyp = x * y * p;
                if xyp.is_multiple_of(d) {
                    let z = xyp / d;
                    if z >= y {
                        out.push((x, y, z as u128));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn completeness_against_naive_scan_below_500() {
        for p in arith::primes_in(2, 500) {
            let fast = triples(&enumerate_all(prime(p)).unwrap());
            let naive = naive_enumerate(p);
            assert_eq!(fast, naive, "oracle disagrees with naive scan at p={p}");
        }
    }

    #[test]
    fn enumerated_solutions_satisfy_sharper_bounds() {
        // The oracle does not assume these bounds, so this genuinely tests
        // them: x in [⌈p/4⌉, ⌊3p/4⌋], y in [⌈xp/r⌉, ⌊2xp/r⌋], y > p/2,
        // y <= p(p+1)/2.
        for p in arith::primes_in(2, 500) {
            for s in enumerate_all(prime(p)).unwrap() {
                let (x, y, _) = s.triple();
                assert!(
                    x >= p.div_ceil(4) && x <= 3 * p / 4,
                    "x bound fails for p={p} {s}"
                );
                let r = 4 * x - p;
                assert!(
                    y >= (x * p).div_ceil(r) && y <= 2 * x * p / r,
                    "y bound fails for p={p} {s}"
                );
                assert!(2 * y > p, "y > p/2 fails for p={p} {s}");
                assert!(y <= p * (p + 1) / 2, "y <= p(p+1)/2 fails for p={p} {s}");
            }
        }
    }

    #[test]
    fn deterministic_output_order() {
        let a = enumerate_all(prime(199)).unwrap();
        let b = enumerate_all(prime(199)).unwrap();
        assert_eq!(a, b);
        assert!(a
            .windows(2)
            .all(|w| (w[0].x(), w[0].y()) < (w[1].x(), w[1].y())));
    }
}
