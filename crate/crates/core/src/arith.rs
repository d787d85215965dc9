//! Exact integer arithmetic primitives and primality utilities.
//!
//! Values are `u64`; intermediates that can reach order p^4 are computed in
//! 128-bit integers so that everything below [`crate::SEARCH_LIMIT`] is exact.
//! Nothing here wraps silently: fallible operations return [`Error`] and the
//! 128-bit helpers are checked.

use crate::error::{Error, Result};

/// The ambient nonnegative integer type of all equations.
pub type Natural = u64;

/// Greatest common divisor, with gcd(a, 0) = a and gcd(0, 0) = 0.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// gcd over 128-bit values, used where products like x*y exceed u64.
pub fn gcd_u128(a: u128, b: u128) -> u128 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Ceiling division ⌈n/d⌉.
pub fn ceil_div(n: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(n.div_ceil(d))
}

/// Floor division ⌊n/d⌋.
pub fn floor_div(n: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(n / d)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Witnesses that make the strong-probable-prime test deterministic for the
/// whole u64 range.
const MILLER_RABIN_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for the full u64 range.
///
/// The survey must never misclassify a composite as prime, so no
/// probabilistic error is acceptable; the fixed witness set above is known
/// to be exact for all n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MILLER_RABIN_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // n - 1 = d * 2^s with d odd
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MILLER_RABIN_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes in the inclusive range [lo, hi], ascending, via a segmented
/// sieve of Eratosthenes.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);

    // Base primes up to sqrt(hi).
    let root = (hi as f64).sqrt() as u64 + 1;
    let mut base_sieve = vec![true; root as usize + 1];
    let mut base_primes = Vec::new();
    for n in 2..=root {
        if base_sieve[n as usize] {
            base_primes.push(n);
            let mut m = n * n;
            while m <= root {
                base_sieve[m as usize] = false;
                m += n;
            }
        }
    }

    const SEGMENT: u64 = 1 << 16;
    let mut primes = Vec::new();
    let mut seg_lo = lo;
    let mut segment = vec![true; SEGMENT as usize];
    while seg_lo <= hi {
        let seg_hi = seg_lo.saturating_add(SEGMENT - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        segment[..len].fill(true);
        for &p in &base_primes {
            if p * p > seg_hi {
                break;
            }
            let mut m = (seg_lo.div_ceil(p) * p).max(p * p);
            while m <= seg_hi {
                segment[(m - seg_lo) as usize] = false;
                m += p;
            }
        }
        for (i, &alive) in segment[..len].iter().enumerate() {
            if alive {
                primes.push(seg_lo + i as u64);
            }
        }
        seg_lo = seg_hi + 1;
        if seg_lo == 0 {
            break; // wrapped at u64::MAX
        }
    }
    primes
}
