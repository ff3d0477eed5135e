//! Exact decisions about irrational quantities: integer square roots,
//! rational square-root enclosures, and certified rational upper bounds on
//! natural logarithms.
//!
//! Every comparison here is decided by big-integer or big-rational
//! arithmetic. The logarithm bound works by bisecting against `exp`,
//! where `e^x` vs a rational target is decided from the Taylor series with
//! an explicit remainder majorant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest integer `s` with `s² <= x`. Panics on negative input.
pub fn floor_sqrt(x: &BigInt) -> BigInt {
    assert!(!x.is_negative(), "floor_sqrt of a negative number");
    x.sqrt()
}

/// Smallest integer `s` with `s² >= x`.
pub fn ceil_sqrt(x: &BigInt) -> BigInt {
    let s = floor_sqrt(x);
    if &(&s * &s) == x {
        s
    } else {
        s + BigInt::one()
    }
}

/// Smallest integer `>= x`.
pub fn ceil_rational(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// A rational enclosure `(lo, hi)` with `lo² <= x <= hi²`, tightened by
/// `rounds` bisection steps from the integer-sqrt bracket.
pub fn sqrt_bounds(x: &BigRational, rounds: u32) -> (BigRational, BigRational) {
    assert!(!x.is_negative(), "sqrt_bounds of a negative number");
    if x.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let mut lo = BigRational::from_integer(floor_sqrt(&x.floor().to_integer()));
    let mut hi = BigRational::from_integer(ceil_sqrt(&ceil_rational(x)));
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..rounds {
        let mid = (&lo + &hi) / &two;
        if &(&mid * &mid) <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Decides `e^x > target` for `x >= 0`, exactly.
///
/// Uses partial sums `S_N` of the exponential series (always below `e^x`)
/// and the tail majorant `x^{N+1}/(N+1)! * (N+2)/(N+2-x)` valid for
/// `x < N+2`. The loop grows `N` until one side is certain; it terminates
/// for every rational `x != 0` because `e^x` is then irrational.
pub fn exp_exceeds(x: &BigRational, target: &BigRational) -> bool {
    assert!(!x.is_negative(), "exp_exceeds expects x >= 0");
    if x.is_zero() {
        return BigRational::one() > *target;
    }
    let mut partial = BigRational::one();
    let mut term = BigRational::one();
    let mut n: u64 = 0;
    loop {
        if &partial > target {
            return true;
        }
        n += 1;
        term = term * x / BigRational::from_integer(BigInt::from(n));
        partial += &term;
        // Remainder after the degree-n partial sum, once the geometric
        // majorant applies.
        let n_plus_2 = BigRational::from_integer(BigInt::from(n + 2));
        if x < &n_plus_2 {
            let tail_factor = &n_plus_2 / (&n_plus_2 - x);
            let next_term = &term * x / BigRational::from_integer(BigInt::from(n + 1));
            if &(&partial + next_term * tail_factor) < target {
                return false;
            }
        }
    }
}

/// A certified rational upper bound on `ln(m)`, within `tol` of the true
/// value, computed by bisection against [`exp_exceeds`].
pub fn ln_upper_bound(m: u64, tol: &BigRational) -> BigRational {
    assert!(m >= 1, "ln_upper_bound needs m >= 1");
    assert!(tol > &BigRational::zero());
    if m == 1 {
        return BigRational::zero();
    }
    let target = BigRational::from_integer(BigInt::from(m));
    let mut lo = BigRational::zero();
    // e > 2, so e^b > 2^b >= m once b covers the bit length of m.
    let mut hi = BigRational::from_integer(BigInt::from(64 - m.leading_zeros() as u64));
    debug_assert!(exp_exceeds(&hi, &target));
    let two = BigRational::from_integer(BigInt::from(2));
    while &(&hi - &lo) >= tol {
        let mid = (&lo + &hi) / &two;
        if exp_exceeds(&mid, &target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Convenience: `1 / 10^6`, the certification width used for logarithm
/// hypotheses.
pub fn micro() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(1_000_000))
}
