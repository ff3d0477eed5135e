//! Exact integer combinatorics: factorials, binomial and multinomial
//! coefficients with out-of-range zero conventions, and lexicographic
//! enumeration of (optionally capped) compositions.
//!
//! The zero convention for `binomial` is load-bearing: the alternating
//! sums elsewhere in the crate rely on `C(n, k) = 0` for `k < 0`, `k > n`
//! or `n < 0` to stay finite without explicit range bookkeeping.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::{Error, Result};

/// A function `ε: {1..r} → ℕ` stored as its list of `r` entries.
pub type ExponentVector = Vec<usize>;

static FACTORIALS: Lazy<RwLock<Vec<Arc<BigInt>>>> =
    Lazy::new(|| RwLock::new(vec![Arc::new(BigInt::one())]));

/// Memoized binomial rows, keyed by `n` and grown monotonically. Each row
/// is computed independently with the multiplicative recurrence, so the
/// cache only holds rows that were actually requested.
static BINOMIAL_ROWS: Lazy<RwLock<BTreeMap<usize, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| RwLock::new(BTreeMap::new()));

/// `n!`, memoized across threads.
pub fn factorial(n: usize) -> BigInt {
    if let Some(v) = FACTORIALS.read().unwrap().get(n) {
        return (**v).clone();
    }
    let mut table = FACTORIALS.write().unwrap();
    while table.len() <= n {
        let next = table.last().unwrap().as_ref() * BigInt::from(table.len());
        table.push(Arc::new(next));
    }
    (*table[n]).clone()
}

/// The full row `C(n, 0..=n)`, memoized by `n`.
pub fn binomial_row(n: usize) -> Arc<Vec<BigInt>> {
    if let Some(row) = BINOMIAL_ROWS.read().unwrap().get(&n) {
        return Arc::clone(row);
    }
    let mut row = Vec::with_capacity(n + 1);
    row.push(BigInt::one());
    for k in 0..n {
        // C(n, k+1) = C(n, k) * (n - k) / (k + 1), exact at every step
        let next = (&row[k] * BigInt::from(n - k)) / BigInt::from(k + 1);
        row.push(next);
    }
    let row = Arc::new(row);
    BINOMIAL_ROWS
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&row));
    row
}

/// Binomial coefficient with the zero convention: returns `0` whenever
/// `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    // For single lookups outside the cached-row regime the symmetric
    // multiplicative product is cheaper than materializing a row.
    if let Some(row) = BINOMIAL_ROWS.read().unwrap().get(&n) {
        return row[k].clone();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// `n! / Π parts(i)!`. Rejects part lists that do not sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<BigInt> {
    let got: usize = parts.iter().sum();
    if got != n {
        return Err(Error::PartsSumMismatch { got, expected: n });
    }
    let mut acc = factorial(n);
    for &p in parts {
        acc /= factorial(p);
    }
    Ok(acc)
}

/// All `ε` of length `r` with `|ε| = total` and, when `caps` is given,
/// `ε(i) <= caps(i)`, in ascending lexicographic order without duplicates.
/// Infeasible inputs yield an empty sequence.
pub fn enumerate_compositions(
    r: usize,
    total: usize,
    caps: Option<&[usize]>,
) -> Vec<ExponentVector> {
    if let Some(caps) = caps {
        assert_eq!(caps.len(), r, "caps length must equal r");
    }
    let mut out = Vec::new();
    if r == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut current = vec![0usize; r];
    fill_compositions(&mut current, 0, total, caps, &mut out);
    out
}

fn fill_compositions(
    current: &mut [usize],
    index: usize,
    remaining: usize,
    caps: Option<&[usize]>,
    out: &mut Vec<ExponentVector>,
) {
    let r = current.len();
    if index == r - 1 {
        if caps.is_none_or(|c| remaining <= c[r - 1]) {
            current[r - 1] = remaining;
            out.push(current.to_vec());
        }
        return;
    }
    let hi = caps.map_or(remaining, |c| c[index].min(remaining));
    // Remaining caps give a lower bound on what must be placed here.
    let lo = match caps {
        Some(c) => {
            let tail: usize = c[index + 1..].iter().sum();
            remaining.saturating_sub(tail)
        }
        None => 0,
    };
    for v in lo..=hi {
        current[index] = v;
        fill_compositions(current, index + 1, remaining - v, caps, out);
    }
}

/// Compositions of `total` into `r` parts that are all at least `1`.
pub fn enumerate_positive_compositions(r: usize, total: usize) -> Vec<ExponentVector> {
    if r == 0 || total < r {
        return if r == 0 && total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    enumerate_compositions(r, total - r, None)
        .into_iter()
        .map(|mut eps| {
            for e in &mut eps {
                *e += 1;
            }
            eps
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_small_and_out_of_range() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(-2, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn binomial_matches_falling_product() {
        // Independent product-formula oracle: C(10, 3) = 10*9*8 / 3!
        let oracle = BigInt::from(10 * 9 * 8 / 6);
        assert_eq!(binomial(10, 3), oracle);
        assert_eq!(oracle, BigInt::from(120));
    }

    #[test]
    fn pascal_recurrence_holds_up_to_30() {
        for n in 1..=30i64 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "Pascal failed at ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn binomial_row_agrees_with_point_values() {
        let row = binomial_row(12);
        for k in 0..=12 {
            assert_eq!(row[k], binomial(12, k as i64));
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(4, &[1, 3]).unwrap(), BigInt::from(4));
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), BigInt::from(6));
        // Factorial-formula oracle: 9!/(3!3!3!) = 362880/216
        assert_eq!(multinomial(9, &[3, 3, 3]).unwrap(), BigInt::from(1680));
        assert!(matches!(
            multinomial(5, &[1, 3]),
            Err(Error::PartsSumMismatch {
                got: 4,
                expected: 5
            })
        ));
    }

    #[test]
    fn multinomial_is_product_of_successive_binomials() {
        // Exhaustive for n <= 12, r <= 4.
        for n in 0..=12usize {
            for r in 1..=4usize {
                for parts in enumerate_compositions(r, n, None) {
                    let mut expected = BigInt::one();
                    let mut left = n;
                    for &p in &parts {
                        expected *= binomial(left as i64, p as i64);
                        left -= p;
                    }
                    assert_eq!(multinomial(n, &parts).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn compositions_examples() {
        let v = enumerate_compositions(2, 4, None);
        assert_eq!(v.len(), 5);
        assert_eq!(v.first().unwrap(), &vec![0, 4]);
        assert_eq!(v.last().unwrap(), &vec![4, 0]);

        let capped = enumerate_compositions(2, 2, Some(&[1, 1]));
        assert_eq!(capped, vec![vec![1, 1]]);

        assert_eq!(enumerate_compositions(3, 3, None).len(), 10);
        assert!(enumerate_compositions(2, 5, Some(&[1, 1])).is_empty());
    }

    #[test]
    fn compositions_are_lexicographic_and_unique() {
        let v = enumerate_compositions(3, 5, None);
        for pair in v.windows(2) {
            assert!(pair[0] < pair[1], "not strictly ascending: {pair:?}");
        }
    }

    #[test]
    fn positive_compositions_shift() {
        let v = enumerate_positive_compositions(2, 4);
        assert_eq!(v, vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert!(enumerate_positive_compositions(3, 2).is_empty());
    }

    proptest! {
        // Stars-and-bars count, r <= 5, k <= 12.
        #[test]
        fn composition_count_is_stars_and_bars(r in 1usize..=5, k in 0usize..=12) {
            let count = enumerate_compositions(r, k, None).len();
            let expected = binomial((k + r - 1) as i64, (r - 1) as i64);
            prop_assert_eq!(BigInt::from(count), expected);
        }

        // Capped enumeration agrees with filtering the uncapped list.
        #[test]
        fn capped_matches_filtered(r in 1usize..=4, k in 0usize..=8, caps in proptest::collection::vec(0usize..=8, 1..=4)) {
            prop_assume!(caps.len() == r);
            let capped = enumerate_compositions(r, k, Some(&caps));
            let filtered: Vec<_> = enumerate_compositions(r, k, None)
                .into_iter()
                .filter(|eps| eps.iter().zip(&caps).all(|(e, c)| e <= c))
                .collect();
            prop_assert_eq!(capped, filtered);
        }

        // Decimal-string round trip is lossless for big integers.
        #[test]
        fn decimal_round_trip(digits in proptest::collection::vec(0u8..=9, 1..60), neg in any::<bool>()) {
            let mut s: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
            s = s.trim_start_matches('0').to_string();
            if s.is_empty() { s.push('0'); }
            if neg && s != "0" { s.insert(0, '-'); }
            let parsed: BigInt = s.parse().unwrap();
            prop_assert_eq!(parsed.to_string(), s);
        }

        // Ring laws on sampled big integers.
        #[test]
        fn integer_ring_laws(a in any::<i128>(), b in any::<i128>(), c in any::<i128>()) {
            let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }
    }
}
