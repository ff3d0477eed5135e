//! Euler characteristics `χ(X, Ω^q)` of a complete intersection `X` of
//! `r` ample hypersurfaces in an `n`-dimensional abelian variety.
//!
//! Because the cotangent bundle of an abelian variety is trivial, these
//! characteristics are determined by pure combinatorics on top of the
//! intersection numbers `H_1^{ε(1)} ··· H_r^{ε(r)}`:
//!
//! ```text
//! |χ(X, Ω^q)| = (1/n!) Σ_{|ε|=n} multinomial(n; ε) · I(ε) · Σ_{|t|=q} Π E(ε(i), t(i))
//! ```
//!
//! with sign `(-1)^(n-q-r)`. Two independent routes are implemented: the
//! closed sum above ([`chi_from_profile`]) and a wedge-filtration
//! recurrence grounded in an inclusion–exclusion base case
//! ([`chi_via_recurrence`]). Division by `n!` always happens last, on
//! integer-combined numerators, with an integrality check — a remainder
//! signals an inconsistent profile.
//!
//! [`ChiSequence`] stores magnitudes only; signs are reconstructed on
//! demand.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

use crate::combinatorics::{
    binomial, enumerate_compositions, factorial, multinomial, ExponentVector,
};
use crate::eulerian::{eulerian_row, generalized_eulerian_row};
use crate::{Error, Result};

/// Magnitudes `|χ(X, Ω^q)|` for `q = 0..=n-r`, with the zero convention
/// outside that range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiSequence {
    n: usize,
    r: usize,
    values: Vec<BigInt>,
}

impl ChiSequence {
    /// Wraps magnitudes for a codimension-`r` intersection in dimension
    /// `n`. Requires `n >= r >= 1`, exactly `n - r + 1` values, and a
    /// positive leading value.
    pub fn from_magnitudes(n: usize, r: usize, values: Vec<BigInt>) -> Result<Self> {
        if r == 0 || n < r {
            return Err(Error::InvalidArgument(format!(
                "chi sequence needs 1 <= r <= n, got r = {r}, n = {n}"
            )));
        }
        if values.len() != n - r + 1 {
            return Err(Error::InvalidArgument(format!(
                "chi sequence for (n, r) = ({n}, {r}) needs {} values, got {}",
                n - r + 1,
                values.len()
            )));
        }
        if values[0] <= BigInt::zero() {
            return Err(Error::InvalidArgument(
                "chi sequence must have a positive leading value".into(),
            ));
        }
        if values.iter().any(|v| v.is_negative()) {
            return Err(Error::InvalidArgument(
                "chi magnitudes must be nonnegative".into(),
            ));
        }
        Ok(Self { n, r, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Dimension of the intersection, `n - r`.
    pub fn dim(&self) -> usize {
        self.n - self.r
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `|χ(X, Ω^q)|`, zero outside `[0, n-r]`.
    pub fn value(&self, q: i64) -> BigInt {
        if q < 0 || q as usize >= self.values.len() {
            BigInt::zero()
        } else {
            self.values[q as usize].clone()
        }
    }

    /// The sign `(-1)^(n-q-r)` of `χ(X, Ω^q)`.
    pub fn sign(&self, q: usize) -> i8 {
        if (self.dim().wrapping_sub(q)).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `χ(X, Ω^q)` with its sign restored.
    pub fn signed_value(&self, q: usize) -> BigInt {
        let v = self.value(q as i64);
        if self.sign(q) < 0 {
            -v
        } else {
            v
        }
    }

    pub fn is_palindromic(&self) -> bool {
        let len = self.values.len();
        (0..len / 2).all(|q| self.values[q] == self.values[len - 1 - q])
    }

    /// Decimal-string rendering, lowest degree first.
    pub fn decimal_strings(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }
}

/// Hypersurfaces all representing multiples `d_i · H` of one ample class,
/// with `h = H^n / n!` a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub n: usize,
    pub degrees: Vec<u64>,
    pub h: BigInt,
}

impl DegreeProfile {
    pub fn new(n: usize, degrees: Vec<u64>, h: BigInt) -> Result<Self> {
        if degrees.is_empty() || degrees.contains(&0) {
            return Err(Error::InvalidArgument(
                "degree profile needs at least one degree, all positive".into(),
            ));
        }
        if h <= BigInt::zero() {
            return Err(Error::InvalidArgument("h must be positive".into()));
        }
        if n < degrees.len() {
            return Err(Error::InvalidArgument(format!(
                "degree profile needs n >= r, got n = {n}, r = {}",
                degrees.len()
            )));
        }
        Ok(Self { n, degrees, h })
    }

    pub fn r(&self) -> usize {
        self.degrees.len()
    }
}

/// The complete map `ε ↦ H_1^{ε(1)} ··· H_r^{ε(r)}` over all `ε` with
/// `|ε| = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile {
    r: usize,
    n: usize,
    numbers: BTreeMap<ExponentVector, BigInt>,
}

/// On-disk form of a profile: values as decimal strings so that no
/// integer-width limit applies.
#[derive(Debug, Serialize, Deserialize)]
struct ProfileDoc {
    r: usize,
    n: usize,
    numbers: Vec<ProfileEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ProfileEntry {
    eps: Vec<usize>,
    value: String,
}

impl IntersectionProfile {
    /// Validates completeness (every `ε` with `|ε| = n` present exactly
    /// once) and positivity of all values.
    pub fn new(r: usize, n: usize, numbers: BTreeMap<ExponentVector, BigInt>) -> Result<Self> {
        if r == 0 || n < r {
            return Err(Error::InvalidProfile(format!(
                "profile needs 1 <= r <= n, got r = {r}, n = {n}"
            )));
        }
        let expected = enumerate_compositions(r, n, None);
        if numbers.len() != expected.len() {
            return Err(Error::InvalidProfile(format!(
                "expected {} intersection numbers, got {}",
                expected.len(),
                numbers.len()
            )));
        }
        for eps in &expected {
            match numbers.get(eps) {
                None => {
                    return Err(Error::InvalidProfile(format!(
                        "missing intersection number for eps = {eps:?}"
                    )))
                }
                Some(v) if *v <= BigInt::zero() => {
                    return Err(Error::InvalidProfile(format!(
                        "intersection number for eps = {eps:?} must be positive"
                    )))
                }
                Some(_) => {}
            }
        }
        Ok(Self { r, n, numbers })
    }

    /// Profile with the same value at every `ε`.
    pub fn constant(r: usize, n: usize, value: BigInt) -> Result<Self> {
        let numbers = enumerate_compositions(r, n, None)
            .into_iter()
            .map(|eps| (eps, value.clone()))
            .collect();
        Self::new(r, n, numbers)
    }

    /// The profile induced by a single-class degree vector:
    /// `I(ε) = h · n! · Π d_i^{ε(i)}`.
    pub fn from_same_class(dp: &DegreeProfile) -> Self {
        let (r, n) = (dp.r(), dp.n);
        let nf = factorial(n);
        let numbers = enumerate_compositions(r, n, None)
            .into_iter()
            .map(|eps| {
                let mut v = &dp.h * &nf;
                for (i, &e) in eps.iter().enumerate() {
                    v *= BigInt::from(dp.degrees[i]).pow(e as u32);
                }
                (eps, v)
            })
            .collect();
        Self { r, n, numbers }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, eps: &[usize]) -> &BigInt {
        &self.numbers[eps]
    }

    pub fn numbers(&self) -> &BTreeMap<ExponentVector, BigInt> {
        &self.numbers
    }

    /// Every profile value multiplied by a positive constant.
    pub fn scaled(&self, factor: &BigInt) -> Result<Self> {
        if factor <= &BigInt::zero() {
            return Err(Error::InvalidArgument(
                "scale factor must be positive".into(),
            ));
        }
        let numbers = self
            .numbers
            .iter()
            .map(|(eps, v)| (eps.clone(), v * factor))
            .collect();
        Ok(Self {
            r: self.r,
            n: self.n,
            numbers,
        })
    }

    /// Opt-in admissibility check: every value at least `n!`, the
    /// Riemann–Roch floor for products of ample classes. Synthetic test
    /// profiles may deliberately violate it, so it is not enforced at
    /// construction.
    pub fn validate_riemann_roch(&self) -> Result<()> {
        let floor = factorial(self.n);
        for (eps, v) in &self.numbers {
            if v < &floor {
                return Err(Error::InvalidProfile(format!(
                    "value {v} at eps = {eps:?} is below the Riemann-Roch floor {floor}"
                )));
            }
        }
        Ok(())
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: ProfileDoc =
            serde_json::from_str(text).map_err(|e| Error::ProfileFormat(e.to_string()))?;
        let mut numbers = BTreeMap::new();
        for entry in doc.numbers {
            if entry.eps.len() != doc.r {
                return Err(Error::ProfileFormat(format!(
                    "eps {:?} does not have length r = {}",
                    entry.eps, doc.r
                )));
            }
            let value: BigInt = entry.value.parse().map_err(|_| {
                Error::ProfileFormat(format!("bad decimal value {:?}", entry.value))
            })?;
            if numbers.insert(entry.eps.clone(), value).is_some() {
                return Err(Error::ProfileFormat(format!(
                    "duplicate eps {:?}",
                    entry.eps
                )));
            }
        }
        Self::new(doc.r, doc.n, numbers)
    }

    pub fn to_json_string(&self) -> String {
        let doc = ProfileDoc {
            r: self.r,
            n: self.n,
            numbers: self
                .numbers
                .iter()
                .map(|(eps, v)| ProfileEntry {
                    eps: eps.clone(),
                    value: v.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("profile serialization cannot fail")
    }
}

/// `Σ_{|t|=q} Π E(ε(i), t(i))` for all `q` at once: the convolution of the
/// classical rows picked by `ε`. Empty if some `ε(i) = 0`.
fn eulerian_bucket_distribution(eps: &[usize]) -> Vec<BigInt> {
    if eps.contains(&0) {
        return Vec::new();
    }
    let mut acc = vec![BigInt::one()];
    for &e in eps {
        let row = eulerian_row(e);
        let mut next = vec![BigInt::zero(); acc.len() + row.len() - 1];
        for (i, x) in acc.iter().enumerate() {
            for (j, y) in row.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        acc = next;
    }
    acc
}

/// The χ magnitudes from a complete intersection profile, via the closed
/// Eulerian-product sum.
pub fn chi_from_profile(profile: &IntersectionProfile) -> Result<ChiSequence> {
    let (r, n) = (profile.r(), profile.n());
    let mut acc = vec![BigInt::zero(); n - r + 1];
    for (eps, value) in profile.numbers() {
        let dist = eulerian_bucket_distribution(eps);
        if dist.is_empty() {
            continue;
        }
        debug_assert_eq!(dist.len(), n - r + 1);
        let coeff = multinomial(n, eps).expect("profile keys sum to n") * value;
        for (q, d) in dist.iter().enumerate() {
            acc[q] += &coeff * d;
        }
    }
    let nf = factorial(n);
    let mut values = Vec::with_capacity(acc.len());
    for (q, numerator) in acc.into_iter().enumerate() {
        let (quot, rem) = numerator.div_rem(&nf);
        if !rem.is_zero() {
            return Err(Error::NonIntegralChi { q });
        }
        values.push(quot);
    }
    ChiSequence::from_magnitudes(n, r, values)
}

/// χ magnitudes for hypersurfaces in a single ample class. When every
/// degree is `1` this collapses to `h · E_r(n, ·)`; in general
/// `|χ_q| = h · Σ_ε multinomial(n; ε) Π d_i^{ε(i)} Σ_{|t|=q} Π E(ε(i), t(i))`,
/// integral with no trailing division.
pub fn chi_same_class(dp: &DegreeProfile) -> ChiSequence {
    let (r, n) = (dp.r(), dp.n);
    if dp.degrees.iter().all(|&d| d == 1) {
        let values = generalized_eulerian_row(r, n)
            .into_iter()
            .map(|v| v * &dp.h)
            .collect();
        return ChiSequence::from_magnitudes(n, r, values)
            .expect("generalized row is a valid chi sequence");
    }
    let mut acc = vec![BigInt::zero(); n - r + 1];
    for eps in enumerate_compositions(r, n, None) {
        let dist = eulerian_bucket_distribution(&eps);
        if dist.is_empty() {
            continue;
        }
        let mut coeff = multinomial(n, &eps).expect("composition sums to n");
        for (i, &e) in eps.iter().enumerate() {
            coeff *= BigInt::from(dp.degrees[i]).pow(e as u32);
        }
        for (q, d) in dist.iter().enumerate() {
            acc[q] += &coeff * d;
        }
    }
    let values = acc.into_iter().map(|v| v * &dp.h).collect();
    ChiSequence::from_magnitudes(n, r, values).expect("same-class chi sequence is valid")
}

/// The twist coefficient
/// `c_{q;ε}(d) = Σ_{s >= 0} (-1)^{Σs} C(n, q - Σs) Π ((d_i - s_i)^{ε_i} - (d_i - s_i - 1)^{ε_i})`;
/// the sum is finite because the binomial vanishes once `Σs > q`.
/// Negative bases are evaluated as exact signed integers.
pub fn chi_coefficient(q: usize, eps: &[usize], d: &[i64]) -> BigInt {
    assert_eq!(eps.len(), d.len(), "eps and d must have equal length");
    let r = eps.len();
    let n: usize = eps.iter().sum();
    let mut acc = BigInt::zero();
    for total in 0..=q {
        let outer = binomial(n as i64, (q - total) as i64);
        if outer.is_zero() {
            continue;
        }
        for s in enumerate_compositions(r, total, None) {
            let mut prod = BigInt::one();
            for i in 0..r {
                let base = BigInt::from(d[i] - s[i] as i64);
                let lower = BigInt::from(d[i] - s[i] as i64 - 1);
                prod *= base.pow(eps[i] as u32) - lower.pow(eps[i] as u32);
                if prod.is_zero() {
                    break;
                }
            }
            if prod.is_zero() {
                continue;
            }
            let term = &outer * prod;
            if total % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc
}

/// `P_0(d) = χ(X, O_X(Σ d_i H_i))` by inclusion–exclusion over the ideal
/// resolution, expanded multilinearly over the profile. The alternating
/// sum over `ε ∈ {0,1}^r` telescopes to a product of power differences.
pub fn p_zero(profile: &IntersectionProfile, twists: &[i64]) -> Result<BigInt> {
    let (r, n) = (profile.r(), profile.n());
    assert_eq!(twists.len(), r, "one twist per hypersurface");
    let mut acc = BigInt::zero();
    for (eps, value) in profile.numbers() {
        let mut prod = BigInt::one();
        for i in 0..r {
            let hi = BigInt::from(twists[i]).pow(eps[i] as u32);
            let lo = BigInt::from(twists[i] - 1).pow(eps[i] as u32);
            prod *= hi - lo;
            if prod.is_zero() {
                break;
            }
        }
        if prod.is_zero() {
            continue;
        }
        acc += multinomial(n, eps).expect("profile keys sum to n") * value * prod;
    }
    let (quot, rem) = acc.div_rem(&factorial(n));
    if !rem.is_zero() {
        return Err(Error::NonIntegralChi { q: 0 });
    }
    Ok(quot)
}

/// `P_0` for a single-class degree vector, with the extra twist `m · H`
/// made explicit:
/// `P_0(a, m) = h · Σ_{ε ∈ {0,1}^r} (-1)^{|ε|} (m + Σ (a_i - ε_i) d_i)^n`.
/// The χ pipelines only exercise `m = 0`.
pub fn p_zero_same_class(dp: &DegreeProfile, twists: &[i64], m: i64) -> BigInt {
    let (r, n) = (dp.r(), dp.n);
    assert_eq!(twists.len(), r, "one twist per hypersurface");
    let mut acc = BigInt::zero();
    for mask in 0u32..1 << r {
        let mut base = BigInt::from(m);
        for (i, (&twist, &degree)) in twists.iter().zip(&dp.degrees).enumerate() {
            let eps_i = (mask >> i) & 1;
            base += BigInt::from(twist - eps_i as i64) * BigInt::from(degree);
        }
        let term = base.pow(n as u32);
        if mask.count_ones() % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc * &dp.h
}

/// Signed `P_q(d)` for `q = 0..=n-r` via the wedge-filtration recurrence
/// `C(n, q) P_0(d) = Σ_{s ∈ {0,1}^r} P_{q-|s|}(d - s)`, memoized over the
/// shifted-twist lattice. Independent of [`chi_from_profile`].
pub fn p_sequence(profile: &IntersectionProfile, twists: &[i64]) -> Result<Vec<BigInt>> {
    let (r, n) = (profile.r(), profile.n());
    assert_eq!(twists.len(), r, "one twist per hypersurface");
    let mut memo: HashMap<(usize, Vec<i64>), BigInt> = HashMap::new();
    let mut out = Vec::with_capacity(n - r + 1);
    for q in 0..=n - r {
        let v = p_recursive(profile, q, twists.to_vec(), &mut memo)?;
        out.push(v);
    }
    Ok(out)
}

fn p_recursive(
    profile: &IntersectionProfile,
    q: usize,
    twists: Vec<i64>,
    memo: &mut HashMap<(usize, Vec<i64>), BigInt>,
) -> Result<BigInt> {
    if let Some(v) = memo.get(&(q, twists.clone())) {
        return Ok(v.clone());
    }
    let r = profile.r();
    let n = profile.n();
    let value = if q == 0 {
        p_zero(profile, &twists)?
    } else {
        let mut acc = binomial(n as i64, q as i64) * p_zero(profile, &twists)?;
        for mask in 1u32..1 << r {
            let weight = mask.count_ones() as usize;
            if weight > q {
                continue;
            }
            let mut shifted = twists.clone();
            for (i, t) in shifted.iter_mut().enumerate() {
                *t -= ((mask >> i) & 1) as i64;
            }
            acc -= p_recursive(profile, q - weight, shifted, memo)?;
        }
        acc
    };
    memo.insert((q, twists), value.clone());
    Ok(value)
}

/// The same χ magnitudes as [`chi_from_profile`], through the recurrence
/// route at zero twist. Checks the sign pattern `(-1)^(n-q-r)` on the way.
pub fn chi_via_recurrence(profile: &IntersectionProfile) -> Result<ChiSequence> {
    let (r, n) = (profile.r(), profile.n());
    let signed = p_sequence(profile, &vec![0; r])?;
    let mut values = Vec::with_capacity(signed.len());
    for (q, v) in signed.into_iter().enumerate() {
        let expected_negative = (n - q - r) % 2 == 1;
        if !v.is_zero() && v.is_negative() != expected_negative {
            return Err(Error::InvalidProfile(format!(
                "recurrence sign pattern broken at q = {q}"
            )));
        }
        values.push(v.abs());
    }
    ChiSequence::from_magnitudes(n, r, values)
}

/// Exact truth of `2 Σ |χ_q|² <= (Σ |χ_q|)²`.
pub fn numerical_condition(chi: &ChiSequence) -> bool {
    let sum: BigInt = chi.values().iter().sum();
    let sum_sq: BigInt = chi.values().iter().map(|v| v * v).sum();
    BigInt::from(2) * sum_sq <= &sum * &sum
}

/// χ of a surface intersection from `a = Σ (X·H_i²)/6` and
/// `b = Σ_{i<j} (X·H_i·H_j)/4`: the triple `(a+b, 4a+2b, a+b)`.
/// Non-integral results are rejected.
pub fn dim2_closed_form(a: &BigRational, b: &BigRational) -> Result<ChiSequence> {
    let four = BigRational::from_integer(BigInt::from(4));
    let two = BigRational::from_integer(BigInt::from(2));
    let ends = a + b;
    let middle = &four * a + &two * b;
    let values = vec![
        rational_to_integer(&ends, "a + b")?,
        rational_to_integer(&middle, "4a + 2b")?,
        rational_to_integer(&ends, "a + b")?,
    ];
    ChiSequence::from_magnitudes(3, 1, values)
}

const DIM4_ROWS: [[i64; 5]; 3] = [[1, 1, 1, 1, 1], [26, 12, 8, 6, 4], [66, 22, 18, 10, 6]];

/// χ of a fourfold intersection from the five degree-4 interaction terms.
/// Row coefficients, lowest degree first and then mirrored:
/// `(1,1,1,1,1)`, `(26,12,8,6,4)`, `(66,22,18,10,6)`.
pub fn dim4_closed_form(
    a: &BigRational,
    b13: &BigRational,
    b22: &BigRational,
    c: &BigRational,
    d: &BigRational,
) -> Result<ChiSequence> {
    let inputs = [a, b13, b22, c, d];
    let mut values = Vec::with_capacity(5);
    for (row, label) in DIM4_ROWS.iter().zip(["chi0", "chi1", "chi2"]) {
        let mut acc = BigRational::zero();
        for (coeff, x) in row.iter().zip(inputs.iter()) {
            acc += BigRational::from_integer(BigInt::from(*coeff)) * *x;
        }
        values.push(rational_to_integer(&acc, label)?);
    }
    values.push(values[1].clone());
    values.push(values[0].clone());
    ChiSequence::from_magnitudes(5, 1, values)
}

fn rational_to_integer(v: &BigRational, label: &str) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NonIntegralValue(format!(
            "{label} = {v} is not an integer"
        )))
    }
}

/// The five interaction variables of the fourfold closed form, in the
/// fixed order used by [`QuadraticForm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dim4Var {
    A,
    B13,
    B22,
    C,
    D,
}

impl Dim4Var {
    pub const ALL: [Dim4Var; 5] = [
        Dim4Var::A,
        Dim4Var::B13,
        Dim4Var::B22,
        Dim4Var::C,
        Dim4Var::D,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Dim4Var::A => "A",
            Dim4Var::B13 => "B13",
            Dim4Var::B22 => "B22",
            Dim4Var::C => "C",
            Dim4Var::D => "D",
        }
    }
}

/// A quadratic form in the five fourfold variables; entries are the
/// combined coefficients of the monomials `x_i x_j` with `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    coefficients: BTreeMap<(Dim4Var, Dim4Var), BigInt>,
}

impl QuadraticForm {
    pub fn coefficient(&self, x: Dim4Var, y: Dim4Var) -> BigInt {
        let key = if x <= y { (x, y) } else { (y, x) };
        self.coefficients
            .get(&key)
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<(Dim4Var, Dim4Var), BigInt> {
        &self.coefficients
    }
}

/// Symbolic expansion of `Σ χ_q²` and `(Σ χ_q)²` over the fourfold
/// variables, plus the 2x domination flag between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCheck {
    pub sum_of_squares: QuadraticForm,
    pub square_of_sum: QuadraticForm,
    /// Every coefficient of `square_of_sum` is at least twice the
    /// matching coefficient of `sum_of_squares`.
    pub dominated: bool,
}

pub fn dim4_quadratic_check() -> QuadraticCheck {
    let rows: [[i64; 5]; 5] = [
        DIM4_ROWS[0],
        DIM4_ROWS[1],
        DIM4_ROWS[2],
        DIM4_ROWS[1],
        DIM4_ROWS[0],
    ];
    let mut sum_of_squares = BTreeMap::new();
    for row in &rows {
        accumulate_outer(&mut sum_of_squares, row, row);
    }
    let mut total = [0i64; 5];
    for row in &rows {
        for (t, v) in total.iter_mut().zip(row.iter()) {
            *t += v;
        }
    }
    let mut square_of_sum = BTreeMap::new();
    accumulate_outer(&mut square_of_sum, &total, &total);

    let dominated = square_of_sum
        .iter()
        .all(|(key, big)| big >= &(BigInt::from(2) * &sum_of_squares[key]));
    QuadraticCheck {
        sum_of_squares: QuadraticForm {
            coefficients: sum_of_squares,
        },
        square_of_sum: QuadraticForm {
            coefficients: square_of_sum,
        },
        dominated,
    }
}

fn accumulate_outer(map: &mut BTreeMap<(Dim4Var, Dim4Var), BigInt>, u: &[i64; 5], v: &[i64; 5]) {
    for i in 0..5 {
        for j in i..5 {
            let combined = if i == j {
                BigInt::from(u[i] * v[i])
            } else {
                BigInt::from(u[i] * v[j] + u[j] * v[i])
            };
            let key = (Dim4Var::ALL[i], Dim4Var::ALL[j]);
            *map.entry(key).or_insert_with(BigInt::zero) += combined;
        }
    }
}

/// `|χ_top(X)| = Σ_{ε >= 1, |ε| = n} I(ε)`, cross-checked against the sum
/// of the χ magnitudes: the signs `(-1)^q (-1)^(n-q-r)` are constant in
/// `q`, so the alternating topological sum has magnitude `Σ_q |χ_q|`.
pub fn topological_euler(profile: &IntersectionProfile) -> Result<BigInt> {
    let support_sum: BigInt = profile
        .numbers()
        .iter()
        .filter(|(eps, _)| eps.iter().all(|&e| e >= 1))
        .map(|(_, v)| v)
        .sum();
    let chi = chi_from_profile(profile)?;
    let chi_sum: BigInt = chi.values().iter().sum();
    if support_sum != chi_sum {
        return Err(Error::ChiSumMismatch {
            chi_sum,
            support_sum,
        });
    }
    Ok(support_sum)
}

/// Whether `χ_top(X)` is divisible by 6; meaningful under `r < n/2`,
/// which is required.
pub fn divisible_by_six(profile: &IntersectionProfile) -> Result<bool> {
    let (r, n) = (profile.r(), profile.n());
    if 2 * r >= n {
        return Err(Error::HypothesisNotMet(format!(
            "divisibility by 6 needs r < n/2, got r = {r}, n = {n}"
        )));
    }
    let total = topological_euler(profile)?;
    Ok(total.mod_floor(&BigInt::from(6)).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulerian::generalized_eulerian;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn row_i64(values: &[i64]) -> Vec<BigInt> {
        values.iter().copied().map(BigInt::from).collect()
    }

    fn constant_profile(r: usize, n: usize, value: i64) -> IntersectionProfile {
        IntersectionProfile::constant(r, n, big(value)).unwrap()
    }

    #[test]
    fn chi_from_profile_examples() {
        // r = 2, n = 4, all I(ε) = 24: the E_2(4, ·) row.
        let chi = chi_from_profile(&constant_profile(2, 4, 24)).unwrap();
        assert_eq!(chi.values(), &row_i64(&[14, 44, 14]));

        // r = 1, n = 3, I = 6: the E(3, ·) row.
        let chi = chi_from_profile(&constant_profile(1, 3, 6)).unwrap();
        assert_eq!(chi.values(), &row_i64(&[1, 4, 1]));

        // Mixed-degree profile: I(ε) = 24 · 1^{ε1} · 2^{ε2}.
        let dp = DegreeProfile::new(4, vec![1, 2], BigInt::one()).unwrap();
        let chi = chi_from_profile(&IntersectionProfile::from_same_class(&dp)).unwrap();
        assert_eq!(chi.value(0), big(64));
    }

    #[test]
    fn chi_same_class_examples() {
        let dp = DegreeProfile::new(4, vec![1, 1], BigInt::one()).unwrap();
        assert_eq!(chi_same_class(&dp).values(), &row_i64(&[14, 44, 14]));

        let dp = DegreeProfile::new(7, vec![1], BigInt::one()).unwrap();
        assert_eq!(
            chi_same_class(&dp).values(),
            &row_i64(&[1, 120, 1191, 2416, 1191, 120, 1])
        );

        let dp = DegreeProfile::new(4, vec![1, 2], BigInt::one()).unwrap();
        let chi = chi_same_class(&dp);
        assert_eq!(chi.value(0), big(64));
        // General-degree path agrees with the profile route.
        let via_profile = chi_from_profile(&IntersectionProfile::from_same_class(&dp)).unwrap();
        assert_eq!(chi, via_profile);
    }

    #[test]
    fn chi_sequence_conventions() {
        let dp = DegreeProfile::new(4, vec![1, 1], BigInt::one()).unwrap();
        let chi = chi_same_class(&dp);
        assert_eq!(chi.value(-1), BigInt::zero());
        assert_eq!(chi.value(3), BigInt::zero());
        assert_eq!(chi.dim(), 2);
        // (-1)^(n-q-r) with n = 4, r = 2: +, -, + over q = 0, 1, 2.
        assert_eq!(chi.sign(0), 1);
        assert_eq!(chi.sign(1), -1);
        assert_eq!(chi.signed_value(1), big(-44));
        assert!(chi.is_palindromic());
    }

    #[test]
    fn recurrence_route_agrees_on_examples() {
        let p = constant_profile(2, 4, 24);
        let chi = chi_via_recurrence(&p).unwrap();
        assert_eq!(chi.values(), &row_i64(&[14, 44, 14]));
        assert_eq!(chi, chi_from_profile(&p).unwrap());

        let p = constant_profile(1, 3, 6);
        assert_eq!(
            chi_via_recurrence(&p).unwrap().values(),
            &row_i64(&[1, 4, 1])
        );
    }

    #[test]
    fn p_zero_twist_examples() {
        // Unit twists on the constant r = 2, n = 4 profile give back χ(O).
        let p = constant_profile(2, 4, 24);
        assert_eq!(p_zero(&p, &[1, 1]).unwrap(), big(14));
        // Same through the single-class form, m explicit.
        let dp = DegreeProfile::new(4, vec![1, 1], BigInt::one()).unwrap();
        assert_eq!(p_zero_same_class(&dp, &[1, 1], 0), big(14));
        // With degree-1 classes an m-twist is the same as shifting a twist.
        assert_eq!(
            p_zero_same_class(&dp, &[1, 1], 2),
            p_zero_same_class(&dp, &[3, 1], 0)
        );
        assert_eq!(p_zero(&p, &[0, 0]).unwrap(), big(14)); // |χ(O)| at zero twist
    }

    #[test]
    fn chi_coefficient_examples() {
        // q = 0, all entries >= 1, d = 0: magnitude 1, sign (-1)^(n-r).
        assert_eq!(chi_coefficient(0, &[1, 3], &[0, 0]), big(1)); // n - r even
        assert_eq!(chi_coefficient(0, &[1, 2], &[0, 0]), big(-1)); // n - r odd
        assert_eq!(chi_coefficient(0, &[1, 1, 1], &[0, 0, 0]), big(1));
        // q = 1, eps = (1,3), d = 0: magnitude E(1,0)E(3,1) + E(1,1)E(3,0) = 4,
        // sign (-1)^(4-1-2).
        assert_eq!(chi_coefficient(1, &[1, 3], &[0, 0]), big(-4));
        // A zero entry forces empty Eulerian factors.
        assert_eq!(chi_coefficient(1, &[4, 0], &[0, 0]), BigInt::zero());
    }

    #[test]
    fn chi_coefficient_matches_bucket_sums() {
        // c_{q;ε}(0) = (-1)^(n-q-r) Σ_{|t|=q} Π E(ε_i, t_i), exhaustively
        // for small shapes.
        for eps in [vec![1usize, 3], vec![2, 2], vec![2, 3], vec![1, 2, 3]] {
            let n: usize = eps.iter().sum();
            let r = eps.len();
            let dist = eulerian_bucket_distribution(&eps);
            for (q, d) in dist.iter().enumerate() {
                let c = chi_coefficient(q, &eps, &vec![0; r]);
                let expected = if (n - q - r).is_multiple_of(2) {
                    d.clone()
                } else {
                    -d.clone()
                };
                assert_eq!(c, expected, "coefficient mismatch at eps {eps:?}, q = {q}");
            }
        }
    }

    #[test]
    fn self_intersection_collapse() {
        for r in 1..=4usize {
            for n in r..=12usize {
                for h in [1i64, 5] {
                    let dp = DegreeProfile::new(n, vec![1; r], big(h)).unwrap();
                    let chi = chi_same_class(&dp);
                    for (q, v) in chi.values().iter().enumerate() {
                        assert_eq!(
                            *v,
                            generalized_eulerian(r, n as i64, q as i64) * big(h),
                            "collapse failed at ({r}, {n}, {q})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn numerical_condition_examples() {
        let chi = ChiSequence::from_magnitudes(4, 2, row_i64(&[14, 44, 14])).unwrap();
        assert!(numerical_condition(&chi)); // 4656 <= 5184
        let chi = ChiSequence::from_magnitudes(3, 1, row_i64(&[1, 4, 1])).unwrap();
        assert!(numerical_condition(&chi)); // equality: 36 <= 36
        let chi = ChiSequence::from_magnitudes(2, 1, row_i64(&[1, 1])).unwrap();
        assert!(numerical_condition(&chi)); // equality: 4 <= 4
    }

    #[test]
    fn dim2_examples() {
        assert_eq!(
            dim2_closed_form(&rat(8), &rat(6)).unwrap().values(),
            &row_i64(&[14, 44, 14])
        );
        assert_eq!(
            dim2_closed_form(&rat(1), &rat(0)).unwrap().values(),
            &row_i64(&[1, 4, 1])
        );
        assert_eq!(
            dim2_closed_form(&rat(0), &rat(1)).unwrap().values(),
            &row_i64(&[1, 2, 1])
        );
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert!(matches!(
            dim2_closed_form(&half, &rat(0)),
            Err(Error::NonIntegralValue(_))
        ));
    }

    #[test]
    fn dim4_examples() {
        let zero = rat(0);
        let one = rat(1);
        assert_eq!(
            dim4_closed_form(&one, &zero, &zero, &zero, &zero)
                .unwrap()
                .values(),
            &row_i64(&[1, 26, 66, 26, 1])
        );
        assert_eq!(
            dim4_closed_form(&zero, &zero, &zero, &zero, &one)
                .unwrap()
                .values(),
            &row_i64(&[1, 4, 6, 4, 1])
        );
        assert_eq!(
            dim4_closed_form(&zero, &zero, &one, &zero, &zero)
                .unwrap()
                .values(),
            &row_i64(&[1, 8, 18, 8, 1])
        );
        // B13 column: 12 and 22.
        assert_eq!(
            dim4_closed_form(&zero, &one, &zero, &zero, &zero)
                .unwrap()
                .values(),
            &row_i64(&[1, 12, 22, 12, 1])
        );
    }

    #[test]
    fn closed_forms_match_same_class_parameters() {
        // Surface: a = Σ(X·H_i²)/6, b = Σ_{i<j}(X·H_iH_j)/4 for the
        // constant-24 profile at r = 2, n = 4: X·H_i² = I(e+2e_i) = 24,
        // so a = 48/6 = 8 and b = 24/4 = 6.
        let same = chi_same_class(&DegreeProfile::new(4, vec![1, 1], BigInt::one()).unwrap());
        let closed = dim2_closed_form(&rat(8), &rat(6)).unwrap();
        assert_eq!(closed.values(), same.values());

        // Fourfold: r = 2, n = 6, all intersection numbers 720 give
        // A = (720+720)/120 = 12, B13 = (720+720)/48 = 30,
        // B22 = 720/36 = 20, and C = D = 0 (they need three or four
        // distinct hypersurfaces).
        let same = chi_same_class(&DegreeProfile::new(6, vec![1, 1], BigInt::one()).unwrap());
        let closed = dim4_closed_form(&rat(12), &rat(30), &rat(20), &rat(0), &rat(0)).unwrap();
        assert_eq!(closed.values(), same.values());
        assert_eq!(same.values()[0], big(62));
    }

    #[test]
    fn dim4_quadratic_coefficients() {
        let check = dim4_quadratic_check();
        let sos = &check.sum_of_squares;
        let sq = &check.square_of_sum;
        assert_eq!(sos.coefficient(Dim4Var::A, Dim4Var::A), big(5710));
        assert_eq!(sq.coefficient(Dim4Var::A, Dim4Var::A), big(14400));
        assert_eq!(sos.coefficient(Dim4Var::A, Dim4Var::B13), big(4156));
        assert_eq!(sq.coefficient(Dim4Var::A, Dim4Var::B13), big(11520));
        assert_eq!(sos.coefficient(Dim4Var::D, Dim4Var::D), big(70));
        assert_eq!(sq.coefficient(Dim4Var::D, Dim4Var::D), big(256));
        assert!(check.dominated);
    }

    #[test]
    fn dim4_quadratic_full_tables() {
        // Remaining coefficients of both forms, as fixed expansion tables.
        let check = dim4_quadratic_check();
        let expect_sos: &[(Dim4Var, Dim4Var, i64)] = &[
            (Dim4Var::B13, Dim4Var::B13, 774),
            (Dim4Var::A, Dim4Var::B22, 3212),
            (Dim4Var::B13, Dim4Var::B22, 1180),
            (Dim4Var::B22, Dim4Var::B22, 454),
            (Dim4Var::A, Dim4Var::C, 1948),
            (Dim4Var::B13, Dim4Var::C, 732),
            (Dim4Var::B22, Dim4Var::C, 556),
            (Dim4Var::C, Dim4Var::C, 174),
            (Dim4Var::A, Dim4Var::D, 1212),
            (Dim4Var::B13, Dim4Var::D, 460),
            (Dim4Var::B22, Dim4Var::D, 348),
            (Dim4Var::C, Dim4Var::D, 220),
        ];
        for &(x, y, v) in expect_sos {
            assert_eq!(check.sum_of_squares.coefficient(x, y), big(v));
        }
        let expect_sq: &[(Dim4Var, Dim4Var, i64)] = &[
            (Dim4Var::B13, Dim4Var::B13, 2304),
            (Dim4Var::A, Dim4Var::B22, 8640),
            (Dim4Var::B13, Dim4Var::B22, 3456),
            (Dim4Var::B22, Dim4Var::B22, 1296),
            (Dim4Var::A, Dim4Var::C, 5760),
            (Dim4Var::B13, Dim4Var::C, 2304),
            (Dim4Var::B22, Dim4Var::C, 1728),
            (Dim4Var::C, Dim4Var::C, 576),
            (Dim4Var::A, Dim4Var::D, 3840),
            (Dim4Var::B13, Dim4Var::D, 1536),
            (Dim4Var::B22, Dim4Var::D, 1152),
            (Dim4Var::C, Dim4Var::D, 768),
        ];
        for &(x, y, v) in expect_sq {
            assert_eq!(check.square_of_sum.coefficient(x, y), big(v));
        }
    }

    #[test]
    fn topological_euler_examples() {
        // 3 positive compositions of 4 into 2 parts, all valued 24.
        assert_eq!(
            topological_euler(&constant_profile(2, 4, 24)).unwrap(),
            big(72)
        );
        assert_eq!(
            topological_euler(&constant_profile(1, 3, 6)).unwrap(),
            big(6)
        );
        // 4 positive compositions of 5 into 2 parts.
        assert_eq!(
            topological_euler(&constant_profile(2, 5, 120)).unwrap(),
            big(480)
        );
    }

    #[test]
    fn divisibility_by_six_examples() {
        assert!(divisible_by_six(&constant_profile(2, 5, 120)).unwrap());
        assert!(divisible_by_six(&constant_profile(1, 3, 6)).unwrap());
        // 10 positive compositions of 6 into 2 parts, each 720.
        assert!(divisible_by_six(&constant_profile(2, 6, 720)).unwrap());
        assert!(matches!(
            divisible_by_six(&constant_profile(2, 4, 24)),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn profile_validation_and_json() {
        let p = constant_profile(2, 4, 24);
        let text = p.to_json_string();
        let back = IntersectionProfile::from_json_str(&text).unwrap();
        assert_eq!(p, back);

        // Missing an entry.
        let mut numbers = p.numbers().clone();
        numbers.remove(&vec![0usize, 4]);
        assert!(matches!(
            IntersectionProfile::new(2, 4, numbers),
            Err(Error::InvalidProfile(_))
        ));

        // Nonpositive value.
        let mut numbers = p.numbers().clone();
        numbers.insert(vec![0, 4], BigInt::zero());
        assert!(matches!(
            IntersectionProfile::new(2, 4, numbers),
            Err(Error::InvalidProfile(_))
        ));

        assert!(matches!(
            IntersectionProfile::from_json_str("{\"r\": 2}"),
            Err(Error::ProfileFormat(_))
        ));
    }

    #[test]
    fn riemann_roch_validation() {
        // 24 = 4! passes; 23 does not.
        assert!(constant_profile(2, 4, 24).validate_riemann_roch().is_ok());
        assert!(constant_profile(2, 4, 23).validate_riemann_roch().is_err());
    }

    #[test]
    fn inconsistent_profile_fails_integrality() {
        // A profile with one value bumped off the consistent constant
        // leaves a remainder after the division by n!.
        let mut numbers = constant_profile(2, 4, 24).numbers().clone();
        numbers.insert(vec![1, 3], big(25));
        let p = IntersectionProfile::new(2, 4, numbers).unwrap();
        assert!(matches!(
            chi_from_profile(&p),
            Err(Error::NonIntegralChi { .. })
        ));
    }

    #[test]
    fn route_agreement_on_random_profiles() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..25 {
            let r = rng.random_range(1..=3usize);
            let n = rng.random_range(r..=8usize);
            // Multiples of n! are always integrally consistent.
            let nf = factorial(n);
            let numbers: BTreeMap<_, _> = enumerate_compositions(r, n, None)
                .into_iter()
                .map(|eps| {
                    let scale = rng.random_range(1..=30i64);
                    (eps, &nf * big(scale))
                })
                .collect();
            let p = IntersectionProfile::new(r, n, numbers).unwrap();
            let direct = chi_from_profile(&p).unwrap();
            let recurrence = chi_via_recurrence(&p).unwrap();
            assert_eq!(direct, recurrence, "routes diverged at r = {r}, n = {n}");
            assert!(direct.is_palindromic());
            assert!(numerical_condition(&direct) || direct.dim() == 0);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        // Linearity: scaling the profile scales every χ value.
        #[test]
        fn chi_scales_linearly(scale in 2i64..=50, seed in 0u64..1000) {
            use rand::rngs::StdRng;
            use rand::{Rng, SeedableRng};
            let mut rng = StdRng::seed_from_u64(seed);
            let r = rng.random_range(1..=2usize);
            let n = rng.random_range(r..=6usize);
            let nf = factorial(n);
            let numbers: BTreeMap<_, _> = enumerate_compositions(r, n, None)
                .into_iter()
                .map(|eps| (eps, &nf * big(rng.random_range(1..=20i64))))
                .collect();
            let p = IntersectionProfile::new(r, n, numbers).unwrap();
            let base = chi_from_profile(&p).unwrap();
            let scaled = chi_from_profile(&p.scaled(&big(scale)).unwrap()).unwrap();
            for (lhs, rhs) in scaled.values().iter().zip(base.values()) {
                prop_assert_eq!(lhs.clone(), rhs * big(scale));
            }
        }
    }
}
