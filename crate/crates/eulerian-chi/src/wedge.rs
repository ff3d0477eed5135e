//! The wedge-power count system and its exhaustive solution search.
//!
//! Given a finitely supported `m_H: ℤ → ℕ` with total `m`, a level
//! `2 <= k <= m-1` and an offset `s`, define for every `q`
//!
//! ```text
//! lhs(q) = Σ_{0 <= m_S <= m_H, Σ m_S = k, Σ i·m_S(i) = s + q} Π C(m_H(i), m_S(i))
//! ```
//!
//! A solution equates `lhs(q)` with the target χ magnitudes. Two readings
//! are implemented: [`SearchMode::BoundedRange`] checks the equations for
//! `q = 0..=n-r` only, while [`SearchMode::AllIntegers`] also requires
//! `lhs(q) = 0` for every `q` outside that window (only finitely many are
//! nonzero). They genuinely differ: the bounded reading admits targets
//! such as `(2)` via `m_H = {0:1, 1:2}, k = 2, s = 1` that the
//! all-integers reading excludes.
//!
//! The extremal assignments `m_0` (greedy from the left) and `m_max`
//! (greedy from the right) with their cutoffs `w`, `w'` drive both the
//! forced value of `s` and the span pruning. The claim `w <= w'` fails
//! for `k` close to `m` (`m_H = {0:2, 1:3}, k = 4` gives `w = 1 > 0 = w'`),
//! so nothing here assumes it: span pruning is applied only when `w <= w'`
//! is actually observed.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use crate::chi::ChiSequence;
use crate::combinatorics::binomial;
use crate::{Error, Result};

/// A finitely supported function `ℤ → ℕ`, kept trimmed: the first and
/// last stored counts are nonzero and the total is at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexFunction {
    offset: i64,
    counts: Vec<u64>,
}

impl IndexFunction {
    /// Builds from an offset and raw counts, trimming zero ends.
    pub fn new(offset: i64, counts: Vec<u64>) -> Result<Self> {
        let first = counts.iter().position(|&c| c != 0).ok_or_else(|| {
            Error::InvalidArgument("index function must have positive total".into())
        })?;
        let last = counts.iter().rposition(|&c| c != 0).unwrap();
        Ok(Self {
            offset: offset + first as i64,
            counts: counts[first..=last].to_vec(),
        })
    }

    /// Builds from `(index, count)` pairs; missing indices are zero.
    pub fn from_pairs(pairs: &[(i64, u64)]) -> Result<Self> {
        let nonzero: Vec<_> = pairs.iter().filter(|(_, c)| *c != 0).collect();
        if nonzero.is_empty() {
            return Err(Error::InvalidArgument(
                "index function must have positive total".into(),
            ));
        }
        let lo = nonzero.iter().map(|(i, _)| *i).min().unwrap();
        let hi = nonzero.iter().map(|(i, _)| *i).max().unwrap();
        let mut counts = vec![0u64; (hi - lo + 1) as usize];
        for (i, c) in nonzero {
            counts[(i - lo) as usize] += c;
        }
        Self::new(lo, counts)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn value(&self, i: i64) -> u64 {
        if i < self.offset || i >= self.offset + self.counts.len() as i64 {
            0
        } else {
            self.counts[(i - self.offset) as usize]
        }
    }

    /// `m = Σ m(i)`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ i · m(i)`.
    pub fn weighted_total(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(idx, &c)| (self.offset + idx as i64) * c as i64)
            .sum()
    }

    pub fn support_min(&self) -> i64 {
        self.offset
    }

    pub fn support_max(&self) -> i64 {
        self.offset + self.counts.len() as i64 - 1
    }

    pub fn width(&self) -> usize {
        self.counts.len()
    }

    pub fn shifted(&self, by: i64) -> Self {
        Self {
            offset: self.offset + by,
            counts: self.counts.clone(),
        }
    }

    /// Support reversal: the mirror image around the origin, re-trimmed to
    /// canonical form.
    pub fn reversed(&self) -> Self {
        let mut counts = self.counts.clone();
        counts.reverse();
        Self {
            offset: -self.support_max(),
            counts,
        }
    }

    /// Same counts with the support starting at zero.
    pub fn normalized(&self) -> Self {
        self.shifted(-self.offset)
    }
}

/// The distribution of `Σ C(m_H(i), m_S(i))`-weighted assignments by their
/// weighted sum: entry `j` of the returned vector is the count at
/// `Σ i·m_S(i) = t_min + j`, where `t_min` is the returned base.
///
/// Computed as the `y^k` layer of `Π_i Σ_u C(m_H(i), u) y^u x^{i·u}`.
pub fn lhs_distribution(m_h: &IndexFunction, k: u64) -> (i64, Vec<BigInt>) {
    let k = k as usize;
    let width = m_h.width();
    let max_rel = (width - 1) * k;
    // layers[j][t] = coefficient of y^j x^t, positions taken relative to
    // the support minimum.
    let mut layers = vec![vec![BigInt::zero(); max_rel + 1]; k + 1];
    layers[0][0] = BigInt::one();
    for (pos, &count) in m_h.counts().iter().enumerate() {
        let mut next = vec![vec![BigInt::zero(); max_rel + 1]; k + 1];
        for j in 0..=k {
            for (t, cell) in layers[j].iter().enumerate() {
                if cell.is_zero() {
                    continue;
                }
                let max_u = count.min((k - j) as u64);
                for u in 0..=max_u as usize {
                    let t2 = t + pos * u;
                    if t2 > max_rel {
                        break;
                    }
                    next[j + u][t2] += cell * binomial(count as i64, u as i64);
                }
            }
        }
        layers = next;
    }
    let row = std::mem::take(&mut layers[k]);
    let first = row.iter().position(|v| !v.is_zero()).unwrap_or(0);
    let last = row.iter().rposition(|v| !v.is_zero()).unwrap_or(0);
    let base = m_h.support_min() * k as i64 + first as i64;
    (base, row[first..=last].to_vec())
}

/// `Σ_{m_S} Π C(m_H(i), m_S(i))` over assignments with `Σ m_S = k` and
/// `Σ i·m_S(i) = target_sum`; zero when nothing qualifies.
pub fn lhs_value(m_h: &IndexFunction, k: u64, target_sum: i64) -> BigInt {
    let (base, dist) = lhs_distribution(m_h, k);
    let idx = target_sum - base;
    if idx < 0 || idx as usize >= dist.len() {
        BigInt::zero()
    } else {
        dist[idx as usize].clone()
    }
}

/// The extremal assignments for level `k` and their cutoffs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMaxAssignments {
    /// Minimizer of `Σ i·m_S(i)`: full counts left of `w`, remainder at `w`.
    pub m0: IndexFunction,
    /// Maximizer: full counts right of `w'`, remainder at `w'`.
    pub mmax: IndexFunction,
    pub w: i64,
    pub w_prime: i64,
}

/// Greedy fill from the left (for `m0`) and from the right (for `mmax`).
/// Requires `1 <= k <= m`.
pub fn min_max_assignments(m_h: &IndexFunction, k: u64) -> Result<MinMaxAssignments> {
    let m = m_h.total();
    if k < 1 || k > m {
        return Err(Error::InvalidArgument(format!(
            "assignment level k must satisfy 1 <= k <= m = {m}, got {k}"
        )));
    }
    let mut remaining = k;
    let mut low = vec![0u64; m_h.width()];
    for (idx, &c) in m_h.counts().iter().enumerate() {
        let take = c.min(remaining);
        low[idx] = take;
        remaining -= take;
        if remaining == 0 {
            break;
        }
    }
    let m0 = IndexFunction::new(m_h.offset(), low).expect("k >= 1 gives a nonzero assignment");

    let mut remaining = k;
    let mut high = vec![0u64; m_h.width()];
    for (idx, &c) in m_h.counts().iter().enumerate().rev() {
        let take = c.min(remaining);
        high[idx] = take;
        remaining -= take;
        if remaining == 0 {
            break;
        }
    }
    let mmax = IndexFunction::new(m_h.offset(), high).expect("k >= 1 gives a nonzero assignment");

    let w = m0.support_max();
    let w_prime = mmax.support_min();
    Ok(MinMaxAssignments {
        m0,
        mmax,
        w,
        w_prime,
    })
}

/// Outcome of the span identity
/// `Σ_{i<w} (w-i) m_H(i) + Σ_{i>w'} (i-w') m_H(i) + k(w'-w) = n - r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpanIdentity {
    Holds,
    Fails,
    /// The cutoffs came out with `w > w'`; the identity is not evaluated.
    Inapplicable,
}

/// Evaluates the span identity against `n - r`, reporting
/// [`SpanIdentity::Inapplicable`] when `w > w'`.
pub fn span_identity_holds(
    m_h: &IndexFunction,
    k: u64,
    n: usize,
    r: usize,
) -> Result<SpanIdentity> {
    assert!(n >= r, "span identity needs n >= r");
    let mm = min_max_assignments(m_h, k)?;
    if mm.w > mm.w_prime {
        return Ok(SpanIdentity::Inapplicable);
    }
    let lhs = span_identity_value(m_h, k, &mm);
    if lhs == (n - r) as i64 {
        Ok(SpanIdentity::Holds)
    } else {
        Ok(SpanIdentity::Fails)
    }
}

fn span_identity_value(m_h: &IndexFunction, k: u64, mm: &MinMaxAssignments) -> i64 {
    let mut acc = 0i64;
    for i in m_h.support_min()..mm.w {
        acc += (mm.w - i) * m_h.value(i) as i64;
    }
    for i in mm.w_prime + 1..=m_h.support_max() {
        acc += (i - mm.w_prime) * m_h.value(i) as i64;
    }
    acc + k as i64 * (mm.w_prime - mm.w)
}

/// Which equations a candidate must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Equations for every integer `q`; entries outside the target window
    /// must come out zero.
    AllIntegers,
    /// Equations for `q = 0..=n-r` only.
    BoundedRange,
}

impl SearchMode {
    pub fn label(self) -> &'static str {
        match self {
            SearchMode::AllIntegers => "all-integers",
            SearchMode::BoundedRange => "bounded-range",
        }
    }
}

/// A target sequence (the χ magnitudes) together with the reading mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemInstance {
    target: Vec<BigInt>,
    mode: SearchMode,
}

impl SystemInstance {
    /// Requires a nonempty target with positive leading entry.
    pub fn new(target: Vec<BigInt>, mode: SearchMode) -> Result<Self> {
        if target.first().is_none_or(|v| *v <= BigInt::zero()) {
            return Err(Error::InvalidArgument(
                "system target must start with a positive value".into(),
            ));
        }
        Ok(Self { target, mode })
    }

    pub fn from_chi(chi: &ChiSequence, mode: SearchMode) -> Self {
        Self {
            target: chi.values().to_vec(),
            mode,
        }
    }

    pub fn target(&self) -> &[BigInt] {
        &self.target
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }

    /// `n - r`: the highest equation index.
    pub fn span(&self) -> usize {
        self.target.len() - 1
    }
}

/// A candidate `(m_H, k, s)` with the level constraint `2 <= k <= m-1`
/// enforced at construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SolutionCandidate {
    pub m_h: IndexFunction,
    pub k: u64,
    pub s: i64,
}

impl SolutionCandidate {
    pub fn new(m_h: IndexFunction, k: u64, s: i64) -> Result<Self> {
        let m = m_h.total();
        if k < 2 || k + 1 > m {
            return Err(Error::InvalidArgument(format!(
                "level k must satisfy 2 <= k <= m - 1 with m = {m}, got k = {k}"
            )));
        }
        Ok(Self { m_h, k, s })
    }
}

/// Equation check for raw `(m_H, k, s)` data, without the candidate level
/// constraint; see [`SolutionCandidate`] for the constrained form.
pub fn evaluate_assignment(m_h: &IndexFunction, k: u64, s: i64, sys: &SystemInstance) -> bool {
    let (base, dist) = lhs_distribution(m_h, k);
    window_matches(&dist, base, s, sys, sys.mode() == SearchMode::AllIntegers)
}

/// Compares the distribution window starting at `s` against the target.
/// In strict mode (all-integers) the whole distribution support must also
/// sit inside the window, since every outside equation demands zero.
fn window_matches(dist: &[BigInt], base: i64, s: i64, sys: &SystemInstance, strict: bool) -> bool {
    let span = sys.span() as i64;
    if strict && (base < s || base + dist.len() as i64 - 1 > s + span) {
        return false;
    }
    let zero = BigInt::zero();
    for q in 0..=span {
        let idx = s + q - base;
        let lhs = if idx < 0 || idx as usize >= dist.len() {
            &zero
        } else {
            &dist[idx as usize]
        };
        if lhs != &sys.target()[q as usize] {
            return false;
        }
    }
    true
}

/// Candidate check: every indexed equation of the instance.
pub fn evaluate_candidate(cand: &SolutionCandidate, sys: &SystemInstance) -> bool {
    evaluate_assignment(&cand.m_h, cand.k, cand.s, sys)
}

/// Builds the instance a given `(m_H, k)` solves: `s = Σ i·m0(i)` and the
/// target is the full nonzero lhs span. Returns the planted candidate
/// alongside.
pub fn plant_instance(
    m_h: &IndexFunction,
    k: u64,
    mode: SearchMode,
) -> Result<(SystemInstance, SolutionCandidate)> {
    let cand = SolutionCandidate::new(m_h.clone(), k, 0)?;
    let (base, dist) = lhs_distribution(m_h, k);
    let sys = SystemInstance::new(dist, mode)?;
    let cand = SolutionCandidate { s: base, ..cand };
    debug_assert_eq!(base, min_max_assignments(m_h, k)?.m0.weighted_total());
    Ok((sys, cand))
}

/// Enumeration limits for [`search`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_total_m: u64,
    pub max_support_width: usize,
    #[serde(with = "duration_millis")]
    pub time_budget: Duration,
}

mod duration_millis {
    use super::Duration;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
        (d.as_millis() as u64).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

/// A solution found by [`search`], tagged so that mirror-image pairs can
/// be recognized without suppressing either orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundSolution {
    pub candidate: SolutionCandidate,
    /// Shared by a candidate and its support-reversed mirror.
    pub mirror_group: usize,
}

/// Search outcome. `exhausted` is true only if every grid cell within the
/// bounds was fully enumerated; budget or cancellation cuts report the
/// solutions from completed cells.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub solutions: Vec<FoundSolution>,
    pub exhausted: bool,
    pub interrupted: bool,
    pub elapsed: Duration,
}

/// Exhaustive search over canonical candidates within `bounds`.
///
/// Enumeration order: total `m` ascending, then support width, then the
/// composition of `m` over the support (lexicographic), then the level
/// `k`. Candidates are canonical by construction: the support starts at
/// offset 0 (translating `m_H` by `c` and `s` by `c·k` gives an identical
/// system). The `q = 0` product `Π C(m_H(i), m0(i))` is checked before
/// the full distribution, and in all-integers mode the span identity
/// prunes candidates whenever `w <= w'` and the target ends positively.
pub fn search(sys: &SystemInstance, bounds: &SearchBounds) -> SearchReport {
    search_with_cancel(sys, bounds, &AtomicBool::new(false))
}

/// [`search`] with a cooperative cancellation flag (checked between
/// candidates alongside the time budget).
pub fn search_with_cancel(
    sys: &SystemInstance,
    bounds: &SearchBounds,
    cancel: &AtomicBool,
) -> SearchReport {
    let started = Instant::now();
    let deadline = started.checked_add(bounds.time_budget);
    let cells: Vec<(u64, usize)> = (3..=bounds.max_total_m)
        .flat_map(|m| (1..=bounds.max_support_width.min(m as usize)).map(move |width| (m, width)))
        .collect();

    let outcomes: Vec<(bool, Vec<SolutionCandidate>)> = cells
        .par_iter()
        .map(|&(m, width)| search_cell(sys, m, width, deadline, cancel))
        .collect();

    let interrupted = cancel.load(Ordering::Relaxed);
    let exhausted = outcomes.iter().all(|(complete, _)| *complete);
    let mut candidates: Vec<SolutionCandidate> = outcomes
        .into_iter()
        .filter(|(complete, _)| *complete)
        .flat_map(|(_, found)| found)
        .collect();
    candidates.sort();
    candidates.dedup();

    let solutions = tag_mirrors(candidates);
    SearchReport {
        solutions,
        exhausted,
        interrupted,
        elapsed: started.elapsed(),
    }
}

fn tag_mirrors(candidates: Vec<SolutionCandidate>) -> Vec<FoundSolution> {
    let mut groups: Vec<(IndexFunction, u64)> = Vec::new();
    let mut out = Vec::with_capacity(candidates.len());
    for cand in candidates {
        let own = cand.m_h.normalized();
        let mirror = cand.m_h.reversed().normalized();
        let key = if own <= mirror { own } else { mirror };
        let group = match groups.iter().position(|g| g.0 == key && g.1 == cand.k) {
            Some(idx) => idx,
            None => {
                groups.push((key, cand.k));
                groups.len() - 1
            }
        };
        out.push(FoundSolution {
            candidate: cand,
            mirror_group: group,
        });
    }
    out
}

fn search_cell(
    sys: &SystemInstance,
    m: u64,
    width: usize,
    deadline: Option<Instant>,
    cancel: &AtomicBool,
) -> (bool, Vec<SolutionCandidate>) {
    let mut found = Vec::new();
    let span = sys.span();
    let target_last_positive = *sys.target().last().unwrap() > BigInt::zero();
    let mut counts = vec![0u64; width];
    let mut complete = true;
    enumerate_cell_compositions(m, width, &mut counts, 0, &mut |counts| {
        if cancel.load(Ordering::Relaxed) || deadline.is_some_and(|d| Instant::now() >= d) {
            complete = false;
            return false;
        }
        let m_h = IndexFunction::new(0, counts.to_vec()).expect("positive ends");
        for k in 2..m {
            let mm = min_max_assignments(&m_h, k).expect("k in range");
            let t_min = mm.m0.weighted_total();
            let t_max = mm.mmax.weighted_total();

            if sys.mode() == SearchMode::AllIntegers {
                // s is forced: the q = 0 entry is positive and everything
                // below it must vanish.
                let q0: BigInt = mm
                    .m0
                    .counts()
                    .iter()
                    .enumerate()
                    .map(|(idx, &c)| {
                        binomial(m_h.value(mm.m0.offset() + idx as i64) as i64, c as i64)
                    })
                    .product();
                if q0 != sys.target()[0] {
                    continue;
                }
                if target_last_positive && mm.w <= mm.w_prime {
                    // Span identity: both window ends are pinned.
                    if span_identity_value(&m_h, k, &mm) != span as i64 {
                        continue;
                    }
                }
                if (t_max - t_min) as usize > span {
                    continue;
                }
                let (base, dist) = lhs_distribution(&m_h, k);
                if window_matches(&dist, base, t_min, sys, true) {
                    found.push(SolutionCandidate {
                        m_h: m_h.clone(),
                        k,
                        s: t_min,
                    });
                }
            } else {
                // Bounded reading: the window may clip the distribution;
                // any alignment with a positive entry at q = 0 can work.
                // One distribution per (m_H, k) serves every alignment.
                let (base, dist) = lhs_distribution(&m_h, k);
                for s in t_min..=t_max {
                    if window_matches(&dist, base, s, sys, false) {
                        found.push(SolutionCandidate {
                            m_h: m_h.clone(),
                            k,
                            s,
                        });
                    }
                }
            }
        }
        true
    });
    (complete, found)
}

/// Compositions of `m` into `width` parts with positive first and last
/// entries (canonical trimmed supports). The visitor returns `false` to
/// stop enumeration.
fn enumerate_cell_compositions(
    m: u64,
    width: usize,
    counts: &mut [u64],
    index: usize,
    visit: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    let remaining: u64 = m - counts[..index].iter().sum::<u64>();
    if index == width - 1 {
        if remaining == 0 {
            return true; // last entry must be positive
        }
        counts[index] = remaining;
        let keep_going = visit(counts);
        counts[index] = 0;
        return keep_going;
    }
    let lo = if index == 0 { 1 } else { 0 };
    if remaining < lo + 1 {
        return true; // cannot leave a positive last entry
    }
    for v in lo..=remaining - 1 {
        counts[index] = v;
        if !enumerate_cell_compositions(m, width, counts, index + 1, visit) {
            counts[index] = 0;
            return false;
        }
    }
    counts[index] = 0;
    true
}
