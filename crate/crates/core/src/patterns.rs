//! Patterns associated with a highest weight: validation, enumeration,
//! counting, single-entry shifts and weights.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::{canonical_order, HighestWeight, Pattern, PatternDelta, Row, Weight};

/// Default cap on the number of basis vectors materialized at once.
pub const DEFAULT_GUARD: usize = 20_000;

/// True iff the top row equals `lam` and both interlacing chains hold at
/// every level. A pattern of the wrong rank is a structural error.
pub fn validate_pattern(p: &Pattern, lam: &HighestWeight) -> Result<bool> {
    if p.rank() != lam.rank() {
        return Err(Error::Shape(format!(
            "pattern has {} levels, highest weight has rank {}",
            p.rank(),
            lam.rank()
        )));
    }
    Ok(p.row(lam.rank()) == lam.entries() && satisfies_chains(p))
}

fn satisfies_chains(p: &Pattern) -> bool {
    for k in 1..=p.rank() {
        let row = p.row(k);
        let primed = p.primed_row(k);
        if primed[0] > 0 {
            return false;
        }
        // 0 ≥ λ'_{k1} ≥ λ_{k1} ≥ λ'_{k2} ≥ … ≥ λ'_{kk} ≥ λ_{kk}
        for i in 0..k {
            if primed[i] < row[i] {
                return false;
            }
            if i + 1 < k && row[i] < primed[i + 1] {
                return false;
            }
        }
        if k >= 2 {
            // 0 ≥ λ'_{k1} ≥ λ_{k−1,1} ≥ λ'_{k2} ≥ … ≥ λ_{k−1,k−1} ≥ λ'_{kk}
            let below = p.row(k - 1);
            for i in 0..k - 1 {
                if primed[i] < below[i] || below[i] < primed[i + 1] {
                    return false;
                }
            }
        }
    }
    true
}

/// `Λ ± δ`, or `None` when the shifted array is not a pattern for `lam`.
pub fn apply_delta(p: &Pattern, delta: PatternDelta, lam: &HighestWeight) -> Result<Option<Pattern>> {
    if p.rank() != lam.rank() {
        return Err(Error::Shape(format!(
            "pattern has {} levels, highest weight has rank {}",
            p.rank(),
            lam.rank()
        )));
    }
    delta.check(p.rank())?;
    Ok(shifted(p, &[delta]))
}

/// Applies several shifts at once; only the final array is validated.
///
/// `p` must be a pattern; its top row is held fixed.
pub(crate) fn shifted(p: &Pattern, deltas: &[PatternDelta]) -> Option<Pattern> {
    let mut out = p.clone();
    for d in deltas {
        if d.row == Row::Unprimed && d.level == p.rank() {
            return None;
        }
        *out.entry_mut(d.row, d.level, d.position) += d.sign;
    }
    satisfies_chains(&out).then_some(out)
}

/// `F_kk` eigenvalues: `2Σλ'_{ki} − Σλ_{ki} − Σλ_{k−1,i}` for `k = 1..n`.
pub fn weight_of(p: &Pattern) -> Weight {
    let components = (1..=p.rank())
        .map(|k| {
            let primed: i64 = p.primed_row(k).iter().sum();
            let row: i64 = p.row(k).iter().sum();
            let below: i64 = if k > 1 { p.row(k - 1).iter().sum() } else { 0 };
            2 * primed - row - below
        })
        .collect();
    Weight(components)
}

/// Number of patterns associated with `lam`, without listing them.
///
/// Once `λ_k` and `λ_{k−1}` are fixed the entries of `λ'_k` range over
/// independent intervals, so each level contributes a product of interval
/// lengths; the sum over `λ_{k−1}` is memoized on the row.
pub fn count_patterns(lam: &HighestWeight) -> BigUint {
    let mut memo = HashMap::new();
    count_below(lam.entries(), &mut memo)
}

fn count_below(row: &[i64], memo: &mut HashMap<Vec<i64>, BigUint>) -> BigUint {
    if row.len() == 1 {
        return BigUint::from((1 - row[0]).max(0) as u64);
    }
    if let Some(hit) = memo.get(row) {
        return hit.clone();
    }
    let mut total = BigUint::zero();
    let mut below = Vec::with_capacity(row.len() - 1);
    for_each_lower_row(row, &mut below, &mut |below| {
        let ways = primed_choices(row, below);
        if ways > 0 {
            let rest = count_below(below, memo);
            total += rest * BigUint::from(ways);
        }
    });
    memo.insert(row.to_vec(), total.clone());
    total
}

/// Visits every weakly decreasing `μ` with `λ_{k,i+1} ≤ μ_i ≤ λ_{k,i−1}`.
fn for_each_lower_row(row: &[i64], below: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
    let i = below.len();
    if i + 1 == row.len() {
        visit(below);
        return;
    }
    let upper_row = if i == 0 { 0 } else { row[i - 1] };
    let upper_prev = below.last().copied().unwrap_or(0);
    let hi = upper_row.min(upper_prev);
    let lo = row[i + 1];
    for value in lo..=hi {
        below.push(value);
        for_each_lower_row(row, below, visit);
        below.pop();
    }
}

/// Number of `λ'_k` interlacing both `λ_k` and `λ_{k−1}`.
fn primed_choices(row: &[i64], below: &[i64]) -> u64 {
    let k = row.len();
    let mut ways: u64 = 1;
    for i in 0..k {
        let hi_row = if i == 0 { 0 } else { row[i - 1] };
        let hi_below = if i == 0 { 0 } else { below[i - 1] };
        let lo_below = if i < k - 1 { below[i] } else { i64::MIN };
        let lo = row[i].max(lo_below);
        let hi = hi_row.min(hi_below);
        if hi < lo {
            return 0;
        }
        ways = ways.saturating_mul((hi - lo + 1) as u64);
    }
    ways
}

/// Every pattern for `lam` in canonical order.
///
/// Fails with [`Error::GuardExceeded`] before materializing anything when
/// the count is above `guard`.
pub fn enumerate_patterns(lam: &HighestWeight, guard: usize) -> Result<Vec<Pattern>> {
    let count = count_patterns(lam);
    if count > BigUint::from(guard) {
        return Err(Error::GuardExceeded { count, guard });
    }
    let n = lam.rank();
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut unprimed: Vec<Vec<i64>> = (1..=n).map(|k| vec![0; k]).collect();
    let mut primed = unprimed.clone();
    unprimed[n - 1].copy_from_slice(lam.entries());
    fill_primed(n, 0, &mut unprimed, &mut primed, &mut out);
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

// Entries are filled in the order of the canonical key, each over an
// ascending range, so output is already sorted. Every range is nonempty
// given the entries above it, so there are no dead ends.
fn fill_primed(
    k: usize,
    i: usize,
    unprimed: &mut Vec<Vec<i64>>,
    primed: &mut Vec<Vec<i64>>,
    out: &mut Vec<Pattern>,
) {
    if i == k {
        if k == 1 {
            out.push(
                Pattern::from_rows(unprimed.clone(), primed.clone())
                    .expect("rows are built with the right shape"),
            );
        } else {
            fill_unprimed(k - 1, 0, unprimed, primed, out);
        }
        return;
    }
    let lo = unprimed[k - 1][i];
    let hi = if i == 0 { 0 } else { unprimed[k - 1][i - 1] };
    for value in lo..=hi {
        primed[k - 1][i] = value;
        fill_primed(k, i + 1, unprimed, primed, out);
    }
}

fn fill_unprimed(
    k: usize,
    i: usize,
    unprimed: &mut Vec<Vec<i64>>,
    primed: &mut Vec<Vec<i64>>,
    out: &mut Vec<Pattern>,
) {
    if i == k {
        fill_primed(k, 0, unprimed, primed, out);
        return;
    }
    let (lo, hi) = (primed[k][i + 1], primed[k][i]);
    for value in lo..=hi {
        unprimed[k - 1][i] = value;
        fill_unprimed(k, i + 1, unprimed, primed, out);
    }
}

/// The ordered basis of `V(λ)` together with a reverse index.
#[derive(Debug, Clone)]
pub struct PatternBasis {
    lam: HighestWeight,
    patterns: Vec<Pattern>,
    index: HashMap<Pattern, usize>,
}

impl PatternBasis {
    pub fn new(lam: &HighestWeight, guard: usize) -> Result<Self> {
        let patterns = enumerate_patterns(lam, guard)?;
        Ok(Self::from_sorted(lam.clone(), patterns))
    }

    /// Builds from an arbitrary list; the list is put in canonical order.
    pub fn from_patterns(lam: &HighestWeight, patterns: Vec<Pattern>) -> Result<Self> {
        for p in &patterns {
            if !validate_pattern(p, lam)? {
                return Err(Error::Shape(format!("{p} is not a pattern for {lam}")));
            }
        }
        Ok(Self::from_sorted(lam.clone(), canonical_order(patterns)?))
    }

    fn from_sorted(lam: HighestWeight, patterns: Vec<Pattern>) -> Self {
        let index = patterns
            .iter()
            .enumerate()
            .map(|(pos, p)| (p.clone(), pos))
            .collect();
        Self { lam, patterns, index }
    }

    pub fn highest_weight(&self) -> &HighestWeight {
        &self.lam
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn pattern(&self, pos: usize) -> &Pattern {
        &self.patterns[pos]
    }

    pub fn index_of(&self, p: &Pattern) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.patterns.iter().map(weight_of).collect()
    }
}
