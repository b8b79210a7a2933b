//! Domain types: highest weights, patterns, weights and the exact
//! operators that act on pattern-indexed bases.

mod defining;
mod rational;
mod sparse;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use defining::{theta, DefiningMatrix, SignedIndex};
pub use rational::{format_rational, int, is_half_odd, parse_rational, ratio, to_f64, Rational};
pub use sparse::SparseOperator;

/// Highest weight `(λ_1, …, λ_n)` with `0 ≥ λ_1 ≥ … ≥ λ_n`.
///
/// This non-positive convention is the internal form everywhere. Use
/// [`HighestWeight::from_nonnegative`] for the usual `a_1 ≥ … ≥ a_n ≥ 0`
/// labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HighestWeight(Vec<i64>);

impl HighestWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyWeight);
        }
        for (pos, &value) in entries.iter().enumerate() {
            if value > 0 {
                return Err(Error::PositiveEntry { index: pos + 1, value });
            }
            if pos > 0 && value > entries[pos - 1] {
                return Err(Error::IncreasingEntry {
                    index: pos + 1,
                    previous: entries[pos - 1],
                    value,
                });
            }
        }
        Ok(Self(entries))
    }

    /// Converts labels `a_1 ≥ … ≥ a_n ≥ 0` via `λ_i = −a_{n+1−i}`.
    pub fn from_nonnegative(labels: &[i64]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyWeight);
        }
        for (pos, &value) in labels.iter().enumerate() {
            if value < 0 {
                return Err(Error::NegativeLabel { index: pos + 1, value });
            }
            if pos > 0 && value > labels[pos - 1] {
                return Err(Error::IncreasingEntry {
                    index: pos + 1,
                    previous: labels[pos - 1],
                    value,
                });
            }
        }
        Self::new(labels.iter().rev().map(|&a| -a).collect())
    }

    /// The inverse of [`HighestWeight::from_nonnegative`].
    pub fn to_nonnegative(&self) -> Vec<i64> {
        self.0.iter().rev().map(|&l| -l).collect()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `λ_i` for `1 ≤ i ≤ n`, with `λ_0 = 0`.
    pub fn get(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.0[i - 1]
        }
    }

    /// `(0, …, 0, −1)`, the highest weight of the defining module.
    pub fn defining(rank: usize) -> Self {
        let mut entries = vec![0; rank.max(1)];
        *entries.last_mut().unwrap() = -1;
        Self(entries)
    }
}

impl TryFrom<Vec<i64>> for HighestWeight {
    type Error = Error;

    fn try_from(entries: Vec<i64>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<HighestWeight> for Vec<i64> {
    fn from(value: HighestWeight) -> Self {
        value.0
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// Simultaneous eigenvalues of `F_11, …, F_nn` on a basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, values: &[i64]) -> fmt::Result {
    write!(f, "(")?;
    for (pos, v) in values.iter().enumerate() {
        if pos > 0 {
            write!(f, ",")?;
        }
        write!(f, "{v}")?;
    }
    write!(f, ")")
}

/// Which of the two rows at a level an entry lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    /// `λ_{k·}`
    Unprimed,
    /// `λ'_{k·}`
    Primed,
}

/// An array of rows `λ_k = (λ_{k1}, …, λ_{kk})` and `λ'_k` for `k = 1..n`.
///
/// Construction only checks the shape. Whether the array is a pattern for
/// some highest weight is decided by [`crate::patterns::validate_pattern`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    unprimed: Vec<Vec<i64>>,
    primed: Vec<Vec<i64>>,
}

impl Pattern {
    /// Rows are given bottom-up: `unprimed[k-1]` is `λ_k` and has length `k`.
    pub fn from_rows(unprimed: Vec<Vec<i64>>, primed: Vec<Vec<i64>>) -> Result<Self> {
        if unprimed.is_empty() {
            return Err(Error::Shape("no rows".into()));
        }
        if unprimed.len() != primed.len() {
            return Err(Error::Shape(format!(
                "{} unprimed rows but {} primed rows",
                unprimed.len(),
                primed.len()
            )));
        }
        for (idx, (row, prow)) in unprimed.iter().zip(&primed).enumerate() {
            let k = idx + 1;
            if row.len() != k || prow.len() != k {
                return Err(Error::Shape(format!(
                    "level {k} rows have lengths {} and {}, expected {k}",
                    row.len(),
                    prow.len()
                )));
            }
        }
        Ok(Self { unprimed, primed })
    }

    /// The pattern with `λ_{ki} = λ'_{ki} = λ_i` for all `i ≤ k`.
    pub fn highest(lam: &HighestWeight) -> Self {
        let rows: Vec<Vec<i64>> = (1..=lam.rank())
            .map(|k| lam.entries()[..k].to_vec())
            .collect();
        Self {
            unprimed: rows.clone(),
            primed: rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.unprimed.len()
    }

    /// `λ_k`, 1-based level.
    pub fn row(&self, k: usize) -> &[i64] {
        &self.unprimed[k - 1]
    }

    /// `λ'_k`, 1-based level.
    pub fn primed_row(&self, k: usize) -> &[i64] {
        &self.primed[k - 1]
    }

    /// `λ_{ki}`, 1-based.
    pub fn lam(&self, k: usize, i: usize) -> i64 {
        self.unprimed[k - 1][i - 1]
    }

    /// `λ'_{ki}`, 1-based.
    pub fn lam_primed(&self, k: usize, i: usize) -> i64 {
        self.primed[k - 1][i - 1]
    }

    /// Shifted label `l_{ki} = λ_{ki} − i`.
    pub fn l(&self, k: usize, i: usize) -> i64 {
        self.lam(k, i) - i as i64
    }

    /// Shifted label `l'_{ki} = λ'_{ki} − i`.
    pub fn l_primed(&self, k: usize, i: usize) -> i64 {
        self.lam_primed(k, i) - i as i64
    }

    pub fn entry(&self, row: Row, k: usize, i: usize) -> i64 {
        match row {
            Row::Unprimed => self.lam(k, i),
            Row::Primed => self.lam_primed(k, i),
        }
    }

    pub(crate) fn entry_mut(&mut self, row: Row, k: usize, i: usize) -> &mut i64 {
        match row {
            Row::Unprimed => &mut self.unprimed[k - 1][i - 1],
            Row::Primed => &mut self.primed[k - 1][i - 1],
        }
    }

    /// Flattened ordering key: `λ_n, λ'_n, λ_{n−1}, λ'_{n−1}, …, λ_1, λ'_1`.
    ///
    /// For patterns sharing a highest weight the leading `λ_n` block is
    /// constant, so the order is lexicographic on the remaining rows.
    pub fn order_key(&self) -> Vec<i64> {
        let mut key = Vec::with_capacity(self.rank() * (self.rank() + 1));
        for k in (1..=self.rank()).rev() {
            key.extend_from_slice(self.row(k));
            key.extend_from_slice(self.primed_row(k));
        }
        key
    }

    /// Rows top-down separated by ` | `, e.g. `[0 -1] [0 -1] | [0] [0]`.
    pub fn to_line(&self) -> String {
        let fmt_row = |row: &[i64]| {
            let parts: Vec<String> = row.iter().map(i64::to_string).collect();
            format!("[{}]", parts.join(" "))
        };
        (1..=self.rank())
            .rev()
            .map(|k| format!("{} {}", fmt_row(self.row(k)), fmt_row(self.primed_row(k))))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

impl PartialOrd for Pattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.order_key().cmp(&other.order_key()))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

/// `±δ_{ki}` or `±δ'_{ki}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternDelta {
    pub row: Row,
    pub level: usize,
    pub position: usize,
    pub sign: i64,
}

impl PatternDelta {
    pub fn plus(row: Row, level: usize, position: usize) -> Self {
        Self { row, level, position, sign: 1 }
    }

    pub fn minus(row: Row, level: usize, position: usize) -> Self {
        Self { row, level, position, sign: -1 }
    }

    pub fn inverse(self) -> Self {
        Self { sign: -self.sign, ..self }
    }

    pub(crate) fn check(&self, rank: usize) -> Result<()> {
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::OutOfRange(format!("delta sign {} is not ±1", self.sign)));
        }
        if self.level == 0 || self.level > rank || self.position == 0 || self.position > self.level
        {
            return Err(Error::OutOfRange(format!(
                "delta target ({}, {}) outside 1 ≤ i ≤ k ≤ {rank}",
                self.level, self.position
            )));
        }
        Ok(())
    }
}

/// One summand `c(μ)·V'(μ)` of the restriction to the rank `n−1` subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTerm {
    pub mu: HighestWeight,
    pub multiplicity: u64,
    /// Half-integers `α_1, …, α_n`.
    pub alphas: Vec<Rational>,
    /// Half-integers `β_1, …, β_n`.
    pub betas: Vec<Rational>,
}

/// Sorts patterns into the basis order used by every matrix.
///
/// All patterns must share the same top row.
pub fn canonical_order(mut patterns: Vec<Pattern>) -> Result<Vec<Pattern>> {
    if let Some(first) = patterns.first() {
        let rank = first.rank();
        let top = first.row(rank).to_vec();
        if patterns
            .iter()
            .any(|p| p.rank() != rank || p.row(rank) != top.as_slice())
        {
            return Err(Error::MixedWeights);
        }
    }
    patterns.sort();
    Ok(patterns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(entries: &[i64]) -> HighestWeight {
        HighestWeight::new(entries.to_vec()).unwrap()
    }

    fn rank1(top: i64, lp11: i64) -> Pattern {
        Pattern::from_rows(vec![vec![top]], vec![vec![lp11]]).unwrap()
    }

    #[test]
    fn validate_highest_weight_examples() {
        assert_eq!(lam(&[0, -1]).rank(), 2);
        assert_eq!(
            HighestWeight::new(vec![-1, 0]),
            Err(Error::IncreasingEntry { index: 2, previous: -1, value: 0 })
        );
        assert_eq!(
            HighestWeight::new(vec![1, -1]),
            Err(Error::PositiveEntry { index: 1, value: 1 })
        );
        assert_eq!(HighestWeight::new(vec![]), Err(Error::EmptyWeight));
        assert_eq!(
            HighestWeight::new(vec![1, 0]).unwrap_err().to_string(),
            "entry 1 positive (1)"
        );
    }

    #[test]
    fn nonnegative_conversion() {
        let w = HighestWeight::from_nonnegative(&[2, 1, 0]).unwrap();
        assert_eq!(w.entries(), &[0, -1, -2]);
        assert_eq!(w.to_nonnegative(), vec![2, 1, 0]);
        assert!(HighestWeight::from_nonnegative(&[0, 1]).is_err());
        assert!(HighestWeight::from_nonnegative(&[1, -1]).is_err());
    }

    #[test]
    fn shape_checked() {
        assert!(Pattern::from_rows(vec![vec![0], vec![0]], vec![vec![0], vec![0, 0]]).is_err());
        assert!(Pattern::from_rows(vec![vec![0]], vec![]).is_err());
        assert!(Pattern::from_rows(vec![], vec![]).is_err());
    }

    #[test]
    fn canonical_order_examples() {
        let a = rank1(-1, -1);
        let b = rank1(-1, 0);
        assert_eq!(canonical_order(vec![a.clone()]).unwrap(), vec![a.clone()]);
        let sorted = canonical_order(vec![b.clone(), a.clone()]).unwrap();
        assert_eq!(sorted, vec![a.clone(), b.clone()]);
        assert_eq!(canonical_order(sorted.clone()).unwrap(), sorted);
        let other = rank1(-2, -2);
        assert_eq!(canonical_order(vec![a, other]), Err(Error::MixedWeights));
    }

    #[test]
    fn highest_pattern_rows() {
        let p = Pattern::highest(&lam(&[0, -1, -3]));
        assert_eq!(p.row(3), &[0, -1, -3]);
        assert_eq!(p.primed_row(2), &[0, -1]);
        assert_eq!(p.l_primed(3, 3), -6);
        assert_eq!(p.to_line(), "[0 -1 -3] [0 -1 -3] | [0 -1] [0 -1] | [0] [0]");
    }

    #[test]
    fn delta_range_checked() {
        assert!(PatternDelta::plus(Row::Primed, 2, 3).check(2).is_err());
        assert!(PatternDelta::plus(Row::Primed, 3, 1).check(2).is_err());
        assert!(PatternDelta { sign: 2, ..PatternDelta::plus(Row::Primed, 1, 1) }
            .check(2)
            .is_err());
        assert!(PatternDelta::minus(Row::Unprimed, 2, 2).check(2).is_ok());
    }
}
