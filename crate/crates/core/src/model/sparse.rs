use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::Rational;

/// Exact sparse square matrix stored by columns.
///
/// No zero is ever stored, so structural equality is matrix equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseOperator {
    dim: usize,
    cols: Vec<BTreeMap<usize, Rational>>,
}

impl SparseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            cols: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Rational::one())
    }

    pub fn scalar(dim: usize, value: Rational) -> Self {
        let mut out = Self::zeros(dim);
        if !value.is_zero() {
            for (j, col) in out.cols.iter_mut().enumerate() {
                col.insert(j, value.clone());
            }
        }
        out
    }

    /// Builds from per-column `(row, value)` lists; duplicate rows are summed.
    pub fn from_columns<I>(dim: usize, columns: Vec<I>) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        if columns.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: columns.len(),
            });
        }
        let mut out = Self::zeros(dim);
        for (col, entries) in columns.into_iter().enumerate() {
            for (row, value) in entries {
                out.add_to(row, col, &value)?;
            }
        }
        Ok(out)
    }

    /// Builds from `(row, col, value)` triples; duplicates are summed.
    pub fn from_triples<I>(dim: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut out = Self::zeros(dim);
        for (row, col, value) in triples {
            out.add_to(row, col, &value)?;
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.cols
            .get(col)
            .and_then(|c| c.get(&row))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn column(&self, col: usize) -> &BTreeMap<usize, Rational> {
        &self.cols[col]
    }

    /// Nonzero entries as `(row, col, value)`, sorted by `(col, row)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(col, c)| c.iter().map(move |(&row, v)| (row, col, v)))
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Rational) -> Result<()> {
        if row >= self.dim || col >= self.dim {
            return Err(Error::OutOfRange(format!(
                "entry ({row}, {col}) in a {0}×{0} operator",
                self.dim
            )));
        }
        accumulate(&mut self.cols[col], row, value);
        Ok(())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.axpy(&Rational::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.axpy(&-Rational::one(), other)
    }

    /// `self + factor·other`.
    pub fn axpy(&self, factor: &Rational, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        if factor.is_zero() {
            return Ok(out);
        }
        for (col, entries) in other.cols.iter().enumerate() {
            for (&row, v) in entries {
                accumulate(&mut out.cols[col], row, &(factor * v));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.dim);
        }
        Self {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(&r, v)| (r, v * factor)).collect())
                .collect(),
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let cols = other
            .cols
            .iter()
            .map(|bcol| {
                let mut out = BTreeMap::new();
                for (&k, bkj) in bcol {
                    for (&i, aik) in &self.cols[k] {
                        accumulate(&mut out, i, &(aik * bkj));
                    }
                }
                out
            })
            .collect();
        Ok(Self { dim: self.dim, cols })
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Applies the operator to a dense coordinate vector.
    pub fn apply(&self, vector: &[Rational]) -> Result<Vec<Rational>> {
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: vector.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.dim];
        for (col, x) in vector.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (&row, v) in &self.cols[col] {
                out[row] += v * x;
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Rational {
        self.cols
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.get(&j))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// `Some(c)` when the operator equals `c·I`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if self.dim == 0 {
            return Some(Rational::zero());
        }
        let c = self.get(0, 0);
        let expected = if c.is_zero() { 0 } else { 1 };
        for (j, col) in self.cols.iter().enumerate() {
            if col.len() != expected {
                return None;
            }
            if expected == 1 && col.get(&j) != Some(&c) {
                return None;
            }
        }
        Some(c)
    }
}

fn accumulate(col: &mut BTreeMap<usize, Rational>, row: usize, value: &Rational) {
    if value.is_zero() {
        return;
    }
    match col.get_mut(&row) {
        Some(existing) => {
            *existing += value;
            if existing.is_zero() {
                col.remove(&row);
            }
        }
        None => {
            col.insert(row, value.clone());
        }
    }
}
