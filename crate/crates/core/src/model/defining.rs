use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::{int, Rational};

/// An index in `{−n, …, −1, 1, …, n}`; zero is never valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedIndex(i64);

impl SignedIndex {
    pub fn new(value: i64, rank: usize) -> Result<Self> {
        if value == 0 {
            return Err(Error::OutOfRange("index 0 is not used".into()));
        }
        if value.unsigned_abs() as usize > rank {
            return Err(Error::OutOfRange(format!(
                "index {value} outside ±1..±{rank}"
            )));
        }
        Ok(Self(value))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn neg(self) -> Self {
        Self(-self.0)
    }

    pub fn sign(self) -> i64 {
        self.0.signum()
    }

    /// Row/column position in the order `−n, …, −1, 1, …, n`.
    fn slot(self, rank: usize) -> usize {
        let n = rank as i64;
        if self.0 < 0 {
            (self.0 + n) as usize
        } else {
            (self.0 + n - 1) as usize
        }
    }

    /// All indices in the order `−n, …, −1, 1, …, n`.
    pub fn all(rank: usize) -> impl Iterator<Item = SignedIndex> {
        let n = rank as i64;
        (-n..=n).filter(|&v| v != 0).map(SignedIndex)
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `θ_ij = sgn i · sgn j`.
pub fn theta(i: SignedIndex, j: SignedIndex) -> i64 {
    i.sign() * j.sign()
}

/// Dense `2n × 2n` exact matrix with rows and columns indexed by
/// [`SignedIndex`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DefiningMatrix {
    rank: usize,
    data: Vec<Rational>,
}

impl DefiningMatrix {
    pub fn zeros(rank: usize) -> Self {
        let size = 2 * rank;
        Self {
            rank,
            data: vec![Rational::zero(); size * size],
        }
    }

    /// `F_ij = E_ij − θ_ij E_{−j,−i}`; when `(i, j) = (−j, −i)` the two
    /// terms land on the same entry and add.
    pub fn generator(i: SignedIndex, j: SignedIndex, rank: usize) -> Self {
        let mut out = Self::zeros(rank);
        out.add_at(i, j, &Rational::one());
        out.add_at(j.neg(), i.neg(), &int(-theta(i, j)));
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn size(&self) -> usize {
        2 * self.rank
    }

    pub fn get(&self, i: SignedIndex, j: SignedIndex) -> &Rational {
        &self.data[i.slot(self.rank) * self.size() + j.slot(self.rank)]
    }

    pub fn add_at(&mut self, i: SignedIndex, j: SignedIndex, value: &Rational) {
        let pos = i.slot(self.rank) * self.size() + j.slot(self.rank);
        self.data[pos] += value;
    }

    /// Row-major entries in slot order; used as a coordinate vector.
    pub fn as_slice(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::DimensionMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let size = self.size();
        let mut out = Self::zeros(self.rank);
        for r in 0..size {
            for k in 0..size {
                let a = &self.data[r * size + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..size {
                    let b = &other.data[k * size + c];
                    if !b.is_zero() {
                        out.data[r * size + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self + factor·other`.
    pub fn axpy(&self, factor: &Rational, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (dst, src) in out.data.iter_mut().zip(&other.data) {
            if !src.is_zero() {
                *dst += factor * src;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rank: self.rank,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.axpy(&-Rational::one(), &other.mul(self)?)
    }

    pub fn trace(&self) -> Rational {
        let size = self.size();
        (0..size).fold(Rational::zero(), |acc, d| acc + &self.data[d * size + d])
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn as_scalar(&self) -> Option<Rational> {
        let size = self.size();
        let c = self.data[0].clone();
        for r in 0..size {
            for col in 0..size {
                let v = &self.data[r * size + col];
                let ok = if r == col { *v == c } else { v.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }
}
