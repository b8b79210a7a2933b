//! Closed-form action of `F_kk`, `F_{k,−k}`, `F_{−k,k}` and `F_{k−1,−k}` on
//! the pattern basis, and assembly of their exact matrices.
//!
//! Every coefficient is evaluated at the source pattern. A term whose
//! target array is not a pattern is dropped without evaluating its
//! coefficient; terms landing on the same target are summed and zero sums
//! are pruned.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{int, HighestWeight, Pattern, PatternDelta, Rational, Row, SparseOperator};
use crate::patterns::{shifted, weight_of, PatternBasis};

/// One of the generators with a closed-form action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `F_kk`
    Diag(usize),
    /// `F_{k,−k}`
    Raise(usize),
    /// `F_{−k,k}`
    Lower(usize),
    /// `F_{k−1,−k}`, `k ≥ 2`
    Mixed(usize),
}

impl Generator {
    /// The signed index pair `(i, j)` of `F_ij`.
    pub fn indices(self) -> (i64, i64) {
        match self {
            Generator::Diag(k) => (k as i64, k as i64),
            Generator::Raise(k) => (k as i64, -(k as i64)),
            Generator::Lower(k) => (-(k as i64), k as i64),
            Generator::Mixed(k) => (k as i64 - 1, -(k as i64)),
        }
    }

    pub fn from_indices(i: i64, j: i64, rank: usize) -> Result<Self> {
        let n = rank as i64;
        let unknown = || Error::UnknownGenerator(format!("F[{i},{j}]"));
        if i == 0 || j == 0 || i.abs() > n || j.abs() > n {
            return Err(unknown());
        }
        let generator = match (i, j) {
            (i, j) if i == j && i > 0 => Generator::Diag(i as usize),
            (i, j) if i == -j && i > 0 => Generator::Raise(i as usize),
            (i, j) if i == -j && j > 0 => Generator::Lower(j as usize),
            (i, j) if i > 0 && j == -(i + 1) => Generator::Mixed(i as usize + 1),
            _ => return Err(unknown()),
        };
        Ok(generator)
    }

    /// The `3n − 1` generators of `sp(2n)` as a Lie algebra.
    pub fn lie_generators(rank: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(3 * rank - 1);
        for k in 1..=rank {
            out.push(Generator::Raise(k));
            out.push(Generator::Lower(k));
        }
        out.extend((2..=rank).map(Generator::Mixed));
        out
    }

    /// The Lie generators plus the Cartan elements `F_11, …, F_nn`.
    pub fn all(rank: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (1..=rank).map(Generator::Diag).collect();
        out.extend(Self::lie_generators(rank));
        out
    }

    fn check(self, rank: usize) -> Result<()> {
        let (level, min) = match self {
            Generator::Diag(k) | Generator::Raise(k) | Generator::Lower(k) => (k, 1),
            Generator::Mixed(k) => (k, 2),
        };
        if level == 1 && min == 2 {
            return Err(Error::Domain("F[0,-1] does not exist".into()));
        }
        if level < min || level > rank {
            return Err(Error::OutOfRange(format!("{self} for rank {rank}")));
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.indices();
        write!(f, "F[{i},{j}]")
    }
}

/// Parses `F[i,j]` into its signed index pair.
pub fn parse_generator_name(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::UnknownGenerator(text.to_string());
    let inner = text
        .trim()
        .strip_prefix("F[")
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(bad)?;
    let (i, j) = inner.split_once(',').ok_or_else(bad)?;
    let i: i64 = i.trim().parse().map_err(|_| bad())?;
    let j: i64 = j.trim().parse().map_err(|_| bad())?;
    if i == 0 || j == 0 {
        return Err(bad());
    }
    Ok((i, j))
}

impl FromStr for Generator {
    type Err = Error;

    /// Parses without a rank bound; the level is checked when applied.
    fn from_str(text: &str) -> Result<Self> {
        let (i, j) = parse_generator_name(text)?;
        Generator::from_indices(i, j, i.unsigned_abs().max(j.unsigned_abs()) as usize)
    }
}

fn big(value: i64) -> BigInt {
    BigInt::from(value)
}

fn reciprocal(value: BigInt, what: &str) -> Rational {
    assert!(!value.is_zero(), "zero denominator in {what}");
    Rational::new(BigInt::one(), value)
}

fn check_position(k: usize, i: usize) {
    assert!(i >= 1 && i <= k, "position {i} outside 1..={k}");
}

/// `A_{ki} = ∏_{a≠i} 1/(l'_{ka} − l'_{ki})`.
///
/// # Panics
/// When `p` is not a pattern and a denominator vanishes.
pub fn coeff_a(p: &Pattern, k: usize, i: usize) -> Rational {
    check_position(k, i);
    let li = p.l_primed(k, i);
    let denom = (1..=k)
        .filter(|&a| a != i)
        .fold(BigInt::one(), |acc, a| acc * big(p.l_primed(k, a) - li));
    reciprocal(denom, "A")
}

/// `B_{ki} = 4·A_{ki}·l'_{ki}·∏_a (l_{ka} − l'_{ki})·∏_a (l_{k−1,a} − l'_{ki})`.
pub fn coeff_b(p: &Pattern, k: usize, i: usize) -> Rational {
    let li = p.l_primed(k, i);
    let mut numer = big(4) * big(li);
    for a in 1..=k {
        numer *= big(p.l(k, a) - li);
    }
    for a in 1..k {
        numer *= big(p.l(k - 1, a) - li);
    }
    coeff_a(p, k, i) * Rational::from_integer(numer)
}

/// `C_{ki} = 1/(2 l_{k−1,i}) · ∏_{a≠i} 1/(l²_{k−1,i} − l²_{k−1,a})`, `k ≥ 2`.
pub fn coeff_c(p: &Pattern, k: usize, i: usize) -> Rational {
    assert!(k >= 2, "C is defined for k ≥ 2");
    check_position(k - 1, i);
    let li = big(p.l(k - 1, i));
    let mut denom = big(2) * &li;
    for a in (1..k).filter(|&a| a != i) {
        let la = big(p.l(k - 1, a));
        denom *= &li * &li - &la * &la;
    }
    reciprocal(denom, "C")
}

/// `D_{kijm}` for `1 ≤ i ≤ k` and `1 ≤ j, m ≤ k − 1`.
pub fn coeff_d(p: &Pattern, k: usize, i: usize, j: usize, m: usize) -> Rational {
    assert!(k >= 2, "D is defined for k ≥ 2");
    check_position(k, i);
    check_position(k - 1, j);
    check_position(k - 1, m);
    let lj = p.l(k - 1, j);
    let mut prod = BigInt::one();
    for a in (1..=k).filter(|&a| a != i) {
        let la = p.l_primed(k, a);
        prod *= big(lj - la) * big(lj + la + 1);
    }
    for a in (1..k).filter(|&a| a != m) {
        let la = p.l_primed(k - 1, a);
        prod *= big(lj - la) * big(lj + la + 1);
    }
    coeff_a(p, k, i) * coeff_a(p, k - 1, m) * coeff_c(p, k, j) * Rational::from_integer(prod)
}

/// Output terms of one generator on one basis vector, sorted by target.
pub type Terms = Vec<(Pattern, Rational)>;

fn collect_terms(terms: BTreeMap<Pattern, Rational>) -> Terms {
    terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn check_level(p: &Pattern, k: usize, min: usize) -> Result<()> {
    if k < min || k > p.rank() {
        return Err(Error::OutOfRange(format!(
            "level {k} outside {min}..={}",
            p.rank()
        )));
    }
    Ok(())
}

/// `F_{k,−k} ζ_Λ = Σ_i A_{ki}(Λ) ζ_{Λ+δ'_{ki}}`.
pub fn apply_raise(p: &Pattern, k: usize) -> Result<Terms> {
    check_level(p, k, 1)?;
    let mut terms = BTreeMap::new();
    for i in 1..=k {
        if let Some(target) = shifted(p, &[PatternDelta::plus(Row::Primed, k, i)]) {
            terms.insert(target, coeff_a(p, k, i));
        }
    }
    Ok(collect_terms(terms))
}

/// `F_{−k,k} ζ_Λ = Σ_i B_{ki}(Λ) ζ_{Λ−δ'_{ki}}`.
pub fn apply_lower(p: &Pattern, k: usize) -> Result<Terms> {
    check_level(p, k, 1)?;
    let mut terms = BTreeMap::new();
    for i in 1..=k {
        if let Some(target) = shifted(p, &[PatternDelta::minus(Row::Primed, k, i)]) {
            terms.insert(target, coeff_b(p, k, i));
        }
    }
    Ok(collect_terms(terms))
}

/// `F_{k−1,−k} ζ_Λ = Σ_i C_{ki} ζ_{Λ−δ_{k−1,i}} + Σ_{i,j,m} D_{kijm} ζ_{Λ+δ'_{ki}+δ_{k−1,j}+δ'_{k−1,m}}`.
pub fn apply_mixed(p: &Pattern, k: usize) -> Result<Terms> {
    if k == 1 {
        return Err(Error::Domain("F[0,-1] does not exist".into()));
    }
    check_level(p, k, 2)?;
    let mut terms: BTreeMap<Pattern, Rational> = BTreeMap::new();
    for i in 1..k {
        if let Some(target) = shifted(p, &[PatternDelta::minus(Row::Unprimed, k - 1, i)]) {
            *terms.entry(target).or_insert_with(Rational::zero) += coeff_c(p, k, i);
        }
    }
    for i in 1..=k {
        for j in 1..k {
            for m in 1..k {
                let deltas = [
                    PatternDelta::plus(Row::Primed, k, i),
                    PatternDelta::plus(Row::Unprimed, k - 1, j),
                    PatternDelta::plus(Row::Primed, k - 1, m),
                ];
                if let Some(target) = shifted(p, &deltas) {
                    *terms.entry(target).or_insert_with(Rational::zero) +=
                        coeff_d(p, k, i, j, m);
                }
            }
        }
    }
    Ok(collect_terms(terms))
}

/// Output terms of `generator` on `p`; `F_kk` yields a single diagonal term.
pub fn apply_generator(p: &Pattern, generator: Generator) -> Result<Terms> {
    generator.check(p.rank())?;
    match generator {
        Generator::Diag(k) => {
            let value = weight_of(p).0[k - 1];
            Ok(if value == 0 {
                Vec::new()
            } else {
                vec![(p.clone(), int(value))]
            })
        }
        Generator::Raise(k) => apply_raise(p, k),
        Generator::Lower(k) => apply_lower(p, k),
        Generator::Mixed(k) => apply_mixed(p, k),
    }
}

/// Exact matrix of `generator` on `basis`. Columns are computed in
/// parallel on the current rayon pool; the result does not depend on the
/// schedule.
pub fn generator_matrix(basis: &PatternBasis, generator: Generator) -> Result<SparseOperator> {
    generator.check(basis.highest_weight().rank())?;
    let columns: Vec<Vec<(usize, Rational)>> = basis
        .patterns()
        .par_iter()
        .map(|p| {
            let terms = apply_generator(p, generator)?;
            terms
                .into_iter()
                .map(|(target, c)| {
                    let row = basis.index_of(&target).ok_or_else(|| {
                        Error::Consistency(format!("{target} missing from the basis"))
                    })?;
                    Ok((row, c))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    SparseOperator::from_columns(basis.len(), columns)
}

/// Diagonal matrix of `F_kk`.
pub fn diag_matrix(basis: &PatternBasis, k: usize) -> Result<SparseOperator> {
    generator_matrix(basis, Generator::Diag(k))
}

/// Enumerates the basis for `lam` (subject to `guard`) and builds the
/// matrix of `generator`.
pub fn build_generator_matrix(
    lam: &HighestWeight,
    generator: Generator,
    guard: usize,
) -> Result<SparseOperator> {
    generator.check(lam.rank())?;
    let basis = PatternBasis::new(lam, guard)?;
    generator_matrix(&basis, generator)
}
