//! Recovering every `ρ(F_ij)` from the closed-form generators, and the
//! exact consistency checks built on top of it.
//!
//! Each Lie algebra element is carried as a pair: its image in the faithful
//! `2n`-dimensional defining representation and its image in `V(λ)`.
//! Brackets are taken componentwise. Linear algebra (span membership,
//! coordinates) is done on the defining side only; because that side is
//! faithful, the same rational coordinates transfer to the module side.

use std::collections::{BTreeMap, VecDeque};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::action::{generator_matrix, Generator};
use crate::error::{Error, Result};
use crate::model::{
    int, theta, DefiningMatrix, HighestWeight, Pattern, Rational, SignedIndex, SparseOperator,
};
use crate::patterns::{weight_of, PatternBasis};

/// `dim sp(2n) = n(2n + 1)`.
pub fn algebra_dimension(rank: usize) -> usize {
    rank * (2 * rank + 1)
}

/// `F_ij = E_ij − θ_ij E_{−j,−i}` in the defining representation.
pub fn defining_rep(i: i64, j: i64, rank: usize) -> Result<DefiningMatrix> {
    let i = SignedIndex::new(i, rank)?;
    let j = SignedIndex::new(j, rank)?;
    Ok(DefiningMatrix::generator(i, j, rank))
}

/// Index pairs `(i, j)` with `i + j ≥ 0`, sorted. The corresponding `F_ij`
/// form a basis of `sp(2n)`; the remaining ones follow from
/// `F_{−j,−i} = −θ_ij F_ij`.
pub fn canonical_pairs(rank: usize) -> Vec<(i64, i64)> {
    let mut out = Vec::with_capacity(algebra_dimension(rank));
    for i in SignedIndex::all(rank) {
        for j in SignedIndex::all(rank) {
            if i.get() + j.get() >= 0 {
                out.push((i.get(), j.get()));
            }
        }
    }
    out
}

/// `[F_ij, F_kl]` as a combination of `F`'s, read off from the first-order
/// commutation relations:
///
/// `δ_kj F_il − δ_il F_kj − θ_{k,−j} δ_{i,−k} F_{−j,l} + θ_{i,−l} δ_{−l,j} F_{k,−i}`.
///
/// Used only to cross-check brackets computed from matrices.
pub fn bracket_expansion(i: i64, j: i64, k: i64, l: i64) -> Vec<((i64, i64), i64)> {
    let sgn = |a: i64, b: i64| a.signum() * b.signum();
    let mut out = Vec::new();
    if k == j {
        out.push(((i, l), 1));
    }
    if i == l {
        out.push(((k, j), -1));
    }
    if i == -k {
        out.push(((-j, l), -sgn(k, -j)));
    }
    if -l == j {
        out.push(((k, -i), sgn(i, -l)));
    }
    out
}

/// An element of `sp(2n)` as a pair of images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub defining: DefiningMatrix,
    pub big: SparseOperator,
}

/// `([x.defining, y.defining], [x.big, y.big])`.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    Ok(AlgebraElement {
        defining: x.defining.commutator(&y.defining)?,
        big: x.big.commutator(&y.big)?,
    })
}

/// Incremental echelon form over flattened defining matrices, remembering
/// how each row was formed from the inserted vectors.
#[derive(Debug, Clone, Default)]
struct Span {
    rows: Vec<EchelonRow>,
    inserted: usize,
}

#[derive(Debug, Clone)]
struct EchelonRow {
    pivot: usize,
    vector: Vec<Rational>,
    /// Coefficients over inserted vectors: `vector = Σ combo[e]·v_e`.
    combo: Vec<Rational>,
}

impl Span {
    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Returns the residual of `v` and coordinates `c` with
    /// `v = residual + Σ c[e]·v_e`.
    fn reduce(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut residual = v.to_vec();
        let mut coords = vec![Rational::zero(); self.inserted];
        for row in &self.rows {
            let value = &residual[row.pivot];
            if value.is_zero() {
                continue;
            }
            let factor = value / &row.vector[row.pivot];
            for (dst, src) in residual.iter_mut().zip(&row.vector) {
                if !src.is_zero() {
                    *dst -= &factor * src;
                }
            }
            for (dst, src) in coords.iter_mut().zip(&row.combo) {
                if !src.is_zero() {
                    *dst += &factor * src;
                }
            }
        }
        (residual, coords)
    }

    /// Inserts `v` if it is outside the span; returns whether it was.
    fn insert(&mut self, v: &[Rational]) -> bool {
        let (residual, coords) = self.reduce(v);
        let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        for row in &mut self.rows {
            row.combo.push(Rational::zero());
        }
        let mut combo: Vec<Rational> = coords.into_iter().map(|c| -c).collect();
        combo.push(Rational::one());
        self.rows.push(EchelonRow {
            pivot,
            vector: residual,
            combo,
        });
        self.inserted += 1;
        true
    }

    /// Coordinates of `v` over the inserted vectors, if `v` is in the span.
    fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let (residual, coords) = self.reduce(v);
        residual.iter().all(Zero::is_zero).then_some(coords)
    }
}

fn combine(coords: &[Rational], ops: &[&SparseOperator], dim: usize) -> Result<SparseOperator> {
    let mut out = SparseOperator::zeros(dim);
    for (c, op) in coords.iter().zip(ops) {
        if !c.is_zero() {
            out = out.axpy(c, op)?;
        }
    }
    Ok(out)
}

/// All `ρ(F_ij)` on one module, obtained by bracket closure.
#[derive(Debug, Clone)]
pub struct Closure {
    basis: PatternBasis,
    rank: usize,
    span_dim: usize,
    ops: BTreeMap<(i64, i64), SparseOperator>,
}

impl Closure {
    pub fn basis(&self) -> &PatternBasis {
        &self.basis
    }

    pub fn highest_weight(&self) -> &HighestWeight {
        self.basis.highest_weight()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension reached by the defining-image span.
    pub fn span_dim(&self) -> usize {
        self.span_dim
    }

    /// Operators for [`canonical_pairs`], keyed by `(i, j)`.
    pub fn canonical_ops(&self) -> &BTreeMap<(i64, i64), SparseOperator> {
        &self.ops
    }

    /// `ρ(F_ij)` for any valid `(i, j)`, using `F_{−j,−i} = −θ_ij F_ij` for
    /// the non-canonical half.
    pub fn op(&self, i: i64, j: i64) -> Result<SparseOperator> {
        let si = SignedIndex::new(i, self.rank)?;
        let sj = SignedIndex::new(j, self.rank)?;
        if i + j >= 0 {
            return Ok(self.ops[&(i, j)].clone());
        }
        let mirror = &self.ops[&(-j, -i)];
        Ok(mirror.scale(&int(-theta(si, sj))))
    }
}

/// Bracket closure starting from the `3n − 1` Lie generators in their
/// default order.
pub fn close_algebra(basis: &PatternBasis) -> Result<Closure> {
    close_algebra_with_order(basis, &Generator::lie_generators(basis.highest_weight().rank()))
}

/// Bracket closure starting from the given generators, in the given order.
///
/// Breadth-first: each retained element is bracketed with every seed, and
/// a bracket is retained only when its defining image enlarges the span.
pub fn close_algebra_with_order(basis: &PatternBasis, seeds: &[Generator]) -> Result<Closure> {
    let rank = basis.highest_weight().rank();
    let target = algebra_dimension(rank);
    let dim = basis.len();

    let mut span = Span::default();
    let mut retained: Vec<AlgebraElement> = Vec::new();
    let seed_elements = seeds
        .par_iter()
        .map(|&g| {
            let (i, j) = g.indices();
            Ok(AlgebraElement {
                defining: defining_rep(i, j, rank)?,
                big: generator_matrix(basis, g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seed_slots = Vec::with_capacity(seed_elements.len());
    for element in seed_elements {
        if span.insert(element.defining.as_slice()) {
            seed_slots.push(retained.len());
            retained.push(element);
        }
    }

    let mut queue: VecDeque<usize> = (0..retained.len()).collect();
    while span.dim() < target {
        let Some(x) = queue.pop_front() else {
            return Err(Error::Consistency(format!(
                "bracket closure stalled at span dimension {} < {target}",
                span.dim()
            )));
        };
        // Span updates are serial; the module-side brackets for the
        // accepted pairs are independent.
        let mut accepted = Vec::new();
        for &g in &seed_slots {
            let defining = retained[g].defining.commutator(&retained[x].defining)?;
            if span.insert(defining.as_slice()) {
                accepted.push((g, defining));
            }
            if span.dim() == target {
                break;
            }
        }
        let bigs = accepted
            .par_iter()
            .map(|(g, _)| retained[*g].big.commutator(&retained[x].big))
            .collect::<Result<Vec<_>>>()?;
        for ((_, defining), big) in accepted.into_iter().zip(bigs) {
            queue.push_back(retained.len());
            retained.push(AlgebraElement { defining, big });
        }
    }

    let big_ops: Vec<&SparseOperator> = retained.iter().map(|e| &e.big).collect();
    let pairs = canonical_pairs(rank);
    let ops = pairs
        .par_iter()
        .map(|&(i, j)| {
            let defining = defining_rep(i, j, rank)?;
            let coords = span.solve(defining.as_slice()).ok_or_else(|| {
                Error::Consistency(format!("F[{i},{j}] outside the closure span"))
            })?;
            Ok(((i, j), combine(&coords, &big_ops, dim)?))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;

    Ok(Closure {
        basis: basis.clone(),
        rank,
        span_dim: span.dim(),
        ops,
    })
}

/// Coordinates over [`canonical_pairs`] of an element given by its
/// defining image.
#[derive(Debug, Clone)]
pub struct CanonicalCoordinates {
    pairs: Vec<(i64, i64)>,
    span: Span,
}

impl CanonicalCoordinates {
    pub fn new(rank: usize) -> Result<Self> {
        let pairs = canonical_pairs(rank);
        let mut span = Span::default();
        for &(i, j) in &pairs {
            if !span.insert(defining_rep(i, j, rank)?.as_slice()) {
                return Err(Error::Consistency(format!("F[{i},{j}] is dependent")));
            }
        }
        Ok(Self { pairs, span })
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn solve(&self, x: &DefiningMatrix) -> Result<Vec<Rational>> {
        self.span
            .solve(x.as_slice())
            .ok_or_else(|| Error::Consistency("matrix is not in sp(2n)".into()))
    }
}

/// One failed homomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub left: (i64, i64),
    pub right: (i64, i64),
    /// Nonzero entries of `[ρ(X), ρ(Y)] − ρ([X, Y])`.
    pub residual_nnz: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    pub basis_elements: usize,
    pub pairs_checked: usize,
    pub failures: Vec<RelationFailure>,
    /// Closed-form generators whose closure image differs from their matrix.
    pub generator_mismatches: Vec<(i64, i64)>,
    /// Pairs `(i, j)` violating `ρ(F_{−j,−i}) = −θ_ij ρ(F_ij)`.
    pub symmetry_violations: Vec<(i64, i64)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.generator_mismatches.is_empty()
            && self.symmetry_violations.is_empty()
    }
}

/// Checks `[ρ(X), ρ(Y)] = ρ([X, Y])` exactly for every unordered pair of
/// distinct canonical basis elements, with `[X, Y]` expanded through the
/// defining representation. Also checks that the closure reproduces every
/// closed-form generator (including `F_kk`) and the index symmetry.
pub fn verify_relations(closure: &Closure) -> Result<RelationReport> {
    let rank = closure.rank();
    let coords = CanonicalCoordinates::new(rank)?;
    let pairs = coords.pairs().to_vec();
    let ops: Vec<&SparseOperator> = pairs.iter().map(|p| &closure.canonical_ops()[p]).collect();
    let definings = pairs
        .iter()
        .map(|&(i, j)| defining_rep(i, j, rank))
        .collect::<Result<Vec<_>>>()?;

    let mut index_pairs = Vec::new();
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            index_pairs.push((a, b));
        }
    }
    let outcomes = index_pairs
        .par_iter()
        .map(|&(a, b)| {
            let lhs = ops[a].commutator(ops[b])?;
            let bracket = definings[a].commutator(&definings[b])?;
            let rhs = combine(&coords.solve(&bracket)?, &ops, closure.dim())?;
            let residual = lhs.sub(&rhs)?;
            Ok((!residual.is_zero()).then(|| RelationFailure {
                left: pairs[a],
                right: pairs[b],
                residual_nnz: residual.nnz(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<RelationFailure> = outcomes.into_iter().flatten().collect();

    let mut generator_mismatches = Vec::new();
    for g in Generator::all(rank) {
        let (i, j) = g.indices();
        if generator_matrix(closure.basis(), g)? != closure.op(i, j)? {
            generator_mismatches.push((i, j));
        }
    }

    let mut symmetry_violations = Vec::new();
    for i in SignedIndex::all(rank) {
        for j in SignedIndex::all(rank) {
            let lhs = closure.op(-j.get(), -i.get())?;
            let rhs = closure.op(i.get(), j.get())?.scale(&int(-theta(i, j)));
            if lhs != rhs {
                symmetry_violations.push((i.get(), j.get()));
            }
        }
    }

    Ok(RelationReport {
        basis_elements: pairs.len(),
        pairs_checked: index_pairs.len(),
        failures,
        generator_mismatches,
        symmetry_violations,
    })
}

/// `Σ_{i,j} ρ(F_ij) ρ(F_ji)` and its scalar value.
pub fn casimir(closure: &Closure) -> Result<(SparseOperator, Rational)> {
    let rank = closure.rank();
    let indices: Vec<i64> = SignedIndex::all(rank).map(SignedIndex::get).collect();
    let mut index_pairs = Vec::new();
    for &i in &indices {
        for &j in &indices {
            index_pairs.push((i, j));
        }
    }
    let products = index_pairs
        .par_iter()
        .map(|&(i, j)| closure.op(i, j)?.mul(&closure.op(j, i)?))
        .collect::<Result<Vec<_>>>()?;
    let mut total = SparseOperator::zeros(closure.dim());
    for p in &products {
        total = total.add(p)?;
    }
    let scalar = total
        .as_scalar()
        .ok_or_else(|| Error::Consistency("Casimir operator is not scalar".into()))?;
    let top = closure
        .basis()
        .index_of(&Pattern::highest(closure.highest_weight()))
        .ok_or_else(|| Error::Consistency("highest pattern missing".into()))?;
    debug_assert_eq!(total.get(top, top), scalar);
    Ok((total, scalar))
}

/// The same Casimir element evaluated directly on the `2n × 2n` matrices.
pub fn defining_casimir(rank: usize) -> Result<Rational> {
    let mut total = DefiningMatrix::zeros(rank);
    for i in SignedIndex::all(rank) {
        for j in SignedIndex::all(rank) {
            let product = DefiningMatrix::generator(i, j, rank)
                .mul(&DefiningMatrix::generator(j, i, rank))?;
            total = total.axpy(&Rational::one(), &product)?;
        }
    }
    total
        .as_scalar()
        .ok_or_else(|| Error::Consistency("defining Casimir is not scalar".into()))
}

/// Checks that the Casimir commutes with every canonical `ρ(F_ij)`.
pub fn casimir_is_central(closure: &Closure, casimir: &SparseOperator) -> Result<bool> {
    for op in closure.canonical_ops().values() {
        if !casimir.commutator(op)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Index of the unique basis vector of weight `λ` annihilated by every
/// `ρ(F_ij)` with `i < j`.
pub fn highest_vector(closure: &Closure) -> Result<usize> {
    let lam = closure.highest_weight();
    let basis = closure.basis();
    let candidates: Vec<usize> = (0..basis.len())
        .filter(|&pos| weight_of(basis.pattern(pos)).0 == lam.entries())
        .collect();
    let [found] = candidates[..] else {
        return Err(Error::Consistency(format!(
            "weight space of {lam} has dimension {}",
            candidates.len()
        )));
    };
    if basis.pattern(found) != &Pattern::highest(lam) {
        return Err(Error::Consistency(
            "weight-λ vector is not the highest pattern".into(),
        ));
    }
    let rank = closure.rank();
    for i in SignedIndex::all(rank) {
        for j in SignedIndex::all(rank).filter(|j| i < *j) {
            if !closure.op(i.get(), j.get())?.column(found).is_empty() {
                return Err(Error::Consistency(format!(
                    "F[{i},{j}] does not annihilate the highest vector"
                )));
            }
        }
    }
    Ok(found)
}

/// `ε_i − ε_j` with `ε_{−k} = −ε_k`.
pub fn adjoint_weight(i: i64, j: i64, rank: usize) -> Vec<i64> {
    let mut out = vec![0; rank];
    out[i.unsigned_abs() as usize - 1] += i.signum();
    out[j.unsigned_abs() as usize - 1] -= j.signum();
    out
}

/// True when every nonzero entry of `op` maps a basis vector of weight `w`
/// to one of weight `w + (ε_i − ε_j)`.
pub fn shifts_weights_by(basis: &PatternBasis, op: &SparseOperator, i: i64, j: i64) -> bool {
    let rank = basis.highest_weight().rank();
    let shift = adjoint_weight(i, j, rank);
    let weights = basis.weights();
    op.entries().all(|(row, col, _)| {
        weights[row]
            .0
            .iter()
            .zip(&weights[col].0)
            .zip(&shift)
            .all(|((r, c), s)| r - c == *s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::DEFAULT_GUARD;

    fn basis(entries: &[i64]) -> PatternBasis {
        PatternBasis::new(&HighestWeight::new(entries.to_vec()).unwrap(), DEFAULT_GUARD).unwrap()
    }

    #[test]
    fn defining_rep_examples() {
        let raise = defining_rep(1, -1, 1).unwrap();
        let mut e = DefiningMatrix::zeros(1);
        let one = SignedIndex::new(1, 1).unwrap();
        e.add_at(one, one.neg(), &int(1));
        assert_eq!(raise, e.scale(&int(2)));
        assert_eq!(
            defining_rep(-2, -1, 2).unwrap(),
            defining_rep(1, 2, 2).unwrap().scale(&int(-1))
        );
        assert!(defining_rep(0, 1, 2).is_err());
    }

    #[test]
    fn bracket_examples() {
        let b = basis(&[-1]);
        let x = AlgebraElement {
            defining: defining_rep(1, -1, 1).unwrap(),
            big: generator_matrix(&b, Generator::Raise(1)).unwrap(),
        };
        let zero = bracket(&x, &x).unwrap();
        assert!(zero.defining.is_zero() && zero.big.is_zero());
        let h = defining_rep(1, 1, 1).unwrap();
        assert_eq!(
            h.commutator(&x.defining).unwrap(),
            x.defining.scale(&int(2))
        );
        let y = defining_rep(-1, 1, 1).unwrap();
        assert_eq!(x.defining.commutator(&y).unwrap(), h.scale(&int(4)));
    }

    #[test]
    fn canonical_pair_counts() {
        for n in 1..=4 {
            assert_eq!(canonical_pairs(n).len(), algebra_dimension(n));
        }
    }

    #[test]
    fn expansion_agrees_with_matrices() {
        for n in 1..=3usize {
            let all: Vec<i64> = SignedIndex::all(n).map(SignedIndex::get).collect();
            for &i in &all {
                for &j in &all {
                    for &k in &all {
                        for &l in &all {
                            let lhs = defining_rep(i, j, n)
                                .unwrap()
                                .commutator(&defining_rep(k, l, n).unwrap())
                                .unwrap();
                            let mut rhs = DefiningMatrix::zeros(n);
                            for ((a, b), c) in bracket_expansion(i, j, k, l) {
                                rhs = rhs.axpy(&int(c), &defining_rep(a, b, n).unwrap()).unwrap();
                            }
                            assert_eq!(lhs, rhs, "[F[{i},{j}], F[{k},{l}]]");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn span_dimensions() {
        for (entries, dim) in [(&[-1][..], 3), (&[0, -1], 10), (&[0, 0, -1], 21)] {
            assert_eq!(close_algebra(&basis(entries)).unwrap().span_dim(), dim);
        }
    }

    #[test]
    fn rank_one_relations_and_casimir() {
        let closure = close_algebra(&basis(&[-1])).unwrap();
        let report = verify_relations(&closure).unwrap();
        assert_eq!(report.basis_elements, 3);
        assert_eq!(report.pairs_checked, 3);
        assert!(report.passed(), "{report:?}");
        let (_, scalar) = casimir(&closure).unwrap();
        assert_eq!(scalar, int(6));
        assert_eq!(defining_casimir(1).unwrap(), int(6));
        assert_eq!(highest_vector(&closure).unwrap(), 0);
    }

    #[test]
    fn trivial_module() {
        let closure = close_algebra(&basis(&[0])).unwrap();
        assert!(verify_relations(&closure).unwrap().passed());
        assert_eq!(casimir(&closure).unwrap().1, int(0));
        assert_eq!(highest_vector(&closure).unwrap(), 0);
    }

    #[test]
    fn sp4_defining_module() {
        let closure = close_algebra(&basis(&[0, -1])).unwrap();
        let report = verify_relations(&closure).unwrap();
        assert_eq!(report.pairs_checked, 45);
        assert!(report.passed(), "{report:?}");
        let (matrix, scalar) = casimir(&closure).unwrap();
        assert_eq!(matrix, SparseOperator::scalar(4, scalar.clone()));
        assert_eq!(scalar, defining_casimir(2).unwrap());
        assert!(casimir_is_central(&closure, &matrix).unwrap());
    }

    #[test]
    fn adjoint_weights() {
        assert_eq!(adjoint_weight(2, -2, 2), vec![0, 2]);
        assert_eq!(adjoint_weight(-2, 2, 2), vec![0, -2]);
        assert_eq!(adjoint_weight(1, -2, 2), vec![1, 1]);
        assert_eq!(adjoint_weight(1, 1, 2), vec![0, 0]);
        assert_eq!(adjoint_weight(-1, 2, 3), vec![-1, -1, 0]);
    }
}
