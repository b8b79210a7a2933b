//! Restriction to the rank `n − 1` subalgebra, and the Weyl dimension and
//! character formulas used as oracles against the pattern basis.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::{int, is_half_odd, ratio, BranchTerm, HighestWeight, Rational, Weight};
use crate::patterns::{weight_of, PatternBasis};

fn check_ranks(lam: &HighestWeight, mu: &HighestWeight) -> Result<()> {
    if mu.rank() + 1 != lam.rank() {
        return Err(Error::Domain(format!(
            "μ has rank {}, expected {}",
            mu.rank(),
            lam.rank() - 1
        )));
    }
    Ok(())
}

/// Number of integer `ν` with
/// `0 ≥ ν_1 ≥ λ_1 ≥ ν_2 ≥ … ≥ ν_n ≥ λ_n` and
/// `0 ≥ ν_1 ≥ μ_1 ≥ ν_2 ≥ … ≥ μ_{n−1} ≥ ν_n`.
///
/// Each `ν_i` is iterated over its range from the first chain and the
/// second chain is checked on every full tuple.
pub fn multiplicity_c(lam: &HighestWeight, mu: &HighestWeight) -> Result<u64> {
    check_ranks(lam, mu)?;
    let mut nu = Vec::with_capacity(lam.rank());
    Ok(count_nu(lam, mu, &mut nu))
}

fn count_nu(lam: &HighestWeight, mu: &HighestWeight, nu: &mut Vec<i64>) -> u64 {
    let n = lam.rank();
    if nu.len() == n {
        let ok = (0..n).all(|i| {
            let above = if i == 0 { 0 } else { mu.get(i) };
            let below = if i + 1 < n { mu.get(i + 1) } else { i64::MIN };
            above >= nu[i] && nu[i] >= below
        });
        return u64::from(ok);
    }
    let i = nu.len() + 1;
    let mut total = 0;
    for value in lam.get(i)..=lam.get(i - 1) {
        nu.push(value);
        total += count_nu(lam, mu, nu);
        nu.pop();
    }
    total
}

/// `λ_{i+1} ≤ μ_i ≤ λ_{i−1}` for all `i`, with `λ_0 = 0`.
pub fn in_weight_diagram(lam: &HighestWeight, mu: &HighestWeight) -> bool {
    (1..=mu.rank()).all(|i| lam.get(i + 1) <= mu.get(i) && mu.get(i) <= lam.get(i - 1))
}

/// `(α, β)` with `α_1 = −1/2`, `α_i = min(λ_{i−1}, μ_{i−1}) − i + 1/2`,
/// `β_i = max(λ_i, μ_i) − i + 1/2` and `β_n = λ_n − n + 1/2`.
pub fn alpha_beta(lam: &HighestWeight, mu: &HighestWeight) -> Result<(Vec<Rational>, Vec<Rational>)> {
    check_ranks(lam, mu)?;
    let n = lam.rank();
    let half = ratio(1, 2);
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    for i in 1..=n {
        let ii = i as i64;
        alphas.push(if i == 1 {
            ratio(-1, 2)
        } else {
            int(lam.get(i - 1).min(mu.get(i - 1)) - ii) + &half
        });
        betas.push(if i == n {
            int(lam.get(n) - ii) + &half
        } else {
            int(lam.get(i).max(mu.get(i)) - ii) + &half
        });
    }
    Ok((alphas, betas))
}

/// `∏ (α_i − β_i + 1)` inside the weight-diagram region, `0` outside.
pub fn multiplicity_product(lam: &HighestWeight, mu: &HighestWeight) -> Result<u64> {
    check_ranks(lam, mu)?;
    if !in_weight_diagram(lam, mu) {
        return Ok(0);
    }
    let (alphas, betas) = alpha_beta(lam, mu)?;
    let mut product = BigInt::one();
    for (a, b) in alphas.iter().zip(&betas) {
        assert!(is_half_odd(a) && is_half_odd(b), "α, β must be half-odd");
        let factor = a - b + Rational::one();
        assert!(factor.is_integer(), "α − β must be an integer");
        product *= factor.to_integer();
    }
    if product.is_negative() {
        return Err(Error::Consistency(format!(
            "negative multiplicity {product} for μ = {mu}"
        )));
    }
    product
        .to_u64()
        .ok_or_else(|| Error::Consistency(format!("multiplicity {product} overflows")))
}

/// Every `μ` occurring in the restriction of `V(λ)`, in increasing order,
/// with `c(μ)` and the `(α, β)` data.
pub fn branch(lam: &HighestWeight) -> Result<Vec<BranchTerm>> {
    if lam.rank() < 2 {
        return Err(Error::Domain(
            "branching needs rank ≥ 2 (sp(2) has no subalgebra in the chain)".into(),
        ));
    }
    let mut out = Vec::new();
    for mu in gate_candidates(lam) {
        let multiplicity = multiplicity_c(lam, &mu)?;
        if multiplicity > 0 {
            let (alphas, betas) = alpha_beta(lam, &mu)?;
            out.push(BranchTerm {
                mu,
                multiplicity,
                alphas,
                betas,
            });
        }
    }
    Ok(out)
}

/// Weakly decreasing non-positive `μ` with `λ_{i+1} ≤ μ_i ≤ λ_{i−1}`,
/// in increasing lexicographic order.
pub fn gate_candidates(lam: &HighestWeight) -> Vec<HighestWeight> {
    fn rec(lam: &HighestWeight, cur: &mut Vec<i64>, out: &mut Vec<HighestWeight>) {
        let i = cur.len() + 1;
        if i == lam.rank() {
            out.push(HighestWeight::new(cur.clone()).expect("candidates are dominant"));
            return;
        }
        let hi = lam.get(i - 1).min(cur.last().copied().unwrap_or(0));
        for value in lam.get(i + 1)..=hi {
            cur.push(value);
            rec(lam, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lam.rank() >= 2 {
        rec(lam, &mut Vec::new(), &mut out);
    }
    out
}

/// `Σ_μ c(μ)·dim V'(μ)`.
pub fn branched_dimension(terms: &[BranchTerm]) -> BigUint {
    terms
        .iter()
        .map(|t| weyl_dim(&t.mu) * BigUint::from(t.multiplicity))
        .sum()
}

/// Weyl dimension formula for type `C_n`, evaluated on the labels
/// `a_1 ≥ … ≥ a_n ≥ 0` with `ρ = (n, …, 1)`:
/// `∏_{i<j} (l_i² − l_j²)/(ρ_i² − ρ_j²) · ∏_i l_i/ρ_i` where `l = a + ρ`.
pub fn weyl_dim(lam: &HighestWeight) -> BigUint {
    let n = lam.rank();
    let a = lam.to_nonnegative();
    let rho: Vec<BigInt> = (0..n).map(|i| BigInt::from((n - i) as i64)).collect();
    let l: Vec<BigInt> = a.iter().zip(&rho).map(|(&a, r)| BigInt::from(a) + r).collect();
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for i in 0..n {
        numer *= &l[i];
        denom *= &rho[i];
        for j in i + 1..n {
            numer *= (&l[i] - &l[j]) * (&l[i] + &l[j]);
            denom *= (&rho[i] - &rho[j]) * (&rho[i] + &rho[j]);
        }
    }
    let value = Rational::new(numer, denom);
    assert!(value.is_integer(), "Weyl dimension must be an integer");
    value
        .to_integer()
        .to_biguint()
        .expect("Weyl dimension is positive")
}

/// Multiplicities of the pattern weights.
pub fn character(basis: &PatternBasis) -> BTreeMap<Weight, u64> {
    let mut out = BTreeMap::new();
    for p in basis.patterns() {
        *out.entry(weight_of(p)).or_insert(0) += 1;
    }
    out
}

/// Signed permutations of `n` coordinates with their determinants.
pub fn hyperoctahedral_group(rank: usize) -> Vec<(Vec<usize>, Vec<i64>, i64)> {
    let mut perms = Vec::new();
    permutations(&mut (0..rank).collect(), 0, 1, &mut perms);
    let mut out = Vec::with_capacity(perms.len() << rank);
    for (perm, sign) in perms {
        for mask in 0u32..(1 << rank) {
            let signs: Vec<i64> = (0..rank)
                .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                .collect();
            let det = sign * if mask.count_ones() % 2 == 1 { -1 } else { 1 };
            out.push((perm.clone(), signs, det));
        }
    }
    out
}

fn permutations(cur: &mut Vec<usize>, start: usize, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
    if start == cur.len() {
        out.push((cur.clone(), sign));
        return;
    }
    for i in start..cur.len() {
        cur.swap(start, i);
        let s = if i == start { sign } else { -sign };
        permutations(cur, start + 1, s, out);
        cur.swap(start, i);
    }
}

fn act(perm: &[usize], signs: &[i64], v: &[i64]) -> Vec<i64> {
    perm.iter().zip(signs).map(|(&p, s)| s * v[p]).collect()
}

/// True when every weight has the same multiplicity as all of its images
/// under sign changes and permutations.
pub fn is_hyperoctahedral_invariant(chi: &BTreeMap<Weight, u64>) -> bool {
    let Some(rank) = chi.keys().next().map(Weight::rank) else {
        return true;
    };
    let group = hyperoctahedral_group(rank);
    chi.iter().all(|(w, &m)| {
        group.iter().all(|(perm, signs, _)| {
            chi.get(&Weight(act(perm, signs, &w.0))).copied() == Some(m)
        })
    })
}

type Laurent = HashMap<Vec<i64>, BigInt>;

/// Weyl character as the quotient of alternating sums
/// `Σ_w det(w) e^{w(a+ρ)} / Σ_w det(w) e^{wρ}`.
///
/// The denominator is divided out as `e^ρ ∏_{α>0} (1 − e^{−α})`, one
/// binomial at a time. Weights are returned in the internal convention
/// (component `k` is the `F_kk` eigenvalue).
pub fn weyl_character(lam: &HighestWeight) -> Result<BTreeMap<Weight, u64>> {
    let n = lam.rank();
    let a = lam.to_nonnegative();
    let rho: Vec<i64> = (0..n).map(|i| (n - i) as i64).collect();
    let shifted: Vec<i64> = a.iter().zip(&rho).map(|(x, r)| x + r).collect();

    let mut poly: Laurent = HashMap::new();
    for (perm, signs, det) in hyperoctahedral_group(n) {
        *poly.entry(act(&perm, &signs, &shifted)).or_insert_with(BigInt::zero) += det;
    }
    poly.retain(|_, c| !c.is_zero());

    let mut positive_roots = Vec::new();
    for i in 0..n {
        let mut long = vec![0; n];
        long[i] = 2;
        positive_roots.push(long);
        for j in i + 1..n {
            let mut minus = vec![0; n];
            minus[i] = 1;
            minus[j] = -1;
            positive_roots.push(minus);
            let mut plus = vec![0; n];
            plus[i] = 1;
            plus[j] = 1;
            positive_roots.push(plus);
        }
    }
    for root in &positive_roots {
        poly = divide_by_binomial(poly, root, &rho)?;
    }

    let mut out = BTreeMap::new();
    for (exponent, coeff) in poly {
        let mult = coeff
            .to_u64()
            .filter(|&m| m > 0)
            .ok_or_else(|| Error::Consistency(format!("character coefficient {coeff}")))?;
        // Remove e^ρ, then map a-convention weights to F_kk eigenvalues.
        let standard: Vec<i64> = exponent.iter().zip(&rho).map(|(e, r)| e - r).collect();
        let internal: Vec<i64> = standard.iter().rev().map(|&x| -x).collect();
        out.insert(Weight(internal), mult);
    }
    Ok(out)
}

/// Exact quotient `p / (1 − e^{−root})`, processing monomials from the top
/// with respect to `height`, which is positive on every positive root.
fn divide_by_binomial(mut p: Laurent, root: &[i64], height: &[i64]) -> Result<Laurent> {
    let level = |m: &[i64]| -> i64 { m.iter().zip(height).map(|(x, h)| x * h).sum() };
    let floor = p.keys().map(|m| level(m)).min().unwrap_or(0);
    let mut ordered: BTreeMap<(i64, Vec<i64>), BigInt> =
        p.drain().map(|(m, c)| ((level(&m), m), c)).collect();
    let drop = level(root);
    let mut quotient = Laurent::new();
    while let Some(((lvl, m), c)) = ordered.pop_last() {
        if c.is_zero() {
            continue;
        }
        if lvl < floor + drop {
            return Err(Error::Consistency(
                "alternating sum is not divisible by the Weyl denominator".into(),
            ));
        }
        let lower: Vec<i64> = m.iter().zip(root).map(|(x, r)| x - r).collect();
        *ordered
            .entry((lvl - drop, lower))
            .or_insert_with(BigInt::zero) += &c;
        quotient.insert(m, c);
    }
    Ok(quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{count_patterns, DEFAULT_GUARD};

    fn lam(entries: &[i64]) -> HighestWeight {
        HighestWeight::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn multiplicity_examples() {
        let l = lam(&[0, -1]);
        assert_eq!(multiplicity_c(&l, &lam(&[0])).unwrap(), 2);
        assert_eq!(multiplicity_c(&l, &lam(&[-1])).unwrap(), 1);
        assert_eq!(multiplicity_c(&l, &lam(&[-2])).unwrap(), 0);
        assert_eq!(multiplicity_product(&l, &lam(&[0])).unwrap(), 2);
        assert_eq!(multiplicity_product(&l, &lam(&[-1])).unwrap(), 1);
        assert_eq!(multiplicity_product(&l, &lam(&[-2])).unwrap(), 0);
        assert!(multiplicity_c(&l, &lam(&[0, 0])).is_err());
    }

    #[test]
    fn alpha_beta_example() {
        let (alphas, betas) = alpha_beta(&lam(&[0, -1]), &lam(&[0])).unwrap();
        assert_eq!(alphas, vec![ratio(-1, 2), ratio(-3, 2)]);
        assert_eq!(betas, vec![ratio(-1, 2), ratio(-5, 2)]);
    }

    #[test]
    fn branch_examples() {
        let terms = branch(&lam(&[0, -1])).unwrap();
        let summary: Vec<(Vec<i64>, u64)> = terms
            .iter()
            .map(|t| (t.mu.entries().to_vec(), t.multiplicity))
            .collect();
        assert_eq!(summary, vec![(vec![-1], 1), (vec![0], 2)]);
        assert_eq!(branched_dimension(&terms), BigUint::from(4u32));

        let trivial = branch(&lam(&[0, 0])).unwrap();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].mu.entries(), &[0]);
        assert_eq!(trivial[0].multiplicity, 1);

        assert_eq!(branched_dimension(&branch(&lam(&[-1, -1])).unwrap()), BigUint::from(5u32));
        assert!(matches!(branch(&lam(&[-1])), Err(Error::Domain(_))));
    }

    #[test]
    fn weyl_dim_examples() {
        assert_eq!(weyl_dim(&lam(&[0, -1])), BigUint::from(4u32));
        assert_eq!(weyl_dim(&lam(&[-1, -1])), BigUint::from(5u32));
        assert_eq!(weyl_dim(&lam(&[0, 0, -2])), BigUint::from(21u32));
        assert_eq!(weyl_dim(&lam(&[0])), BigUint::from(1u32));
        assert_eq!(weyl_dim(&lam(&[-3])), BigUint::from(4u32));
    }

    #[test]
    fn character_examples() {
        let basis = PatternBasis::new(&lam(&[0, -1]), DEFAULT_GUARD).unwrap();
        let chi = character(&basis);
        let expected: BTreeMap<Weight, u64> = [[0, 1], [0, -1], [1, 0], [-1, 0]]
            .into_iter()
            .map(|w| (Weight(w.to_vec()), 1))
            .collect();
        assert_eq!(chi, expected);
        assert_eq!(weyl_character(&lam(&[0, -1])).unwrap(), expected);

        let basis = PatternBasis::new(&lam(&[-1, -1]), DEFAULT_GUARD).unwrap();
        let chi = character(&basis);
        let expected: BTreeMap<Weight, u64> = [[1, 1], [1, -1], [-1, 1], [-1, -1], [0, 0]]
            .into_iter()
            .map(|w| (Weight(w.to_vec()), 1))
            .collect();
        assert_eq!(chi, expected);
        assert!(is_hyperoctahedral_invariant(&chi));

        let trivial = weyl_character(&lam(&[0])).unwrap();
        assert_eq!(trivial, BTreeMap::from([(Weight(vec![0]), 1)]));
    }

    #[test]
    fn group_order() {
        assert_eq!(hyperoctahedral_group(3).len(), 48);
        let dets: i64 = hyperoctahedral_group(3).iter().map(|g| g.2).sum();
        assert_eq!(dets, 0);
    }

    #[test]
    fn adjoint_sp6_has_zero_weight_multiplicity_three() {
        let chi = weyl_character(&lam(&[0, 0, -2])).unwrap();
        assert_eq!(chi[&Weight(vec![0, 0, 0])], 3);
        assert_eq!(chi.values().sum::<u64>(), 21);
    }

    #[test]
    fn count_matches_weyl_for_small_weights() {
        for entries in [&[-2][..], &[-1, -3], &[0, -1, -2], &[-2, -2, -3]] {
            let l = lam(entries);
            assert_eq!(count_patterns(&l), weyl_dim(&l), "{l}");
        }
    }
}
