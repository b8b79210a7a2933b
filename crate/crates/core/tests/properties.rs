use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use sympgt_core::action::{apply_generator, generator_matrix, Generator};
use sympgt_core::algebra::{
    casimir, casimir_is_central, close_algebra, close_algebra_with_order, shifts_weights_by,
    verify_relations,
};
use sympgt_core::branching::{
    branch, branched_dimension, character, gate_candidates, in_weight_diagram,
    is_hyperoctahedral_invariant, multiplicity_c, multiplicity_product, weyl_character, weyl_dim,
};
use sympgt_core::model::{int, Rational};
use sympgt_core::patterns::{apply_delta, count_patterns, enumerate_patterns, validate_pattern};
use sympgt_core::{
    HighestWeight, Pattern, PatternBasis, PatternDelta, Row, Weight, DEFAULT_GUARD,
};

fn highest_weight(max_rank: usize, depth: i64) -> impl Strategy<Value = HighestWeight> {
    (1..=max_rank)
        .prop_flat_map(move |n| proptest::collection::vec(-depth..=0i64, n))
        .prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            HighestWeight::new(v).unwrap()
        })
}

/// Entry-by-entry restatement of both interlacing chains.
fn chains_hold(p: &Pattern) -> bool {
    let n = p.rank();
    for k in 1..=n {
        let mut chain = vec![0];
        for i in 1..=k {
            chain.push(p.lam_primed(k, i));
            chain.push(p.lam(k, i));
        }
        if chain.windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        if k >= 2 {
            let mut chain = vec![0];
            for i in 1..k {
                chain.push(p.lam_primed(k, i));
                chain.push(p.lam(k - 1, i));
            }
            chain.push(p.lam_primed(k, k));
            if chain.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
        }
    }
    true
}

fn raw_shift(p: &Pattern, d: PatternDelta) -> Pattern {
    let n = p.rank();
    let mut unprimed: Vec<Vec<i64>> = (1..=n).map(|k| p.row(k).to_vec()).collect();
    let mut primed: Vec<Vec<i64>> = (1..=n).map(|k| p.primed_row(k).to_vec()).collect();
    let rows = match d.row {
        Row::Unprimed => &mut unprimed,
        Row::Primed => &mut primed,
    };
    rows[d.level - 1][d.position - 1] += d.sign;
    Pattern::from_rows(unprimed, primed).unwrap()
}

proptest! {
    #[test]
    fn rational_arithmetic_is_exact(
        a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000,
        e in -1000i64..1000, f in 1i64..1000,
    ) {
        let x = Rational::new(BigInt::from(a), BigInt::from(b));
        let y = Rational::new(BigInt::from(c), BigInt::from(d));
        let z = Rational::new(BigInt::from(e), BigInt::from(f));
        if !x.is_zero() {
            prop_assert_eq!(&x * x.recip(), Rational::one());
        }
        prop_assert_eq!((&x * &y) * &z, &x * (&y * &z));
        prop_assert_eq!(&x * (&y + &z), &x * &y + &x * &z);
        prop_assert!(x.denom() > &BigInt::zero());
    }

    #[test]
    fn enumeration_count_and_weyl_agree(lam in highest_weight(4, 3)) {
        let count = count_patterns(&lam);
        prop_assert_eq!(&count, &weyl_dim(&lam));
        if count <= BigUint::from(3000u32) {
            let patterns = enumerate_patterns(&lam, DEFAULT_GUARD).unwrap();
            prop_assert_eq!(BigUint::from(patterns.len()), count);
            // strictly increasing, hence a strict total order on distinct patterns
            prop_assert!(patterns.windows(2).all(|w| w[0] < w[1]));
            for p in &patterns {
                prop_assert!(chains_hold(p));
                prop_assert_eq!(p.row(lam.rank()), lam.entries());
            }
        }
    }

    #[test]
    fn apply_delta_matches_validator(
        lam in highest_weight(3, 3),
        pick in any::<prop::sample::Index>(),
        primed in any::<bool>(),
        level_seed in 0usize..100,
        pos_seed in 0usize..100,
        up in any::<bool>(),
    ) {
        let patterns = enumerate_patterns(&lam, DEFAULT_GUARD).unwrap();
        let p = pick.get(&patterns);
        let level = level_seed % lam.rank() + 1;
        let position = pos_seed % level + 1;
        let row = if primed { Row::Primed } else { Row::Unprimed };
        let d = PatternDelta { row, level, position, sign: if up { 1 } else { -1 } };
        let shifted = apply_delta(p, d, &lam).unwrap();
        let raw = raw_shift(p, d);
        prop_assert_eq!(shifted.is_some(), validate_pattern(&raw, &lam).unwrap());
        if let Some(q) = shifted {
            prop_assert_eq!(&q, &raw);
            prop_assert_eq!(apply_delta(&q, d.inverse(), &lam).unwrap(), Some(p.clone()));
        }
    }

    #[test]
    fn branching_identities(lam in highest_weight(4, 3).prop_filter("rank ≥ 2", |l| l.rank() >= 2)) {
        for mu in gate_candidates(&lam) {
            prop_assert!(in_weight_diagram(&lam, &mu));
            prop_assert_eq!(multiplicity_c(&lam, &mu).unwrap(), multiplicity_product(&lam, &mu).unwrap());
        }
        let terms = branch(&lam).unwrap();
        prop_assert_eq!(branched_dimension(&terms), weyl_dim(&lam));
    }

    #[test]
    fn branching_refines_pattern_count(lam in highest_weight(3, 3).prop_filter("rank ≥ 2", |l| l.rank() >= 2)) {
        let n = lam.rank();
        let mut groups: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for p in enumerate_patterns(&lam, DEFAULT_GUARD).unwrap() {
            *groups.entry(p.row(n - 1).to_vec()).or_default() += 1;
        }
        let terms = branch(&lam).unwrap();
        prop_assert_eq!(groups.len(), terms.len());
        for t in terms {
            let expected = count_patterns(&t.mu) * BigUint::from(t.multiplicity);
            prop_assert_eq!(BigUint::from(groups[t.mu.entries()]), expected);
        }
    }

    #[test]
    fn character_matches_weyl_formula(lam in highest_weight(3, 3)) {
        let basis = PatternBasis::new(&lam, DEFAULT_GUARD).unwrap();
        let chi = character(&basis);
        prop_assert!(is_hyperoctahedral_invariant(&chi));
        prop_assert_eq!(chi, weyl_character(&lam).unwrap());
    }

    #[test]
    fn generators_shift_weights_and_match_terms(lam in highest_weight(3, 2)) {
        let basis = PatternBasis::new(&lam, DEFAULT_GUARD).unwrap();
        for g in Generator::all(lam.rank()) {
            let (i, j) = g.indices();
            let m = generator_matrix(&basis, g).unwrap();
            prop_assert!(shifts_weights_by(&basis, &m, i, j));
            for (col, p) in basis.patterns().iter().enumerate() {
                let mut unit = vec![Rational::zero(); basis.len()];
                unit[col] = Rational::one();
                let image = m.apply(&unit).unwrap();
                let mut expected = vec![Rational::zero(); basis.len()];
                for (target, c) in apply_generator(p, g).unwrap() {
                    expected[basis.index_of(&target).unwrap()] += c;
                }
                prop_assert_eq!(image, expected);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closure_is_a_representation(lam in highest_weight(3, 2)) {
        let basis = PatternBasis::new(&lam, DEFAULT_GUARD).unwrap();
        let closure = close_algebra(&basis).unwrap();
        let report = verify_relations(&closure).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
        let (matrix, _) = casimir(&closure).unwrap();
        prop_assert!(casimir_is_central(&closure, &matrix).unwrap());
        for (&(i, j), op) in closure.canonical_ops() {
            prop_assert!(shifts_weights_by(&basis, op, i, j));
        }
    }

    #[test]
    fn closure_independent_of_seed_order(lam in highest_weight(3, 2), seed in any::<u64>()) {
        let basis = PatternBasis::new(&lam, DEFAULT_GUARD).unwrap();
        let reference = close_algebra(&basis).unwrap();
        let mut order = Generator::lie_generators(lam.rank());
        order.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let shuffled = close_algebra_with_order(&basis, &order).unwrap();
        prop_assert_eq!(reference.canonical_ops(), shuffled.canonical_ops());
    }

    #[test]
    fn casimir_scalar_closed_form(lam in highest_weight(3, 3)) {
        // With this normalization the scalar is 2⟨a, a + 2ρ⟩, a the
        // non-negative labels and ρ = (n, …, 1).
        let basis = PatternBasis::new(&lam, DEFAULT_GUARD).unwrap();
        let (_, scalar) = casimir(&close_algebra(&basis).unwrap()).unwrap();
        let n = lam.rank() as i64;
        let a = lam.to_nonnegative();
        let value: i64 = a.iter().enumerate().map(|(i, &x)| x * (x + 2 * (n - i as i64))).sum();
        prop_assert_eq!(scalar, int(2 * value));
    }
}

#[test]
fn defining_module_weights_are_signed_unit_vectors() {
    for n in 1..=4usize {
        let lam = HighestWeight::defining(n);
        let basis = PatternBasis::new(&lam, DEFAULT_GUARD).unwrap();
        let mut expected = BTreeMap::new();
        for k in 0..n {
            for s in [-1, 1] {
                let mut w = vec![0; n];
                w[k] = s;
                expected.insert(Weight(w), 1u64);
            }
        }
        assert_eq!(character(&basis), expected);
    }
}

#[test]
fn raise_then_lower_on_rank_one() {
    // sl(2) relations on V(−1): [F_{1,−1}, F_{−1,1}] = 4F_11 and
    // [F_11, F_{±1,∓1}] = ±2F_{±1,∓1}.
    let lam = HighestWeight::new(vec![-1]).unwrap();
    let basis = PatternBasis::new(&lam, DEFAULT_GUARD).unwrap();
    let h = generator_matrix(&basis, Generator::Diag(1)).unwrap();
    let e = generator_matrix(&basis, Generator::Raise(1)).unwrap();
    let f = generator_matrix(&basis, Generator::Lower(1)).unwrap();
    assert_eq!(e.commutator(&f).unwrap(), h.scale(&int(4)));
    assert_eq!(h.commutator(&e).unwrap(), e.scale(&int(2)));
    assert_eq!(h.commutator(&f).unwrap(), f.scale(&int(-2)));
}

#[test]
fn larger_modules_close() {
    for entries in [vec![-1, -2], vec![0, 0, 0, -1], vec![-3, -3]] {
        let lam = HighestWeight::new(entries).unwrap();
        let basis = PatternBasis::new(&lam, DEFAULT_GUARD).unwrap();
        let closure = close_algebra(&basis).unwrap();
        assert!(verify_relations(&closure).unwrap().passed(), "{lam}");
    }
}
