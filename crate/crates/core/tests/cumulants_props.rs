mod common;

use bqf_core::cumulants::{
    cumulants_from_moments, element_cumulants, mixed_cumulant, moments_from_cumulants, product_cumulant,
    shifted_cumulants, word_moment, NCPolynomial,
};
use bqf_core::rational::{int, rat};
use bqf_core::{CumulantSequence, Family, Rational};
use num::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

fn sequence(order: usize) -> impl Strategy<Value = CumulantSequence> {
    proptest::collection::vec(rational(), order).prop_map(|v| CumulantSequence::new(v).unwrap())
}

fn sized_sequence(max: usize) -> impl Strategy<Value = CumulantSequence> {
    (1..=max).prop_flat_map(sequence)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moment_cumulant_round_trip(k in sized_sequence(10)) {
        let n = k.order();
        let m = moments_from_cumulants(&k, n).unwrap();
        prop_assert_eq!(cumulants_from_moments(&m, n).unwrap(), k);
    }

    #[test]
    fn alternating_words_factor(
        seqs in proptest::collection::vec(sequence(6), 3),
        raw in proptest::collection::vec(1u32..=3, 1..=7),
    ) {
        let family = Family::from_sequences(seqs);
        let mut word = raw.clone();
        word.dedup();
        let expected = word.iter().fold(Rational::one(), |acc, &v| acc * family.get(v).unwrap().get(1).unwrap());
        prop_assert_eq!(word_moment(&word, &family).unwrap(), expected);
    }

    #[test]
    fn shift_matches_the_oracle(k in sequence(8), a in rational(), r in 1usize..=8) {
        let family = Family::from_sequences([k.clone()]);
        let x = NCPolynomial::var(1) + NCPolynomial::constant(a.clone());
        prop_assert_eq!(
            shifted_cumulants(&k, &a, r).unwrap(),
            element_cumulants(&x, &family, r).unwrap()
        );
    }

    #[test]
    fn boolean_cumulants_add_under_independence(k1 in sequence(8), k2 in sequence(8), r in 1usize..=8) {
        let family = Family::from_sequences([k1.clone(), k2.clone()]);
        let sum = NCPolynomial::var(1) + NCPolynomial::var(2);
        let got = element_cumulants(&sum, &family, r).unwrap();
        for j in 1..=r {
            prop_assert_eq!(got.get(j).unwrap(), &(k1.get(j).unwrap() + k2.get(j).unwrap()));
        }
    }

    #[test]
    fn product_formula_matches_mixed_cumulant(
        k1 in sequence(8),
        k2 in sequence(8),
        grouping in proptest::collection::vec(1usize..=3, 1..=4),
        letters in proptest::collection::vec(1u32..=2, 12),
    ) {
        let family = Family::from_sequences([k1, k2]);
        let total: usize = grouping.iter().sum();
        let word = &letters[..total];
        let mut args = Vec::new();
        let mut pos = 0;
        for &g in &grouping {
            args.push(NCPolynomial::monomial(Rational::one(), word[pos..pos + g].to_vec()));
            pos += g;
        }
        prop_assert_eq!(
            product_cumulant(&grouping, word, &family).unwrap(),
            mixed_cumulant(&args, &family).unwrap()
        );
    }
}

#[test]
fn two_atom_boolean_convolution() {
    // (½δ_{−a} + ½δ_a) ⊎ δ_c at a = 3/2, c = 4: atoms 9/2 and −1/2 with masses 9/10 and 1/10.
    let atoms = [(rat(9, 2), rat(9, 10)), (rat(-1, 2), rat(1, 10))];
    let moments: Vec<Rational> = (1..=8).map(|k| atoms.iter().map(|(x, w)| w * num::pow(x.clone(), k)).sum()).collect();
    let k = cumulants_from_moments(&moments, 8).unwrap();
    assert_eq!(k.get(1).unwrap(), &int(4));
    assert_eq!(k.get(2).unwrap(), &rat(9, 4));
    for j in 3..=8 {
        assert!(k.get(j).unwrap().is_zero(), "K_{j} = {}", k.get(j).unwrap());
    }
}
