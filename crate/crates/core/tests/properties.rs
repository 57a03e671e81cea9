mod support;

use fgroup_core::elements::{Letter, NormalForm, TreePair, Word};
use fgroup_core::length::{l_infinity, word_length};
use fgroup_core::random::{random_element, rng};
use fgroup_core::trees::{Shape, Tree};
use proptest::prelude::*;

fn element(seed: u64, max: usize) -> TreePair {
    random_element(&mut rng(seed), max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pair_text_round_trip(seed in any::<u64>()) {
        let g = element(seed, 14);
        prop_assert_eq!(TreePair::parse_pair(&g.canonical_key()).unwrap(), g.clone());
        prop_assert_eq!(g.to_string().parse::<TreePair>().unwrap(), g);
    }

    #[test]
    fn normal_form_round_trip(seed in any::<u64>()) {
        let g = element(seed, 14);
        let nf = g.normal_form().unwrap();
        prop_assert_eq!(TreePair::from_normal_form(&nf).unwrap(), g.clone());
        prop_assert_eq!(nf.to_word().evaluate(), g.clone());
        let text = nf.to_string();
        if !text.is_empty() {
            prop_assert_eq!(NormalForm::from_word(&Word::parse(&text).unwrap()).unwrap(), nf);
        }
    }

    #[test]
    fn group_axioms(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (f, g, h) = (element(a, 8), element(b, 8), element(c, 8));
        prop_assert_eq!(f.multiply(&g).multiply(&h), f.multiply(&g.multiply(&h)));
        prop_assert!(f.multiply(&f.inverse()).is_identity());
        prop_assert_eq!(f.multiply(&TreePair::identity()), f.clone());
        prop_assert_eq!(TreePair::identity().multiply(&f), f);
    }

    #[test]
    fn length_is_symmetric_and_monotone(seed in any::<u64>()) {
        let g = element(seed, 12);
        let mut previous = usize::MAX;
        for n in 1..=4 {
            let l = word_length(&g, n).unwrap();
            prop_assert_eq!(l, word_length(&g.inverse(), n).unwrap());
            prop_assert_eq!(l % 2, l_infinity(&g) % 2);
            prop_assert!(l >= l_infinity(&g));
            prop_assert!(l <= previous);
            previous = l;
        }
    }

    #[test]
    fn triangle_inequality(a in any::<u64>(), b in any::<u64>(), n in 1usize..4) {
        let (g, h) = (element(a, 8), element(b, 8));
        let lg = word_length(&g, n).unwrap();
        let lh = word_length(&h, n).unwrap();
        prop_assert!(word_length(&g.multiply(&h), n).unwrap() <= lg + lh);
    }

    #[test]
    fn leaf_exponents_count_non_right_carets(seed in any::<u64>()) {
        let g = element(seed, 14);
        for t in [g.negative(), g.positive()] {
            let sum: u32 = t.leaf_exponents().iter().sum();
            let non_right = t.kinds().iter().filter(|k| !k.is_right()).count();
            prop_assert_eq!(sum as usize, non_right);
            let strip = |mut e: Vec<u32>| { while e.last() == Some(&0) { e.pop(); } e };
            let decoded = Tree::from_shape(&Shape::from_leaf_exponents(&t.leaf_exponents()));
            prop_assert_eq!(strip(decoded.leaf_exponents()), strip(t.leaf_exponents()));
        }
    }

    #[test]
    fn minimizer_matches_enumeration(seed in any::<u64>(), n in 1usize..5) {
        let g = element(seed, 7);
        let exact = fgroup_core::minimize_penalty(&g, n).unwrap().weight;
        prop_assert_eq!(exact, support::naive_minimum(&g, n));
    }
}

#[test]
fn conjugation_relators() {
    for i in 0..6 {
        for j in i + 1..=6 {
            let w = Word::new(vec![Letter::new(i, true), Letter::new(j, false), Letter::new(i, false)]);
            assert_eq!(w.evaluate(), TreePair::generator(j + 1, false), "x{i}^-1 x{j} x{i}");
        }
    }
}

#[test]
fn reduction_order_is_irrelevant() {
    for seed in 0..100 {
        let g = element(seed, 10);
        let h = element(seed + 1000, 10);
        let product = g.multiply_unreduced(&h);
        let a = product.reduce_with(|c| c[0]);
        let b = product.reduce_with(|c| c[c.len() - 1]);
        let c = product.reduce_with(|c| c[c.len() / 2]);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.reduce(), a);
    }
}

#[test]
fn every_small_tree_round_trips() {
    for m in 0..=10 {
        for s in Shape::all(m) {
            let t = Tree::from_shape(&s);
            assert_eq!(Tree::parse(&t.serialize()).unwrap(), t);
        }
    }
}
