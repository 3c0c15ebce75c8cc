mod common;

use common::{brute_closure, corpus, cycles, eval_word};
use dsp_core::{
    coset_action, enumerate_cosets, is_normal, verify_table, EnumerationError, Presentation, Word,
};
use std::time::Instant;

#[test]
fn symmetric_group_order_matches_permutation_oracle() {
    // a = (0 1), b = (0 1 2) satisfy the relators and generate a group of order 6
    let p = corpus("s3");
    let gens = vec![cycles(3, &[&[0, 1]]), cycles(3, &[&[0, 1, 2]])];
    for r in p.relators() {
        assert_eq!(eval_word(r.letters(), &gens, 3), vec![0, 1, 2]);
    }
    let order = brute_closure(&gens, 3).len();
    assert_eq!(order, 6);
    let t = enumerate_cosets(&p, &[], 100).unwrap();
    assert_eq!(t.index(), order);
    // Lagrange: |<a>| = 2
    let t = enumerate_cosets(&p, &[Word::letter(1)], 100).unwrap();
    assert_eq!(t.index(), 3);
}

#[test]
fn quaternion_order() {
    let (i, j) = common::quaternion_generators();
    let p = corpus("q8");
    for r in p.relators() {
        assert!(eval_word(r.letters(), &[i.clone(), j.clone()], 8)
            .iter()
            .enumerate()
            .all(|(k, &v)| k == v));
    }
    let t = enumerate_cosets(&p, &[], 100).unwrap();
    assert_eq!(t.index(), brute_closure(&[i, j], 8).len());
}

#[test]
fn binary_icosahedral_order() {
    let p = corpus("binary-icosahedral");
    let start = Instant::now();
    let t = enumerate_cosets(&p, &[], 1000).unwrap();
    assert!(start.elapsed().as_secs_f64() < 5.0);
    assert_eq!(t.index(), 120);
    assert!(verify_table(&p, &[], &t));
}

#[test]
fn relators_fix_every_coset() {
    for name in ["s3", "q8", "binary-icosahedral", "cyclic6"] {
        let p = corpus(name);
        let t = enumerate_cosets(&p, &[], 1000).unwrap();
        for r in p.relators() {
            for c in 0..t.index() {
                assert_eq!(coset_action(&t, r, c), c, "{name}");
            }
        }
        for g in 1..=p.generator_count() as i32 {
            for c in 0..t.index() {
                assert_eq!(t.image(t.image(c, g), -g), c);
            }
        }
    }
}

#[test]
fn determinism() {
    let p = corpus("binary-icosahedral");
    let a = enumerate_cosets(&p, &[Word::letter(1)], 1000).unwrap();
    let b = enumerate_cosets(&p, &[Word::letter(1)], 1000).unwrap();
    assert_eq!(a, b);
    // Lagrange against the order of s in the regular representation
    let regular = enumerate_cosets(&p, &[], 1000).unwrap();
    let mut order = 1;
    let mut c = regular.image(0, 1);
    while c != 0 {
        c = regular.image(c, 1);
        order += 1;
    }
    assert_eq!(a.index() * order, 120);
}

#[test]
fn conjugation_oracle_for_normality() {
    // <a> in S3 is not normal: b^-1 a b lies outside {1, a}
    let a = cycles(3, &[&[0, 1]]);
    let b = cycles(3, &[&[0, 1, 2]]);
    let conj = eval_word(&[-2, 1, 2], &[a.clone(), b.clone()], 3);
    assert!(conj != a && conj != vec![0, 1, 2]);
    let p = corpus("s3");
    let t = enumerate_cosets(&p, &[Word::letter(1)], 100).unwrap();
    assert!(!is_normal(&t, &[Word::letter(1)]));
}

#[test]
fn subgroup_generators_close_at_coset_zero() {
    let p = corpus("binary-icosahedral");
    let h = [Word::letter(2)];
    let t = enumerate_cosets(&p, &h, 1000).unwrap();
    assert_eq!(coset_action(&t, &h[0], 0), 0);
    assert!(verify_table(&p, &h, &t));
    let regular = enumerate_cosets(&p, &[], 1000).unwrap();
    let mut order = 1;
    let mut c = regular.image(0, 2);
    while c != 0 {
        c = regular.image(c, 2);
        order += 1;
    }
    assert_eq!(t.index() * order, 120);
}

#[test]
fn infinite_groups_exhaust_budget() {
    for name in ["trefoil", "surface2", "free2"] {
        let p: Presentation = corpus(name);
        let err = enumerate_cosets(&p, &[], 2000).unwrap_err();
        assert!(matches!(
            err,
            EnumerationError::BudgetExhausted {
                max_cosets: 2000,
                ..
            }
        ));
    }
}

fn word_strategy(gens: i32) -> impl proptest::strategy::Strategy<Value = Word> {
    use proptest::prelude::*;
    proptest::collection::vec((1..=gens, any::<bool>()), 0..8)
        .prop_map(|v| Word::reduced(v.into_iter().map(|(g, s)| if s { g } else { -g })))
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]

    #[test]
    fn random_subgroups_of_a_finite_group(h in proptest::collection::vec(word_strategy(2), 0..3)) {
        let p = corpus("binary-icosahedral");
        let t = enumerate_cosets(&p, &h, 10_000).unwrap();
        proptest::prop_assert!(verify_table(&p, &h, &t));
        proptest::prop_assert_eq!(120 % t.index(), 0);
        for w in &h {
            proptest::prop_assert_eq!(coset_action(&t, w, 0), 0);
        }
        for g in 1..=2 {
            for c in 0..t.index() {
                proptest::prop_assert_eq!(t.image(t.image(c, g), -g), c);
            }
        }
    }
}
