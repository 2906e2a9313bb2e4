mod common;

use common::ident::{all_words, lyndon_by_rotation, min_ending_split};
use std::cmp::Ordering;

use pbw::words::{
    is_lyndon, is_shirshov_closed, lex_cmp, longest_lyndon_ending, lyndon_up_to, necklace_count, prec_cmp, shirshov_closure,
    shirshov_decompose, LSet, Word,
};
use proptest::prelude::*;

#[test]
fn lyndon_counts_theta_two() {
    let words = lyndon_up_to(2, 8);
    let counts: Vec<usize> = (1..=8).map(|n| words.iter().filter(|w| w.len() == n).count()).collect();
    assert_eq!(counts, vec![2, 1, 2, 3, 6, 9, 18, 30]);
    for n in 1..=8 {
        assert_eq!(counts[n - 1] as u64, necklace_count(2, n as u64));
    }
}

#[test]
fn generator_matches_rotation_definition() {
    for theta in [2u8, 3] {
        let brute: Vec<Word> = all_words(theta, 7).into_iter().filter(|w| lyndon_by_rotation(w)).collect();
        let mut gen = lyndon_up_to(theta, 7);
        gen.sort();
        let mut brute = brute;
        brute.sort();
        assert_eq!(gen, brute, "θ={}", theta);
        assert!(gen.iter().all(|w| is_lyndon(w)));
    }
}

#[test]
fn shirshov_agrees_with_brute_force() {
    for w in all_words(2, 8).into_iter().filter(|w| w.len() >= 2) {
        assert_eq!(shirshov_decompose(&w).unwrap(), min_ending_split(&w), "{:?}", w);
    }
}

#[test]
fn shirshov_characterizations_agree_on_lyndon_words() {
    for theta in [2u8, 3] {
        for u in lyndon_up_to(theta, 8).into_iter().filter(|w| w.len() >= 2) {
            let (v, w) = shirshov_decompose(&u).unwrap();
            assert_eq!(Some((v.clone(), w.clone())), longest_lyndon_ending(&u), "{:?}", u);
            assert!(is_lyndon(&v) && is_lyndon(&w));
            assert!(v < w && u < w);
        }
    }
}

#[test]
fn shirshov_example() {
    assert_eq!(shirshov_decompose(&[1, 1, 2, 1, 2]).unwrap(), (vec![1, 1, 2], vec![1, 2]));
}

fn word_strategy(theta: u8, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=theta, 0..=max)
}

proptest! {
    #[test]
    fn lex_is_a_total_order(a in word_strategy(3, 6), b in word_strategy(3, 6), c in word_strategy(3, 6)) {
        prop_assert_eq!(lex_cmp(&a, &b), lex_cmp(&b, &a).reverse());
        if lex_cmp(&a, &b) != Ordering::Greater && lex_cmp(&b, &c) != Ordering::Greater {
            prop_assert!(lex_cmp(&a, &c) != Ordering::Greater);
        }
        prop_assert_eq!(lex_cmp(&a, &b) == Ordering::Equal, a == b);
    }

    #[test]
    fn closure_is_closed_and_idempotent(picks in prop::collection::vec(0usize..40, 0..5)) {
        let pool: Vec<Word> = lyndon_up_to(2, 6);
        let seed: Vec<Word> = picks.iter().map(|i| pool[i % pool.len()].clone()).collect();
        let l = shirshov_closure(&seed, 2).unwrap();
        prop_assert!(is_shirshov_closed(l.words(), 2).unwrap());
        let again = shirshov_closure(l.words(), 2).unwrap();
        prop_assert_eq!(again.words(), l.words());
        for w in &seed {
            prop_assert!(l.contains(w));
        }
    }

    // every finite set of bounded super words has a ≺-minimum
    #[test]
    fn prec_is_total_with_minimum(ws in prop::collection::vec(prop::collection::vec(0u16..3, 0..5), 1..12)) {
        let l = LSet::new(&[vec![1], vec![1, 2], vec![2]], 2).unwrap();
        for a in &ws {
            for b in &ws {
                prop_assert_eq!(prec_cmp(&l, a, b), prec_cmp(&l, b, a).reverse());
                prop_assert_eq!(prec_cmp(&l, a, b) == Ordering::Equal, a == b);
            }
        }
        let min = ws.iter().min_by(|a, b| prec_cmp(&l, a, b)).unwrap();
        prop_assert!(ws.iter().all(|w| prec_cmp(&l, min, w) != Ordering::Greater));
    }
}
