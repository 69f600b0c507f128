//! Properties of the word engine checked against the brute-force move-search
//! oracle in `support`.

mod support;

use proptest::prelude::*;
use sclbound_core::trace_words::{commutes, conjugate, equal, normalize, Word};
use support::bfs_equal;

fn arb_word(max_alphabet: usize, max_len: usize) -> impl Strategy<Value = Word> {
    (1..=max_alphabet).prop_flat_map(move |n| {
        proptest::collection::vec((1..=n, proptest::bool::ANY), 0..=max_len).prop_map(
            move |pairs| {
                let signed: Vec<i64> = pairs
                    .into_iter()
                    .map(|(i, neg)| if neg { -(i as i64) } else { i as i64 })
                    .collect();
                Word::from_signed(&signed, n).unwrap()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The normal-form equality decision agrees with the exhaustive
    /// move-search on short words.
    #[test]
    fn equality_matches_bfs_oracle(a in arb_word(5, 8), b in arb_word(5, 8)) {
        prop_assert_eq!(equal(&a, &b), bfs_equal(&a, &b));
    }

    /// Words connected by a legal move stay equal; the oracle agrees.
    #[test]
    fn equality_matches_oracle_on_related_words(word in arb_word(5, 8), pos in 0usize..16) {
        if word.len() >= 2 {
            let p = pos % (word.len() - 1);
            let mut swapped = word.letters().to_vec();
            swapped.swap(p, p + 1);
            let swapped = Word::new(swapped, word.alphabet_size()).unwrap();
            let fast = equal(&word, &swapped);
            prop_assert_eq!(fast, bfs_equal(&word, &swapped));
            let (a, b) = (word.letters()[p].index(), word.letters()[p + 1].index());
            if commutes(a, b) {
                prop_assert!(fast);
            }
        }
    }

    /// Transitivity on triples built from a common ancestor by conjugation
    /// round trips and inverse-pair padding.
    #[test]
    fn equality_is_transitive_on_related_triples(
        word in arb_word(5, 6),
        by in arb_word(5, 3),
        pad in 1usize..5,
    ) {
        let b = conjugate(&conjugate(&word, &by), &by.inverse());
        let mut padded = word.letters().to_vec();
        let extra = sclbound_core::trace_words::Generator::new(
            pad.min(word.alphabet_size()),
            sclbound_core::trace_words::Sign::Positive,
        ).unwrap();
        padded.push(extra);
        padded.push(extra.inverse());
        let c = Word::new(padded, word.alphabet_size()).unwrap();

        prop_assert!(equal(&word, &b));
        prop_assert!(equal(&word, &c));
        prop_assert!(equal(&b, &c));
        prop_assert_eq!(normalize(&b), normalize(&c));
    }
}

#[test]
fn distinct_length_two_words_are_separated() {
    // x1 x2 and x2 x1 are connected by no move sequence
    let a = Word::from_signed(&[1, 2], 2).unwrap();
    let b = Word::from_signed(&[2, 1], 2).unwrap();
    assert!(!bfs_equal(&a, &b));
    assert!(!equal(&a, &b));

    let a = Word::from_signed(&[2, 3], 3).unwrap();
    let b = Word::from_signed(&[3, 2], 3).unwrap();
    assert!(!bfs_equal(&a, &b));
    assert!(!equal(&a, &b));
}
