//! Test-only oracles, kept independent of the library's normal-form code.
//!
//! Equality of words is decided here by brute force: breadth-first closure
//! under single commutation swaps and adjacent-inverse deletions. Two words
//! represent the same group element exactly when their closures meet.

use sclbound_core::trace_words::Word;
use std::collections::{HashSet, VecDeque};

/// `(index, sign)` with sign ±1; deliberately not the library letter type.
pub type Letter = (usize, i8);

pub fn letters_of(w: &Word) -> Vec<Letter> {
    w.letters()
        .iter()
        .map(|l| {
            let s = match l.sign() {
                sclbound_core::trace_words::Sign::Positive => 1,
                sclbound_core::trace_words::Sign::Negative => -1,
            };
            (l.index(), s)
        })
        .collect()
}

fn independent(i: usize, j: usize) -> bool {
    i.abs_diff(j) >= 2
}

/// All words reachable by commutation swaps and adjacent cancellations.
pub fn move_closure(start: &[Letter], cap: usize) -> HashSet<Vec<Letter>> {
    let mut seen: HashSet<Vec<Letter>> = HashSet::new();
    let mut queue: VecDeque<Vec<Letter>> = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    while let Some(u) = queue.pop_front() {
        assert!(seen.len() <= cap, "move closure exceeded cap {cap}");
        for p in 0..u.len().saturating_sub(1) {
            let (a, b) = (u[p], u[p + 1]);
            if independent(a.0, b.0) {
                let mut v = u.clone();
                v.swap(p, p + 1);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
            if a.0 == b.0 && a.1 == -b.1 {
                let mut v = u.clone();
                v.drain(p..p + 2);
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
    }
    seen
}

/// Brute-force word-problem decision. Sound and complete: moves preserve the
/// group element, and equal elements share the reduced trace, all of whose
/// linearizations appear in both closures.
pub fn bfs_equal(a: &Word, b: &Word) -> bool {
    let ca = move_closure(&letters_of(a), 5_000_000);
    let lb = letters_of(b);
    if ca.contains(&lb) {
        return true;
    }
    let cb = move_closure(&lb, 5_000_000);
    ca.intersection(&cb).next().is_some()
}
