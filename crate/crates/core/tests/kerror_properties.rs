use lcforge_core::kerror::{k_error_lc, k_error_profile, k_min_formula, k_min_search, WordSearch};
use lcforge_core::{games_chan_lc, PeriodicSequence};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word(n: u32, w: u64) -> PeriodicSequence {
    PeriodicSequence::from_word(n, w).unwrap()
}

fn words(n: u32) -> std::ops::Range<u64> {
    0..1 << (1u64 << n)
}

fn words_of_weight(n: u32, weights: &[u32]) -> Vec<u64> {
    words(n)
        .filter(|w| weights.contains(&w.count_ones()))
        .collect()
}

#[test]
fn profiles_never_increase() {
    for n in 0..=3 {
        for w in words(n) {
            let profile = k_error_profile(&word(n, w), 4.min(1 << n)).unwrap();
            assert!(profile.windows(2).all(|p| p[1].1 <= p[0].1), "{w:#x}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let s = word(4, rng.random::<u16>().into());
        let profile = k_error_profile(&s, 4).unwrap();
        assert!(profile.windows(2).all(|p| p[1].1 <= p[0].1), "{s}");
    }
}

#[test]
fn parity_identities() {
    for n in 1..=3 {
        for w in words(n) {
            let p: Vec<u64> = k_error_profile(&word(n, w), 4.min(1 << n))
                .unwrap()
                .into_iter()
                .map(|(_, v)| v)
                .collect();
            if w.count_ones() % 2 == 0 {
                assert_eq!(p[1], p[0]);
                if p.len() > 3 {
                    assert_eq!(p[3], p[2]);
                }
            } else {
                assert_eq!(p[2], p[1]);
                if p.len() > 4 {
                    assert_eq!(p[4], p[3]);
                }
            }
        }
    }
}

#[test]
fn kurosawa_formula_matches_search() {
    for n in 0..=4 {
        for w in words(n).skip(1) {
            let s = word(n, w);
            let formula = k_min_formula(&s).unwrap();
            if formula <= 4 {
                assert_eq!(k_min_search(&s, 4), Ok(formula as usize), "{s}");
            }
        }
    }
}

#[test]
fn witnesses_reproduce_the_value() {
    for n in 0..=3 {
        for w in words(n) {
            let s = word(n, w);
            for k in 0..=3.min(1 << n) {
                let r = k_error_lc(&s, k).unwrap();
                assert!(r.witness.weight() <= k);
                assert_eq!(games_chan_lc(&r.witness.apply(&s).unwrap()), r.value);
            }
        }
    }
}

#[test]
fn witness_is_lowest_weight_then_lexicographic() {
    let n = 3;
    for w in words(n) {
        let s = word(n, w);
        let r = k_error_lc(&s, 2).unwrap();
        if r.witness.weight() == 0 {
            continue;
        }
        // No lighter pattern reaches the value, and no earlier one of the same weight.
        let period = 1usize << n;
        let mut first = None;
        'outer: for weight in 1..=2 {
            for a in 0..period {
                let candidates: Vec<Vec<usize>> = if weight == 1 {
                    vec![vec![a]]
                } else {
                    (a + 1..period).map(|b| vec![a, b]).collect()
                };
                for c in candidates {
                    let t = PeriodicSequence::from_positions(n, &c).unwrap();
                    if games_chan_lc(&s.add(&t).unwrap()) == r.value {
                        first = Some(c);
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(first.as_deref(), Some(r.witness.positions()), "{s}");
    }
}

#[test]
fn word_search_agrees_with_general_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, k) in [(3, 4), (4, 3), (5, 2), (5, 3)] {
        let table = WordSearch::new(n, k).unwrap();
        for _ in 0..200 {
            let w = rng.random::<u64>() & ((1u128 << (1 << n)) - 1) as u64;
            assert_eq!(table.value(w), k_error_lc(&word(n, w), k).unwrap().value);
        }
    }
}

/// `c` in `1..=2^(n-1) - 3` and not of the form `2^(n-1) - 2^m` with `2 <= m < n - 1`.
fn stable_complexities(n: u32) -> Vec<u64> {
    let half = 1u64 << (n - 1);
    (1..=half - 3)
        .filter(|&c| !(2..n - 1).any(|m| c == half - (1 << m)))
        .collect()
}

fn unstable_complexities(n: u32) -> Vec<u64> {
    let half = 1u64 << (n - 1);
    (0..n - 1).map(|m| half - (1 << m)).collect()
}

#[test]
fn two_errors_do_not_move_low_complexities() {
    let n = 4;
    assert_eq!(stable_complexities(n), vec![1, 2, 3, 5]);
    let table = WordSearch::new(n, 2).unwrap();
    let patterns = words_of_weight(n, &[0, 2]);
    for c in stable_complexities(n) {
        for s in words(n).filter(|&w| games_chan_lc(&word(n, w)) == c) {
            for &u in &patterns {
                assert_eq!(table.value(s ^ u), c, "s={s:#06x} u={u:#06x}");
            }
        }
    }
    for c in unstable_complexities(n) {
        for s in words(n).filter(|&w| games_chan_lc(&word(n, w)) == c) {
            assert!(
                patterns.iter().any(|&u| table.value(s ^ u) < c),
                "s={s:#06x}"
            );
        }
    }
}

#[test]
fn three_errors_do_not_move_low_complexities() {
    let n = 4;
    let table = WordSearch::new(n, 3).unwrap();
    let patterns = words_of_weight(n, &[1, 3]);
    for c in stable_complexities(n) {
        for s in words(n).filter(|&w| games_chan_lc(&word(n, w)) == c) {
            for &u in &patterns {
                assert_eq!(table.value(s ^ u), c, "s={s:#06x} u={u:#06x}");
            }
        }
    }
    for c in unstable_complexities(n) {
        for s in words(n).filter(|&w| games_chan_lc(&word(n, w)) == c) {
            assert!(
                patterns.iter().any(|&u| table.value(s ^ u) < c),
                "s={s:#06x}"
            );
        }
    }
}

proptest! {
    #[test]
    fn multiword_witnesses_are_valid(n in 7u32..=8, seed: u64, k in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = PeriodicSequence::from_bits(n, (0..1usize << n).map(|_| rng.random_bool(0.05)))
            .unwrap();
        let r = k_error_lc(&s, k).unwrap();
        prop_assert_eq!(games_chan_lc(&r.witness.apply(&s).unwrap()), r.value);
        prop_assert!(r.value <= games_chan_lc(&s));
    }
}
