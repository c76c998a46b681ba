use std::collections::{BTreeSet, HashSet};

use hjpoly::hj::{enumerate_lines, hj_hypergraph, line_of, substitute, LinePattern, Word};
use proptest::prelude::*;

/// Lines built from their first word: a line starts at a word `w` and
/// chooses a nonempty set of positions where `w` reads 1 as wildcards.
fn lines_from_first_words(d: usize, n: usize) -> HashSet<Vec<usize>> {
    let mut out = HashSet::new();
    for w in Word::all(d, n) {
        let ones: Vec<usize> = (0..n).filter(|&i| w.letters()[i] == 1).collect();
        for mask in 1u32..(1 << ones.len()) {
            let mut set: Vec<usize> = (1..=d)
                .map(|k| {
                    let mut letters = w.letters().to_vec();
                    for (b, &pos) in ones.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            letters[pos] = k;
                        }
                    }
                    letters.iter().fold(0, |acc, &l| acc * d + l - 1)
                })
                .collect();
            set.sort_unstable();
            assert!(out.insert(set), "first-word construction produced a repeat");
        }
    }
    out
}

#[test]
fn edge_counts_match_formula_and_independent_enumeration() {
    for d in 2..=5usize {
        for n in 1..=4usize {
            let hj = hj_hypergraph(d, n).unwrap();
            let expected = (d + 1).pow(n as u32) - d.pow(n as u32);
            assert_eq!(hj.hypergraph.edge_count(), expected, "HJ({d},{n})");
            let ours: HashSet<Vec<usize>> = hj.hypergraph.edges().iter().cloned().collect();
            assert_eq!(ours.len(), expected, "HJ({d},{n}) has repeated edges");
            assert_eq!(ours, lines_from_first_words(d, n), "HJ({d},{n})");
        }
    }
    assert_eq!(hj_hypergraph(3, 2).unwrap().hypergraph.edge_count(), 7);
}

#[test]
fn every_word_lies_in_the_predicted_number_of_lines() {
    for d in 2..=4usize {
        for n in 1..=4usize {
            let hj = hj_hypergraph(d, n).unwrap();
            let mut degree = vec![0usize; hj.hypergraph.vertex_count()];
            for e in hj.hypergraph.edges() {
                for &v in e {
                    degree[v] += 1;
                }
            }
            for w in Word::all(d, n) {
                let predicted: usize = (1..=d)
                    .map(|v| {
                        let m = w.letters().iter().filter(|&&l| l == v).count();
                        (1usize << m) - 1
                    })
                    .sum();
                assert_eq!(degree[w.index(d)], predicted, "{} in HJ({d},{n})", w.key(d));
            }
        }
    }
}

#[test]
fn lines_have_d_distinct_words_in_range() {
    for (d, n) in [(2, 3), (3, 3), (4, 2), (5, 2)] {
        let lines = enumerate_lines(d, n).unwrap();
        let patterns: BTreeSet<_> = lines.iter().map(|l| l.pattern().clone()).collect();
        assert_eq!(patterns.len(), lines.len());
        for l in &lines {
            assert_eq!(l.words().len(), d);
            let distinct: HashSet<_> = l.words().iter().collect();
            assert_eq!(distinct.len(), d);
            for w in l.words() {
                assert_eq!(w.len(), n);
                assert!(w.letters().iter().all(|&x| (1..=d).contains(&x)));
            }
        }
    }
}

fn word_strategy() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (2usize..=12, 1usize..=6).prop_flat_map(|(d, n)| (Just(d), prop::collection::vec(1..=d, n)))
}

fn pattern_strategy() -> impl Strategy<Value = (usize, Vec<Option<usize>>)> {
    (2usize..=12, 1usize..=6)
        .prop_flat_map(|(d, n)| (Just(d), prop::collection::vec(prop::option::of(1..=d), n)))
        .prop_filter("needs a wildcard", |(_, p)| p.iter().any(Option::is_none))
}

fn to_pattern(d: usize, p: &[Option<usize>]) -> LinePattern {
    let key: Vec<String> = p
        .iter()
        .map(|s| s.map_or_else(|| "*".to_string(), |l| l.to_string()))
        .collect();
    LinePattern::parse(&key.join(if d > 9 { "," } else { "" }), d).unwrap()
}

proptest! {
    #[test]
    fn word_index_and_key_round_trip((d, letters) in word_strategy()) {
        let w = Word::new(letters.clone(), d).unwrap();
        let i = w.index(d);
        prop_assert!(i < d.pow(letters.len() as u32));
        prop_assert_eq!(Word::from_index(i, d, letters.len()), w.clone());
        prop_assert_eq!(Word::parse(&w.key(d), d).unwrap(), w);
    }

    #[test]
    fn substitution_fixes_letters_and_fills_wildcards((d, p) in pattern_strategy(), k in 1usize..=12) {
        let pattern = to_pattern(d, &p);
        prop_assert_eq!(LinePattern::parse(&pattern.key(d), d).unwrap(), pattern.clone());
        let k = 1 + (k - 1) % d;
        let w = substitute(&pattern, k, d).unwrap();
        for (s, &l) in p.iter().zip(w.letters()) {
            prop_assert_eq!(l, s.unwrap_or(k));
        }
        let line = line_of(&pattern, d).unwrap();
        prop_assert_eq!(&line.words()[k - 1], &w);
    }
}
