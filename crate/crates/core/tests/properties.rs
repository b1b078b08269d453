use std::collections::BTreeSet;

use proptest::prelude::*;
use wordrep::analyze::{check_lemma1, neighborhood_split};
use wordrep::construct::{lemma4_permutations, PairPartition};
use wordrep::{Graph, Letter, Word};

fn letter() -> impl Strategy<Value = Letter> {
    (1u32..=12, any::<bool>()).prop_map(|(i, p)| Letter::new(i, p).unwrap())
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..30).prop_map(Word::new)
}

/// A random `k`-uniform word over the letters `1..=m`.
fn uniform_word(max_letters: u32, max_k: usize) -> impl Strategy<Value = Word> {
    (1..=max_letters, 1..=max_k).prop_flat_map(|(m, k)| {
        let letters: Vec<Letter> = (1..=m)
            .flat_map(|i| std::iter::repeat_n(Letter::plain(i), k))
            .collect();
        Just(letters).prop_shuffle().prop_map(Word::new)
    })
}

proptest! {
    #[test]
    fn occurrence_bookkeeping_matches_rescan(w in word()) {
        let mut total = 0;
        for x in w.alphabet() {
            let rescan: Vec<usize> = w
                .letters()
                .iter()
                .enumerate()
                .filter(|(_, &y)| y == x)
                .map(|(p, _)| p)
                .collect();
            prop_assert_eq!(w.occurrences(x), rescan.as_slice());
            total += rescan.len();
        }
        prop_assert_eq!(total, w.len());
        prop_assert_eq!(w.is_empty(), w.alphabet().next().is_none());
    }

    #[test]
    fn token_form_round_trips(w in word()) {
        prop_assert_eq!(Word::parse_tokens(&w.to_token_string()).unwrap(), w.clone());
        if let Ok(compact) = w.to_compact_string() {
            prop_assert_eq!(Word::parse_compact(&compact).unwrap(), w);
        }
    }

    #[test]
    fn alternation_is_symmetric_and_matches_induced_pair(w in word()) {
        let alphabet: Vec<Letter> = w.alphabet().collect();
        for (i, &x) in alphabet.iter().enumerate() {
            for &y in &alphabet[i + 1..] {
                let xy = w.alternates(x, y).unwrap();
                prop_assert_eq!(xy, w.alternates(y, x).unwrap());
                let pair: BTreeSet<Letter> = [x, y].into();
                let sub = w.subword_induced(&pair).induced_graph().unwrap();
                prop_assert_eq!(sub.has_edge(x, y), xy);
            }
        }
    }

    #[test]
    fn uniform_words_are_shift_invariant(w in uniform_word(6, 3), s in 0usize..40) {
        let g = w.induced_graph().unwrap();
        prop_assert_eq!(w.cyclic_shift(s).unwrap().induced_graph().unwrap(), g);
    }

    #[test]
    fn permutations_induce_complete_graphs(w in uniform_word(8, 1)) {
        let m = w.alphabet().count();
        prop_assert_eq!(w.induced_graph().unwrap(), Graph::complete(m).unwrap());
    }

    #[test]
    fn neighbourhoods_split_without_triple_violations(w in uniform_word(6, 3)) {
        let g = w.induced_graph().unwrap();
        for &v in g.vertices() {
            let nb = g.neighborhood(v).unwrap();
            if nb.is_empty() {
                continue;
            }
            let sd = neighborhood_split(&w, &g, v).unwrap();
            sd.validate(&w).unwrap();
            prop_assert!(check_lemma1(&w, &g, &nb, &sd).unwrap().is_empty());
        }
    }

    #[test]
    fn pair_permutation_families_hold_for_random_partitions(
        k in 3usize..=8,
        order in Just((1..=16).collect::<Vec<u32>>()).prop_shuffle(),
    ) {
        let ground: Vec<u32> = order.into_iter().filter(|&x| x as usize <= 2 * k).collect();
        let pairs: Vec<(Letter, Letter)> = ground
            .chunks(2)
            .map(|c| (Letter::plain(c[0]), Letter::plain(c[1])))
            .collect();
        let pp = PairPartition::new(pairs.clone()).unwrap();
        let fam = lemma4_permutations(&pp).unwrap();
        for (perm, &(a, b)) in fam.perms().iter().zip(&pairs) {
            prop_assert_eq!(perm.len(), 2 * k);
            prop_assert_eq!(perm.iter().collect::<BTreeSet<_>>().len(), 2 * k);
            prop_assert_eq!((perm[0], perm[2 * k - 1]), (a, b));
        }
        for x in 1..=2 * k as u32 {
            for y in x + 1..=2 * k as u32 {
                let (x, y) = (Letter::plain(x), Letter::plain(y));
                let before = |p: &Vec<Letter>| {
                    p.iter().position(|&z| z == x) < p.iter().position(|&z| z == y)
                };
                prop_assert!(fam.perms().iter().any(before));
                prop_assert!(!fam.perms().iter().all(before));
            }
        }
    }

    #[test]
    fn edge_lists_round_trip(edges in prop::collection::vec((letter(), letter()), 0..20)) {
        let edges: Vec<_> = edges.into_iter().filter(|(a, b)| a != b).collect();
        let vertices: Vec<Letter> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let g = Graph::from_parts(vertices, edges).unwrap();
        let text = g.to_edge_list();
        let (back, warnings) = Graph::from_edge_list(&text).unwrap();
        prop_assert!(warnings.is_empty());
        prop_assert_eq!(back.to_edge_list(), text);
        prop_assert_eq!(back, g);
    }
}
