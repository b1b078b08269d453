use std::collections::BTreeSet;

use wordrep::analyze::{check_lemma1, claim1_count, endpoint_coverage, find_split, neighborhood_split};
use wordrep::construct::{crown_construction, represent_crown};
use wordrep::{Graph, Letter};

fn plain_set(n: usize) -> BTreeSet<Letter> {
    (1..=n as u32).map(Letter::plain).collect()
}

#[test]
fn constructed_words_have_half_uniformity() {
    for n in 5..=16 {
        let w = represent_crown(n).unwrap();
        assert_eq!(w.uniformity().unwrap(), Some(n.div_ceil(2)), "n={n}");
        assert!(w.represents(&Graph::crown(n).unwrap()), "n={n}");
    }
}

#[test]
fn swaps_remove_exactly_the_matching() {
    for n in (6..=16).step_by(2) {
        let c = crown_construction(n).unwrap();
        let before = c.blocks_word.induced_graph().unwrap();
        assert_eq!(before, Graph::complete_bipartite(n, n).unwrap());
        assert_eq!(c.rotated.induced_graph().unwrap(), before);
        let after = c.word.induced_graph().unwrap();
        let removed: BTreeSet<(Letter, Letter)> = before.edges().filter(|&(x, y)| !after.has_edge(x, y)).collect();
        let matching: BTreeSet<(Letter, Letter)> = (1..=n as u32)
            .map(|i| (Letter::plain(i), Letter::primed(i)))
            .collect();
        assert_eq!(removed, matching, "n={n}");
        assert_eq!(after.edges().filter(|&(x, y)| !before.has_edge(x, y)).count(), 0);
        assert_eq!(c.swap_positions.len(), n);
    }
}

#[test]
fn odd_words_are_even_words_with_the_top_pair_deleted() {
    for n in (5..=15).step_by(2) {
        let odd = represent_crown(n).unwrap();
        let m = n as u32 + 1;
        let remove: BTreeSet<Letter> = [Letter::plain(m), Letter::primed(m)].into();
        assert_eq!(odd, represent_crown(n + 1).unwrap().without(&remove));
    }
}

#[test]
fn plain_side_splits_and_every_letter_is_an_endpoint() {
    for n in 5..=16 {
        let w = represent_crown(n).unwrap();
        let a = plain_set(n);
        let sd = find_split(&w, &a).unwrap().unwrap_or_else(|| panic!("n={n} not splittable"));
        sd.validate(&w).unwrap();
        let cov = endpoint_coverage(&sd, &a);
        assert!(cov.uncovered.is_empty(), "n={n}: {:?}", cov.uncovered);
        let k = sd.k();
        assert!(2 * k >= n);
        if n % 2 == 0 {
            assert_eq!(2 * k, n);
        }
    }
}

#[test]
fn every_neighbourhood_splits_cleanly() {
    for n in [1, 2, 3, 4, 5, 6, 9, 12] {
        let w = represent_crown(n).unwrap();
        let g = Graph::crown(n).unwrap();
        for &v in g.vertices() {
            let nb = g.neighborhood(v).unwrap();
            if nb.is_empty() {
                assert!(neighborhood_split(&w, &g, v).is_err());
                continue;
            }
            let sd = neighborhood_split(&w, &g, v).unwrap();
            assert!(check_lemma1(&w, &g, &nb, &sd).unwrap().is_empty(), "n={n} v={v}");
        }
    }
}

#[test]
fn factor_count_bound_holds_for_every_letter() {
    for n in 5..=10 {
        let w = represent_crown(n).unwrap();
        let g = Graph::crown(n).unwrap();
        // the neighbourhood of i' and the letter i play the roles of N(1') and 1
        for i in 1..=n as u32 {
            let sd = neighborhood_split(&w, &g, Letter::primed(i)).unwrap();
            let k = sd.k();
            for start in 1..=k {
                for t in 1..=k + 1 - start {
                    let c = claim1_count(&w, &sd, Letter::plain(i), start, t).unwrap();
                    assert!(c <= t, "n={n} i={i} start={start} t={t} count={c}");
                }
            }
        }
    }
}
