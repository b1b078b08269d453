use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use wordrep::search::{exists_k_word, repnum, SearchConfig};
use wordrep::{Graph, Letter};

fn random_graph(rng: &mut StdRng, n: u32, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.random_bool(p) {
                edges.push((Letter::plain(i), Letter::plain(j)));
            }
        }
    }
    Graph::from_parts((1..=n).map(Letter::plain), edges).unwrap()
}

#[test]
fn parallel_and_deterministic_runs_agree() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rng.random_range(2..=6);
        let g = random_graph(&mut rng, n, 0.5);
        for k in 1..=3 {
            let det = exists_k_word(&g, k, &SearchConfig::deterministic()).unwrap();
            let par = exists_k_word(&g, k, &SearchConfig { threads: Some(4), ..SearchConfig::default() }).unwrap();
            assert_eq!(det.witness.is_some(), par.witness.is_some(), "{}", g.to_edge_list());
            assert_eq!(det.exhaustive, par.exhaustive);
            if let Some(w) = par.witness {
                assert!(w.represents(&g));
            }
        }
    }
}

#[test]
fn deterministic_mode_is_reproducible() {
    let g = Graph::crown(4).unwrap();
    let a = repnum(&g, 3, &SearchConfig::deterministic()).unwrap();
    let b = repnum(&g, 3, &SearchConfig::deterministic()).unwrap();
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.nodes_explored, b.nodes_explored);
}

#[test]
fn family_symmetry_does_not_change_decisions() {
    let cases = [
        (Graph::crown(3).unwrap(), 1..=2),
        (Graph::crown(4).unwrap(), 2..=3),
        (Graph::crown(5).unwrap(), 2..=2),
        (Graph::complete(5).unwrap(), 1..=2),
        (Graph::complete_bipartite(3, 3).unwrap(), 1..=2),
        (Graph::complete_bipartite(2, 4).unwrap(), 1..=2),
    ];
    for (g, ks) in cases {
        for k in ks {
            let on = exists_k_word(&g, k, &SearchConfig::deterministic()).unwrap();
            let off = exists_k_word(
                &g,
                k,
                &SearchConfig { family_symmetry: false, ..SearchConfig::deterministic() },
            )
            .unwrap();
            assert_eq!(on.witness.is_some(), off.witness.is_some(), "k={k}\n{}", g.to_edge_list());
            assert!(on.nodes_explored <= off.nodes_explored);
        }
    }
}

#[test]
fn crown_numbers_respect_the_lower_bound() {
    for n in 1..=5 {
        let out = repnum(&Graph::crown(n).unwrap(), 3, &SearchConfig::default()).unwrap();
        assert!(out.witness.is_some(), "n={n}");
        assert!(out.exhaustive);
        assert!(out.k >= n.div_ceil(2));
    }
}

#[test]
fn path_on_three_vertices_needs_two_copies() {
    let p3 = Graph::from_edge_list("1 2\n2 3\n").unwrap().0;
    let out = repnum(&p3, 3, &SearchConfig::deterministic()).unwrap();
    assert_eq!(out.k, 2);
    assert_eq!(out.graph_id, "custom");
}
