use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::graph::{
    complete_bipartite, complete_graph, cycle_graph, disjoint_union, independent_graph, join,
    path_graph, petersen_graph,
};

/// Every Hamilton cycle, by brute force over permutations fixing vertex 0.
fn all_cycles(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    if n < 3 {
        return Vec::new();
    }
    (1..n)
        .permutations(n - 1)
        .map(|p| std::iter::once(0).chain(p).collect::<Vec<_>>())
        .filter(|c| is_hamilton_cycle(g, c))
        .collect()
}

fn cycle_contains(c: &[usize], (u, v): (usize, usize)) -> bool {
    let n = c.len();
    (0..n).any(|i| {
        let (a, b) = (c[i], c[(i + 1) % n]);
        (a, b) == (u, v) || (b, a) == (u, v)
    })
}

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn small_examples() {
    for n in 3..12 {
        assert!(has_hamilton_cycle(&cycle_graph(n).unwrap()));
    }
    assert!(!has_hamilton_cycle(&petersen_graph()));
    for n in 4..10 {
        let ore = join(
            &complete_graph(1).unwrap(),
            &disjoint_union(&complete_graph(1).unwrap(), &complete_graph(n - 2).unwrap()).unwrap(),
        )
        .unwrap();
        assert!(!has_hamilton_cycle(&ore));
    }
    assert!(!has_hamilton_cycle(&complete_graph(2).unwrap()));
    assert!(!has_hamilton_cycle(&Graph::empty(0).unwrap()));
}

#[test]
fn engines_agree_and_witnesses_are_cycles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let n = rng.gen_range(3..12);
        let g = random_graph(n, rng.gen_range(0.2..0.8), &mut rng);
        let a = find_hamilton_cycle(&g, Engine::HeldKarp).unwrap();
        let b = find_hamilton_cycle(&g, Engine::Backtrack).unwrap();
        assert_eq!(a.is_some(), b.is_some(), "{g:?}");
        for c in a.iter().chain(b.iter()) {
            assert!(is_hamilton_cycle(&g, c));
        }
    }
}

#[test]
fn petersen_oracle_by_permutations() {
    // Petersen has no Hamilton cycle; cross-check the deciders against a naive search at order 8
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let g = random_graph(8, 0.4, &mut rng);
        assert_eq!(has_hamilton_cycle(&g), !all_cycles(&g).is_empty());
    }
}

#[test]
fn forced_forests_match_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..120 {
        let n = rng.gen_range(3..=8);
        let g = random_graph(n, rng.gen_range(0.4..0.9), &mut rng);
        let cycles = all_cycles(&g);
        for f in enumerate_linear_forests(&g, 3) {
            let want = cycles.iter().any(|c| f.edges().iter().all(|&e| cycle_contains(c, e)));
            for engine in [Engine::HeldKarp, Engine::Backtrack, Engine::Auto] {
                let got = find_hamilton_cycle_through(&g, &f, engine).unwrap();
                assert_eq!(got.is_some(), want, "{g:?} {f:?} {engine:?}");
                if let Some(c) = got {
                    assert!(is_hamilton_cycle(&g, &c));
                    assert!(f.edges().iter().all(|&e| cycle_contains(&c, e)));
                }
            }
        }
    }
}

#[test]
fn forced_examples() {
    let c = cycle_graph(6).unwrap();
    let e = LinearForest::from_edges(&[(2, 3)]).unwrap();
    assert!(has_hamilton_cycle_through(&c, &e).unwrap());
    let bad = LinearForest::from_edges(&[(0, 3)]).unwrap();
    assert!(matches!(has_hamilton_cycle_through(&c, &bad), Err(Error::Domain(_))));
    // Hamilton path as a single forced unit
    let p = path_graph(5).unwrap();
    let whole = LinearForest::from_paths(vec![vec![0, 1, 2, 3, 4]]).unwrap();
    assert!(!has_hamilton_cycle_through(&p, &whole).unwrap());
    assert!(has_hamilton_cycle_through(&p.with_edge(0, 4), &whole).unwrap());
}

#[test]
fn paths() {
    assert!(has_hamilton_path(&path_graph(4).unwrap()).unwrap());
    assert!(!has_hamilton_path(&complete_bipartite(1, 3).unwrap()).unwrap());
    let g = disjoint_union(&complete_graph(3).unwrap(), &complete_graph(2).unwrap()).unwrap();
    assert!(!has_hamilton_path(&g).unwrap());
    assert!(has_hamilton_path(&Graph::empty(1).unwrap()).unwrap());
    assert!(has_hamilton_path(&complete_graph(2).unwrap()).unwrap());
    assert!(!has_hamilton_path(&independent_graph(2).unwrap()).unwrap());
}

#[test]
fn k_hamiltonian_examples() {
    assert!(is_k_hamiltonian(&complete_graph(5).unwrap(), 2).unwrap());
    assert!(!is_k_hamiltonian(&cycle_graph(5).unwrap(), 1).unwrap());
    assert!(is_k_hamiltonian(&cycle_graph(5).unwrap(), 3).is_err());
    assert!(is_k_edge_hamiltonian(&complete_graph(5).unwrap(), 1));
    assert!(is_k_edge_hamiltonian(&cycle_graph(5).unwrap(), 4));
    assert!(!is_k_edge_hamiltonian(&cycle_graph(5).unwrap().with_edge(0, 2), 1));
    assert!(is_k_edge_hamiltonian(&cycle_graph(5).unwrap(), 1));
}

#[test]
fn k_edge_is_not_monotone_under_edge_addition() {
    // the added chord is itself a forest that no Hamilton cycle uses
    let c = cycle_graph(5).unwrap();
    assert!(is_k_edge_hamiltonian(&c, 1));
    assert!(!is_k_edge_hamiltonian(&c.with_edge(0, 2), 1));
}

#[test]
fn k_edge_zero_is_hamiltonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let n = rng.gen_range(3..10);
        let g = random_graph(n, 0.5, &mut rng);
        assert_eq!(is_k_edge_hamiltonian(&g, 0), has_hamilton_cycle(&g));
    }
}

#[test]
fn enumerated_forests_are_in_normal_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let g = random_graph(9, 0.5, &mut rng);
        for f in enumerate_linear_forests(&g, 4) {
            assert_eq!(LinearForest::from_edges(&f.edges()).unwrap(), f);
            f.validate(&g).unwrap();
        }
    }
}

/// Definition-level oracle for k-edge-Hamiltonicity.
fn naive_k_edge(g: &Graph, k: usize) -> bool {
    let cycles = all_cycles(g);
    if cycles.is_empty() {
        return false;
    }
    enumerate_linear_forests(g, k).all(|f| cycles.iter().any(|c| f.edges().iter().all(|&e| cycle_contains(c, e))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn k_edge_matches_definition(n in 3usize..8, bits in any::<u64>(), k in 0usize..3) {
        let mut g = Graph::empty(n).unwrap();
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> (i % 64) & 1 == 1 || (bits >> ((i + 17) % 64)) & 1 == 1 {
                    g.add_edge(u, v);
                }
                i += 1;
            }
        }
        prop_assert_eq!(is_k_edge_hamiltonian(&g, k), naive_k_edge(&g, k));
    }

    #[test]
    fn adding_edges_is_monotone(n in 4usize..9, seed in any::<u64>(), k in 0usize..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(n, 0.5, &mut rng);
        if let Some(&(u, v)) = g.non_edges().first() {
            let h = g.with_edge(u, v);
            prop_assert!(!has_hamilton_cycle(&g) || has_hamilton_cycle(&h));
            prop_assert!(!is_k_hamiltonian(&g, k).unwrap() || is_k_hamiltonian(&h, k).unwrap());
            for f in enumerate_linear_forests(&g, 2) {
                prop_assert!(!has_hamilton_cycle_through(&g, &f).unwrap() || has_hamilton_cycle_through(&h, &f).unwrap());
            }
        }
    }
}
