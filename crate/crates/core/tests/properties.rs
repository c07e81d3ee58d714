mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use torsoid_core::canon::{canonical_form, digraph_canonical_form};
use torsoid_core::digraph::{lovasz_decompose, separation_tight_bijection};
use torsoid_core::graph::{Digraph, Graph, VertexSet};
use torsoid_core::matching::{m_direction, matching_graph, Bounds};
use torsoid_core::tight::{parity_of, CoveredGraph, Parity};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n)
            .prop_map(move |pairs| Graph::new(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap())
    })
}

fn digraph_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n)
            .prop_map(move |pairs| Digraph::new(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn cut_is_symmetric(g in graph_strategy(10), bits in any::<u64>()) {
        let x = VertexSet::from_bits(bits) & g.vertices();
        let a = g.cut_of(x);
        let b = g.cut_of(g.vertices() - x);
        prop_assert_eq!(a.edges(), b.edges());
        prop_assert_eq!(a.shore(), b.shore());
    }

    #[test]
    fn vertex_set_order_is_lexicographic(a in any::<u16>(), b in any::<u16>()) {
        let (x, y) = (VertexSet::from_bits(a.into()), VertexSet::from_bits(b.into()));
        prop_assert_eq!(x.cmp(&y), x.to_vec().cmp(&y.to_vec()));
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_strategy(9).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&g.permuted(&perm)).unwrap());
    }

    #[test]
    fn digraph_canonical_form_ignores_labels((d, perm) in digraph_strategy(8).prop_flat_map(|d| { let n = d.n(); (Just(d), permutation(n)) })) {
        let back = digraph_canonical_form(&d).unwrap().to_digraph();
        prop_assert_eq!(digraph_canonical_form(&back).unwrap(), digraph_canonical_form(&d).unwrap());
        prop_assert_eq!(digraph_canonical_form(&d).unwrap(), digraph_canonical_form(&d.permuted(&perm)).unwrap());
    }

    #[test]
    fn matching_graph_round_trip(d in digraph_strategy(8)) {
        let mg = matching_graph(&d).unwrap();
        prop_assert_eq!(m_direction(&mg.graph, &mg.matching).unwrap(), d);
    }

    #[test]
    fn separations_biject_with_tight_sets(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = common::random_strong_digraph(&mut rng, 6);
        let report = separation_tight_bijection(&d, &Bounds::default()).unwrap();
        prop_assert!(report.is_perfect(), "{:?}", report);
    }

    #[test]
    fn decomposition_is_order_invariant(seed in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = common::random_strong_digraph(&mut rng, 7);
        let bounds = Bounds::default();
        prop_assert_eq!(lovasz_decompose(&d, a, &bounds).unwrap(), lovasz_decompose(&d, b, &bounds).unwrap());
    }

    #[test]
    fn parity_adds_over_disjoint_sets(seed in any::<u64>(), xa in any::<u64>(), xb in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_matching_covered(&mut rng, 4, 10);
        let h = CoveredGraph::new(g.clone()).unwrap();
        let x = VertexSet::from_bits(xa) & g.vertices();
        let y = VertexSet::from_bits(xb) & g.vertices() - x;
        let combined = if h.parity(x) == h.parity(y) { Parity::Even } else { Parity::Odd };
        prop_assert_eq!(h.parity(x | y), combined);
        for m in h.matchings() {
            prop_assert_eq!(parity_of(&g, m, x).unwrap(), h.parity(x));
        }
    }
}
