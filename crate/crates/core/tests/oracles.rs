mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{perfect_matchings, random_matching_covered, set, Oracle};
use torsoid_core::corpus;
use torsoid_core::graph::{Graph, VertexSet};
use torsoid_core::matching::{enumerate_perfect_matchings, is_matching_covered, Bounds};
use torsoid_core::partition::all_tight_set_partitions;
use torsoid_core::passable::{largest_passable_with, Strategy};
use torsoid_core::tight::{are_nested, enumerate_maximal_nested_families, sets_nested, CoveredGraph, TightCutRecord};
use torsoid_core::torsoid::{enumerate_torsoids, enumerate_torsoids_seeded, torsoids_by_exhaustion};

fn random_hosts(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_matching_covered(&mut rng, 4, max_n)).collect()
}

fn hosts(max_n: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = corpus::graphs().into_iter().map(|(_, g)| g).filter(|g| g.n() <= max_n).collect();
    out.extend(random_hosts(21, 40, max_n));
    out
}

#[test]
fn matching_counts_agree() {
    for g in hosts(12) {
        let lib = enumerate_perfect_matchings(&g, &Bounds::default()).unwrap();
        let lib: BTreeSet<Vec<(usize, usize)>> = lib.iter().map(|m| m.edges().to_vec()).collect();
        let oracle: BTreeSet<Vec<(usize, usize)>> = perfect_matchings(&g)
            .into_iter()
            .map(|mut m| {
                m.sort();
                m
            })
            .collect();
        assert_eq!(lib, oracle, "{g:?}");
        assert!(is_matching_covered(&g));
    }
}

#[test]
fn tight_sets_agree() {
    for g in hosts(12) {
        let h = CoveredGraph::new(g.clone()).unwrap();
        let oracle = Oracle::new(&g);
        let lib: BTreeSet<VertexSet> = h.tight_sets().iter().copied().collect();
        let want: BTreeSet<VertexSet> = oracle.tight_sets().into_iter().collect();
        assert_eq!(lib, want, "{g:?}");
        for c in h.tight_cuts(false) {
            for s in c.shores() {
                assert!(g.induces_connected(s), "tight shore {s:?} is disconnected");
            }
        }
    }
}

#[test]
fn cycle_tight_sets_are_odd_intervals() {
    for n in [4, 6, 8, 10] {
        let h = CoveredGraph::new(corpus::cycle(n)).unwrap();
        let intervals: BTreeSet<VertexSet> = (0..n)
            .flat_map(|start| (1..n).step_by(2).map(move |len| (0..len).map(|k| (start + k) % n).collect()))
            .collect();
        let lib: BTreeSet<VertexSet> = h.tight_sets().iter().copied().collect();
        assert_eq!(lib, intervals, "C{n}");
    }
}

#[test]
fn largest_passable_strategies_agree() {
    for g in hosts(10) {
        let h = CoveredGraph::new(g.clone()).unwrap();
        let oracle = Oracle::new(&g);
        for &p in h.tight_sets() {
            for &q in h.tight_sets() {
                if !p.is_disjoint(q) || p | q == g.vertices() {
                    continue;
                }
                let want = oracle.largest_passable(p, q);
                for s in [Strategy::Frontier, Strategy::Scan] {
                    assert_eq!(largest_passable_with(&h, p, q, s).ok(), want, "{g:?} {p:?} {q:?}");
                }
            }
        }
    }
}

/// Maximal nested families by brute force over subsets of nontrivial cuts.
fn brute_force_families(h: &CoveredGraph) -> BTreeSet<Vec<TightCutRecord>> {
    let nontrivial = h.tight_cuts(true);
    let trivial: Vec<TightCutRecord> = h.tight_cuts(false).into_iter().filter(|c| c.trivial).collect();
    let k = nontrivial.len();
    assert!(k <= 16);
    let nested = |mask: u32| {
        (0..k).all(|i| (i + 1..k).all(|j| mask >> i & 1 == 0 || mask >> j & 1 == 0 || are_nested(&nontrivial[i], &nontrivial[j])))
    };
    let ok: Vec<u32> = (0..1u32 << k).filter(|&m| nested(m)).collect();
    ok.iter()
        .filter(|&&m| !ok.iter().any(|&o| o != m && o & m == m))
        .map(|&m| {
            let mut cuts = trivial.clone();
            cuts.extend((0..k).filter(|&i| m >> i & 1 == 1).map(|i| nontrivial[i].clone()));
            cuts.sort();
            cuts
        })
        .collect()
}

#[test]
fn maximal_families_agree_with_brute_force() {
    for g in hosts(10) {
        let h = CoveredGraph::new(g.clone()).unwrap();
        if h.tight_cuts(true).len() > 12 {
            continue;
        }
        let lib: BTreeSet<Vec<TightCutRecord>> =
            enumerate_maximal_nested_families(&h, 100_000).unwrap().iter().map(|f| f.cuts().to_vec()).collect();
        assert_eq!(lib, brute_force_families(&h), "{g:?}");
    }
}

#[test]
fn nestedness_matches_disjoint_shores() {
    let h = CoveredGraph::new(corpus::cycle(8)).unwrap();
    let all = h.vertices();
    for a in h.tight_cuts(false) {
        for b in h.tight_cuts(false) {
            let disjoint = a.shores().iter().any(|&x| b.shores().iter().any(|&y| x.is_disjoint(y)));
            assert_eq!(are_nested(&a, &b), disjoint);
            assert_eq!(sets_nested(a.shore(), b.shore(), all), disjoint);
        }
    }
}

#[test]
fn torsoids_from_torsos_match_exhaustion() {
    for g in hosts(10) {
        let h = CoveredGraph::new(g.clone()).unwrap();
        let Ok(brute) = torsoids_by_exhaustion(&h, 50_000) else { continue };
        assert_eq!(enumerate_torsoids(&h).unwrap(), brute, "{g:?}");
        for seed in 1..4 {
            assert_eq!(enumerate_torsoids_seeded(&h, seed).unwrap(), brute, "{g:?} seed {seed}");
        }
    }
}

#[test]
fn ladder_has_two_torsoids() {
    let h = CoveredGraph::new(corpus::k4_ladder()).unwrap();
    let ts = enumerate_torsoids(&h).unwrap();
    assert_eq!(ts.len(), 2);
    let brick = ts.iter().find(|t| !t.is_cyclic()).unwrap();
    let (u, v) = (brick.vertex_index(set(&[0])).unwrap(), brick.vertex_index(set(&[1])).unwrap());
    assert_eq!(brick.eps(u, v), Some(set(&[4, 5])));
    let cyc = ts.iter().find(|t| t.is_cyclic()).unwrap();
    assert_eq!(cyc.vertices(), &[set(&[0]), set(&[1]), set(&[4]), set(&[5])]);
    let (u, v) = (cyc.vertex_index(set(&[0])).unwrap(), cyc.vertex_index(set(&[1])).unwrap());
    assert_eq!(cyc.eps(u, v), Some(set(&[2, 3])));
}

#[test]
fn partition_counts() {
    let h = CoveredGraph::new(corpus::cycle(6)).unwrap();
    // odd arcs: all singletons, 6 rotations of 1+1+1+3, and one partition
    // per tight cut on two classes
    let parts = all_tight_set_partitions(&h, 1000).unwrap();
    let by_size = |k: usize| parts.iter().filter(|p| p.len() == k).count();
    assert_eq!((by_size(6), by_size(4), by_size(2)), (1, 6, 9));
}
