use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph, VertexSet};
use crate::matching::{enumerate_perfect_matchings, is_matching_covered, Bounds, Matching};

/// Largest graph for which the full tightness table is built.
pub const TABLE_LIMIT: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_count(k: usize) -> Parity {
        if k % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Parity of `|∂(X) ∩ M|`.
pub fn parity_of(g: &Graph, m: &Matching, x: VertexSet) -> Result<Parity> {
    if !m.is_perfect_on(g) {
        return Err(Error::NotPerfect);
    }
    Ok(Parity::of_count(m.crossings(x)))
}

/// A matching covered graph with its perfect matchings and a precomputed
/// tightness table over all vertex subsets.
pub struct CoveredGraph {
    graph: Graph,
    matchings: Vec<Matching>,
    bounds: Bounds,
    table: Vec<u64>,
    tight_sets: Vec<VertexSet>,
}

impl core::fmt::Debug for CoveredGraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CoveredGraph")
            .field("graph", &self.graph)
            .field("matchings", &self.matchings.len())
            .field("tight_sets", &self.tight_sets.len())
            .finish()
    }
}

impl CoveredGraph {
    pub fn new(graph: Graph) -> Result<Self> {
        Self::with_bounds(graph, Bounds::default())
    }

    pub fn with_bounds(graph: Graph, bounds: Bounds) -> Result<Self> {
        bounds.check_vertices(graph.n())?;
        if graph.n() > TABLE_LIMIT {
            return Err(Error::BoundExceeded(alloc::format!("tightness table limited to {TABLE_LIMIT} vertices")));
        }
        if !is_matching_covered(&graph) {
            return Err(Error::NotMatchingCovered);
        }
        let matchings = enumerate_perfect_matchings(&graph, &bounds)?;
        let n = graph.n();
        let edge_masks: Vec<Vec<u64>> = matchings
            .iter()
            .map(|m| m.edges().iter().map(|&(u, v)| (1u64 << u) | (1u64 << v)).collect())
            .collect();
        let full = VertexSet::full(n);
        let mut table = alloc::vec![0u64; (1usize << n).div_ceil(64)];
        let mut tight_sets = Vec::new();
        // enumerate shores containing vertex 0; the complement follows
        for rest in 0..(1u64 << (n - 1)) {
            let x = VertexSet::from_bits(rest << 1 | 1);
            if x.len() % 2 == 0 || x == full {
                continue;
            }
            let y = full - x;
            if !graph.induces_connected(x) || !graph.induces_connected(y) {
                continue;
            }
            let xb = x.bits();
            let tight = edge_masks
                .iter()
                .all(|m| m.iter().filter(|&&e| (e & xb).count_ones() == 1).take(2).count() == 1);
            if tight {
                for s in [x, y] {
                    let i = s.bits() as usize;
                    table[i / 64] |= 1 << (i % 64);
                    tight_sets.push(s);
                }
            }
        }
        tight_sets.sort();
        Ok(CoveredGraph { graph, matchings, bounds, table, tight_sets })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn vertices(&self) -> VertexSet {
        self.graph.vertices()
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Tightness of `x`; `∅`, `V` and sets outside `V` are never tight.
    pub fn is_tight(&self, x: VertexSet) -> bool {
        if !x.is_subset(self.vertices()) {
            return false;
        }
        let i = x.bits() as usize;
        self.table[i / 64] >> (i % 64) & 1 == 1
    }

    /// Checked variant rejecting `∅`, `V` and out-of-range sets.
    pub fn check_tight(&self, x: VertexSet) -> Result<bool> {
        if x.is_empty() || x == self.vertices() || !x.is_subset(self.vertices()) {
            return Err(Error::Precondition(alloc::format!("{x:?} must be a proper nonempty vertex subset")));
        }
        Ok(self.is_tight(x))
    }

    /// All tight sets in ascending order (two per nontrivial cut).
    pub fn tight_sets(&self) -> &[VertexSet] {
        &self.tight_sets
    }

    /// A perfect matching meeting `∂(x)` other than exactly once.
    pub fn non_tight_witness(&self, x: VertexSet) -> Option<&Matching> {
        self.matchings.iter().find(|m| m.crossings(x) != 1)
    }

    /// Parity of `x`, read from the first perfect matching.
    pub fn parity(&self, x: VertexSet) -> Parity {
        Parity::of_count(self.matchings[0].crossings(x))
    }

    pub fn is_odd(&self, x: VertexSet) -> bool {
        self.parity(x).is_odd()
    }

    pub fn record(&self, x: VertexSet) -> Result<TightCutRecord> {
        if !self.check_tight(x)? {
            return Err(Error::NotTight(x));
        }
        Ok(TightCutRecord::new(self.graph.cut_of(x)))
    }

    /// All tight cuts, one record per cut, sorted by normalised shore.
    pub fn tight_cuts(&self, nontrivial_only: bool) -> Vec<TightCutRecord> {
        self.tight_sets
            .iter()
            .filter(|s| s.contains(0))
            .map(|&s| TightCutRecord::new(self.graph.cut_of(s)))
            .filter(|r| !(nontrivial_only && r.trivial))
            .collect()
    }
}

pub fn enumerate_tight_cuts(host: &CoveredGraph, nontrivial_only: bool) -> Vec<TightCutRecord> {
    host.tight_cuts(nontrivial_only)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TightCutRecord {
    pub cut: Cut,
    pub trivial: bool,
}

impl TightCutRecord {
    fn new(cut: Cut) -> Self {
        let trivial = cut.shore().len() == 1 || cut.other_shore().len() == 1;
        TightCutRecord { cut, trivial }
    }

    pub fn shore(&self) -> VertexSet {
        self.cut.shore()
    }

    pub fn shores(&self) -> [VertexSet; 2] {
        self.cut.shores()
    }
}

/// Whether some shore of `a` is disjoint from some shore of `b`.
pub fn are_nested(a: &TightCutRecord, b: &TightCutRecord) -> bool {
    a.shores().iter().any(|x| b.shores().iter().any(|y| x.is_disjoint(*y)))
}

/// Whether two vertex sets, read as cut shores in `V`, give nested cuts.
pub fn sets_nested(x: VertexSet, y: VertexSet, all: VertexSet) -> bool {
    let xs = [x, all - x];
    let ys = [y, all - y];
    xs.iter().any(|a| ys.iter().any(|b| a.is_disjoint(*b)))
}

/// A pairwise nested family of tight cuts, sorted by normalised shore.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NestedCutFamily {
    cuts: Vec<TightCutRecord>,
    maximal: bool,
}

impl NestedCutFamily {
    pub fn cuts(&self) -> &[TightCutRecord] {
        &self.cuts
    }

    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &TightCutRecord> {
        self.cuts.iter().filter(|c| !c.trivial)
    }

    /// Whether `∂(x)` belongs to the family.
    pub fn contains_set(&self, x: VertexSet) -> bool {
        self.cuts.iter().any(|c| c.shores().contains(&x))
    }

    /// `D(C)`: both shores of every member, ascending.
    pub fn tight_sets(&self) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = self.cuts.iter().flat_map(|c| c.shores()).collect();
        out.sort();
        out
    }

    /// Builds a family from cut shores, checking tightness and nestedness;
    /// maximality is tested against `host`.
    pub fn from_shores(host: &CoveredGraph, shores: &[VertexSet]) -> Result<Self> {
        let mut cuts = Vec::new();
        for &s in shores {
            cuts.push(host.record(s)?);
        }
        cuts.sort();
        cuts.dedup();
        check_pairwise_nested(&cuts)?;
        let maximal = is_maximal_nested(host, &cuts);
        Ok(NestedCutFamily { cuts, maximal })
    }
}

fn check_pairwise_nested(cuts: &[TightCutRecord]) -> Result<()> {
    for (i, a) in cuts.iter().enumerate() {
        if cuts[i + 1..].iter().any(|b| !are_nested(a, b)) {
            return Err(Error::NotNested);
        }
    }
    Ok(())
}

fn is_maximal_nested(host: &CoveredGraph, cuts: &[TightCutRecord]) -> bool {
    host.tight_cuts(false)
        .iter()
        .all(|c| cuts.contains(c) || cuts.iter().any(|m| !are_nested(m, c)))
}

/// Greedy extension in canonical cut order.
pub fn extend_to_maximal_nested_family(host: &CoveredGraph, seed: &[TightCutRecord]) -> Result<NestedCutFamily> {
    for c in seed {
        if !host.is_tight(c.shore()) || c.cut.universe() != host.vertices() {
            return Err(Error::NotTight(c.shore()));
        }
    }
    check_pairwise_nested(seed)?;
    let order = host.tight_cuts(false);
    Ok(greedy(seed, &order))
}

fn greedy(seed: &[TightCutRecord], order: &[TightCutRecord]) -> NestedCutFamily {
    let mut cuts: Vec<TightCutRecord> = seed.to_vec();
    for c in order {
        if !cuts.contains(c) && cuts.iter().all(|m| are_nested(m, c)) {
            cuts.push(c.clone());
        }
    }
    cuts.sort();
    cuts.dedup();
    NestedCutFamily { cuts, maximal: true }
}

/// A maximal nested family built greedily from a seeded shuffle of the
/// nontrivial cuts. Seed 0 gives the canonical family.
pub fn seeded_maximal_family(host: &CoveredGraph, seed: u64) -> NestedCutFamily {
    let mut order = host.tight_cuts(false);
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
    }
    greedy(&[], &order)
}

/// Every maximal nested family, by clique enumeration over the nontrivial
/// cuts. Fails once more than `limit` families are found.
pub fn enumerate_maximal_nested_families(host: &CoveredGraph, limit: usize) -> Result<Vec<NestedCutFamily>> {
    let all = host.tight_cuts(false);
    let trivial: Vec<TightCutRecord> = all.iter().filter(|c| c.trivial).cloned().collect();
    let nontrivial: Vec<TightCutRecord> = all.into_iter().filter(|c| !c.trivial).collect();
    let k = nontrivial.len();
    let nested: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| i != j && are_nested(&nontrivial[i], &nontrivial[j])).collect()).collect();
    let mut cliques = Vec::new();
    let p: Vec<usize> = (0..k).collect();
    bron_kerbosch(&nested, Vec::new(), p, Vec::new(), &mut cliques, limit)?;
    let mut out: Vec<NestedCutFamily> = cliques
        .into_iter()
        .map(|clique| {
            let mut cuts = trivial.clone();
            cuts.extend(clique.into_iter().map(|i| nontrivial[i].clone()));
            cuts.sort();
            NestedCutFamily { cuts, maximal: true }
        })
        .collect();
    out.sort_by(|a, b| a.cuts.cmp(&b.cuts));
    Ok(out)
}

fn bron_kerbosch(
    adj: &[Vec<bool>],
    r: Vec<usize>,
    p: Vec<usize>,
    x: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    if p.is_empty() && x.is_empty() {
        if out.len() == limit {
            return Err(Error::BoundExceeded(alloc::format!("more than {limit} maximal nested families")));
        }
        out.push(r);
        return Ok(());
    }
    let mut p = p;
    let mut x = x;
    while let Some(&v) = p.first() {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, out, limit)?;
        p.remove(0);
        x.push(v);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn c6() -> CoveredGraph {
        CoveredGraph::new(corpus::cycle(6)).unwrap()
    }

    #[test]
    fn c6_tightness() {
        let h = c6();
        assert!(h.is_tight(set(&[0, 1, 2])));
        assert!(!h.is_tight(set(&[0, 1])));
        assert!(!h.is_tight(set(&[0, 2, 4])));
        assert_eq!(h.tight_sets().len(), 18);
        assert_eq!(h.tight_cuts(false).len(), 9);
        assert_eq!(h.tight_cuts(true).len(), 3);
    }

    #[test]
    fn parity_examples() {
        let h = c6();
        let m = Matching::new([(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(parity_of(h.graph(), &m, set(&[0])).unwrap(), Parity::Odd);
        assert_eq!(parity_of(h.graph(), &m, set(&[0, 1])).unwrap(), Parity::Even);
        for m in h.matchings() {
            assert_eq!(parity_of(h.graph(), m, set(&[0, 1, 2])).unwrap(), Parity::Odd);
        }
    }

    #[test]
    fn bob_cut_counts() {
        let k4 = CoveredGraph::new(corpus::k4()).unwrap();
        assert_eq!(k4.tight_cuts(false).len(), 4);
        assert!(k4.tight_cuts(true).is_empty());
        let k33 = CoveredGraph::new(corpus::k33()).unwrap();
        assert_eq!(k33.tight_cuts(false).len(), 6);
        assert!(k33.tight_cuts(true).is_empty());
    }

    #[test]
    fn nestedness_examples() {
        let h = c6();
        let a = h.record(set(&[0, 1, 2])).unwrap();
        let b = h.record(set(&[4])).unwrap();
        let c = h.record(set(&[1, 2, 3])).unwrap();
        assert!(are_nested(&a, &b));
        assert!(!are_nested(&a, &c));
        assert!(are_nested(&a, &a));
    }

    #[test]
    fn extension_examples() {
        let h = c6();
        let seed = [h.record(set(&[0, 1, 2])).unwrap()];
        let fam = extend_to_maximal_nested_family(&h, &seed).unwrap();
        assert_eq!(fam.len(), 7);
        assert!(fam.contains_set(set(&[3, 4, 5])));
        let k4 = CoveredGraph::new(corpus::k4()).unwrap();
        assert_eq!(extend_to_maximal_nested_family(&k4, &[]).unwrap().len(), 4);
        let lad = CoveredGraph::new(corpus::k4_ladder()).unwrap();
        let fam = extend_to_maximal_nested_family(&lad, &[]).unwrap();
        assert_eq!(fam.len(), 7);
        let first = lad.tight_cuts(true)[0].clone();
        assert!(fam.cuts().contains(&first));
        let crossing = [seed[0].clone(), h.record(set(&[1, 2, 3])).unwrap()];
        assert_eq!(extend_to_maximal_nested_family(&h, &crossing), Err(Error::NotNested));
    }

    #[test]
    fn all_families_of_c6() {
        let h = c6();
        let fams = enumerate_maximal_nested_families(&h, 100).unwrap();
        assert_eq!(fams.len(), 3);
        for s in 1..6 {
            assert!(fams.contains(&seeded_maximal_family(&h, s)));
        }
    }

    #[test]
    fn not_matching_covered() {
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(matches!(CoveredGraph::new(p4), Err(Error::NotMatchingCovered)));
    }
}
