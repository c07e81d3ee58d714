use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::{digraph_canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Digraph, VertexSet};
use crate::matching::{matching_graph, Bounds};
use crate::tight::CoveredGraph;

/// Which crossing direction carries no arc.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Direction {
    /// No arc from `B ∖ A` to `A ∖ B`.
    NoArcsIntoA,
    /// No arc from `A ∖ B` to `B ∖ A`.
    NoArcsOutOfA,
}

/// A directed 1-separation `(A, B)` with `A ∩ B = {separator}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct OneSeparation {
    pub a: VertexSet,
    pub b: VertexSet,
    pub separator: usize,
    pub direction: Direction,
}

impl OneSeparation {
    /// `A ∖ B`.
    pub fn a_side(&self) -> VertexSet {
        self.a - self.b
    }

    /// `B ∖ A`.
    pub fn b_side(&self) -> VertexSet {
        self.b - self.a
    }

    /// Both sides are proper, i.e. neither `A` nor `B` is everything.
    pub fn is_proper(&self) -> bool {
        !self.a_side().is_empty() && !self.b_side().is_empty()
    }

    pub fn is_valid_for(&self, d: &Digraph) -> bool {
        let all = d.vertices();
        if self.a | self.b != all || self.a & self.b != VertexSet::singleton(self.separator) {
            return false;
        }
        match self.direction {
            Direction::NoArcsIntoA => !d.has_arc_between(self.b_side(), self.a_side()),
            Direction::NoArcsOutOfA => !d.has_arc_between(self.a_side(), self.b_side()),
        }
    }
}

pub fn is_strongly_connected(d: &Digraph) -> bool {
    d.n() > 0 && d.induces_strongly_connected(d.vertices())
}

/// Strongly connected, at least three vertices, and no proper 1-separation.
pub fn is_strongly_2connected(d: &Digraph) -> bool {
    d.n() >= 3
        && is_strongly_connected(d)
        && (0..d.n()).all(|s| d.induces_strongly_connected(d.vertices() - VertexSet::singleton(s)))
}

fn separations_of(d: &Digraph, proper_only: bool) -> Vec<OneSeparation> {
    let all = d.vertices();
    let mut out = Vec::new();
    for s in 0..d.n() {
        let rest = all - VertexSet::singleton(s);
        for a_side in rest.subsets() {
            let b_side = rest - a_side;
            if proper_only && (a_side.is_empty() || b_side.is_empty()) {
                continue;
            }
            let a = a_side | VertexSet::singleton(s);
            let b = b_side | VertexSet::singleton(s);
            if !d.has_arc_between(b_side, a_side) {
                out.push(OneSeparation { a, b, separator: s, direction: Direction::NoArcsIntoA });
            }
            if !d.has_arc_between(a_side, b_side) {
                out.push(OneSeparation { a, b, separator: s, direction: Direction::NoArcsOutOfA });
            }
        }
    }
    out.sort();
    out
}

/// All directed 1-separations, degenerate ones included, one entry per
/// arc-free direction.
pub fn enumerate_one_separations(d: &Digraph, bounds: &Bounds) -> Result<Vec<OneSeparation>> {
    bounds.check_vertices(d.n())?;
    if !is_strongly_connected(d) {
        return Err(Error::NotStronglyConnected);
    }
    Ok(separations_of(d, false))
}

/// Tight set `X` of `M(D)` to its 1-separation: the matching edge of `X`'s
/// cut is the separator; the separation has no arcs into `A` when the black
/// end of that edge lies in `X`.
pub fn separation_of_tight_set(d: &Digraph, x: VertexSet) -> Option<OneSeparation> {
    let crossing: Vec<usize> = (0..d.n()).filter(|&v| x.contains(2 * v) != x.contains(2 * v + 1)).collect();
    let &[s] = crossing.as_slice() else { return None };
    let inner: VertexSet = (0..d.n()).filter(|&v| x.contains(2 * v) && x.contains(2 * v + 1)).collect();
    let direction = if x.contains(2 * s) { Direction::NoArcsIntoA } else { Direction::NoArcsOutOfA };
    Some(OneSeparation { a: inner | VertexSet::singleton(s), b: d.vertices() - inner, separator: s, direction })
}

/// Inverse of [`separation_of_tight_set`].
pub fn tight_set_of_separation(sep: &OneSeparation) -> VertexSet {
    let s = sep.separator;
    let mut x: VertexSet = sep.a_side().iter().flat_map(|v| [2 * v, 2 * v + 1]).collect();
    x.insert(match sep.direction {
        Direction::NoArcsIntoA => 2 * s,
        Direction::NoArcsOutOfA => 2 * s + 1,
    });
    x
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BijectionReport {
    pub pairs: Vec<(VertexSet, OneSeparation)>,
    pub orphan_tight_sets: Vec<VertexSet>,
    pub orphan_separations: Vec<OneSeparation>,
    pub tight_sets: usize,
    pub separations: usize,
}

impl BijectionReport {
    pub fn is_perfect(&self) -> bool {
        self.orphan_tight_sets.is_empty() && self.orphan_separations.is_empty() && self.tight_sets == self.separations
    }
}

/// Pairs the tight sets of `M(D)` with the 1-separations of `D` and checks
/// that the pairing is total and injective both ways.
pub fn separation_tight_bijection(d: &Digraph, bounds: &Bounds) -> Result<BijectionReport> {
    let seps = enumerate_one_separations(d, bounds)?;
    let mg = matching_graph(d)?;
    let host = CoveredGraph::with_bounds(mg.graph, *bounds)?;
    let mut report = BijectionReport { tight_sets: host.tight_sets().len(), separations: seps.len(), ..Default::default() };
    let mut hit = alloc::vec![false; seps.len()];
    for &x in host.tight_sets() {
        let image = separation_of_tight_set(d, x).filter(|s| s.is_valid_for(d) && tight_set_of_separation(s) == x);
        match image.and_then(|s| seps.binary_search(&s).ok().map(|i| (i, s))) {
            Some((i, s)) if !hit[i] => {
                hit[i] = true;
                report.pairs.push((x, s));
            }
            _ => report.orphan_tight_sets.push(x),
        }
    }
    report.orphan_separations = seps.iter().zip(&hit).filter(|(_, h)| !**h).map(|(s, _)| *s).collect();
    Ok(report)
}

fn contract(d: &Digraph, keep: VertexSet, onto: usize) -> Result<Digraph> {
    let ids = keep.to_vec();
    let mut index = alloc::vec![usize::MAX; d.n()];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    let target = |v: usize| if keep.contains(v) { index[v] } else { index[onto] };
    let arcs: Vec<(usize, usize)> =
        d.arcs().iter().map(|&(u, v)| (target(u), target(v))).filter(|(u, v)| u != v).collect();
    let mut piece = Digraph::new(ids.len(), arcs)?;
    if let Some(names) = d.names() {
        piece = piece.with_names(ids.iter().map(|&v| names[v].clone()).collect())?;
    }
    Ok(piece)
}

/// `(D_A, D_B)`: `B` contracted onto the separator, and `A` contracted onto it.
pub fn pull_apart(d: &Digraph, sep: &OneSeparation) -> Result<(Digraph, Digraph)> {
    if !sep.is_valid_for(d) || !sep.is_proper() {
        return Err(Error::BadSeparation);
    }
    Ok((contract(d, sep.a, sep.separator)?, contract(d, sep.b, sep.separator)?))
}

/// Pulls pieces apart along seeded random proper 1-separations until none
/// is left.
pub fn lovasz_pieces(d: &Digraph, order_seed: u64, bounds: &Bounds) -> Result<Vec<Digraph>> {
    bounds.check_vertices(d.n())?;
    if !is_strongly_connected(d) {
        return Err(Error::NotStronglyConnected);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(order_seed);
    let mut work = alloc::vec![d.clone()];
    let mut done = Vec::new();
    while !work.is_empty() {
        let piece = work.swap_remove(rng.gen_range(0..work.len()));
        let seps = separations_of(&piece, true);
        if seps.is_empty() {
            done.push(piece);
            continue;
        }
        let sep = seps[rng.gen_range(0..seps.len())];
        let (a, b) = pull_apart(&piece, &sep)?;
        work.push(a);
        work.push(b);
    }
    Ok(done)
}

/// Sorted multiset of canonical forms of the decomposition pieces.
pub fn lovasz_decompose(d: &Digraph, order_seed: u64, bounds: &Bounds) -> Result<Vec<CanonicalForm>> {
    let mut forms = lovasz_pieces(d, order_seed, bounds)?
        .iter()
        .map(digraph_canonical_form)
        .collect::<Result<Vec<_>>>()?;
    forms.sort();
    Ok(forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn two_cycle() -> CanonicalForm {
        digraph_canonical_form(&Digraph::new(2, [(0, 1), (1, 0)]).unwrap()).unwrap()
    }

    #[test]
    fn connectivity_examples() {
        let dc3 = corpus::directed_cycle(3);
        assert!(is_strongly_connected(&dc3));
        assert!(!is_strongly_2connected(&dc3));
        assert!(is_strongly_2connected(&corpus::doubled_directed_cycle(5)));
        assert!(!is_strongly_connected(&Digraph::new(2, [(0, 1)]).unwrap()));
    }

    #[test]
    fn separation_counts() {
        let b = Bounds::default();
        assert_eq!(enumerate_one_separations(&corpus::directed_cycle(3), &b).unwrap().len(), 18);
        assert_eq!(enumerate_one_separations(&corpus::directed_cycle(5), &b).unwrap().len(), 50);
        let ddc5 = enumerate_one_separations(&corpus::doubled_directed_cycle(5), &b).unwrap();
        assert!(ddc5.iter().all(|s| !s.is_proper()));
        assert_eq!(ddc5.len(), 20);
        assert_eq!(
            enumerate_one_separations(&Digraph::new(2, [(0, 1)]).unwrap(), &b),
            Err(Error::NotStronglyConnected)
        );
    }

    #[test]
    fn bijections() {
        for d in [corpus::directed_cycle(3), corpus::directed_cycle(5), corpus::doubled_directed_cycle(5)] {
            let r = separation_tight_bijection(&d, &Bounds::default()).unwrap();
            assert!(r.is_perfect(), "{r:?}");
        }
    }

    #[test]
    fn pulling_apart() {
        let dc3 = corpus::directed_cycle(3);
        let sep = OneSeparation {
            a: [0, 1].into_iter().collect(),
            b: [1, 2].into_iter().collect(),
            separator: 1,
            direction: Direction::NoArcsIntoA,
        };
        assert!(!sep.is_valid_for(&dc3));
        let sep = OneSeparation { direction: Direction::NoArcsOutOfA, ..sep };
        assert!(sep.is_valid_for(&dc3));
        let (a, b) = pull_apart(&dc3, &sep).unwrap();
        assert_eq!(digraph_canonical_form(&a).unwrap(), two_cycle());
        assert_eq!(digraph_canonical_form(&b).unwrap(), two_cycle());

        let dc5 = corpus::directed_cycle(5);
        let sep = separations_of(&dc5, true)[0];
        let (a, b) = pull_apart(&dc5, &sep).unwrap();
        let mut sizes = [a.n(), b.n()];
        sizes.sort();
        assert_eq!(sizes, [2, 4]);

        let ddc5 = corpus::doubled_directed_cycle(5);
        let degenerate = enumerate_one_separations(&ddc5, &Bounds::default()).unwrap()[0];
        assert_eq!(pull_apart(&ddc5, &degenerate), Err(Error::BadSeparation));
    }

    #[test]
    fn decompositions() {
        let b = Bounds::default();
        assert_eq!(lovasz_decompose(&corpus::directed_cycle(3), 1, &b).unwrap(), alloc::vec![two_cycle(); 2]);
        assert_eq!(lovasz_decompose(&corpus::directed_cycle(5), 7, &b).unwrap(), alloc::vec![two_cycle(); 4]);
        let ddc5 = corpus::doubled_directed_cycle(5);
        assert_eq!(lovasz_decompose(&ddc5, 3, &b).unwrap(), alloc::vec![digraph_canonical_form(&ddc5).unwrap()]);
    }
}
