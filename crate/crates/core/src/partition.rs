use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::Matching;
use crate::tight::CoveredGraph;

/// Quotient graph of a partition; collapse vertex `i` is `class_of[i]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CollapseResult {
    pub graph: Graph,
    pub class_of: Vec<VertexSet>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CollapseKind {
    Brick,
    Brace,
    Cycle,
    Other,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct CollapseClass {
    pub kind: CollapseKind,
    pub cyclic: bool,
    pub maximal_cyclic: bool,
    pub torsoid_inducing: bool,
}

impl CollapseClass {
    pub fn is_bob(&self) -> bool {
        matches!(self.kind, CollapseKind::Brick | CollapseKind::Brace)
    }
}

/// A partition of `V(G)` into tight sets, classes in ascending order.
#[derive(Clone)]
pub struct TightSetPartition<'g> {
    host: &'g CoveredGraph,
    classes: Vec<VertexSet>,
    collapse: CollapseResult,
}

impl PartialEq for TightSetPartition<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.classes == other.classes && self.host.graph() == other.host.graph()
    }
}

impl Eq for TightSetPartition<'_> {}

impl core::fmt::Debug for TightSetPartition<'_> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_tuple("TightSetPartition").field(&self.classes).finish()
    }
}

/// Checks that `classes` partition `V(G)` into tight sets.
pub fn validate_partition<'g>(host: &'g CoveredGraph, classes: &[VertexSet]) -> Result<TightSetPartition<'g>> {
    let all = host.vertices();
    let mut seen = VertexSet::EMPTY;
    for (i, &c) in classes.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::NonTightClass { class: c, witness: None });
        }
        if !c.is_subset(all) {
            return Err(Error::Precondition(alloc::format!("class {c:?} leaves the vertex range")));
        }
        if c.intersects(seen) {
            let other = classes[..i].iter().copied().find(|d| d.intersects(c)).unwrap_or_default();
            return Err(Error::Overlap(other, c));
        }
        seen = seen | c;
    }
    if seen != all {
        return Err(Error::Gap(all - seen));
    }
    for &c in classes {
        if !host.is_tight(c) {
            return Err(Error::NonTightClass { class: c, witness: host.non_tight_witness(c).cloned() });
        }
    }
    let mut sorted = classes.to_vec();
    sorted.sort();
    let collapse = build_collapse(host.graph(), &sorted);
    Ok(TightSetPartition { host, classes: sorted, collapse })
}

fn build_collapse(g: &Graph, classes: &[VertexSet]) -> CollapseResult {
    let k = classes.len();
    let mut edges = Vec::new();
    for i in 0..k {
        let reach = g.neighborhood(classes[i]);
        for (j, &c) in classes.iter().enumerate().skip(i + 1) {
            if reach.intersects(c) {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::new(k, edges).expect("collapse is a valid graph");
    CollapseResult { graph, class_of: classes.to_vec() }
}

impl<'g> TightSetPartition<'g> {
    pub fn host(&self) -> &'g CoveredGraph {
        self.host
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn collapse(&self) -> &CollapseResult {
        &self.collapse
    }

    /// Index of the class containing `v`.
    pub fn class_index(&self, v: usize) -> usize {
        self.classes.iter().position(|c| c.contains(v)).expect("classes cover V")
    }

    /// Image of a perfect matching of the host in the collapse.
    pub fn project_matching(&self, m: &Matching) -> Result<Matching> {
        if !m.is_perfect_on(self.host.graph()) {
            return Err(Error::NotPerfect);
        }
        let edges: Vec<(usize, usize)> = m
            .edges()
            .iter()
            .map(|&(u, v)| (self.class_index(u), self.class_index(v)))
            .filter(|(a, b)| a != b)
            .collect();
        let projected =
            Matching::new(edges).map_err(|_| Error::Internal("projected matching is not a matching".into()))?;
        if !projected.is_perfect_on(&self.collapse.graph) {
            return Err(Error::Internal("projected matching is not perfect on the collapse".into()));
        }
        Ok(projected)
    }

    /// Indices of the classes meeting the tight set `x` oddly.
    pub fn odd_intersections(&self, x: VertexSet) -> Result<Vec<usize>> {
        if !self.host.is_tight(x) {
            return Err(Error::NotTight(x));
        }
        let out: Vec<usize> = (0..self.classes.len()).filter(|&i| self.classes[i].meets_oddly(x)).collect();
        let union = out.iter().fold(VertexSet::EMPTY, |acc, &i| acc | self.classes[i]);
        if out.is_empty() || out.len() == self.classes.len() || !self.host.is_tight(union) {
            return Err(Error::Internal(alloc::format!("odd classes of tight set {x:?} do not form a tight set")));
        }
        Ok(out)
    }

    /// Union of the classes with the given indices.
    pub fn union_of(&self, indices: impl IntoIterator<Item = usize>) -> VertexSet {
        indices.into_iter().fold(VertexSet::EMPTY, |acc, i| acc | self.classes[i])
    }

    pub fn is_cyclic(&self) -> bool {
        self.collapse.graph.is_cycle()
    }

    /// Whether `x`, a union of classes, is a tight set of the collapse with
    /// at least two classes on each side.
    fn has_nontrivial_collapse_cut(&self) -> bool {
        let k = self.classes.len();
        self.host.tight_sets().iter().any(|&x| {
            let inside = self.classes.iter().filter(|c| c.is_subset(x)).count();
            let split = self.classes.iter().any(|c| c.intersects(x) && !c.is_subset(x));
            !split && inside >= 2 && inside + 2 <= k
        })
    }

    pub fn classify(&self) -> CollapseClass {
        let g = &self.collapse.graph;
        let k = self.classes.len();
        let cyclic = g.is_cycle();
        let kind = if !self.has_nontrivial_collapse_cut() {
            if g.is_bipartite() {
                CollapseKind::Brace
            } else {
                CollapseKind::Brick
            }
        } else if cyclic {
            CollapseKind::Cycle
        } else {
            CollapseKind::Other
        };
        let maximal_cyclic = cyclic && self.first_split().is_none();
        let bob = matches!(kind, CollapseKind::Brick | CollapseKind::Brace);
        let c4 = cyclic && k == 4;
        let torsoid_inducing = k >= 4 && (maximal_cyclic || (bob && !c4));
        CollapseClass { kind, cyclic, maximal_cyclic, torsoid_inducing }
    }

    /// The least split of the first splittable class into three tight parts
    /// keeping the collapse a cycle: `(class index, [a, b, c])`.
    pub fn first_split(&self) -> Option<(usize, [VertexSet; 3])> {
        if !self.is_cyclic() {
            return None;
        }
        (0..self.classes.len()).find_map(|i| self.split_class(i).map(|s| (i, s)))
    }

    fn split_class(&self, i: usize) -> Option<[VertexSet; 3]> {
        let p = self.classes[i];
        if p.len() < 3 {
            return None;
        }
        let tight_inside: Vec<VertexSet> =
            self.host.tight_sets().iter().copied().filter(|&s| s.is_subset(p) && s != p).collect();
        let first = p.min()?;
        for &a in tight_inside.iter().filter(|a| a.contains(first)) {
            let rest = p - a;
            let Some(second) = rest.min() else { continue };
            for &b in tight_inside.iter().filter(|b| b.contains(second) && b.is_subset(rest) && **b != rest) {
                let c = rest - b;
                if !self.host.is_tight(c) {
                    continue;
                }
                let mut classes = self.classes.clone();
                classes.remove(i);
                classes.extend([a, b, c]);
                classes.sort();
                if build_collapse(self.host.graph(), &classes).graph.is_cycle() {
                    return Some([a, b, c]);
                }
            }
        }
        None
    }

    /// Splits classes three ways, first splittable class and least split
    /// first, until the partition is maximal cyclic.
    pub fn refine_to_maximal_cyclic(&self) -> Result<TightSetPartition<'g>> {
        if !self.is_cyclic() {
            return Err(Error::NotCyclic);
        }
        let mut current = self.clone();
        while let Some((i, parts)) = current.first_split() {
            let mut classes = current.classes.clone();
            classes.remove(i);
            classes.extend(parts);
            current = validate_partition(self.host, &classes)?;
        }
        Ok(current)
    }

    /// The forced candidate correspondence, if it is one.
    pub fn find_correspondence(&self, other: &TightSetPartition<'_>) -> Option<Correspondence> {
        if self.host.graph() != other.host.graph() || self.len() != other.len() {
            return None;
        }
        let mut map = Vec::with_capacity(self.len());
        let mut used = alloc::vec![false; other.len()];
        for &p in &self.classes {
            let mut odd = other.classes.iter().enumerate().filter(|(_, q)| q.meets_oddly(p));
            let (j, _) = odd.next()?;
            if odd.next().is_some() || used[j] {
                return None;
            }
            used[j] = true;
            map.push(j);
        }
        Some(Correspondence { map })
    }
}

pub fn collapse<'a>(p: &'a TightSetPartition<'_>) -> &'a CollapseResult {
    p.collapse()
}

pub fn classify_collapse(p: &TightSetPartition<'_>) -> CollapseClass {
    p.classify()
}

pub fn find_correspondence(p: &TightSetPartition<'_>, q: &TightSetPartition<'_>) -> Option<Correspondence> {
    p.find_correspondence(q)
}

/// `map[i]` is the class of the second partition paired with class `i`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Correspondence {
    pub map: Vec<usize>,
}

impl Correspondence {
    /// Whether the map is an isomorphism between the two collapses.
    pub fn is_isomorphism(&self, a: &Graph, b: &Graph) -> bool {
        a.n() == b.n()
            && a.edges().len() == b.edges().len()
            && a.edges().iter().all(|&(u, v)| b.has_edge(self.map[u], self.map[v]))
    }
}

/// Every tight set partition of the host, in ascending class-list order.
pub fn all_tight_set_partitions(host: &CoveredGraph, limit: usize) -> Result<Vec<TightSetPartition<'_>>> {
    let mut out = Vec::new();
    let mut classes = Vec::new();
    collect_partitions(host, host.vertices(), &mut classes, &mut out, limit)?;
    out.sort_by(|a, b| a.classes.cmp(&b.classes));
    Ok(out)
}

fn collect_partitions<'g>(
    host: &'g CoveredGraph,
    left: VertexSet,
    classes: &mut Vec<VertexSet>,
    out: &mut Vec<TightSetPartition<'g>>,
    limit: usize,
) -> Result<()> {
    let Some(v) = left.min() else {
        if out.len() == limit {
            return Err(Error::BoundExceeded(alloc::format!("more than {limit} tight set partitions")));
        }
        out.push(validate_partition(host, classes)?);
        return Ok(());
    };
    for &s in host.tight_sets() {
        if s.contains(v) && s.is_subset(left) {
            classes.push(s);
            collect_partitions(host, left - s, classes, out, limit)?;
            classes.pop();
        }
    }
    Ok(())
}

pub fn torsoid_inducing_partitions(host: &CoveredGraph, limit: usize) -> Result<Vec<TightSetPartition<'_>>> {
    Ok(all_tight_set_partitions(host, limit)?.into_iter().filter(|p| p.classify().torsoid_inducing).collect())
}
