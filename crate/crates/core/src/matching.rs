use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph, VertexSet};

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_vertices: usize,
    pub max_matchings: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_vertices: 16, max_matchings: 10_000 }
    }
}

impl Bounds {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        Bounds { max_vertices, ..Bounds::default() }
    }

    pub(crate) fn check_vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::BoundExceeded(alloc::format!(
                "{n} vertices exceed the bound of {}",
                self.max_vertices
            )));
        }
        Ok(())
    }
}

/// A matching, stored as sorted `(u, v)` pairs with `u < v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    /// Normalises the edge list. Fails if two edges share a vertex.
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        list.sort_unstable();
        list.dedup();
        let mut seen = VertexSet::EMPTY;
        for &(u, v) in &list {
            if u == v || u >= 64 || v >= 64 || seen.contains(u) || seen.contains(v) {
                return Err(Error::Precondition(alloc::format!("edge ({u}, {v}) overlaps the matching")));
            }
            seen.insert(u);
            seen.insert(v);
        }
        Ok(Matching { edges: list })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn covered(&self) -> VertexSet {
        self.edges.iter().fold(VertexSet::EMPTY, |acc, &(u, v)| acc | VertexSet::singleton(u) | VertexSet::singleton(v))
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Whether every edge is an edge of `g` and every vertex of `g` is covered.
    pub fn is_perfect_on(&self, g: &Graph) -> bool {
        self.edges.iter().all(|&(u, v)| g.has_edge(u, v)) && self.covered() == g.vertices()
    }

    /// `mate[v]` for a perfect matching on `n` vertices.
    pub fn mates(&self, n: usize) -> Vec<usize> {
        let mut mate = alloc::vec![usize::MAX; n];
        for &(u, v) in &self.edges {
            mate[u] = v;
            mate[v] = u;
        }
        mate
    }

    /// `|∂(X) ∩ M|`.
    pub fn crossings(&self, x: VertexSet) -> usize {
        self.edges.iter().filter(|&&(u, v)| x.contains(u) != x.contains(v)).count()
    }
}

/// All perfect matchings in canonical order (lexicographic on edge lists),
/// found by always matching the lowest unmatched vertex.
pub fn enumerate_perfect_matchings(g: &Graph, bounds: &Bounds) -> Result<Vec<Matching>> {
    bounds.check_vertices(g.n())?;
    let mut out = Vec::new();
    if g.n() % 2 == 1 {
        return Ok(out);
    }
    let mut current = Vec::with_capacity(g.n() / 2);
    extend(g, g.vertices(), &mut current, &mut out, bounds.max_matchings)?;
    Ok(out)
}

fn extend(
    g: &Graph,
    free: VertexSet,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Matching>,
    limit: usize,
) -> Result<()> {
    let Some(v) = free.min() else {
        if out.len() == limit {
            return Err(Error::BoundExceeded(alloc::format!("more than {limit} perfect matchings")));
        }
        out.push(Matching { edges: current.clone() });
        return Ok(());
    };
    for w in (g.neighbors(v) & free).iter() {
        current.push((v, w));
        extend(g, free - VertexSet::singleton(v) - VertexSet::singleton(w), current, out, limit)?;
        current.pop();
    }
    Ok(())
}

/// Whether `G[free]` has a perfect matching.
pub fn has_perfect_matching(g: &Graph, free: VertexSet) -> bool {
    let Some(v) = free.min() else { return true };
    if free.len() % 2 == 1 {
        return false;
    }
    (g.neighbors(v) & free)
        .iter()
        .any(|w| has_perfect_matching(g, free - VertexSet::singleton(v) - VertexSet::singleton(w)))
}

/// Connected, at least one edge, and every edge lies in a perfect matching.
pub fn is_matching_covered(g: &Graph) -> bool {
    if g.n() < 2 || g.n() % 2 == 1 || !g.is_connected() {
        return false;
    }
    g.edges()
        .iter()
        .all(|&(u, v)| has_perfect_matching(g, g.vertices() - VertexSet::singleton(u) - VertexSet::singleton(v)))
}

/// `M(D)` with its canonical perfect matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingGraphResult {
    pub graph: Graph,
    pub matching: Matching,
    /// `split_map[v] = (v0, v1)`: white copy receiving in-arcs, black copy
    /// emitting out-arcs.
    pub split_map: Vec<(usize, usize)>,
}

impl MatchingGraphResult {
    pub fn white(&self) -> VertexSet {
        self.split_map.iter().map(|&(w, _)| w).collect()
    }

    pub fn black(&self) -> VertexSet {
        self.split_map.iter().map(|&(_, b)| b).collect()
    }
}

/// Splits every vertex `v` into black `2v` (tail of its out-arcs) and white
/// `2v + 1` (head of its in-arcs), so the first matching edge has a black
/// lower end and [`m_direction`] inverts this exactly.
pub fn matching_graph(d: &Digraph) -> Result<MatchingGraphResult> {
    let n = d.n();
    if 2 * n > crate::graph::MAX_VERTICES {
        return Err(Error::TooManyVertices { n: 2 * n, max: crate::graph::MAX_VERTICES });
    }
    let split_map: Vec<(usize, usize)> = (0..n).map(|v| (2 * v + 1, 2 * v)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).map(|v| (2 * v, 2 * v + 1)).collect();
    let edges = pairs.iter().copied().chain(d.arcs().iter().map(|&(u, v)| (2 * u, 2 * v + 1)));
    let mut graph = Graph::new(2 * n, edges)?;
    if let Some(names) = d.names() {
        let labels = names.iter().flat_map(|s| [alloc::format!("{s}_1"), alloc::format!("{s}_0")]).collect();
        graph = graph.with_names(labels)?;
    }
    let matching = Matching::new(pairs)?;
    Ok(MatchingGraphResult { graph, matching, split_map })
}

/// `D(G, M)` plus the contraction map: digraph vertex `i` is the `i`-th
/// matching edge, recorded as `(white end, black end)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MDirection {
    pub digraph: Digraph,
    pub contraction: Vec<(usize, usize)>,
}

/// The M-direction of a bipartite graph. The colour class containing the lower
/// end of the first matching edge is black; non-matching edges become arcs
/// from their black end to their white end.
pub fn m_direction(g: &Graph, m: &Matching) -> Result<Digraph> {
    m_direction_with_map(g, m).map(|r| r.digraph)
}

pub fn m_direction_with_map(g: &Graph, m: &Matching) -> Result<MDirection> {
    let (c0, c1) = g.bipartition().ok_or(Error::NotBipartite)?;
    if !m.is_perfect_on(g) || g.n() == 0 {
        return Err(Error::NotPerfect);
    }
    let first = m.edges()[0].0;
    let black = if c0.contains(first) { c0 } else { c1 };
    let mut edge_of = alloc::vec![0usize; g.n()];
    let mut contraction = Vec::with_capacity(m.edges().len());
    for (i, &(u, v)) in m.edges().iter().enumerate() {
        edge_of[u] = i;
        edge_of[v] = i;
        contraction.push(if black.contains(u) { (v, u) } else { (u, v) });
    }
    let arcs = g.edges().iter().filter(|&&(u, v)| !m.contains(u, v)).map(|&(u, v)| {
        let (b, w) = if black.contains(u) { (u, v) } else { (v, u) };
        (edge_of[b], edge_of[w])
    });
    let digraph = Digraph::new(contraction.len(), arcs)?;
    Ok(MDirection { digraph, contraction })
}

/// Components of `M △ M2` as alternating cycles, each listed as a vertex
/// walk starting at its least vertex and leaving it along its `m1` edge.
pub fn symmetric_difference_components(m1: &Matching, m2: &Matching) -> Result<Vec<Vec<usize>>> {
    if m1.covered() != m2.covered() {
        return Err(Error::Precondition("matchings cover different vertex sets".into()));
    }
    let n = m1.covered().max().map_or(0, |v| v + 1);
    let a = m1.mates(n);
    let b = m2.mates(n);
    let mut done = VertexSet::EMPTY;
    let mut cycles = Vec::new();
    for s in m1.covered().iter() {
        if done.contains(s) || a[s] == b[s] {
            continue;
        }
        let mut walk = Vec::new();
        let mut v = s;
        let mut use_first = true;
        loop {
            walk.push(v);
            done.insert(v);
            v = if use_first { a[v] } else { b[v] };
            use_first = !use_first;
            if v == s {
                break;
            }
        }
        cycles.push(walk);
    }
    Ok(cycles)
}
