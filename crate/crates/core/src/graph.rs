use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{BitAnd, BitOr, BitXor, Sub};

use crate::error::{Error, Result};

/// Hard limit imposed by the bitset representation.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex ids below 64.
///
/// Ordering is lexicographic on the ascending member list, so `{0, 5} < {1}`
/// and `{0} < {0, 1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    /// `{0, ..., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement inside `{0, ..., n-1}`.
    pub const fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing bit-pattern order.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }

    /// Whether the parity of `|self ∩ other|` is odd.
    pub const fn meets_oddly(self, other: VertexSet) -> bool {
        (self.0 & other.0).count_ones() % 2 == 1
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // below `low` both sets agree; exactly one of them has `low` next
        let low = diff.trailing_zeros();
        let above = if low == 63 { 0 } else { u64::MAX << (low + 1) };
        if self.0 >> low & 1 == 1 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl BitXor for VertexSet {
    type Output = VertexSet;
    fn bitxor(self, rhs: Self) -> Self {
        VertexSet(self.0 ^ rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

#[derive(Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;
    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.mask { None } else { Some((cur.wrapping_sub(self.mask)) & self.mask) };
        Some(VertexSet(cur))
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    Ok(())
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<()> {
    for id in [u, v] {
        if id >= n {
            return Err(Error::VertexOutOfRange { id, n });
        }
    }
    if u == v {
        return Err(Error::LoopEdge(u));
    }
    Ok(())
}

/// Simple undirected graph on `0..n`. Edges are stored as `(u, v)` with
/// `u < v`, sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<VertexSet>,
    names: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("n", &self.n).field("edges", &self.edges).finish()
    }
}

/// Builds a graph, dropping duplicate edges.
pub fn build_graph(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph> {
    Graph::new(n, edge_list.iter().copied())
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_size(n)?;
        let mut list = Vec::new();
        for (u, v) in edges {
            check_pair(n, u, v)?;
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        let mut adj = alloc::vec![VertexSet::EMPTY; n];
        for &(u, v) in &list {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, edges: list, adj, names: None })
    }

    /// Attaches vertex labels; `names.len()` must equal `n`.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::Precondition(alloc::format!(
                "{} names given for {} vertices",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Label of `v`, falling back to its id.
    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => alloc::format!("{v}"),
        }
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Union of the neighbourhoods of `x`, including members of `x` that have
    /// neighbours inside it.
    pub fn neighborhood(&self, x: VertexSet) -> VertexSet {
        x.iter().fold(VertexSet::EMPTY, |acc, v| acc | self.adj[v])
    }

    /// Whether some edge joins `a` and `b`.
    pub fn joins(&self, a: VertexSet, b: VertexSet) -> bool {
        a.iter().any(|v| self.adj[v].intersects(b))
    }

    /// `∂(X)`.
    pub fn cut_of(&self, x: VertexSet) -> Cut {
        let x = x & self.vertices();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| x.contains(u) != x.contains(v))
            .collect();
        Cut::from_parts(x, self.n, edges)
    }

    /// Number of edges with exactly one end in `x`.
    pub fn cut_size(&self, x: VertexSet) -> usize {
        x.iter().map(|v| (self.adj[v] - x).len()).sum()
    }

    /// Colour classes of a proper 2-colouring, with the least vertex of each
    /// component in the first class.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut colour: Vec<Option<bool>> = alloc::vec![None; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap_or(false);
                for w in self.adj[v].iter() {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let black: VertexSet = (0..self.n).filter(|&v| colour[v] == Some(true)).collect();
        Some((self.vertices() - black, black))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.neighborhood(frontier) & within;
            frontier = next - seen;
            seen = seen | frontier;
        }
        seen
    }

    /// Whether `G[x]` is connected. The empty set counts as connected.
    pub fn induces_connected(&self, x: VertexSet) -> bool {
        match x.min() {
            None => true,
            Some(s) => self.reach(s, x) == x,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.induces_connected(self.vertices())
    }

    /// Vertex sets of the connected components, ordered by least member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(s) = left.min() {
            let c = self.reach(s, left);
            out.push(c);
            left = left - c;
        }
        out
    }

    /// Whether the graph is a single cycle on at least three vertices.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.adj.iter().all(|a| a.len() == 2) && self.is_connected()
    }

    /// Subgraph induced by `x`, relabelled in increasing order.
    pub fn induced(&self, x: VertexSet) -> Graph {
        let ids = x.to_vec();
        let mut index = alloc::vec![usize::MAX; self.n];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| x.contains(u) && x.contains(v))
            .map(|&(u, v)| (index[u], index[v]));
        let mut g = Graph::new(ids.len(), edges).expect("induced subgraph is valid");
        if let Some(names) = &self.names {
            g.names = Some(ids.iter().map(|&v| names[v].clone()).collect());
        }
        g
    }

    /// Applies the permutation `perm` (old id `v` becomes `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v]))).expect("permutation of a valid graph")
    }
}

/// An edge cut, stored with its normalised shore: `∅` for the empty cut,
/// otherwise the shore that contains vertex 0 (which is the lexicographically
/// smaller one).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cut {
    shore: VertexSet,
    other: VertexSet,
    edges: Vec<(usize, usize)>,
}

impl Cut {
    fn from_parts(x: VertexSet, n: usize, edges: Vec<(usize, usize)>) -> Cut {
        let full = VertexSet::full(n);
        let (shore, other) = if x.is_empty() || x == full {
            (VertexSet::EMPTY, full)
        } else if x.contains(0) {
            (x, full - x)
        } else {
            (full - x, x)
        };
        Cut { shore, other, edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The normalised shore.
    pub fn shore(&self) -> VertexSet {
        self.shore
    }

    /// The complement of the normalised shore.
    pub fn other_shore(&self) -> VertexSet {
        self.other
    }

    pub fn shores(&self) -> [VertexSet; 2] {
        [self.shore, self.other]
    }

    pub fn universe(&self) -> VertexSet {
        self.shore | self.other
    }
}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shore.cmp(&other.shore).then_with(|| self.other.cmp(&other.other))
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Simple digraph on `0..n`; arcs sorted, at most one per ordered pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
    names: Option<Vec<String>>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph").field("n", &self.n).field("arcs", &self.arcs).finish()
    }
}

pub fn build_digraph(n: usize, arc_list: &[(usize, usize)]) -> Result<Digraph> {
    Digraph::new(n, arc_list.iter().copied())
}

impl Digraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        check_size(n)?;
        let mut list = Vec::new();
        for (u, v) in arcs {
            check_pair(n, u, v)?;
            list.push((u, v));
        }
        list.sort_unstable();
        list.dedup();
        let mut out = alloc::vec![VertexSet::EMPTY; n];
        let mut inn = alloc::vec![VertexSet::EMPTY; n];
        for &(u, v) in &list {
            out[u].insert(v);
            inn[v].insert(u);
        }
        Ok(Digraph { n, arcs: list, out, inn, names: None })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::Precondition(alloc::format!(
                "{} names given for {} vertices",
                names.len(),
                self.n
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, v: usize) -> String {
        match &self.names {
            Some(names) => names[v].clone(),
            None => alloc::format!("{v}"),
        }
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn out_neighbors(&self, v: usize) -> VertexSet {
        self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> VertexSet {
        self.inn[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].contains(v)
    }

    /// Whether some arc has its tail in `from` and its head in `to`.
    pub fn has_arc_between(&self, from: VertexSet, to: VertexSet) -> bool {
        from.iter().any(|v| self.out[v].intersects(to))
    }

    fn reach_with(&self, start: usize, within: VertexSet, step: &[VertexSet]) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = frontier.iter().fold(VertexSet::EMPTY, |acc, v| acc | step[v]) & within;
            frontier = next - seen;
            seen = seen | frontier;
        }
        seen
    }

    /// Whether `D[x]` is strongly connected; the empty set counts as such.
    pub fn induces_strongly_connected(&self, x: VertexSet) -> bool {
        match x.min() {
            None => true,
            Some(s) => self.reach_with(s, x, &self.out) == x && self.reach_with(s, x, &self.inn) == x,
        }
    }

    /// Applies `perm` (old id `v` becomes `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        Digraph::new(self.n, self.arcs.iter().map(|&(u, v)| (perm[u], perm[v]))).expect("permutation of a valid digraph")
    }

    /// Underlying simple undirected graph.
    pub fn underlying(&self) -> Graph {
        Graph::new(self.n, self.arcs.iter().copied()).expect("arcs are valid edges")
    }
}
