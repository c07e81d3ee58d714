//! Definition-literal oracles and random instance generators shared by the
//! integration tests. Nothing here calls the optimised library routines it is
//! compared against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use torsoid_core::graph::{Digraph, Graph, VertexSet};

/// Perfect matchings by branching on the highest unmatched vertex.
pub fn perfect_matchings(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    fn go(g: &Graph, free: VertexSet, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some(v) = free.max() else {
            out.push(cur.clone());
            return;
        };
        for u in (0..v).rev() {
            if free.contains(u) && g.has_edge(u, v) {
                cur.push((u, v));
                go(g, free - VertexSet::from_iter([u, v]), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if g.n() % 2 == 0 {
        go(g, g.vertices(), &mut Vec::new(), &mut out);
    }
    out
}

pub fn oracle_matching_covered(g: &Graph) -> bool {
    let pms = perfect_matchings(g);
    let used: BTreeSet<(usize, usize)> = pms.iter().flatten().copied().collect();
    g.n() >= 2 && g.is_connected() && g.edges().iter().all(|e| used.contains(e))
}

pub struct Oracle {
    pub g: Graph,
    pub pms: Vec<Vec<(usize, usize)>>,
    table: Vec<bool>,
}

impl Oracle {
    pub fn new(g: &Graph) -> Self {
        let pms = perfect_matchings(g);
        let table = (0..1u64 << g.n())
            .map(|bits| {
                let x = VertexSet::from_bits(bits);
                pms.iter().all(|m| m.iter().filter(|&&(u, v)| x.contains(u) != x.contains(v)).count() == 1)
            })
            .collect();
        Oracle { g: g.clone(), pms, table }
    }

    /// Every perfect matching has exactly one edge with one end in `x`.
    pub fn is_tight(&self, x: VertexSet) -> bool {
        self.table[x.bits() as usize]
    }

    pub fn tight_sets(&self) -> Vec<VertexSet> {
        self.g.vertices().subsets().filter(|&x| self.is_tight(x)).collect()
    }

    pub fn nontrivial_tight_sets(&self) -> Vec<VertexSet> {
        self.tight_sets().into_iter().filter(|x| x.len() > 1 && x.len() + 1 < self.g.n()).collect()
    }

    pub fn passable_for(&self, s: VertexSet, p: VertexSet) -> bool {
        self.is_tight(p - s) && self.is_tight(p | s)
    }

    pub fn passable_between(&self, s: VertexSet, p: VertexSet, q: VertexSet) -> bool {
        s.is_subset(p | q) && self.passable_for(s, p) && self.passable_for(s, q)
    }

    /// The passable set containing all others, if there is one.
    pub fn largest_passable(&self, p: VertexSet, q: VertexSet) -> Option<VertexSet> {
        let all: Vec<VertexSet> = (p | q).subsets().filter(|&s| self.passable_between(s, p, q)).collect();
        all.iter().copied().find(|&s| all.iter().all(|t| t.is_subset(s)))
    }

    /// Axioms violated by `(H, eps)`, each a label `"T1"` to `"T7"`.
    pub fn torsoid_violations(&self, vertices: &[VertexSet], edges: &[((usize, usize), VertexSet)]) -> BTreeSet<&'static str> {
        let mut bad = BTreeSet::new();
        let g = &self.g;
        let k = vertices.len();
        let h = Graph::new(k, edges.iter().map(|&(e, _)| e)).unwrap();
        let cycle = k >= 3 && h.is_connected() && (0..k).all(|v| h.degree(v) == 2);
        let t1 = k >= 4
            && oracle_matching_covered(&h)
            && (cycle || Oracle::new(&h).nontrivial_tight_sets().is_empty());
        if !t1 {
            bad.insert("T1");
        }
        if vertices.iter().any(|&v| !self.is_tight(v)) {
            bad.insert("T2");
        }
        let parts: Vec<VertexSet> = vertices.iter().copied().chain(edges.iter().map(|&(_, e)| e)).collect();
        let disjoint = (0..parts.len()).all(|i| (i + 1..parts.len()).all(|j| parts[i].is_disjoint(parts[j])));
        let covers = parts.iter().fold(VertexSet::EMPTY, |a, &s| a | s) == g.vertices();
        if !disjoint || !covers {
            bad.insert("T4");
        }
        for &((i, j), e) in edges {
            let (v, w) = (vertices[i], vertices[j]);
            let edge = |a: VertexSet, b: VertexSet| g.edges().iter().any(|&(x, y)| (a.contains(x) && b.contains(y)) || (a.contains(y) && b.contains(x)));
            let both = |s: VertexSet| self.passable_for(s, v) && self.passable_for(s, w);
            let largest = both(e) && (v | e | w).subsets().filter(|&s| both(s)).all(|s| s.is_subset(e));
            if !edge(v | e, w) || !edge(w | e, v) || !largest {
                bad.insert("T5");
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let adjacent = edges.iter().any(|&(e, _)| e == (i, j) || e == (j, i));
                let joined = g.edges().iter().any(|&(x, y)| {
                    (vertices[i].contains(x) && vertices[j].contains(y)) || (vertices[i].contains(y) && vertices[j].contains(x))
                });
                if !adjacent && joined {
                    bad.insert("T6");
                }
            }
        }
        if cycle {
            let eps = |a: usize, b: usize| {
                edges.iter().find(|&&(e, _)| e == (a, b) || e == (b, a)).map(|&(_, s)| s).unwrap_or_default()
            };
            for v in 0..k {
                let nb = h.neighbors(v).to_vec();
                let region = eps(nb[0], v) | vertices[v] | eps(v, nb[1]);
                let members = region.to_vec();
                let total = 3usize.pow(members.len() as u32);
                'assign: for code in 0..total {
                    let mut p = [VertexSet::EMPTY; 3];
                    let mut c = code;
                    for &x in &members {
                        p[c % 3].insert(x);
                        c /= 3;
                    }
                    if !p.iter().all(|&s| self.is_tight(s)) {
                        continue;
                    }
                    for (u, w) in [(nb[0], nb[1]), (nb[1], nb[0])] {
                        if self.is_tight(vertices[u] | p[0] | p[1]) && self.is_tight(p[1] | p[2] | vertices[w]) {
                            bad.insert("T7");
                            break 'assign;
                        }
                    }
                }
            }
        }
        bad
    }
}

/// A Hamiltonian cycle through a random vertex order plus a few random
/// chords, kept only when matching covered. Sparse chords leave plenty of
/// nontrivial tight cuts.
pub fn random_matching_covered<R: Rng>(rng: &mut R, min_n: usize, max_n: usize) -> Graph {
    loop {
        let n = 2 * rng.gen_range(min_n / 2..=max_n / 2);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
        for _ in 0..rng.gen_range(0..=n / 2 + 1) {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                edges.push((u, v));
            }
        }
        let g = Graph::new(n, edges).unwrap();
        if oracle_matching_covered(&g) {
            return g;
        }
    }
}

/// A random strongly connected digraph on `2..=max_n` vertices.
pub fn random_strong_digraph<R: Rng>(rng: &mut R, max_n: usize) -> Digraph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut arcs: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
        for _ in 0..rng.gen_range(0..=n) {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v {
                arcs.push((u, v));
            }
        }
        let d = Digraph::new(n, arcs).unwrap();
        if (0..n).all(|v| reach(&d, v, true) == d.vertices() && reach(&d, v, false) == d.vertices()) {
            return d;
        }
    }
}

fn reach(d: &Digraph, s: usize, forward: bool) -> VertexSet {
    let mut seen = VertexSet::singleton(s);
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &(a, b) in d.arcs() {
            let (from, to) = if forward { (a, b) } else { (b, a) };
            if from == v && !seen.contains(to) {
                seen.insert(to);
                stack.push(to);
            }
        }
    }
    seen
}

pub fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}
