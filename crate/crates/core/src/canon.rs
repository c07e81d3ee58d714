//! Canonical labelling of small graphs and digraphs by colour refinement plus
//! individualisation, keeping the lexicographically least adjacency matrix.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph};

/// Default vertex bound for canonical labelling.
pub const DEFAULT_CANON_BOUND: usize = 16;

const NODE_BUDGET: usize = 2_000_000;

/// Isomorphism-invariant encoding: two (di)graphs are isomorphic iff their
/// forms are equal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm {
    pub directed: bool,
    pub n: usize,
    /// Row `i` holds the out-neighbours of canonical vertex `i`.
    pub rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn arc_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Rebuilds a digraph in canonical labelling.
    pub fn to_digraph(&self) -> Digraph {
        let arcs = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| (0..self.n).filter(move |j| r >> j & 1 == 1).map(move |j| (i, j)));
        Digraph::new(self.n, arcs).expect("canonical rows describe a digraph")
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_form_bounded(g, DEFAULT_CANON_BOUND)
}

pub fn canonical_form_bounded(g: &Graph, bound: usize) -> Result<CanonicalForm> {
    let adj: Vec<u64> = (0..g.n()).map(|v| g.neighbors(v).bits()).collect();
    canonize(g.n(), &adj, false, bound)
}

pub fn digraph_canonical_form(d: &Digraph) -> Result<CanonicalForm> {
    digraph_canonical_form_bounded(d, DEFAULT_CANON_BOUND)
}

pub fn digraph_canonical_form_bounded(d: &Digraph, bound: usize) -> Result<CanonicalForm> {
    let adj: Vec<u64> = (0..d.n()).map(|v| d.out_neighbors(v).bits()).collect();
    canonize(d.n(), &adj, true, bound)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    Ok(a.n() == b.n() && a.edges().len() == b.edges().len() && canonical_form(a)? == canonical_form(b)?)
}

pub fn digraphs_isomorphic(a: &Digraph, b: &Digraph) -> Result<bool> {
    Ok(a.n() == b.n() && a.arcs().len() == b.arcs().len() && digraph_canonical_form(a)? == digraph_canonical_form(b)?)
}

struct Search<'a> {
    n: usize,
    out: &'a [u64],
    inn: Vec<u64>,
    directed: bool,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
    nodes: usize,
}

fn canonize(n: usize, out: &[u64], directed: bool, bound: usize) -> Result<CanonicalForm> {
    if n > bound {
        return Err(Error::BoundExceeded(alloc::format!("canonical form limited to {bound} vertices, got {n}")));
    }
    let mut inn = alloc::vec![0u64; n];
    for (u, &row) in out.iter().enumerate() {
        for (v, slot) in inn.iter_mut().enumerate() {
            if row >> v & 1 == 1 {
                *slot |= 1 << u;
            }
        }
    }
    let mut search = Search { n, out, inn, directed, best: None, automorphisms: Vec::new(), nodes: 0 };
    let cells = if n == 0 { Vec::new() } else { alloc::vec![(0..n).collect::<Vec<usize>>()] };
    search.descend(cells, &mut Vec::new())?;
    let rows = search.best.map(|(rows, _)| rows).unwrap_or_default();
    Ok(CanonicalForm { directed, n, rows })
}

impl Search<'_> {
    fn signature(&self, v: usize, cell_of: &[usize], ncells: usize) -> Vec<u32> {
        let mut sig = alloc::vec![0u32; if self.directed { 2 * ncells } else { ncells }];
        for w in 0..self.n {
            if self.out[v] >> w & 1 == 1 {
                sig[cell_of[w]] += 1;
            }
            if self.directed && self.inn[v] >> w & 1 == 1 {
                sig[ncells + cell_of[w]] += 1;
            }
        }
        sig
    }

    /// Equitable refinement of an ordered partition.
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        loop {
            let mut cell_of = alloc::vec![0usize; self.n];
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i;
                }
            }
            let ncells = cells.len();
            let mut next = Vec::with_capacity(ncells);
            let mut changed = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u32>, usize)> =
                    cell.iter().map(|&v| (self.signature(v, &cell_of, ncells), v)).collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
                changed |= next.last().map(|c: &Vec<usize>| c.len()) != Some(cell.len());
            }
            cells = next;
            if !changed {
                return cells;
            }
        }
    }

    fn certificate(&self, order: &[usize]) -> Vec<u64> {
        let mut pos = alloc::vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        order
            .iter()
            .map(|&v| {
                let mut row = 0u64;
                let mut bits = self.out[v];
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    row |= 1 << pos[w];
                }
                row
            })
            .collect()
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>, fixed: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(Error::BoundExceeded("canonical labelling search budget".into()));
        }
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let cert = self.certificate(&order);
            match &self.best {
                Some((best, best_order)) if *best == cert => {
                    // same matrix from two labellings: record the automorphism
                    let mut gamma = alloc::vec![0usize; self.n];
                    for (i, &v) in best_order.iter().enumerate() {
                        gamma[v] = order[i];
                    }
                    self.automorphisms.push(gamma);
                }
                Some((best, _)) if *best <= cert => {}
                _ => self.best = Some((cert, order)),
            }
            return Ok(());
        };
        let candidates = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !tried.is_empty() && self.same_orbit(fixed, &tried, v) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, c) in cells.iter().enumerate() {
                if i == target {
                    child.push(alloc::vec![v]);
                    child.push(c.iter().copied().filter(|&w| w != v).collect());
                } else {
                    child.push(c.clone());
                }
            }
            fixed.push(v);
            self.descend(child, fixed)?;
            fixed.pop();
        }
        Ok(())
    }

    /// Whether `v` is in the orbit of an already tried vertex under the group
    /// generated by known automorphisms that fix `fixed` pointwise.
    fn same_orbit(&self, fixed: &[usize], tried: &[usize], v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if fixed.iter().any(|&f| gamma[f] != f) {
                continue;
            }
            for x in 0..self.n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn relabelled_cycles_agree() {
        let c6 = cycle(6);
        let p = c6.permuted(&[3, 5, 0, 1, 4, 2]);
        assert_eq!(canonical_form(&c6).unwrap(), canonical_form(&p).unwrap());
    }

    #[test]
    fn c6_differs_from_k33() {
        let k33 = Graph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap();
        assert_ne!(canonical_form(&cycle(6)).unwrap(), canonical_form(&k33).unwrap());
    }

    #[test]
    fn empty_graph_on_sixteen_is_fast() {
        let g = Graph::new(16, []).unwrap();
        let f = canonical_form(&g).unwrap();
        assert!(f.rows.iter().all(|&r| r == 0));
    }

    #[test]
    fn direction_matters() {
        let a = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let b = Digraph::new(3, [(0, 1), (2, 1)]).unwrap();
        assert_ne!(digraph_canonical_form(&a).unwrap(), digraph_canonical_form(&b).unwrap());
        let c = Digraph::new(3, [(2, 0), (0, 1)]).unwrap();
        assert_eq!(digraph_canonical_form(&a).unwrap(), digraph_canonical_form(&c).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let g = Graph::new(17, []).unwrap();
        assert!(matches!(canonical_form(&g), Err(Error::BoundExceeded(_))));
    }
}
