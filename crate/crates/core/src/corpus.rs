//! Named example instances, built from embedded definitions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::graph::{Digraph, Graph, VertexSet};

pub const NAMES: [&str; 12] =
    ["C4", "C6", "C8", "C10", "K4", "K33", "PETERSEN", "K4_LADDER", "HEX_PARTS", "DC3", "DC5", "DDC5"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusValue {
    Graph(Graph),
    Digraph(Digraph),
    /// A graph together with named partitions of its vertex set.
    Partitions(Graph, Vec<(String, Vec<VertexSet>)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusInstance {
    pub name: &'static str,
    pub value: CorpusValue,
    pub notes: &'static str,
}

impl CorpusInstance {
    /// The undirected graph of the instance, if any.
    pub fn graph(&self) -> Option<&Graph> {
        match &self.value {
            CorpusValue::Graph(g) | CorpusValue::Partitions(g, _) => Some(g),
            CorpusValue::Digraph(_) => None,
        }
    }

    pub fn digraph(&self) -> Option<&Digraph> {
        match &self.value {
            CorpusValue::Digraph(d) => Some(d),
            _ => None,
        }
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| alloc::format!("{prefix}{i}")).collect()
}

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle").with_names(names("v", n)).expect("names")
}

pub fn k4() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4")
}

pub fn k33() -> Graph {
    Graph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).expect("K33")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i + 5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::new(10, outer.chain(inner).chain(spokes)).expect("Petersen")
}

/// Ids: u=0, v=1, w=2, x=3, p1=4, p2=5.
pub fn k4_ladder() -> Graph {
    let edges = [(0, 4), (4, 5), (5, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    Graph::new(6, edges)
        .expect("K4 ladder")
        .with_names(["u", "v", "w", "x", "p1", "p2"].iter().map(|s| s.to_string()).collect())
        .expect("names")
}

pub fn directed_cycle(n: usize) -> Digraph {
    Digraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("directed cycle").with_names(names("d", n)).expect("names")
}

/// Both arcs along every edge of an `n`-cycle.
pub fn doubled_directed_cycle(n: usize) -> Digraph {
    let arcs = (0..n).flat_map(|i| [(i, (i + 1) % n), ((i + 1) % n, i)]);
    Digraph::new(n, arcs).expect("doubled cycle").with_names(names("d", n)).expect("names")
}

fn sets(classes: &[&[usize]]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = classes.iter().map(|c| c.iter().copied().collect()).collect();
    out.sort();
    out
}

/// The three C6 partitions: the outer two each correspond to the middle one
/// but not to each other.
pub fn hex_partitions() -> Vec<(String, Vec<VertexSet>)> {
    alloc::vec![
        ("left".to_string(), sets(&[&[0], &[4], &[5], &[1, 2, 3]])),
        ("middle".to_string(), sets(&[&[0], &[1], &[5], &[2, 3, 4]])),
        ("right".to_string(), sets(&[&[0], &[1], &[2], &[3, 4, 5]])),
    ]
}

pub fn lookup(name: &str) -> Option<CorpusInstance> {
    let (value, notes) = match name {
        "C4" => (CorpusValue::Graph(cycle(4)), "brace; cyclic torsoid on 4 vertices"),
        "C6" => (CorpusValue::Graph(cycle(6)), "one cyclic torsoid; 2 torsos per maximal family"),
        "C8" => (CorpusValue::Graph(cycle(8)), "one cyclic torsoid; 3 torsos per maximal family"),
        "C10" => (CorpusValue::Graph(cycle(10)), "one cyclic torsoid; 4 torsos per maximal family"),
        "K4" => (CorpusValue::Graph(k4()), "brick; no nontrivial tight cuts"),
        "K33" => (CorpusValue::Graph(k33()), "brace; no nontrivial tight cuts"),
        "PETERSEN" => (CorpusValue::Graph(petersen()), "brick; no nontrivial tight cuts"),
        "K4_LADDER" => (
            CorpusValue::Graph(k4_ladder()),
            "two crossing nontrivial tight cuts; brick torsoid with eps(uv) = {p1,p2} and a C4 torsoid",
        ),
        "HEX_PARTS" => (
            CorpusValue::Partitions(cycle(6), hex_partitions()),
            "left and right correspond to middle, not to each other",
        ),
        "DC3" => (CorpusValue::Digraph(directed_cycle(3)), "decomposes into two 2-cycles"),
        "DC5" => (CorpusValue::Digraph(directed_cycle(5)), "decomposes into four 2-cycles"),
        "DDC5" => (CorpusValue::Digraph(doubled_directed_cycle(5)), "strongly 2-connected"),
        _ => return None,
    };
    let name = NAMES.iter().copied().find(|n| *n == name)?;
    Some(CorpusInstance { name, value, notes })
}

pub fn all() -> Vec<CorpusInstance> {
    NAMES.iter().filter_map(|n| lookup(n)).collect()
}

/// Every undirected corpus graph, deduplicated (HEX_PARTS reuses C6).
pub fn graphs() -> Vec<(&'static str, Graph)> {
    all()
        .into_iter()
        .filter_map(|c| match c.value {
            CorpusValue::Graph(g) => Some((c.name, g)),
            _ => None,
        })
        .collect()
}

pub fn digraphs() -> Vec<(&'static str, Digraph)> {
    all()
        .into_iter()
        .filter_map(|c| match c.value {
            CorpusValue::Digraph(d) => Some((c.name, d)),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::is_matching_covered;

    #[test]
    fn every_name_resolves() {
        assert_eq!(all().len(), NAMES.len());
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn graphs_are_matching_covered() {
        for (name, g) in graphs() {
            assert!(is_matching_covered(&g), "{name}");
        }
    }

    #[test]
    fn shapes() {
        assert_eq!(petersen().edges().len(), 15);
        assert!((0..10).all(|v| petersen().degree(v) == 3));
        assert_eq!(k4_ladder().edges().len(), 8);
        assert_eq!(doubled_directed_cycle(5).arcs().len(), 10);
    }
}
