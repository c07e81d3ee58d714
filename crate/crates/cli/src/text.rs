//! Text formats: edge lists, matching files and set files.
//!
//! Edge lists start with `g <n>` or `d <n>`, then one edge per line, `u v`
//! or `u > v`. `#` starts a comment. An optional `names: a b c ...` line
//! after the header fixes the vertex names in id order. Without it, tokens are
//! either all integers (used as ids) or names, numbered in first-seen order.

use std::fs;

use torsoid_core::corpus::{self, CorpusValue};
use torsoid_core::graph::{Digraph, Graph, VertexSet};
use torsoid_core::matching::Matching;

use crate::error::{CliError, CliResult};

pub enum Loaded {
    Graph(Graph),
    Digraph(Digraph),
    /// A graph with named partitions of its vertex set.
    Partitions(Graph, Vec<(String, Vec<VertexSet>)>),
}

impl Loaded {
    pub fn graph(&self) -> Option<&Graph> {
        match self {
            Loaded::Graph(g) | Loaded::Partitions(g, _) => Some(g),
            Loaded::Digraph(_) => None,
        }
    }
}

/// Reads a `corpus:NAME` pseudo-path or an edge-list file.
pub fn load(source: &str) -> CliResult<Loaded> {
    if let Some(name) = source.strip_prefix("corpus:") {
        let inst = corpus::lookup(name)
            .ok_or_else(|| CliError::Usage(format!("unknown corpus instance {name:?}; known: {}", corpus::NAMES.join(", "))))?;
        return Ok(match inst.value {
            CorpusValue::Graph(g) => Loaded::Graph(g),
            CorpusValue::Digraph(d) => Loaded::Digraph(d),
            CorpusValue::Partitions(g, p) => Loaded::Partitions(g, p),
        });
    }
    parse_edge_list(source, &read(source)?)
}

pub fn read(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_edge_list(path: &str, text: &str) -> CliResult<Loaded> {
    let bad = |line: usize, message: String| CliError::Parse { path: path.into(), line, message };
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| bad(1, "missing `g <n>` or `d <n>` header".into()))?;
    let mut head = header.split_whitespace();
    let directed = match head.next() {
        Some("g") => false,
        Some("d") => true,
        other => return Err(bad(hline, format!("expected `g` or `d`, found {other:?}"))),
    };
    let n: usize = head
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad(hline, "header needs a vertex count".into()))?;
    if head.next().is_some() {
        return Err(bad(hline, "trailing tokens after the vertex count".into()));
    }
    let mut lines = lines.peekable();
    let mut declared: Option<Vec<String>> = None;
    if let Some(&(line, l)) = lines.peek() {
        if let Some(rest) = l.strip_prefix("names:") {
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.len() != n {
                return Err(bad(line, format!("{} names for {n} vertices", names.len())));
            }
            if (1..n).any(|i| names[..i].contains(&names[i])) {
                return Err(bad(line, "repeated vertex name".into()));
            }
            declared = Some(names);
            lines.next();
        }
    }
    let mut pairs: Vec<(usize, &str, &str)> = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let pair = match (directed, toks.as_slice()) {
            (false, [u, v]) => (*u, *v),
            (true, [u, ">", v]) => (*u, *v),
            (false, _) => return Err(bad(line, "expected `u v`".into())),
            (true, _) => return Err(bad(line, "expected `u > v`".into())),
        };
        pairs.push((line, pair.0, pair.1));
    }
    let numeric =
        declared.is_none() && pairs.iter().all(|(_, u, v)| u.parse::<usize>().is_ok() && v.parse::<usize>().is_ok());
    let fixed = declared.is_some();
    let mut names: Vec<String> = declared.unwrap_or_default();
    let mut ids = Vec::with_capacity(pairs.len());
    for &(line, u, v) in &pairs {
        let mut id = |t: &str| -> CliResult<usize> {
            let i = if numeric {
                t.parse().unwrap_or(usize::MAX)
            } else if let Some(i) = names.iter().position(|x| x == t) {
                i
            } else if fixed {
                usize::MAX
            } else {
                names.push(t.to_string());
                names.len() - 1
            };
            if i >= n {
                return Err(bad(line, format!("vertex {t} is not one of the {n} declared vertices")));
            }
            Ok(i)
        };
        let (a, b) = (id(u)?, id(v)?);
        if a == b {
            return Err(bad(line, format!("loop at {u}")));
        }
        ids.push((a, b));
    }
    let names = (!numeric).then(|| {
        let mut all = names;
        all.extend((all.len()..n).map(|i| i.to_string()));
        all
    });
    let lift = |e: torsoid_core::Error| bad(hline, e.to_string());
    if directed {
        let mut d = Digraph::new(n, ids).map_err(lift)?;
        if let Some(names) = names {
            d = d.with_names(names).map_err(lift)?;
        }
        Ok(Loaded::Digraph(d))
    } else {
        let mut g = Graph::new(n, ids).map_err(lift)?;
        if let Some(names) = names {
            g = g.with_names(names).map_err(lift)?;
        }
        Ok(Loaded::Graph(g))
    }
}

fn label(names: Option<&[String]>, v: usize) -> String {
    names.map_or_else(|| v.to_string(), |n| n[v].clone())
}

fn header(kind: &str, n: usize, names: Option<&[String]>) -> String {
    match names {
        Some(names) => format!("{kind} {n}\nnames: {}\n", names.join(" ")),
        None => format!("{kind} {n}\n"),
    }
}

pub fn graph_to_text(g: &Graph) -> String {
    let mut out = header("g", g.n(), g.names());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", label(g.names(), u), label(g.names(), v)));
    }
    out
}

pub fn digraph_to_text(d: &Digraph) -> String {
    let mut out = header("d", d.n(), d.names());
    for &(u, v) in d.arcs() {
        out.push_str(&format!("{} > {}\n", label(d.names(), u), label(d.names(), v)));
    }
    out
}

fn resolve(names: Option<&[String]>, n: usize, tok: &str) -> Option<usize> {
    match names {
        Some(names) => names.iter().position(|x| x == tok),
        None => tok.parse().ok().filter(|&i| i < n),
    }
}

/// Matching files: one edge `u v` per line; `orig: (v0, v1)` split-map lines
/// are informational and skipped.
pub fn parse_matching(path: &str, text: &str, g: &Graph) -> CliResult<Matching> {
    let mut edges = Vec::new();
    for (line, l) in content_lines(text) {
        if l.contains(':') {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let bad = |message: String| CliError::Parse { path: path.into(), line, message };
        let [u, v] = toks.as_slice() else { return Err(bad("expected `u v`".into())) };
        let a = resolve(g.names(), g.n(), u).ok_or_else(|| bad(format!("unknown vertex {u}")))?;
        let b = resolve(g.names(), g.n(), v).ok_or_else(|| bad(format!("unknown vertex {v}")))?;
        if !g.has_edge(a, b) {
            return Err(bad(format!("{u} {v} is not an edge")));
        }
        edges.push((a, b));
    }
    Matching::new(edges).map_err(|e| CliError::Parse { path: path.into(), line: 0, message: e.to_string() })
}

/// Sorted matching edges, then one `orig: (white, black)` line per split
/// vertex when a split map is given.
pub fn matching_to_text(g: &Graph, m: &Matching, split: Option<(&Digraph, &[(usize, usize)])>) -> String {
    let mut out = String::new();
    for &(u, v) in m.edges() {
        out.push_str(&format!("{} {}\n", label(g.names(), u), label(g.names(), v)));
    }
    if let Some((d, map)) = split {
        for (i, &(w, b)) in map.iter().enumerate() {
            out.push_str(&format!("{}: ({}, {})\n", label(d.names(), i), label(g.names(), w), label(g.names(), b)));
        }
    }
    out
}

/// Set files: one set per line, `<tag>: a b c`.
pub fn parse_sets(path: &str, text: &str, tag: &str, g: &Graph) -> CliResult<Vec<VertexSet>> {
    let mut out = Vec::new();
    for (line, l) in content_lines(text) {
        let bad = |message: String| CliError::Parse { path: path.into(), line, message };
        let rest = l
            .strip_prefix(tag)
            .and_then(|r| r.trim_start().strip_prefix(':'))
            .ok_or_else(|| bad(format!("expected `{tag}: ...`")))?;
        let mut set = VertexSet::EMPTY;
        for t in rest.split_whitespace() {
            set.insert(resolve(g.names(), g.n(), t).ok_or_else(|| bad(format!("unknown vertex {t}")))?);
        }
        out.push(set);
    }
    Ok(out)
}

pub fn sets_to_text(tag: &str, g: &Graph, sets: &[VertexSet]) -> String {
    sets.iter()
        .map(|s| {
            let members: Vec<String> = s.iter().map(|v| label(g.names(), v)).collect();
            format!("{tag}: {}\n", members.join(" "))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_and_named_lists() {
        let Loaded::Graph(g) = parse_edge_list("x", "# square\ng 4\n0 1\n1 2\n2 3\n3 0\n").unwrap() else { panic!() };
        assert!(g.is_cycle() && g.names().is_none());
        let Loaded::Graph(g) = parse_edge_list("x", "g 3\na b\nb c # tail\n").unwrap() else { panic!() };
        assert_eq!(g.names().unwrap(), &["a", "b", "c"]);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        let Loaded::Digraph(d) = parse_edge_list("x", "d 2\n0 > 1\n1 > 0\n").unwrap() else { panic!() };
        assert_eq!(d.arcs().len(), 2);
    }

    #[test]
    fn malformed_lists() {
        for bad in ["g 2\nnames: a\n", "g 2\nnames: a a\n", "g 2\nnames: a b\na c\n", "", "g\n", "q 3\n", "g 2\n0 > 1\n", "d 2\n0 1\n", "g 2\n0 2\n", "g 2\n1 1\n", "g 2 x\n"] {
            assert!(matches!(parse_edge_list("x", bad), Err(CliError::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn text_round_trips() {
        let g = corpus::k4_ladder();
        let Loaded::Graph(back) = parse_edge_list("x", &graph_to_text(&g)).unwrap() else { panic!() };
        assert_eq!(back, g);
        let d = corpus::directed_cycle(3);
        let Loaded::Digraph(back) = parse_edge_list("x", &digraph_to_text(&d)).unwrap() else { panic!() };
        assert_eq!(back, d);
        let c = corpus::cycle(6);
        let sets = vec![[0, 1, 2].into_iter().collect(), VertexSet::singleton(4)];
        assert_eq!(parse_sets("x", &sets_to_text("X", &c, &sets), "X", &c).unwrap(), sets);
        let m = Matching::new([(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(parse_matching("x", &matching_to_text(&c, &m, None), &c).unwrap(), m);
        assert!(parse_matching("x", "0 2\n", &c).is_err());
    }
}
