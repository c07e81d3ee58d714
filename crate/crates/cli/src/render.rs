//! JSON and DOT rendering. Vertices print as ids, or as names when the input
//! carried names.

use serde_json::{json, Value};

use torsoid_core::digraph::{Direction, OneSeparation};
use torsoid_core::graph::{Graph, VertexSet};
use torsoid_core::tight::TightCutRecord;
use torsoid_core::torsoid::{Residence, ResidenceKind, Torsoid};

pub const SCHEMA: u64 = 1;

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json(mut report: Value) -> String {
    if let Value::Object(map) = &mut report {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let mut out = serde_json::to_string_pretty(&report).expect("reports are plain JSON");
    out.push('\n');
    out
}

#[derive(Clone, Copy)]
pub struct Labels<'a>(pub Option<&'a [String]>);

impl<'a> Labels<'a> {
    pub fn of(g: &'a Graph) -> Self {
        Labels(g.names())
    }

    pub fn v(&self, v: usize) -> Value {
        match self.0 {
            Some(names) => json!(names[v]),
            None => json!(v),
        }
    }

    pub fn set(&self, s: VertexSet) -> Value {
        Value::Array(s.iter().map(|v| self.v(v)).collect())
    }

    pub fn sets(&self, sets: &[VertexSet]) -> Value {
        Value::Array(sets.iter().map(|&s| self.set(s)).collect())
    }

    pub fn pair(&self, (u, v): (usize, usize)) -> Value {
        json!([self.v(u), self.v(v)])
    }

    pub fn pairs(&self, pairs: &[(usize, usize)]) -> Value {
        Value::Array(pairs.iter().map(|&e| self.pair(e)).collect())
    }

    pub fn text(&self, v: usize) -> String {
        self.0.map_or_else(|| v.to_string(), |n| n[v].clone())
    }

    pub fn set_text(&self, s: VertexSet) -> String {
        let members: Vec<String> = s.iter().map(|v| self.text(v)).collect();
        format!("{{{}}}", members.join(","))
    }
}

pub fn graph(l: Labels<'_>, g: &Graph) -> Value {
    json!({ "n": g.n(), "edges": l.pairs(g.edges()) })
}

pub fn cut(l: Labels<'_>, c: &TightCutRecord) -> Value {
    json!({
        "shore": l.set(c.shore()),
        "other_shore": l.set(c.cut.other_shore()),
        "trivial": c.trivial,
        "edges": l.pairs(c.cut.edges()),
    })
}

pub fn torsoid(l: Labels<'_>, id: usize, t: &Torsoid) -> Value {
    let vertices: Vec<Value> =
        t.vertices().iter().enumerate().map(|(i, &s)| json!({ "id": i, "set": l.set(s) })).collect();
    let edges: Vec<Value> = t.edges().map(|((u, v), eps)| json!({ "u": u, "v": v, "eps": l.set(eps) })).collect();
    json!({
        "id": id,
        "cyclic": t.is_cyclic(),
        "skeleton": { "vertices": vertices, "edges": edges },
    })
}

pub fn residence(l: Labels<'_>, torsoid: usize, r: &Residence) -> Value {
    let mut out = json!({ "torsoid": torsoid, "theta": r.theta, "witness": l.set(r.witness) });
    let extra = match r.kind {
        ResidenceKind::Edge { edge } => json!({ "kind": "edge", "edge": [edge.0, edge.1] }),
        ResidenceKind::Vertex { vertex, proper } => json!({ "kind": "vertex", "vertex": vertex, "proper": proper }),
        ResidenceKind::Interval { vertices } => json!({ "kind": "interval", "interval": vertices.to_vec() }),
    };
    if let (Value::Object(a), Value::Object(b)) = (&mut out, extra) {
        a.extend(b);
    }
    out
}

pub fn direction(d: Direction) -> &'static str {
    match d {
        Direction::NoArcsIntoA => "no-arcs-into-a",
        Direction::NoArcsOutOfA => "no-arcs-out-of-a",
    }
}

pub fn separation(l: Labels<'_>, s: &OneSeparation) -> Value {
    json!({
        "a": l.set(s.a),
        "b": l.set(s.b),
        "separator": l.v(s.separator),
        "direction": direction(s.direction),
        "proper": s.is_proper(),
    })
}

/// A double-quoted DOT identifier.
pub fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A DOT cluster holding one skeleton-like graph whose vertices are sets.
pub fn dot_cluster(out: &mut String, prefix: &str, title: &str, vertices: &[String], edges: &[(usize, usize, String)]) {
    out.push_str(&format!("  subgraph cluster_{prefix} {{\n    label={};\n", quote(title)));
    for (i, v) in vertices.iter().enumerate() {
        out.push_str(&format!("    {prefix}_{i} [label={}];\n", quote(v)));
    }
    for (u, v, label) in edges {
        if label.is_empty() {
            out.push_str(&format!("    {prefix}_{u} -- {prefix}_{v};\n"));
        } else {
            out.push_str(&format!("    {prefix}_{u} -- {prefix}_{v} [label={}];\n", quote(label)));
        }
    }
    out.push_str("  }\n");
}

pub fn dot_torsoid(out: &mut String, l: Labels<'_>, id: usize, t: &Torsoid) {
    let vertices: Vec<String> = t.vertices().iter().map(|&s| l.set_text(s)).collect();
    let edges: Vec<(usize, usize, String)> = t
        .edges()
        .map(|((u, v), eps)| (u, v, if eps.is_empty() { String::new() } else { l.set_text(eps) }))
        .collect();
    let kind = if t.is_cyclic() { "cyclic" } else { "brick or brace" };
    dot_cluster(out, &format!("t{id}"), &format!("torsoid {id} ({kind})"), &vertices, &edges);
}

#[cfg(test)]
mod tests {
    use super::*;
    use torsoid_core::corpus;

    #[test]
    fn schema_and_sorted_keys() {
        let s = to_json(json!({ "b": 1, "a": [1, 2] }));
        assert!(s.ends_with("}\n"));
        let (a, b, schema) = (s.find("\"a\"").unwrap(), s.find("\"b\"").unwrap(), s.find("\"schema\": 1").unwrap());
        assert!(a < b && b < schema);
    }

    #[test]
    fn labels_follow_names() {
        let g = corpus::k4_ladder();
        let set: VertexSet = [0, 4].into_iter().collect();
        assert_eq!(Labels::of(&g).set(set), json!(["u", "p1"]));
        assert_eq!(Labels::of(&corpus::k4()).set(set), json!([0, 4]));
        assert_eq!(Labels::of(&g).set_text(set), "{u,p1}");
    }

    #[test]
    fn dot_quoting() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
