use std::collections::BTreeMap;
use std::fs;

use serde_json::{json, Value};

use torsoid_core::canon::{digraph_canonical_form, digraphs_isomorphic};
use torsoid_core::checks::{all_suites, SuiteLimits, SuiteReport};
use torsoid_core::corpus;
use torsoid_core::digraph::{
    enumerate_one_separations, is_strongly_2connected, is_strongly_connected, lovasz_decompose,
    separation_tight_bijection,
};
use torsoid_core::graph::{Digraph, Graph, VertexSet};
use torsoid_core::matching::{enumerate_perfect_matchings, is_matching_covered, m_direction_with_map, matching_graph, Bounds};
use torsoid_core::partition::validate_partition;
use torsoid_core::tight::{enumerate_maximal_nested_families, seeded_maximal_family, CoveredGraph};
use torsoid_core::torso::{kappa_of_torso, torsos, verify_preimage_counts};
use torsoid_core::torsoid::{classify_residence, enumerate_torsoids_seeded, induced_torsoid, Torsoid};
use torsoid_core::{CollapseKind, Error};

use crate::error::{CliError, CliResult};
use crate::render::{self, to_json, Labels};
use crate::text::{self, Loaded};

fn want_graph(loaded: &Loaded, source: &str) -> CliResult<Graph> {
    loaded.graph().cloned().ok_or_else(|| CliError::Usage(format!("{source} is a digraph; this command needs a graph")))
}

fn want_digraph(loaded: Loaded, source: &str) -> CliResult<Digraph> {
    match loaded {
        Loaded::Digraph(d) => Ok(d),
        _ => Err(CliError::Usage(format!("{source} is a graph; this command needs a digraph"))),
    }
}

fn host(loaded: &Loaded, source: &str, bounds: Bounds) -> CliResult<CoveredGraph> {
    Ok(CoveredGraph::with_bounds(want_graph(loaded, source)?, bounds)?)
}

pub fn info(source: &str, bounds: Bounds) -> CliResult<String> {
    let loaded = text::load(source)?;
    let notes = source.strip_prefix("corpus:").and_then(corpus::lookup).map(|c| c.notes);
    let mut report = match &loaded {
        Loaded::Digraph(d) => {
            if d.n() > bounds.max_vertices {
                return Err(Error::BoundExceeded(format!("{} vertices exceed the bound of {}", d.n(), bounds.max_vertices)).into());
            }
            json!({
                "kind": "digraph",
                "n": d.n(),
                "arcs": Labels(d.names()).pairs(d.arcs()),
                "strongly_connected": is_strongly_connected(d),
                "strongly_2connected": is_strongly_2connected(d),
            })
        }
        Loaded::Graph(g) | Loaded::Partitions(g, _) => {
            let matchings = enumerate_perfect_matchings(g, &bounds)?;
            let covered = is_matching_covered(g);
            let mut r = json!({
                "kind": "graph",
                "n": g.n(),
                "edges": Labels::of(g).pairs(g.edges()),
                "bipartite": g.is_bipartite(),
                "perfect_matchings": matchings.len(),
                "matching_covered": covered,
            });
            if covered {
                let h = CoveredGraph::with_bounds(g.clone(), bounds)?;
                r["tight_cuts"] = json!(h.tight_cuts(false).len());
                r["nontrivial_tight_cuts"] = json!(h.tight_cuts(true).len());
            }
            if let Loaded::Partitions(_, parts) = &loaded {
                r["partitions"] = json!(parts.iter().map(|(name, _)| name.as_str()).collect::<Vec<_>>());
            }
            r
        }
    };
    if let Some(notes) = notes {
        report["notes"] = json!(notes);
    }
    Ok(to_json(report))
}

pub fn tight_cuts(source: &str, bounds: Bounds, nontrivial: bool, family: bool, seed: u64, dot: bool) -> CliResult<String> {
    let loaded = text::load(source)?;
    let h = host(&loaded, source, bounds)?;
    let g = h.graph();
    let l = Labels::of(g);
    let cuts = if family {
        let f = seeded_maximal_family(&h, seed);
        f.cuts().iter().filter(|c| !nontrivial || !c.trivial).cloned().collect()
    } else {
        h.tight_cuts(nontrivial)
    };
    if dot {
        let mut out = String::from("graph tight_cuts {\n");
        for v in 0..g.n() {
            out.push_str(&format!("  v{v} [label={}];\n", render::quote(&l.text(v))));
        }
        for &(u, v) in g.edges() {
            let hits: Vec<String> = cuts
                .iter()
                .enumerate()
                .filter(|(_, c)| c.cut.edges().contains(&(u, v)))
                .map(|(i, _)| format!("c{i}"))
                .collect();
            if hits.is_empty() {
                out.push_str(&format!("  v{u} -- v{v};\n"));
            } else {
                out.push_str(&format!("  v{u} -- v{v} [label={}];\n", render::quote(&hits.join(","))));
            }
        }
        out.push_str("}\n");
        return Ok(out);
    }
    let mut report = json!({
        "count": cuts.len(),
        "cuts": cuts.iter().map(|c| render::cut(l, c)).collect::<Vec<_>>(),
    });
    if family {
        report["seed"] = json!(seed);
        report["family"] = json!(true);
    }
    Ok(to_json(report))
}

pub fn torsoids(source: &str, bounds: Bounds, seed: u64, dot: bool) -> CliResult<String> {
    let loaded = text::load(source)?;
    let h = host(&loaded, source, bounds)?;
    let l = Labels::of(h.graph());
    let ts = enumerate_torsoids_seeded(&h, seed)?;
    if dot {
        let mut out = String::from("graph torsoids {\n");
        for (i, t) in ts.iter().enumerate() {
            render::dot_torsoid(&mut out, l, i, t);
        }
        out.push_str("}\n");
        return Ok(out);
    }
    Ok(to_json(json!({
        "count": ts.len(),
        "torsoids": ts.iter().enumerate().map(|(i, t)| render::torsoid(l, i, t)).collect::<Vec<_>>(),
    })))
}

fn torsoid_id(ts: &[Torsoid], t: &Torsoid) -> CliResult<usize> {
    ts.iter().position(|x| x == t).ok_or_else(|| Error::Internal("torsoid missing from the enumeration".into()).into())
}

pub fn torso_report(source: &str, bounds: Bounds, seed: u64, dot: bool) -> CliResult<String> {
    let loaded = text::load(source)?;
    let h = host(&loaded, source, bounds)?;
    let l = Labels::of(h.graph());
    let family = seeded_maximal_family(&h, seed);
    let ts = enumerate_torsoids_seeded(&h, seed)?;
    let all = torsos(&h, &family)?;
    let mut rows = Vec::with_capacity(all.len());
    let mut out = String::from("graph torsos {\n");
    for (i, torso) in all.iter().enumerate() {
        let kappa = torsoid_id(&ts, &kappa_of_torso(torso)?)?;
        let collapse = &torso.graph().graph;
        if dot {
            let vertices: Vec<String> = torso.classes().iter().map(|&c| l.set_text(c)).collect();
            let edges: Vec<(usize, usize, String)> = collapse.edges().iter().map(|&(u, v)| (u, v, String::new())).collect();
            render::dot_cluster(&mut out, &format!("s{i}"), &format!("torso {i} -> torsoid {kappa}"), &vertices, &edges);
        }
        rows.push(json!({
            "id": i,
            "c4": torso.c4,
            "kappa": kappa,
            "classes": l.sets(torso.classes()),
            "skeleton": { "n": collapse.n(), "edges": collapse.edges() },
        }));
    }
    if dot {
        out.push_str("}\n");
        return Ok(out);
    }
    Ok(to_json(json!({
        "seed": seed,
        "family": family.cuts().iter().map(|c| render::cut(l, c)).collect::<Vec<_>>(),
        "torsoids": ts.iter().enumerate().map(|(i, t)| render::torsoid(l, i, t)).collect::<Vec<_>>(),
        "torsos": rows,
    })))
}

fn kind_name(k: CollapseKind) -> &'static str {
    match k {
        CollapseKind::Brick => "brick",
        CollapseKind::Brace => "brace",
        CollapseKind::Cycle => "cycle",
        CollapseKind::Other => "other",
    }
}

pub fn classify(source: &str, bounds: Bounds, partition_files: &[String], cuts_file: Option<&str>) -> CliResult<String> {
    let loaded = text::load(source)?;
    let h = host(&loaded, source, bounds)?;
    let g = h.graph();
    let l = Labels::of(g);
    let mut named: Vec<(String, Vec<VertexSet>)> = match &loaded {
        Loaded::Partitions(_, parts) => parts.clone(),
        _ => Vec::new(),
    };
    for path in partition_files {
        named.push((path.clone(), text::parse_sets(path, &text::read(path)?, "P", g)?));
    }
    let ts = enumerate_torsoids_seeded(&h, 0)?;
    let mut partitions = Vec::with_capacity(named.len());
    let mut rows = Vec::with_capacity(named.len());
    for (name, classes) in &named {
        let p = validate_partition(&h, classes)?;
        let class = p.classify();
        let induced = if class.torsoid_inducing { Some(torsoid_id(&ts, &induced_torsoid(&p)?.torsoid)?) } else { None };
        rows.push(json!({
            "name": name,
            "classes": l.sets(p.classes()),
            "collapse": {
                "kind": kind_name(class.kind),
                "cyclic": class.cyclic,
                "maximal_cyclic": class.maximal_cyclic,
                "torsoid_inducing": class.torsoid_inducing,
                "edges": p.collapse().graph.edges(),
            },
            "induced_torsoid": induced,
        }));
        partitions.push(p);
    }
    let mut correspondences = Vec::new();
    for i in 0..partitions.len() {
        for j in i + 1..partitions.len() {
            let c = partitions[i].find_correspondence(&partitions[j]);
            correspondences.push(json!({
                "a": named[i].0,
                "b": named[j].0,
                "correspond": c.is_some(),
                "map": c.map(|c| c.map),
            }));
        }
    }
    let sets: Vec<VertexSet> = match cuts_file {
        Some(path) => text::parse_sets(path, &text::read(path)?, "X", g)?,
        None => h.tight_cuts(true).iter().map(|c| c.shore()).collect(),
    };
    let mut residences = Vec::with_capacity(sets.len());
    for &x in &sets {
        let mut at = Vec::with_capacity(ts.len());
        for (i, t) in ts.iter().enumerate() {
            at.push(render::residence(l, i, &classify_residence(&h, t, x)?));
        }
        residences.push(json!({ "set": l.set(x), "residences": at }));
    }
    Ok(to_json(json!({
        "partitions": rows,
        "correspondences": correspondences,
        "torsoids": ts.iter().enumerate().map(|(i, t)| render::torsoid(l, i, t)).collect::<Vec<_>>(),
        "cuts": residences,
    })))
}

pub fn separations(source: &str, bounds: Bounds, proper: bool) -> CliResult<String> {
    let d = want_digraph(text::load(source)?, source)?;
    let l = Labels(d.names());
    let seps: Vec<_> = enumerate_one_separations(&d, &bounds)?.into_iter().filter(|s| !proper || s.is_proper()).collect();
    Ok(to_json(json!({
        "count": seps.len(),
        "separations": seps.iter().map(|s| render::separation(l, s)).collect::<Vec<_>>(),
    })))
}

pub fn bijection(source: &str, bounds: Bounds) -> CliResult<String> {
    let d = want_digraph(text::load(source)?, source)?;
    let l = Labels(d.names());
    let mg = matching_graph(&d)?;
    let ml = Labels::of(&mg.graph);
    let report = separation_tight_bijection(&d, &bounds)?;
    let out = to_json(json!({
        "tight_sets": report.tight_sets,
        "separations": report.separations,
        "perfect": report.is_perfect(),
        "pairs": report.pairs.iter().map(|(x, s)| json!({ "tight_set": ml.set(*x), "separation": render::separation(l, s) })).collect::<Vec<_>>(),
        "orphan_tight_sets": report.orphan_tight_sets.iter().map(|&x| ml.set(x)).collect::<Vec<_>>(),
        "orphan_separations": report.orphan_separations.iter().map(|s| render::separation(l, s)).collect::<Vec<_>>(),
    }));
    if !report.is_perfect() {
        return Err(Error::Internal("1-separations and tight sets are not in bijection".into()).into());
    }
    Ok(out)
}

pub fn decompose(source: &str, bounds: Bounds, seed: u64) -> CliResult<String> {
    let d = want_digraph(text::load(source)?, source)?;
    let forms = lovasz_decompose(&d, seed, &bounds)?;
    let mut counts: BTreeMap<_, usize> = BTreeMap::new();
    for f in &forms {
        *counts.entry(f).or_default() += 1;
    }
    let pieces: Vec<Value> = counts
        .iter()
        .map(|(f, &k)| {
            let p = f.to_digraph();
            json!({ "n": p.n(), "arcs": p.arcs(), "multiplicity": k })
        })
        .collect();
    Ok(to_json(json!({ "seed": seed, "piece_count": forms.len(), "pieces": pieces })))
}

fn write(path: &str, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })
}

pub struct ConvertOutputs<'a> {
    pub graph: Option<&'a str>,
    pub matching: Option<&'a str>,
    pub digraph: Option<&'a str>,
}

pub fn to_matching(source: &str, outputs: &ConvertOutputs<'_>) -> CliResult<String> {
    let d = want_digraph(text::load(source)?, source)?;
    let mg = matching_graph(&d)?;
    let l = Labels::of(&mg.graph);
    let dl = Labels(d.names());
    if let Some(path) = outputs.graph {
        write(path, &text::graph_to_text(&mg.graph))?;
    }
    if let Some(path) = outputs.matching {
        write(path, &text::matching_to_text(&mg.graph, &mg.matching, Some((&d, &mg.split_map))))?;
    }
    let split: Vec<Value> = mg
        .split_map
        .iter()
        .enumerate()
        .map(|(v, &(w, b))| json!({ "vertex": dl.v(v), "white": l.v(w), "black": l.v(b) }))
        .collect();
    Ok(to_json(json!({
        "graph": render::graph(l, &mg.graph),
        "matching": l.pairs(mg.matching.edges()),
        "split_map": split,
    })))
}

/// Name of the digraph vertex contracted from `(white, black)`: the shared
/// stem when the ends are named `{s}_0` and `{s}_1`.
fn contracted_name(g: &Graph, white: usize, black: usize) -> String {
    let (w, b) = (g.name(white), g.name(black));
    match (w.strip_suffix("_0"), b.strip_suffix("_1")) {
        (Some(x), Some(y)) if x == y => x.to_string(),
        _ => format!("{b}/{w}"),
    }
}

pub fn to_digraph(source: &str, matching: &str, outputs: &ConvertOutputs<'_>) -> CliResult<String> {
    let loaded = text::load(source)?;
    let g = want_graph(&loaded, source)?;
    let m = text::parse_matching(matching, &text::read(matching)?, &g)?;
    if !is_matching_covered(&g) {
        return Err(Error::NotMatchingCovered.into());
    }
    let md = m_direction_with_map(&g, &m)?;
    let mut d = md.digraph;
    if g.names().is_some() {
        d = d.with_names(md.contraction.iter().map(|&(w, b)| contracted_name(&g, w, b)).collect())?;
    }
    if let Some(path) = outputs.digraph {
        write(path, &text::digraph_to_text(&d))?;
    }
    let l = Labels::of(&g);
    let dl = Labels(d.names());
    let contraction: Vec<Value> = md
        .contraction
        .iter()
        .enumerate()
        .map(|(v, &(w, b))| json!({ "vertex": dl.v(v), "white": l.v(w), "black": l.v(b) }))
        .collect();
    Ok(to_json(json!({
        "digraph": { "n": d.n(), "arcs": dl.pairs(d.arcs()) },
        "contraction": contraction,
    })))
}

fn suite_json(r: &SuiteReport) -> Value {
    json!({ "name": r.name, "checked": r.checked, "passed": r.passed(), "violations": r.violations })
}

struct Verdict {
    report: Value,
    ok: bool,
}

fn verify_graph(g: &Graph, bounds: Bounds) -> CliResult<Verdict> {
    let h = CoveredGraph::with_bounds(g.clone(), bounds)?;
    let limits = SuiteLimits::default();
    let suites = all_suites(&h, &limits)?;
    let mut ok = suites.iter().all(SuiteReport::passed);
    let mut families = Vec::new();
    for f in enumerate_maximal_nested_families(&h, limits.families)? {
        let pre = verify_preimage_counts(&h, &f)?;
        ok &= pre.holds();
        let groups: Vec<Value> = pre
            .groups
            .iter()
            .map(|grp| json!({ "torsos": grp.torsos.len(), "c4_torsos": grp.c4_torsos, "expected": grp.expected }))
            .collect();
        families.push(json!({ "groups": groups, "violations": pre.violations }));
    }
    Ok(Verdict {
        report: json!({ "suites": suites.iter().map(suite_json).collect::<Vec<_>>(), "preimages": families }),
        ok,
    })
}

fn verify_digraph(d: &Digraph, bounds: Bounds) -> CliResult<Verdict> {
    let mut report = SuiteReport::new("roundtrip");
    let mg = matching_graph(d)?;
    let back = m_direction_with_map(&mg.graph, &mg.matching)?.digraph;
    report.checked += 1;
    if back.arcs() != d.arcs() || back.n() != d.n() {
        report.violations.push("m_direction does not invert matching_graph".into());
    }
    let mut suites = vec![report];
    if is_strongly_connected(d) {
        let mut bij = SuiteReport::new("bijection");
        let b = separation_tight_bijection(d, &bounds)?;
        bij.checked = b.tight_sets.max(b.separations);
        if !b.is_perfect() {
            bij.violations.push(format!(
                "{} tight sets, {} separations, {} orphans",
                b.tight_sets,
                b.separations,
                b.orphan_tight_sets.len() + b.orphan_separations.len()
            ));
        }
        let mut inv = SuiteReport::new("decomposition");
        let first = lovasz_decompose(d, 0, &bounds)?;
        for seed in 1..8 {
            inv.checked += 1;
            if lovasz_decompose(d, seed, &bounds)? != first {
                inv.violations.push(format!("seed {seed} gives a different multiset"));
            }
        }
        suites.push(bij);
        suites.push(inv);
    }
    let mut iso = SuiteReport::new("canonical");
    iso.checked += 1;
    let perm: Vec<usize> = (0..d.n()).rev().collect();
    if !digraphs_isomorphic(d, &d.permuted(&perm))? || digraph_canonical_form(d)? != digraph_canonical_form(&d.permuted(&perm))? {
        iso.violations.push("canonical form changes under relabelling".into());
    }
    suites.push(iso);
    Ok(Verdict { ok: suites.iter().all(SuiteReport::passed), report: json!({ "suites": suites.iter().map(suite_json).collect::<Vec<_>>() }) })
}

/// Correspondence of every pair of named partitions.
fn correspondences(g: &Graph, parts: &[(String, Vec<VertexSet>)], bounds: Bounds) -> CliResult<Vec<(String, String, bool)>> {
    let h = CoveredGraph::with_bounds(g.clone(), bounds)?;
    let valid = parts.iter().map(|(_, classes)| validate_partition(&h, classes)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            out.push((parts[i].0.clone(), parts[j].0.clone(), valid[i].find_correspondence(&valid[j]).is_some()));
        }
    }
    Ok(out)
}

fn verify_one(source: &str, bounds: Bounds) -> CliResult<Verdict> {
    match text::load(source)? {
        Loaded::Graph(g) => verify_graph(&g, bounds),
        Loaded::Digraph(d) => verify_digraph(&d, bounds),
        Loaded::Partitions(g, parts) => {
            let mut v = verify_graph(&g, bounds)?;
            let found = correspondences(&g, &parts, bounds)?;
            if source == "corpus:HEX_PARTS" {
                let expect = [("left", "middle", true), ("left", "right", false), ("middle", "right", true)];
                let ok = expect.iter().all(|&(a, b, c)| found.contains(&(a.to_string(), b.to_string(), c)));
                v.ok &= ok;
                v.report["expected_correspondences"] = json!(ok);
            }
            v.report["correspondences"] =
                found.iter().map(|(a, b, c)| json!({ "a": a, "b": b, "correspond": c })).collect();
            Ok(v)
        }
    }
}

/// Returns the report and whether every check passed.
pub fn verify(sources: &[String], all: bool, bounds: Bounds) -> CliResult<(String, bool)> {
    let mut list: Vec<String> = sources.to_vec();
    if all {
        list.extend(corpus::NAMES.iter().map(|n| format!("corpus:{n}")));
    }
    if list.is_empty() {
        return Err(CliError::Usage("verify needs at least one input or --all".into()));
    }
    let mut ok = true;
    let mut inputs = serde_json::Map::new();
    for source in &list {
        let v = verify_one(source, bounds)?;
        ok &= v.ok;
        let mut r = v.report;
        r["passed"] = json!(v.ok);
        inputs.insert(source.clone(), r);
    }
    Ok((to_json(json!({ "passed": ok, "inputs": inputs })), ok))
}
