//! Exhaustive property suites over small hosts. Each suite counts the tuples
//! it examined and records every violation it finds.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::VertexSet;
use crate::partition::{all_tight_set_partitions, TightSetPartition};
use crate::passable::{all_passable_between, is_passable_between, largest_passable_with, Strategy};
use crate::tight::{enumerate_maximal_nested_families, CoveredGraph};
use crate::torso::verify_preimage_counts;
use crate::torsoid::{
    classify_residence, find_torsoid_correspondence, induced_torsoid, torsoids_by_exhaustion, validate_torsoid,
    ResidenceKind,
};

/// Names of the crossing-lemma suites, in run order.
pub const CROSSING_SUITES: [&str; 13] = [
    "basictight",
    "basicnoedge",
    "nothree",
    "infunion",
    "infintersection",
    "deletemany",
    "notodd",
    "passcup",
    "maxpass",
    "uncrosscut",
    "cutswell",
    "cutscyclicpartition",
    "charcycle",
];

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl SuiteReport {
    pub fn new(name: &'static str) -> Self {
        SuiteReport { name, checked: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SuiteLimits {
    pub partitions: usize,
    pub families: usize,
}

impl Default for SuiteLimits {
    fn default() -> Self {
        SuiteLimits { partitions: 100_000, families: 10_000 }
    }
}

/// Bitmask cliques of a symmetric relation on at most 64 items.
fn maximal_cliques(adj: &[u64]) -> Vec<u64> {
    fn go(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut cand = p & !adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            go(adj, r | 1 << v, p & adj[v], x & adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let n = adj.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    go(adj, 0, all, 0, &mut out);
    out
}

/// Families of size two and three, plus every maximal family when there are
/// at most 64 sets, whose members pairwise satisfy `pair`.
fn pairwise_families(sets: &[VertexSet], pair: impl Fn(VertexSet, VertexSet) -> bool) -> Vec<Vec<VertexSet>> {
    let k = sets.len();
    let ok: Vec<Vec<bool>> = (0..k).map(|i| (0..k).map(|j| i != j && pair(sets[i], sets[j])).collect()).collect();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if !ok[i][j] {
                continue;
            }
            out.push(alloc::vec![sets[i], sets[j]]);
            for l in j + 1..k {
                if ok[i][l] && ok[j][l] {
                    out.push(alloc::vec![sets[i], sets[j], sets[l]]);
                }
            }
        }
    }
    if k <= 64 {
        let adj: Vec<u64> =
            (0..k).map(|i| (0..k).filter(|&j| ok[i][j]).fold(0u64, |acc, j| acc | 1 << j)).collect();
        for c in maximal_cliques(&adj) {
            if c.count_ones() > 3 {
                out.push((0..k).filter(|&i| c >> i & 1 == 1).map(|i| sets[i]).collect());
            }
        }
    }
    out
}

fn basictight(host: &CoveredGraph) -> SuiteReport {
    let mut r = SuiteReport::new("basictight");
    let g = host.graph();
    for &x in host.tight_sets() {
        for &y in host.tight_sets() {
            if x.len() == 0 || !x.meets_oddly(y) {
                continue;
            }
            r.check(host.is_tight(x & y) && host.is_tight(x | y), || format!("{x:?} ∩/∪ {y:?} not tight"));
            r.check(!g.joins(x - y, y - x), || format!("edge between {:?} and {:?}", x - y, y - x));
            if !(x - y).is_empty() {
                r.check(g.joins(x & y, x - y), || format!("no edge from {:?} to {:?}", x & y, x - y));
            }
        }
    }
    r
}

fn basicnoedge(host: &CoveredGraph) -> SuiteReport {
    let mut r = SuiteReport::new("basicnoedge");
    let g = host.graph();
    let sets = host.tight_sets();
    for &x in sets {
        let even: Vec<VertexSet> = sets.iter().copied().filter(|&y| !x.meets_oddly(y)).collect();
        for (i, &y) in even.iter().enumerate() {
            for &z in &even[i + 1..] {
                let (a, b) = (x & y, x & z);
                if a.is_disjoint(b) {
                    r.check(!g.joins(a, b), || format!("{x:?}: edge between {a:?} and {b:?}"));
                }
            }
        }
    }
    r
}

fn nothree(host: &CoveredGraph) -> SuiteReport {
    let mut r = SuiteReport::new("nothree");
    let sets = host.tight_sets();
    for (i, &x) in sets.iter().enumerate() {
        for (j, &y) in sets.iter().enumerate().skip(i + 1) {
            let c = x & y;
            if c.len() % 2 == 1 {
                continue;
            }
            for &z in &sets[j + 1..] {
                if x & z == c && y & z == c {
                    r.check(c.is_empty(), || format!("{x:?}, {y:?}, {z:?} share {c:?}"));
                }
            }
        }
    }
    r
}

fn infunion(host: &CoveredGraph) -> (SuiteReport, SuiteReport) {
    let all = host.vertices();
    let mut u = SuiteReport::new("infunion");
    for fam in pairwise_families(host.tight_sets(), |a, b| host.is_tight(a | b)) {
        let x = fam.iter().fold(VertexSet::EMPTY, |acc, &s| acc | s);
        u.check(x == all || host.is_tight(x), || format!("union of {fam:?} is {x:?}"));
    }
    let mut i = SuiteReport::new("infintersection");
    for fam in pairwise_families(host.tight_sets(), |a, b| a.meets_oddly(b)) {
        let x = fam.iter().fold(all, |acc, &s| acc & s);
        i.check(x.is_empty() || host.is_tight(x), || format!("intersection of {fam:?} is {x:?}"));
    }
    (u, i)
}

fn deletemany(host: &CoveredGraph) -> SuiteReport {
    let mut r = SuiteReport::new("deletemany");
    for &x in host.tight_sets() {
        let even: Vec<VertexSet> = host.tight_sets().iter().copied().filter(|&y| !x.meets_oddly(y)).collect();
        let fams = pairwise_families(&even, |a, b| (x & a).is_disjoint(x & b));
        for fam in even.iter().map(|&y| alloc::vec![y]).chain(fams) {
            let rest = fam.iter().fold(x, |acc, &y| acc - y);
            r.check(host.is_tight(rest), || format!("{x:?} minus {fam:?} is {rest:?}"));
        }
    }
    r
}

fn passable_suites(host: &CoveredGraph) -> Result<[SuiteReport; 3]> {
    let mut notodd = SuiteReport::new("notodd");
    let mut passcup = SuiteReport::new("passcup");
    let mut maxpass = SuiteReport::new("maxpass");
    let sets = host.tight_sets();
    for &p in sets {
        for &q in sets {
            if !p.is_disjoint(q) || p | q == host.vertices() {
                continue;
            }
            let pass = all_passable_between(host, p, q)?;
            for (i, &s) in pass.iter().enumerate() {
                for &t in &pass[i..] {
                    notodd.check(!p.meets_oddly(s & t), || format!("P={p:?} Q={q:?}: {s:?} ∩ {t:?} odd in P"));
                    passcup.check(is_passable_between(host, s | t, p, q)?, || {
                        format!("P={p:?} Q={q:?}: {s:?} ∪ {t:?} not passable")
                    });
                }
            }
            let union = pass.iter().fold(VertexSet::EMPTY, |acc, &s| acc | s);
            let frontier = largest_passable_with(host, p, q, Strategy::Frontier);
            let scan = largest_passable_with(host, p, q, Strategy::Scan);
            maxpass.check(
                is_passable_between(host, union, p, q)? && frontier.as_ref() == Ok(&union) && scan.as_ref() == Ok(&union),
                || format!("P={p:?} Q={q:?}: union {union:?}, frontier {frontier:?}, scan {scan:?}"),
            );
        }
    }
    Ok([notodd, passcup, maxpass])
}

/// Collapse vertices in cycle order starting at 0.
fn cycle_order(p: &TightSetPartition<'_>) -> Vec<usize> {
    let g = &p.collapse().graph;
    let mut order = alloc::vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < g.n() {
        let next = g.neighbors(cur).iter().find(|&w| w != prev && !order.contains(&w));
        let Some(next) = next else { break };
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

fn partition_crossing_suites(host: &CoveredGraph, partitions: &[TightSetPartition<'_>]) -> Result<[SuiteReport; 3]> {
    let mut uncross = SuiteReport::new("uncrosscut");
    let mut swell = SuiteReport::new("cutswell");
    let mut cyclic = SuiteReport::new("cutscyclicpartition");
    for p in partitions {
        let classes = p.classes();
        let n = classes.len();
        let kind = p.classify();
        let order = if kind.cyclic { cycle_order(p) } else { Vec::new() };
        for &x in host.tight_sets() {
            let odd: Vec<usize> = (0..n).filter(|&i| classes[i].meets_oddly(x)).collect();
            let union = p.union_of(odd.iter().copied());
            uncross.check(!odd.is_empty() && odd.len() < n && host.is_tight(union), || {
                format!("{classes:?}, X={x:?}: odd classes {odd:?}")
            });
            if kind.is_bob() {
                swell.check(odd.len() == 1 || odd.len() + 1 == n, || format!("{classes:?}, X={x:?}: odd classes {odd:?}"));
            }
            if kind.cyclic && !odd.is_empty() && odd.len() < n {
                let ok = cyclic_enumeration_holds(host, p, &order, &odd, x)?;
                cyclic.check(ok, || format!("{classes:?}, X={x:?}: odd classes {odd:?}"));
            }
        }
    }
    Ok([uncross, swell, cyclic])
}

fn cyclic_enumeration_holds(
    host: &CoveredGraph,
    p: &TightSetPartition<'_>,
    order: &[usize],
    odd: &[usize],
    x: VertexSet,
) -> Result<bool> {
    let n = order.len();
    let m = odd.len();
    let is_odd = |k: usize| odd.contains(&order[k % n]);
    // rotate so that the odd run starts at position 0
    let Some(start) = (0..n).find(|&k| is_odd(k) && !is_odd(k + n - 1)) else { return Ok(false) };
    let e: Vec<VertexSet> = (0..n).map(|k| p.classes()[order[(start + k) % n]]).collect();
    if !(0..m).all(|k| is_odd(start + k)) {
        return Ok(false);
    }
    // e[0] = P_1, e[m-1] = P_m, e[n-1] = P_n
    let inner = (1..m.saturating_sub(1)).fold(VertexSet::EMPTY, |acc, k| acc | e[k]);
    let outer = (m + 1..n - 1).fold(VertexSet::EMPTY, |acc, k| acc | e[k]);
    if !inner.is_subset(x) || x.intersects(outer) {
        return Ok(false);
    }
    if 3 <= m && m + 3 <= n {
        let checks = [
            (e[0] - x, e[0], e[n - 1]),
            (e[n - 1] & x, e[0], e[n - 1]),
            (e[m - 1] - x, e[m - 1], e[m]),
            (e[m] & x, e[m - 1], e[m]),
        ];
        for (s, a, b) in checks {
            if !is_passable_between(host, s, a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for a cyclic order with every consecutive triple tight; when one
/// exists on at least six vertices the graph must be that cycle.
fn charcycle(host: &CoveredGraph) -> SuiteReport {
    fn extend(host: &CoveredGraph, path: &mut Vec<usize>, used: VertexSet, found: &mut Vec<Vec<usize>>) {
        let n = host.n();
        if found.len() >= 16 {
            return;
        }
        let triple = |a: usize, b: usize, c: usize| host.is_tight([a, b, c].into_iter().collect());
        if path.len() == n {
            let k = n;
            if triple(path[k - 2], path[k - 1], path[0]) && triple(path[k - 1], path[0], path[1]) {
                found.push(path.clone());
            }
            return;
        }
        for v in 0..n {
            if used.contains(v) {
                continue;
            }
            let k = path.len();
            if k >= 2 && !triple(path[k - 2], path[k - 1], v) {
                continue;
            }
            path.push(v);
            extend(host, path, used | VertexSet::singleton(v), found);
            path.pop();
        }
    }
    let mut r = SuiteReport::new("charcycle");
    if host.n() < 6 {
        return r;
    }
    let mut found = Vec::new();
    extend(host, &mut alloc::vec![0], VertexSet::singleton(0), &mut found);
    let g = host.graph();
    for order in found {
        let n = order.len();
        let is_that_cycle =
            g.edges().len() == n && (0..n).all(|i| g.has_edge(order[i], order[(i + 1) % n]));
        r.check(is_that_cycle, || format!("order {order:?} has tight triples but the graph is not that cycle"));
    }
    r
}

/// The crossing-lemma suites, in [`CROSSING_SUITES`] order.
pub fn crossing_suites(host: &CoveredGraph, limits: &SuiteLimits) -> Result<Vec<SuiteReport>> {
    let partitions = all_tight_set_partitions(host, limits.partitions)?;
    let (u, i) = infunion(host);
    let mut out = alloc::vec![basictight(host), basicnoedge(host), nothree(host), u, i, deletemany(host)];
    out.extend(passable_suites(host)?);
    out.extend(partition_crossing_suites(host, &partitions)?);
    out.push(charcycle(host));
    Ok(out)
}

/// Collapse tightness, correspondences as isomorphisms, and maximality
/// transfer along correspondences.
pub fn partition_suites(host: &CoveredGraph, limits: &SuiteLimits) -> Result<Vec<SuiteReport>> {
    let partitions = all_tight_set_partitions(host, limits.partitions)?;
    let mut in_collapse = SuiteReport::new("tight_sets_in_collapse");
    let mut corrisiso = SuiteReport::new("corrisiso");
    let mut max = SuiteReport::new("max");
    let kinds: Vec<_> = partitions.iter().map(|p| p.classify()).collect();
    for p in &partitions {
        let quotient = CoveredGraph::with_bounds(p.collapse().graph.clone(), host.bounds())?;
        let k = p.len();
        for mask in 1..(1u64 << k) - 1 {
            let j = VertexSet::from_bits(mask);
            let union = p.union_of(j.iter());
            in_collapse.check(quotient.is_tight(j) == host.is_tight(union), || {
                format!("{:?}: classes {j:?} disagree", p.classes())
            });
        }
    }
    for (a, p) in partitions.iter().enumerate() {
        for (b, q) in partitions.iter().enumerate() {
            let Some(c) = p.find_correspondence(q) else { continue };
            corrisiso.check(c.is_isomorphism(&p.collapse().graph, &q.collapse().graph), || {
                format!("{:?} -> {:?} via {:?}", p.classes(), q.classes(), c.map)
            });
            if kinds[a].maximal_cyclic {
                max.check(kinds[b].maximal_cyclic, || format!("{:?} corresponds to {:?}", p.classes(), q.classes()));
            }
        }
    }
    Ok(alloc::vec![in_collapse, corrisiso, max])
}

/// Torsoid axioms, unique correspondence, correspondences as isomorphisms,
/// odd edge intersections, eps as largest passable sets, and residence of
/// every tight set.
pub fn torsoid_suites(host: &CoveredGraph, limits: &SuiteLimits) -> Result<Vec<SuiteReport>> {
    let torsoids = torsoids_by_exhaustion(host, limits.partitions)?;
    let partitions = all_tight_set_partitions(host, limits.partitions)?;
    let mut axioms = SuiteReport::new("torsoid_axioms");
    let mut unique = SuiteReport::new("uniquecorr");
    let mut iso = SuiteReport::new("strongcorrisiso");
    let mut edge_odd = SuiteReport::new("one_edge_odd");
    let mut epspass = SuiteReport::new("epspass");
    let mut residence = SuiteReport::new("residence");
    for t in &torsoids {
        let report = validate_torsoid(host, t);
        axioms.check(report.is_valid(), || format!("{:?}: {:?}", t.vertices(), report.failures));
        for &x in host.tight_sets() {
            let res = classify_residence(host, t, x);
            residence.check(res.is_ok(), || format!("{x:?} in {:?}: {res:?}", t.vertices()));
            for ((a, b), e) in t.edges() {
                if e.meets_oddly(x) {
                    let at_edge = matches!(res, Ok(r) if r.kind == ResidenceKind::Edge { edge: (a, b) });
                    edge_odd.check(at_edge, || format!("{x:?} meets eps({a},{b}) oddly: {res:?}"));
                }
            }
        }
    }
    for p in &partitions {
        let inducing = p.classify().torsoid_inducing;
        let mut matches = 0;
        for t in &torsoids {
            let Some(c) = find_torsoid_correspondence(t, p) else { continue };
            matches += 1;
            let collapse = &p.collapse().graph;
            let is_iso = t.skeleton().edges().len() == collapse.edges().len()
                && t.skeleton().edges().iter().all(|&(a, b)| collapse.has_edge(c.map[a], c.map[b]));
            iso.check(is_iso, || format!("{:?} -> {:?} via {:?}", t.vertices(), p.classes(), c.map));
            if inducing {
                for ((a, b), e) in t.edges() {
                    let largest = crate::passable::largest_passable_between(host, p.classes()[c.map[a]], p.classes()[c.map[b]]);
                    epspass.check(largest.as_ref() == Ok(&e), || {
                        format!("{:?}: eps({a},{b}) = {e:?} but largest passable is {largest:?}", p.classes())
                    });
                }
            }
        }
        if inducing {
            let induced = induced_torsoid(p)?.torsoid;
            let found = torsoids.iter().filter(|t| find_torsoid_correspondence(t, p).is_some()).collect::<Vec<_>>();
            unique.check(matches == 1 && found[0] == &induced, || {
                format!("{:?} corresponds to {matches} torsoids", p.classes())
            });
        }
    }
    Ok(alloc::vec![axioms, unique, iso, edge_odd, epspass, residence])
}

/// Torso pre-image counts over every maximal nested family.
pub fn preimage_suite(host: &CoveredGraph, limits: &SuiteLimits) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("preimage_counts");
    for family in enumerate_maximal_nested_families(host, limits.families)? {
        let report = verify_preimage_counts(host, &family)?;
        r.check(report.holds(), || format!("{:?}: {:?}", family.cuts(), report.violations));
    }
    Ok(r)
}

/// Every suite above, crossing suites first.
pub fn all_suites(host: &CoveredGraph, limits: &SuiteLimits) -> Result<Vec<SuiteReport>> {
    let mut out = crossing_suites(host, limits)?;
    out.extend(partition_suites(host, limits)?);
    out.extend(torsoid_suites(host, limits)?);
    out.push(preimage_suite(host, limits)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn run(g: crate::graph::Graph) -> Vec<SuiteReport> {
        let host = CoveredGraph::new(g).unwrap();
        all_suites(&host, &SuiteLimits::default()).unwrap()
    }

    #[test]
    fn small_hosts_pass() {
        for g in [corpus::cycle(6), corpus::k4(), corpus::k4_ladder(), corpus::k33()] {
            for r in run(g) {
                assert!(r.passed(), "{}: {:?}", r.name, r.violations);
            }
        }
    }

    #[test]
    fn suites_are_not_vacuous() {
        let reports = run(corpus::cycle(6));
        for name in ["basictight", "basicnoedge", "nothree", "deletemany", "notodd", "passcup", "cutscyclicpartition"] {
            let r = reports.iter().find(|r| r.name == name).unwrap();
            assert!(r.checked > 0, "{name}");
        }
        let charcycle = reports.iter().find(|r| r.name == "charcycle").unwrap();
        assert!(charcycle.checked > 0);
    }

    #[test]
    fn cliques() {
        // path 0-1-2 plus isolated 3
        let adj = [0b010, 0b101, 0b010, 0];
        let mut c = maximal_cliques(&adj);
        c.sort();
        assert_eq!(c, alloc::vec![0b011, 0b110, 0b1000]);
    }

    #[test]
    fn a_broken_claim_is_reported() {
        let mut r = SuiteReport::new("x");
        r.check(true, String::new);
        r.check(false, || "bad".into());
        assert_eq!((r.checked, r.passed()), (2, false));
    }
}
