use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::is_matching_covered;
use crate::partition::{torsoid_inducing_partitions, validate_partition, TightSetPartition};
use crate::passable::{is_passable_for, largest_passable_between};
use crate::tight::{seeded_maximal_family, CoveredGraph, TightCutRecord};

/// A skeleton graph whose vertices are vertex sets of the host, with a vertex
/// set `eps` on every skeleton edge.
///
/// Skeleton vertex `i` is `vertices[i]`, listed in ascending order; `eps[k]`
/// belongs to `skeleton.edges()[k]`. Equality is exact, not up to isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Torsoid {
    host: Graph,
    vertices: Vec<VertexSet>,
    skeleton: Graph,
    eps: Vec<VertexSet>,
    cyclic: bool,
}

impl Ord for Torsoid {
    fn cmp(&self, other: &Self) -> Ordering {
        self.vertices
            .cmp(&other.vertices)
            .then_with(|| self.skeleton.edges().cmp(other.skeleton.edges()))
            .then_with(|| self.eps.cmp(&other.eps))
            .then_with(|| self.host.edges().cmp(other.host.edges()))
    }
}

impl PartialOrd for Torsoid {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Torsoid {
    /// Assembles a torsoid from vertex sets and `(i, j, eps)` triples indexing
    /// into `vertices`. Only structural sanity is checked here; the axioms
    /// are checked by [`validate_torsoid`].
    pub fn from_parts(host: Graph, vertices: &[VertexSet], edges: &[(usize, usize, VertexSet)]) -> Result<Self> {
        let k = vertices.len();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut rank = alloc::vec![0usize; k];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let sorted: Vec<VertexSet> = order.iter().map(|&i| vertices[i]).collect();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("skeleton vertex sets repeat".into()));
        }
        let mut mapped = Vec::with_capacity(edges.len());
        for &(i, j, e) in edges {
            if i >= k || j >= k {
                return Err(Error::VertexOutOfRange { id: i.max(j), n: k });
            }
            let (a, b) = (rank[i].min(rank[j]), rank[i].max(rank[j]));
            mapped.push(((a, b), e));
        }
        mapped.sort();
        if mapped.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Precondition("skeleton edge listed twice".into()));
        }
        let skeleton = Graph::new(k, mapped.iter().map(|&(e, _)| e))?;
        let eps = mapped.into_iter().map(|(_, s)| s).collect();
        let cyclic = skeleton.is_cycle();
        Ok(Torsoid { host, vertices: sorted, skeleton, eps, cyclic })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn vertices(&self) -> &[VertexSet] {
        &self.vertices
    }

    pub fn skeleton(&self) -> &Graph {
        &self.skeleton
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Skeleton edges with their eps sets.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), VertexSet)> + '_ {
        self.skeleton.edges().iter().copied().zip(self.eps.iter().copied())
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.skeleton.edges().binary_search(&(i.min(j), i.max(j))).ok()
    }

    pub fn eps(&self, i: usize, j: usize) -> Option<VertexSet> {
        self.edge_index(i, j).map(|k| self.eps[k])
    }

    /// Index of the skeleton vertex equal to `set`.
    pub fn vertex_index(&self, set: VertexSet) -> Option<usize> {
        self.vertices.binary_search(&set).ok()
    }

    /// Union of the eps sets on edges at `i`.
    pub fn incident_eps(&self, i: usize) -> VertexSet {
        self.edges().filter(|((a, b), _)| *a == i || *b == i).fold(VertexSet::EMPTY, |acc, (_, e)| acc | e)
    }

    /// `V(H)_X`: skeleton vertices meeting `x` oddly, as a set of indices.
    pub fn odd_vertices(&self, x: VertexSet) -> VertexSet {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].meets_oddly(x)).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Axiom {
    Host,
    T1,
    T2,
    T4,
    T5,
    T6,
    T7,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }

    fn fail(&mut self, axiom: Axiom, detail: String) {
        self.failures.push(AxiomFailure { axiom, detail });
    }
}

/// Checks every axiom, scanning subsets exhaustively where needed.
pub fn validate_torsoid(host: &CoveredGraph, t: &Torsoid) -> ValidationReport {
    let mut report = ValidationReport::default();
    if host.graph() != &t.host {
        report.fail(Axiom::Host, "torsoid belongs to a different host graph".into());
        return report;
    }
    let h = &t.skeleton;
    let k = t.vertices.len();

    // T1
    if k < 4 {
        report.fail(Axiom::T1, alloc::format!("skeleton has {k} vertices"));
    } else if !is_matching_covered(h) {
        report.fail(Axiom::T1, "skeleton is not matching covered".into());
    } else if !h.is_cycle() {
        match CoveredGraph::with_bounds(h.clone(), host.bounds()) {
            Ok(sk) if sk.tight_cuts(true).is_empty() => {}
            Ok(_) => report.fail(Axiom::T1, "skeleton is neither a cycle nor free of nontrivial tight cuts".into()),
            Err(e) => report.fail(Axiom::T1, alloc::format!("skeleton could not be analysed: {e}")),
        }
    }

    // T2
    for &v in &t.vertices {
        if !host.is_tight(v) {
            report.fail(Axiom::T2, alloc::format!("{v:?} is not tight"));
        }
    }

    // T4
    let mut seen = VertexSet::EMPTY;
    let mut overlap = false;
    for &s in t.vertices.iter().chain(t.eps.iter()) {
        overlap |= s.intersects(seen);
        seen = seen | s;
    }
    if overlap {
        report.fail(Axiom::T4, "vertex and edge sets overlap".into());
    }
    if seen != host.vertices() {
        report.fail(Axiom::T4, alloc::format!("vertices {:?} are not covered", host.vertices() - seen));
    }

    // T5
    let g = host.graph();
    for ((i, j), e) in t.edges() {
        let (v, w) = (t.vertices[i], t.vertices[j]);
        if !g.joins(v | e, w) || !g.joins(w | e, v) {
            report.fail(Axiom::T5, alloc::format!("no edge across skeleton edge {i}-{j} beside eps"));
        }
        if !is_passable_for(host, e, v) || !is_passable_for(host, e, w) {
            report.fail(Axiom::T5, alloc::format!("eps of {i}-{j} is not passable for both ends"));
            continue;
        }
        let larger = (v | e | w)
            .subsets()
            .find(|&s| !s.is_subset(e) && is_passable_for(host, s, v) && is_passable_for(host, s, w));
        if let Some(s) = larger {
            report.fail(Axiom::T5, alloc::format!("{s:?} is passable for {i} and {j} but not inside eps"));
        }
    }

    // T6
    for i in 0..k {
        for j in i + 1..k {
            if !h.has_edge(i, j) && g.joins(t.vertices[i], t.vertices[j]) {
                report.fail(Axiom::T6, alloc::format!("host edge between non-adjacent {i} and {j}"));
            }
        }
    }

    // T7
    if h.is_cycle() {
        for v in 0..k {
            let nb = h.neighbors(v).to_vec();
            let (u, w) = (nb[0], nb[1]);
            let (eu, ew) = (t.eps(u, v).unwrap_or_default(), t.eps(v, w).unwrap_or_default());
            let region = eu | t.vertices[v] | ew;
            if let Some(parts) = three_split(host, region, t.vertices[u], t.vertices[w]) {
                report.fail(Axiom::T7, alloc::format!("region of {v} splits as {parts:?}"));
            }
        }
    }
    report
}

/// A partition of `region` into tight `p1, p2, p3` with `a ∪ p1 ∪ p2` and
/// `p2 ∪ p3 ∪ b` tight, trying both orientations.
fn three_split(host: &CoveredGraph, region: VertexSet, a: VertexSet, b: VertexSet) -> Option<[VertexSet; 3]> {
    for p1 in region.subsets() {
        if !host.is_tight(p1) {
            continue;
        }
        for p2 in (region - p1).subsets() {
            let p3 = region - p1 - p2;
            if !host.is_tight(p2) || !host.is_tight(p3) {
                continue;
            }
            for (x, y) in [(a, b), (b, a)] {
                if host.is_tight(x | p1 | p2) && host.is_tight(p2 | p3 | y) {
                    return Some([p1, p2, p3]);
                }
            }
        }
    }
    None
}

/// The induced torsoid of a partition plus `sigma`, mapping skeleton vertex
/// `i` to the index of its class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InducedTorsoid {
    pub torsoid: Torsoid,
    pub sigma: Vec<usize>,
}

pub fn induced_torsoid(p: &TightSetPartition<'_>) -> Result<InducedTorsoid> {
    if !p.classify().torsoid_inducing {
        return Err(Error::NotTorsoidInducing);
    }
    let host = p.host();
    let classes = p.classes();
    let collapse = &p.collapse().graph;
    let mut delta = Vec::with_capacity(collapse.edges().len());
    for &(i, j) in collapse.edges() {
        delta.push((i, j, largest_passable_between(host, classes[i], classes[j])?));
    }
    let tau: Vec<VertexSet> = (0..classes.len())
        .map(|i| {
            delta
                .iter()
                .filter(|(a, b, _)| *a == i || *b == i)
                .fold(classes[i], |acc, (_, _, d)| acc - *d)
        })
        .collect();
    let torsoid = Torsoid::from_parts(host.graph().clone(), &tau, &delta)?;
    let sigma = torsoid
        .vertices
        .iter()
        .map(|v| tau.iter().position(|t| t == v).expect("tau image"))
        .collect();
    Ok(InducedTorsoid { torsoid, sigma })
}

/// `pick[k]` is the chosen end of skeleton edge `k`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ChoiceFunction {
    pick: Vec<usize>,
}

impl ChoiceFunction {
    pub fn new(t: &Torsoid, pick: Vec<usize>) -> Result<Self> {
        let edges = t.skeleton.edges();
        if pick.len() != edges.len() || pick.iter().zip(edges).any(|(&p, &(a, b))| p != a && p != b) {
            return Err(Error::Precondition("choice must pick an end of every skeleton edge".into()));
        }
        Ok(ChoiceFunction { pick })
    }

    /// Choice with bit `k` of `mask` selecting the larger end of edge `k`.
    pub fn from_mask(t: &Torsoid, mask: u64) -> Self {
        let pick = t.skeleton.edges().iter().enumerate().map(|(k, &(a, b))| if mask >> k & 1 == 1 { b } else { a }).collect();
        ChoiceFunction { pick }
    }

    pub fn picks(&self) -> &[usize] {
        &self.pick
    }

    /// Every choice function of `t`, or an error if there are more than `limit`.
    pub fn all(t: &Torsoid, limit: usize) -> Result<Vec<ChoiceFunction>> {
        let m = t.skeleton.edges().len();
        if m >= 63 || (1usize << m) > limit {
            return Err(Error::BoundExceeded(alloc::format!("2^{m} choice functions")));
        }
        Ok((0..1u64 << m).map(|mask| ChoiceFunction::from_mask(t, mask)).collect())
    }
}

/// `P(T, κ)`.
pub fn partitions_from_choice<'g>(
    host: &'g CoveredGraph,
    t: &Torsoid,
    kappa: &ChoiceFunction,
) -> Result<TightSetPartition<'g>> {
    if host.graph() != &t.host {
        return Err(Error::HostMismatch);
    }
    let mut classes = t.vertices.clone();
    for (k, (_, e)) in t.edges().enumerate() {
        classes[kappa.pick[k]] = classes[kappa.pick[k]] | e;
    }
    let p = validate_partition(host, &classes)
        .map_err(|e| Error::Internal(alloc::format!("choice partition is not a tight set partition: {e}")))?;
    match find_torsoid_correspondence(t, &p) {
        Some(c) if c.strong => Ok(p),
        _ => Err(Error::Internal("choice partition is not in strong correspondence".into())),
    }
}

/// `map[i]` is the class index of skeleton vertex `i`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct TorsoidCorrespondence {
    pub map: Vec<usize>,
    pub strong: bool,
}

pub fn find_torsoid_correspondence(t: &Torsoid, p: &TightSetPartition<'_>) -> Option<TorsoidCorrespondence> {
    if p.host().graph() != &t.host || p.len() != t.len() {
        return None;
    }
    let mut map = Vec::with_capacity(t.len());
    let mut used = alloc::vec![false; p.len()];
    let mut strong = true;
    for (i, &v) in t.vertices.iter().enumerate() {
        let j = p.class_index(v.min()?);
        let class = p.classes()[j];
        if used[j] || !v.is_subset(class) || !class.is_subset(v | t.incident_eps(i)) {
            return None;
        }
        used[j] = true;
        map.push(j);
        strong &= t
            .edges()
            .filter(|((a, b), _)| *a == i || *b == i)
            .all(|(_, e)| e.is_subset(class) || e.is_disjoint(class));
    }
    Some(TorsoidCorrespondence { map, strong })
}

/// `θ` of the cut `∂(x)`.
pub fn theta_of_set(t: &Torsoid, x: VertexSet) -> usize {
    let odd = t.odd_vertices(x).len();
    odd.min(t.len() - odd)
}

pub fn theta(t: &Torsoid, c: &TightCutRecord) -> usize {
    theta_of_set(t, c.shore())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum ResidenceKind {
    Edge { edge: (usize, usize) },
    Vertex { vertex: usize, proper: bool },
    Interval { vertices: VertexSet },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Residence {
    pub kind: ResidenceKind,
    pub theta: usize,
    /// The shore of the cut satisfying the residence containments.
    pub witness: VertexSet,
}

/// Places the cut `∂(x)` at an edge, a vertex or an interval of `t`.
pub fn classify_residence(host: &CoveredGraph, t: &Torsoid, x: VertexSet) -> Result<Residence> {
    if host.graph() != &t.host {
        return Err(Error::HostMismatch);
    }
    if !host.is_tight(x) {
        return Err(Error::NotTight(x));
    }
    let n = t.len();
    let shores = [x, host.vertices() - x];
    let odd = [t.odd_vertices(shores[0]), t.odd_vertices(shores[1])];
    let th = odd[0].len().min(odd[1].len());
    let fail = |what: &str| Error::Internal(alloc::format!("tight set {x:?} with theta {th}: {what}"));
    let mut order = [0usize, 1];
    order.sort_by(|&a, &b| shores[a].cmp(&shores[b]));
    match th {
        0 => {
            for s in order.iter().map(|&s| shores[s]).filter(|s| t.odd_vertices(*s).is_empty()) {
                if let Some((edge, _)) = t.edges().find(|(_, e)| s.is_subset(*e)) {
                    return Ok(Residence { kind: ResidenceKind::Edge { edge }, theta: 0, witness: s });
                }
            }
            Err(fail("no eps set contains a shore"))
        }
        1 => {
            for &s in &order {
                if odd[s].len() != 1 {
                    continue;
                }
                let y = shores[s];
                let v = odd[s].min().unwrap_or_default();
                let inside = y.is_subset(t.vertices[v] | t.incident_eps(v));
                let even = t.edges().filter(|((a, b), _)| *a == v || *b == v).all(|(_, e)| !e.meets_oddly(y));
                if inside && even {
                    let proper = t.vertices[v].is_subset(y);
                    return Ok(Residence { kind: ResidenceKind::Vertex { vertex: v, proper }, theta: 1, witness: y });
                }
            }
            Err(fail("no shore lies at its odd vertex"))
        }
        2 => Err(fail("theta is two")),
        _ if th % 2 == 0 => Err(fail("theta is even")),
        _ if !t.cyclic => Err(fail("noncyclic torsoid")),
        _ => {
            for &s in &order {
                let interval = odd[s];
                if interval.len() != th || th + 3 > n || !t.skeleton.induces_connected(interval) {
                    continue;
                }
                let mut inner = t.vertices_union(interval);
                let mut outer = inner;
                for ((a, b), e) in t.edges() {
                    match (interval.contains(a), interval.contains(b)) {
                        (true, true) => {
                            inner = inner | e;
                            outer = outer | e;
                        }
                        (true, false) | (false, true) => outer = outer | e,
                        _ => {}
                    }
                }
                let y = shores[s];
                if inner.is_subset(y) && y.is_subset(outer) {
                    return Ok(Residence { kind: ResidenceKind::Interval { vertices: interval }, theta: th, witness: y });
                }
            }
            Err(fail("no shore is sandwiched at its interval"))
        }
    }
}

impl Torsoid {
    /// Union of the skeleton vertex sets with the given indices.
    pub fn vertices_union(&self, indices: VertexSet) -> VertexSet {
        indices.iter().fold(VertexSet::EMPTY, |acc, i| acc | self.vertices[i])
    }
}

/// Induced torsoids of every torsoid inducing partition, deduplicated.
pub fn torsoids_by_exhaustion(host: &CoveredGraph, limit: usize) -> Result<Vec<Torsoid>> {
    let mut out = BTreeSet::new();
    for p in torsoid_inducing_partitions(host, limit)? {
        out.insert(induced_torsoid(&p)?.torsoid);
    }
    Ok(out.into_iter().collect())
}

/// Torsoids of the host: the images of all torsos of one maximal nested
/// family under `κ`, deduplicated and each validated.
pub fn enumerate_torsoids(host: &CoveredGraph) -> Result<Vec<Torsoid>> {
    enumerate_torsoids_seeded(host, 0)
}

pub fn enumerate_torsoids_seeded(host: &CoveredGraph, seed: u64) -> Result<Vec<Torsoid>> {
    let family = seeded_maximal_family(host, seed);
    let mut out = BTreeSet::new();
    for torso in crate::torso::torsos(host, &family)? {
        let t = crate::torso::kappa_of_torso(&torso)?;
        let report = validate_torsoid(host, &t);
        if !report.is_valid() {
            return Err(Error::Internal(alloc::format!("computed torsoid fails {:?}", report.failures)));
        }
        out.insert(t);
    }
    Ok(out.into_iter().collect())
}
