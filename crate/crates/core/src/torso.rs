use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::partition::{validate_partition, CollapseResult, TightSetPartition};
use crate::tight::{CoveredGraph, NestedCutFamily};
use crate::torsoid::{classify_residence, induced_torsoid, ResidenceKind, Torsoid};

/// Collapse of a maximal star of a nested family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Torso<'g> {
    pub star: TightSetPartition<'g>,
    pub c4: bool,
}

impl<'g> Torso<'g> {
    pub fn graph(&self) -> &CollapseResult {
        self.star.collapse()
    }

    pub fn classes(&self) -> &[VertexSet] {
        self.star.classes()
    }
}

fn require_maximal(family: &NestedCutFamily) -> Result<()> {
    if !family.is_maximal() {
        return Err(Error::NotMaximal);
    }
    Ok(())
}

/// Partitions into at least four members of `D(C)` whose collapse is a BoB,
/// assembled class by class around the least uncovered vertex.
pub fn maximal_stars<'g>(host: &'g CoveredGraph, family: &NestedCutFamily) -> Result<Vec<TightSetPartition<'g>>> {
    require_maximal(family)?;
    let pieces = family.tight_sets();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    assemble(host, &pieces, host.vertices(), &mut chosen, &mut out)?;
    out.sort_by(|a, b| a.classes().cmp(b.classes()));
    Ok(out)
}

fn assemble<'g>(
    host: &'g CoveredGraph,
    pieces: &[VertexSet],
    left: VertexSet,
    chosen: &mut Vec<VertexSet>,
    out: &mut Vec<TightSetPartition<'g>>,
) -> Result<()> {
    let Some(v) = left.min() else {
        if chosen.len() >= 4 {
            let p = validate_partition(host, chosen)?;
            if p.classify().is_bob() {
                out.push(p);
            }
        }
        return Ok(());
    };
    for &s in pieces {
        if s.contains(v) && s.is_subset(left) {
            chosen.push(s);
            assemble(host, pieces, left - s, chosen, out)?;
            chosen.pop();
        }
    }
    Ok(())
}

pub fn torsos<'g>(host: &'g CoveredGraph, family: &NestedCutFamily) -> Result<Vec<Torso<'g>>> {
    Ok(maximal_stars(host, family)?
        .into_iter()
        .map(|star| {
            let c4 = star.len() == 4 && star.is_cyclic();
            Torso { star, c4 }
        })
        .collect())
}

/// Every torso vertex contains a skeleton vertex.
pub fn cleaves(torso: &Torso<'_>, t: &Torsoid) -> Result<bool> {
    if torso.star.host().graph() != t.host() {
        return Err(Error::HostMismatch);
    }
    Ok(torso.classes().iter().all(|&c| t.vertices().iter().any(|v| v.is_subset(c))))
}

/// The unique torsoid cleaved by `torso`.
pub fn kappa_of_torso(torso: &Torso<'_>) -> Result<Torsoid> {
    let t = if torso.c4 {
        induced_torsoid(&torso.star.refine_to_maximal_cyclic()?)?.torsoid
    } else {
        induced_torsoid(&torso.star)?.torsoid
    };
    if !cleaves(torso, &t)? {
        return Err(Error::Internal("torso does not cleave its torsoid".into()));
    }
    Ok(t)
}

/// A nested family of tight cuts of a torsoid skeleton.
#[derive(Debug)]
pub struct SkeletonFamily {
    pub skeleton: CoveredGraph,
    pub family: NestedCutFamily,
}

/// `C^T`: the projections `V(H)_X` of members of `C` residing properly at a
/// vertex or at an interval.
pub fn residents_family(host: &CoveredGraph, family: &NestedCutFamily, t: &Torsoid) -> Result<SkeletonFamily> {
    require_maximal(family)?;
    let skeleton = CoveredGraph::with_bounds(t.skeleton().clone(), host.bounds())?;
    let mut shores = Vec::new();
    for cut in family.cuts() {
        let r = classify_residence(host, t, cut.shore())?;
        let keep = match r.kind {
            ResidenceKind::Vertex { proper, .. } => proper,
            ResidenceKind::Interval { .. } => true,
            ResidenceKind::Edge { .. } => false,
        };
        if keep {
            shores.push(t.odd_vertices(r.witness));
        }
    }
    let family = NestedCutFamily::from_shores(&skeleton, &shores)
        .map_err(|e| Error::Internal(alloc::format!("projected family is not nested: {e}")))?;
    if !family.is_maximal() {
        return Err(Error::Internal("projected family is not maximal".into()));
    }
    Ok(SkeletonFamily { skeleton, family })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ResidentTarget {
    Vertex(usize),
    Interval(VertexSet),
}

/// The member of `D(C)` containing every member with the target's odd
/// signature.
pub fn maximal_resident(
    host: &CoveredGraph,
    family: &NestedCutFamily,
    t: &Torsoid,
    target: ResidentTarget,
) -> Result<VertexSet> {
    if host.graph() != t.host() {
        return Err(Error::HostMismatch);
    }
    let signature = match target {
        ResidentTarget::Vertex(v) if v < t.len() => VertexSet::singleton(v),
        ResidentTarget::Interval(i) if i.is_subset(VertexSet::full(t.len())) && i.len() >= 3 => i,
        _ => return Err(Error::Precondition("target is not a skeleton vertex or interval".into())),
    };
    let members: Vec<VertexSet> =
        family.tight_sets().into_iter().filter(|&y| t.odd_vertices(y) == signature).collect();
    if members.is_empty() {
        return Err(Error::Precondition(alloc::format!("no member of the family has odd signature {signature:?}")));
    }
    let union = members.iter().fold(VertexSet::EMPTY, |acc, &y| acc | y);
    if !members.contains(&union) {
        return Err(Error::Internal(alloc::format!("members with signature {signature:?} have no largest element")));
    }
    Ok(union)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreimageGroup {
    pub torsoid: Torsoid,
    /// Indices into the torso list.
    pub torsos: Vec<usize>,
    pub c4_torsos: usize,
    pub expected: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PreimageReport {
    pub groups: Vec<PreimageGroup>,
    pub violations: Vec<String>,
}

impl PreimageReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Groups the torsos of `family` by their `κ` image and checks the counts:
/// one non-C4 torso per noncyclic torsoid, `n/2 - 1` C4 torsos per cyclic
/// torsoid on `n` skeleton vertices.
pub fn verify_preimage_counts(host: &CoveredGraph, family: &NestedCutFamily) -> Result<PreimageReport> {
    let all = torsos(host, family)?;
    let mut groups: BTreeMap<Torsoid, Vec<usize>> = BTreeMap::new();
    for (i, torso) in all.iter().enumerate() {
        groups.entry(kappa_of_torso(torso)?).or_default().push(i);
    }
    let mut report = PreimageReport::default();
    for (torsoid, members) in groups {
        let c4_torsos = members.iter().filter(|&&i| all[i].c4).count();
        let expected = if torsoid.is_cyclic() { torsoid.len() / 2 - 1 } else { 1 };
        let ok = if torsoid.is_cyclic() {
            members.len() == expected && c4_torsos == expected
        } else {
            members.len() == 1 && c4_torsos == 0
        };
        if !ok {
            report.violations.push(alloc::format!(
                "torsoid on {:?}: {} torsos ({} C4), expected {}",
                torsoid.vertices(),
                members.len(),
                c4_torsos,
                expected
            ));
        }
        report.groups.push(PreimageGroup { torsoid, torsos: members, c4_torsos, expected });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::tight::{enumerate_maximal_nested_families, extend_to_maximal_nested_family};

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn c6_stars_and_kappa() {
        let h = CoveredGraph::new(corpus::cycle(6)).unwrap();
        let seed = [h.record(set(&[0, 1, 2])).unwrap()];
        let fam = extend_to_maximal_nested_family(&h, &seed).unwrap();
        let stars = maximal_stars(&h, &fam).unwrap();
        let classes: Vec<&[VertexSet]> = stars.iter().map(|s| s.classes()).collect();
        assert_eq!(
            classes,
            [
                &[set(&[0]), set(&[1]), set(&[2]), set(&[3, 4, 5])][..],
                &[set(&[0, 1, 2]), set(&[3]), set(&[4]), set(&[5])][..],
            ]
        );
        let ts = torsos(&h, &fam).unwrap();
        assert!(ts.iter().all(|t| t.c4));
        let a = kappa_of_torso(&ts[0]).unwrap();
        let b = kappa_of_torso(&ts[1]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert!(cleaves(&ts[0], &a).unwrap());
    }

    #[test]
    fn k4_single_star() {
        let h = CoveredGraph::new(corpus::k4()).unwrap();
        let fam = extend_to_maximal_nested_family(&h, &[]).unwrap();
        let stars = maximal_stars(&h, &fam).unwrap();
        assert_eq!(stars.len(), 1);
        assert_eq!(stars[0].len(), 4);
    }

    #[test]
    fn ladder_torsos() {
        let h = CoveredGraph::new(corpus::k4_ladder()).unwrap();
        let fams = enumerate_maximal_nested_families(&h, 100).unwrap();
        assert_eq!(fams.len(), 2);
        let mut brick_images = Vec::new();
        for fam in &fams {
            let ts = torsos(&h, fam).unwrap();
            let k4: Vec<&Torso> = ts.iter().filter(|t| !t.c4).collect();
            assert_eq!(k4.len(), 1);
            brick_images.push(kappa_of_torso(k4[0]).unwrap());
            assert!(verify_preimage_counts(&h, fam).unwrap().holds());
        }
        assert_eq!(brick_images[0], brick_images[1]);
        assert_eq!(brick_images[0].eps(0, 1), Some(set(&[4, 5])));
    }

    #[test]
    fn maximal_residents() {
        let h = CoveredGraph::new(corpus::k4_ladder()).unwrap();
        let seed = [h.record(set(&[0, 4, 5])).unwrap()];
        let fam = extend_to_maximal_nested_family(&h, &seed).unwrap();
        let ts = torsos(&h, &fam).unwrap();
        let brick = kappa_of_torso(ts.iter().find(|t| !t.c4).unwrap()).unwrap();
        assert_eq!(maximal_resident(&h, &fam, &brick, ResidentTarget::Vertex(0)).unwrap(), set(&[0, 4, 5]));
        assert_eq!(maximal_resident(&h, &fam, &brick, ResidentTarget::Vertex(1)).unwrap(), set(&[1]));
        let rf = residents_family(&h, &fam, &brick).unwrap();
        assert_eq!(rf.family.len(), 4);

        let c6 = CoveredGraph::new(corpus::cycle(6)).unwrap();
        let seed = [c6.record(set(&[0, 1, 2])).unwrap()];
        let fam = extend_to_maximal_nested_family(&c6, &seed).unwrap();
        let t = kappa_of_torso(&torsos(&c6, &fam).unwrap()[0]).unwrap();
        let interval = ResidentTarget::Interval(set(&[0, 1, 2]));
        assert_eq!(maximal_resident(&c6, &fam, &t, interval).unwrap(), set(&[0, 1, 2]));
        assert_eq!(residents_family(&c6, &fam, &t).unwrap().family.len(), 7);
        let missing = ResidentTarget::Interval(set(&[1, 2, 3]));
        assert!(matches!(maximal_resident(&c6, &fam, &t, missing), Err(Error::Precondition(_))));
    }

    #[test]
    fn cycle_preimages() {
        for n in [6, 8, 10] {
            let h = CoveredGraph::new(corpus::cycle(n)).unwrap();
            let fam = extend_to_maximal_nested_family(&h, &[]).unwrap();
            let report = verify_preimage_counts(&h, &fam).unwrap();
            assert!(report.holds(), "{:?}", report.violations);
            assert_eq!(report.groups.len(), 1);
            assert_eq!(report.groups[0].torsos.len(), n / 2 - 1);
        }
    }
}
