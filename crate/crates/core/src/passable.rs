use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::tight::CoveredGraph;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct PassabilityWitness {
    pub set: VertexSet,
    pub for_p: bool,
    pub for_q: bool,
}

/// How [`largest_passable_between`] searches.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    /// Union of the passable subsets of each side.
    #[default]
    Frontier,
    /// Union of every passable even subset of `P ∪ Q`.
    Scan,
}

/// `P ∖ S` and `P ∪ S` are both tight.
pub fn is_passable_for(host: &CoveredGraph, s: VertexSet, p: VertexSet) -> bool {
    host.is_tight(p - s) && host.is_tight(p | s)
}

fn check_pair(host: &CoveredGraph, p: VertexSet, q: VertexSet) -> Result<()> {
    if p.intersects(q) {
        return Err(Error::Precondition(alloc::format!("{p:?} and {q:?} are not disjoint")));
    }
    for x in [p, q] {
        if !host.is_tight(x) {
            return Err(Error::NotTight(x));
        }
    }
    Ok(())
}

pub fn passability(host: &CoveredGraph, s: VertexSet, p: VertexSet, q: VertexSet) -> Result<PassabilityWitness> {
    check_pair(host, p, q)?;
    Ok(PassabilityWitness { set: s, for_p: is_passable_for(host, s, p), for_q: is_passable_for(host, s, q) })
}

/// `S ⊆ P ∪ Q` and `S` is passable for both `P` and `Q`.
pub fn is_passable_between(host: &CoveredGraph, s: VertexSet, p: VertexSet, q: VertexSet) -> Result<bool> {
    let w = passability(host, s, p, q)?;
    Ok(s.is_subset(p | q) && w.for_p && w.for_q)
}

/// Every set passable between `p` and `q`, ascending.
pub fn all_passable_between(host: &CoveredGraph, p: VertexSet, q: VertexSet) -> Result<Vec<VertexSet>> {
    check_pair(host, p, q)?;
    Ok((p | q)
        .subsets()
        .filter(|s| s.len() % 2 == 0)
        .filter(|&s| is_passable_for(host, s, p) && is_passable_for(host, s, q))
        .collect())
}

/// The largest set passable between disjoint tight sets whose union is not
/// the whole vertex set.
pub fn largest_passable_between(host: &CoveredGraph, p: VertexSet, q: VertexSet) -> Result<VertexSet> {
    largest_passable_with(host, p, q, Strategy::Frontier)
}

pub fn largest_passable_with(host: &CoveredGraph, p: VertexSet, q: VertexSet, strategy: Strategy) -> Result<VertexSet> {
    check_pair(host, p, q)?;
    if p | q == host.vertices() {
        return Err(Error::Precondition("passable sets need P ∪ Q to miss a vertex".into()));
    }
    let both = |s: VertexSet| is_passable_for(host, s, p) && is_passable_for(host, s, q);
    let best = match strategy {
        Strategy::Scan => (p | q).subsets().filter(|s| s.len() % 2 == 0 && both(*s)).fold(VertexSet::EMPTY, |a, s| a | s),
        // a passable set meets each side in a passable set, and passable sets
        // are closed under union
        Strategy::Frontier => {
            let side = |x: VertexSet| x.subsets().filter(|s| s.len() % 2 == 0 && both(*s)).fold(VertexSet::EMPTY, |a, s| a | s);
            side(p) | side(q)
        }
    };
    if !both(best) {
        return Err(Error::Internal(alloc::format!("union {best:?} of passable sets is not passable")));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn passable_examples() {
        let lad = CoveredGraph::new(corpus::k4_ladder()).unwrap();
        assert!(is_passable_between(&lad, VertexSet::EMPTY, set(&[0]), set(&[1])).unwrap());
        // {p1,p2} is passable for both {u} and {v} but lies outside their union
        let w = passability(&lad, set(&[4, 5]), set(&[0]), set(&[1])).unwrap();
        assert!(w.for_p && w.for_q);
        assert!(!is_passable_between(&lad, set(&[4, 5]), set(&[0]), set(&[1])).unwrap());
        assert!(is_passable_between(&lad, set(&[4, 5]), set(&[0, 4, 5]), set(&[1])).unwrap());
        let c6 = CoveredGraph::new(corpus::cycle(6)).unwrap();
        assert!(is_passable_between(&c6, set(&[1, 2]), set(&[0]), set(&[1, 2, 3])).unwrap());
        assert!(is_passable_between(&c6, set(&[0]), set(&[0]), set(&[0, 1])).is_err());
    }

    #[test]
    fn largest_examples() {
        let c6 = CoveredGraph::new(corpus::cycle(6)).unwrap();
        assert_eq!(largest_passable_between(&c6, set(&[0]), set(&[1])).unwrap(), VertexSet::EMPTY);
        let lad = CoveredGraph::new(corpus::k4_ladder()).unwrap();
        for strategy in [Strategy::Frontier, Strategy::Scan] {
            assert_eq!(largest_passable_with(&lad, set(&[0, 4, 5]), set(&[1]), strategy).unwrap(), set(&[4, 5]));
            assert_eq!(largest_passable_with(&lad, set(&[0]), set(&[1]), strategy).unwrap(), VertexSet::EMPTY);
            assert_eq!(largest_passable_with(&lad, set(&[0]), set(&[2]), strategy).unwrap(), VertexSet::EMPTY);
        }
        assert!(matches!(
            largest_passable_between(&c6, set(&[0, 1, 2]), set(&[3, 4, 5])),
            Err(Error::Precondition(_))
        ));
    }
}
