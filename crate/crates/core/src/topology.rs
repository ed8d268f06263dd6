//! Finite topological spaces given by their full family of closed sets.

use std::collections::HashSet;

use crate::poset_space::{bits, canonical_key, full_mask, PointSet, SpecSpace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    pub labels: Vec<String>,
    /// Closed sets in canonical order, without duplicates.
    pub closed: Vec<PointSet>,
}

impl FiniteSpace {
    pub fn new(labels: Vec<String>, mut closed: Vec<PointSet>) -> Self {
        closed.sort_unstable_by_key(|&c| canonical_key(c));
        closed.dedup();
        FiniteSpace { labels, closed }
    }

    /// The Alexandrov topology of a specialization order: closed sets are
    /// the down-sets.
    pub fn from_order(space: &SpecSpace) -> crate::Result<Self> {
        let family = space.enumerate_spcl()?;
        Ok(FiniteSpace::new(space.points().to_vec(), family.members))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn all(&self) -> PointSet {
        full_mask(self.len())
    }

    pub fn is_closed(&self, set: PointSet) -> bool {
        self.closed
            .binary_search_by_key(&canonical_key(set), |&c| canonical_key(c))
            .is_ok()
    }

    /// Smallest closed set containing `set`.
    pub fn closure(&self, set: PointSet) -> PointSet {
        self.closed
            .iter()
            .filter(|&&c| set & !c == 0)
            .fold(self.all(), |acc, &c| acc & c)
    }

    /// Checks the closed-set axioms (finite case).
    pub fn is_topology(&self) -> bool {
        let all = self.all();
        if !self.is_closed(0) || !self.is_closed(all) {
            return false;
        }
        self.closed.iter().all(|&a| {
            a & !all == 0
                && self
                    .closed
                    .iter()
                    .all(|&b| self.is_closed(a | b) && self.is_closed(a & b))
        })
    }

    /// Distinct points have distinct closures.
    pub fn is_t0(&self) -> bool {
        let cl: HashSet<PointSet> = (0..self.len()).map(|p| self.closure(1 << p)).collect();
        cl.len() == self.len()
    }

    /// Closed sets of the subspace on `subset`, re-indexed to `0..|subset|`.
    pub fn subspace(&self, subset: PointSet) -> FiniteSpace {
        let keep: Vec<usize> = bits(subset).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let closed = self.closed.iter().map(|&c| compress(c, &keep)).collect();
        FiniteSpace::new(labels, closed)
    }
}

/// Re-indexes `set ∩ keep` onto `0..keep.len()`.
pub(crate) fn compress(set: PointSet, keep: &[usize]) -> PointSet {
    keep.iter()
        .enumerate()
        .filter(|(_, &i)| set & (1 << i) != 0)
        .fold(0, |acc, (j, _)| acc | 1 << j)
}

/// Outcome of checking that a map of finite spaces is an immersion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersionCheck {
    pub injective: bool,
    /// Pulling back closed sets of the target gives exactly the source
    /// topology.
    pub subspace_topology: bool,
    pub surjective: bool,
    pub image: PointSet,
}

impl ImmersionCheck {
    pub fn is_immersion(&self) -> bool {
        self.injective && self.subspace_topology
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.is_immersion() && self.surjective
    }
}

/// `map[i]` is the image of source point `i` in `target`.
pub fn check_immersion(
    source: &FiniteSpace,
    target: &FiniteSpace,
    map: &[usize],
) -> ImmersionCheck {
    let image = map.iter().fold(0u64, |acc, &j| acc | 1 << j);
    let injective = image.count_ones() as usize == map.len();
    let pulled: HashSet<PointSet> = target
        .closed
        .iter()
        .map(|&c| {
            map.iter()
                .enumerate()
                .filter(|(_, &j)| c & (1 << j) != 0)
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let own: HashSet<PointSet> = source.closed.iter().copied().collect();
    ImmersionCheck {
        injective,
        subspace_topology: pulled == own,
        surjective: image == target.all(),
        image,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alexandrov_topology_of_v_model() {
        let v = FiniteSpace::from_order(&SpecSpace::v_model()).unwrap();
        assert!(v.is_topology());
        assert!(v.is_t0());
        assert_eq!(v.closure(0b100), 0b111);
        assert_eq!(v.closure(0b001), 0b001);
    }

    #[test]
    fn immersion_of_closed_point() {
        let v = FiniteSpace::from_order(&SpecSpace::v_model()).unwrap();
        let pt = FiniteSpace::new(vec!["a".into()], vec![0, 1]);
        let c = check_immersion(&pt, &v, &[0]);
        assert!(c.is_immersion() && !c.surjective);
        // Sierpinski topology does not embed on {a, b}
        let s = FiniteSpace::from_order(&SpecSpace::sierpinski()).unwrap();
        let c = check_immersion(&s, &v, &[0, 1]);
        assert!(c.injective && !c.subspace_topology);
    }

    #[test]
    fn subspace_restricts() {
        let v = FiniteSpace::from_order(&SpecSpace::v_model()).unwrap();
        let sub = v.subspace(0b011);
        assert_eq!(sub.closed, vec![0, 1, 2, 3]);
    }
}
