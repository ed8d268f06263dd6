//! Finite lattices standing in for the lattice of thick subcategories.
//!
//! Elements are kept in a linear extension of the order, so the bottom is
//! always index `0` and the top is the last index. Order is stored as up-set
//! and down-set bit rows.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset_space::{bits, PointSet, SpecSpace};

/// Largest lattice the order-table representation accepts.
pub const MAX_ELEMENTS: usize = 4096;

#[derive(Clone)]
pub enum Provenance {
    /// Lattice of specialization-closed subsets of a space.
    Classified(Arc<SpecSpace>),
    Explicit,
    Augmented {
        base: Arc<ThickLattice>,
        atoms: Vec<String>,
    },
    Quotient {
        base: Arc<ThickLattice>,
        k: String,
    },
    Transported {
        base: Arc<ThickLattice>,
    },
}

impl fmt::Debug for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Classified(s) => write!(f, "classified({})", s.name().unwrap_or("?")),
            Provenance::Explicit => write!(f, "explicit"),
            Provenance::Augmented { atoms, .. } => write!(f, "augmented({atoms:?})"),
            Provenance::Quotient { k, .. } => write!(f, "quotient({k})"),
            Provenance::Transported { .. } => write!(f, "transported"),
        }
    }
}

#[derive(Clone)]
pub struct ThickLattice {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    objects: FixedBitSet,
    provenance: Provenance,
    /// For classified lattices: the subset each element stands for.
    masks: Option<Vec<PointSet>>,
}

impl fmt::Debug for ThickLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ThickLattice")
            .field("elements", &self.ids)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl PartialEq for ThickLattice {
    /// Same element ids, order and objects; provenance is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.up == other.up && self.objects == other.objects
    }
}

impl Eq for ThickLattice {}

impl ThickLattice {
    /// Assembles a lattice from up-set rows over elements already listed in a
    /// linear extension. Lattice axioms are not checked here.
    fn assemble(
        ids: Vec<String>,
        up: Vec<FixedBitSet>,
        objects: FixedBitSet,
        provenance: Provenance,
        masks: Option<Vec<PointSet>>,
    ) -> Result<Self> {
        let n = ids.len();
        let mut index = HashMap::with_capacity(n);
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateElement(id.clone()));
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        let upper_covers = match &masks {
            Some(m) => classified_covers(m),
            None => (0..n)
                .map(|a| {
                    let mut strict = up[a].clone();
                    strict.set(a, false);
                    strict
                        .ones()
                        .filter(|&c| {
                            let mut between = strict.clone();
                            between.intersect_with(&down[c]);
                            between.set(c, false);
                            between.is_clear()
                        })
                        .collect()
                })
                .collect(),
        };
        Ok(ThickLattice {
            ids,
            index,
            up,
            down,
            upper_covers,
            objects,
            provenance,
            masks,
        })
    }

    /// Lattice of all specialization-closed subsets of `space` under
    /// inclusion. Every element is an object.
    pub fn from_support_data(space: &SpecSpace) -> Result<Self> {
        let count = space.count_spcl();
        if count > MAX_ELEMENTS as u128 {
            return Err(Error::CapExceeded {
                what: "lattice size",
                size: usize::try_from(count).unwrap_or(usize::MAX),
                cap: MAX_ELEMENTS,
            });
        }
        let family = space.enumerate_spcl()?;
        let masks = family.members;
        let n = masks.len();
        let ids: Vec<String> = masks.iter().map(|&m| space.set_label(m)).collect();
        let up: Vec<FixedBitSet> = masks
            .iter()
            .map(|&a| {
                let mut row = FixedBitSet::with_capacity(n);
                for (j, &b) in masks.iter().enumerate() {
                    if a & !b == 0 {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let mut objects = FixedBitSet::with_capacity(n);
        objects.insert_range(..);
        Self::assemble(
            ids,
            up,
            objects,
            Provenance::Classified(Arc::new(space.clone())),
            Some(masks),
        )
    }

    /// Lattice from element ids, cover pairs `(lower, upper)` and the ids of
    /// the principal elements.
    pub fn from_explicit<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
        objects: &[S],
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::CapExceeded {
                what: "lattice size",
                size: n,
                cap: MAX_ELEMENTS,
            });
        }
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.as_ref(), i).is_some() {
                return Err(Error::DuplicateElement(e.as_ref().to_string()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()))
        };
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo)?, lookup(hi)?);
            if lo == hi {
                return Err(Error::Cycle(elements[lo].as_ref().to_string()));
            }
            succ[lo].push(hi);
            indegree[hi] += 1;
        }
        // Kahn's algorithm, always taking the earliest listed ready element.
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&i) = ready.iter().next() {
            ready.remove(&i);
            order.push(i);
            for &j in &succ[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.insert(j);
                }
            }
        }
        if order.len() != n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap();
            return Err(Error::Cycle(elements[stuck].as_ref().to_string()));
        }
        let mut pos = vec![0usize; n];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &i in order.iter().rev() {
            let p = pos[i];
            up[p].insert(p);
            for &j in &succ[i] {
                let row = up[pos[j]].clone();
                up[p].union_with(&row);
            }
        }
        let ids: Vec<String> = order
            .iter()
            .map(|&i| elements[i].as_ref().to_string())
            .collect();
        let mut obj = FixedBitSet::with_capacity(n);
        for o in objects {
            obj.insert(pos[lookup(o)?]);
        }
        let lat = Self::assemble(ids, up, obj, Provenance::Explicit, None)?;
        lat.validate()?;
        Ok(lat)
    }

    /// Checks the lattice axioms and the object conditions.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                let mut u = self.up[a].clone();
                u.intersect_with(&self.up[b]);
                match u.ones().next() {
                    Some(c) if self.up[c] == u => {}
                    _ => {
                        return Err(Error::NotALattice(
                            self.ids[a].clone(),
                            self.ids[b].clone(),
                            "join",
                        ))
                    }
                }
                let mut d = self.down[a].clone();
                d.intersect_with(&self.down[b]);
                match d.ones().last() {
                    Some(c) if self.down[c] == d => {}
                    _ => {
                        return Err(Error::NotALattice(
                            self.ids[a].clone(),
                            self.ids[b].clone(),
                            "meet",
                        ))
                    }
                }
            }
        }
        if !self.objects.contains(self.bottom()) {
            return Err(Error::InvalidObjects(
                "objects must contain the bottom".into(),
            ));
        }
        let objs: Vec<usize> = self.objects.ones().collect();
        for &a in &objs {
            for &b in &objs {
                if !self.objects.contains(self.join(a, b)) {
                    return Err(Error::InvalidObjects(format!(
                        "join of `{}` and `{}` is not an object",
                        self.ids[a], self.ids[b]
                    )));
                }
            }
        }
        // Every element is the union of the principal pieces it contains.
        for e in 0..n {
            let gen = objs
                .iter()
                .filter(|&&o| self.leq(o, e))
                .fold(self.bottom(), |acc, &o| self.join(acc, o));
            if gen != e {
                return Err(Error::InvalidObjects(format!(
                    "`{}` is not the join of the objects below it",
                    self.ids[e]
                )));
            }
        }
        Ok(())
    }

    /// Adds pairwise incomparable atoms strictly between bottom and top.
    ///
    /// Each atom joins with any other non-bottom element to the top and meets
    /// any other non-top element in the bottom.
    pub fn augment<S: AsRef<str>>(base: &ThickLattice, atom_labels: &[S]) -> Result<Self> {
        if atom_labels.is_empty() {
            return Err(Error::EmptyLabels);
        }
        if base.len() < 2 {
            return Err(Error::TrivialBase);
        }
        let mut seen: HashSet<&str> = HashSet::new();
        for l in atom_labels {
            let l = l.as_ref();
            if !seen.insert(l) || base.index.contains_key(l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        let n0 = base.len();
        let m = atom_labels.len();
        let n = n0 + m;
        if n > MAX_ELEMENTS {
            return Err(Error::CapExceeded {
                what: "lattice size",
                size: n,
                cap: MAX_ELEMENTS,
            });
        }
        // Layout: base elements except top, then atoms, then top.
        let remap = |i: usize| if i == n0 - 1 { n - 1 } else { i };
        let mut ids: Vec<String> = base.ids[..n0 - 1].to_vec();
        ids.extend(atom_labels.iter().map(|l| l.as_ref().to_string()));
        ids.push(base.ids[n0 - 1].clone());
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n0 {
            for b in base.up[a].ones() {
                up[remap(a)].insert(remap(b));
            }
        }
        up[0].insert_range(n0 - 1..n);
        for k in 0..m {
            up[n0 - 1 + k].insert(n0 - 1 + k);
            up[n0 - 1 + k].insert(n - 1);
        }
        let mut objects = FixedBitSet::with_capacity(n);
        for o in base.objects.ones() {
            objects.insert(remap(o));
        }
        objects.insert_range(n0 - 1..n - 1);
        let lat = Self::assemble(
            ids,
            up,
            objects,
            Provenance::Augmented {
                base: Arc::new(base.clone()),
                atoms: atom_labels.iter().map(|l| l.as_ref().to_string()).collect(),
            },
            None,
        )?;
        lat.validate()?;
        Ok(lat)
    }

    /// The interval `[k, top]`, whose objects are the joins `a ∨ k` of
    /// objects `a`, together with its inclusion back into `self`.
    pub fn quotient(&self, k: &str) -> Result<(ThickLattice, LatticeMap)> {
        let k_idx = self.index_of(k)?;
        let keep: Vec<usize> = self.up[k_idx].ones().collect();
        let n = keep.len();
        let mut pos = HashMap::with_capacity(n);
        for (p, &e) in keep.iter().enumerate() {
            pos.insert(e, p);
        }
        let ids = keep.iter().map(|&e| self.ids[e].clone()).collect();
        let up = keep
            .iter()
            .map(|&e| {
                let mut row = FixedBitSet::with_capacity(n);
                for f in self.up[e].ones() {
                    row.insert(pos[&f]);
                }
                row
            })
            .collect();
        let mut objects = FixedBitSet::with_capacity(n);
        for a in self.objects.ones() {
            objects.insert(pos[&self.join(a, k_idx)]);
        }
        let masks = self
            .masks
            .as_ref()
            .map(|m| keep.iter().map(|&e| m[e]).collect());
        let lat = Self::assemble(
            ids,
            up,
            objects,
            Provenance::Quotient {
                base: Arc::new(self.clone()),
                k: k.to_string(),
            },
            masks,
        )?;
        Ok((
            lat,
            LatticeMap {
                kind: MapKind::QuotientPreimage,
                forward: keep,
            },
        ))
    }

    /// Renames every element through `relabel`, which must be a bijection of
    /// the element ids onto new distinct ids.
    pub fn transport(
        &self,
        relabel: &HashMap<String, String>,
    ) -> Result<(ThickLattice, LatticeMap)> {
        if relabel.len() != self.len() {
            return Err(Error::NotABijection(format!(
                "{} entries for {} elements",
                relabel.len(),
                self.len()
            )));
        }
        let mut ids = Vec::with_capacity(self.len());
        let mut seen = HashSet::new();
        for id in &self.ids {
            let new = relabel
                .get(id)
                .ok_or_else(|| Error::NotABijection(format!("`{id}` is not mapped")))?;
            if !seen.insert(new.clone()) {
                return Err(Error::NotABijection(format!("`{new}` is hit twice")));
            }
            ids.push(new.clone());
        }
        let lat = Self::assemble(
            ids,
            self.up.clone(),
            self.objects.clone(),
            Provenance::Transported {
                base: Arc::new(self.clone()),
            },
            self.masks.clone(),
        )?;
        Ok((
            lat,
            LatticeMap {
                kind: MapKind::Iso,
                forward: (0..self.len()).collect(),
            },
        ))
    }

    /// One-element lattice (the zero category).
    pub fn trivial() -> Self {
        Self::from_explicit(&["0"], &[], &["0"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, a: usize) -> &str {
        &self.ids[a]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.ids.len() - 1
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// The underlying space when the lattice is classified.
    pub fn classified_space(&self) -> Option<&SpecSpace> {
        match &self.provenance {
            Provenance::Classified(s) => Some(s),
            _ => None,
        }
    }

    /// Subset represented by each element, for lattices built from a space.
    pub fn masks(&self) -> Option<&[PointSet]> {
        self.masks.as_deref()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn is_object(&self, a: usize) -> bool {
        self.objects.contains(a)
    }

    pub fn objects(&self) -> impl Iterator<Item = usize> + '_ {
        self.objects.ones()
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let mut u = self.up[a].clone();
        u.intersect_with(&self.up[b]);
        u.ones().next().expect("lattice has joins")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let mut d = self.down[a].clone();
        d.intersect_with(&self.down[b]);
        d.ones().last().expect("lattice has meets")
    }

    /// Hasse covers as `(lower, upper)` index pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.upper_covers
            .iter()
            .enumerate()
            .flat_map(|(a, cs)| cs.iter().map(move |&c| (a, c)))
            .collect()
    }
}

fn classified_covers(masks: &[PointSet]) -> Vec<Vec<usize>> {
    let index: HashMap<PointSet, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let all = masks.iter().fold(0, |acc, &m| acc | m);
    masks
        .iter()
        .map(|&m| {
            let mut cs: Vec<usize> = bits(all & !m)
                .filter_map(|x| index.get(&(m | 1 << x)).copied())
                .collect();
            cs.sort_unstable();
            cs
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    QuotientPreimage,
    Iso,
}

/// Element map between two lattices, by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    pub kind: MapKind,
    pub forward: Vec<usize>,
}

impl LatticeMap {
    pub fn is_order_preserving(&self, source: &ThickLattice, target: &ThickLattice) -> bool {
        (0..source.len()).all(|a| {
            (0..source.len())
                .all(|b| !source.leq(a, b) || target.leq(self.forward[a], self.forward[b]))
        })
    }

    /// Order embedding: `a ≤ b` iff `f(a) ≤ f(b)`.
    pub fn is_order_embedding(&self, source: &ThickLattice, target: &ThickLattice) -> bool {
        (0..source.len()).all(|a| {
            (0..source.len())
                .all(|b| source.leq(a, b) == target.leq(self.forward[a], self.forward[b]))
        })
    }

    pub fn is_order_isomorphism(&self, source: &ThickLattice, target: &ThickLattice) -> bool {
        let mut hit: Vec<usize> = self.forward.clone();
        hit.sort_unstable();
        hit.dedup();
        source.len() == target.len()
            && hit.len() == target.len()
            && self.is_order_embedding(source, target)
    }
}

/// A few explicit lattices used in the catalog and tests.
impl ThickLattice {
    pub fn chain(n: usize) -> Self {
        let ids: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let covers: Vec<(String, String)> = (1..n)
            .map(|i| (ids[i - 1].clone(), ids[i].clone()))
            .collect();
        Self::from_explicit(&ids, &covers, &ids).unwrap()
    }

    /// Pentagon `0 < a < c < 1`, `0 < b < 1`.
    pub fn pentagon() -> Self {
        let e = ["0", "a", "b", "c", "1"];
        Self::from_explicit(
            &e,
            &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
            &e,
        )
        .unwrap()
    }

    /// Diamond with three atoms.
    pub fn diamond() -> Self {
        let e = ["0", "x", "y", "z", "1"];
        Self::from_explicit(
            &e,
            &[
                ("0", "x"),
                ("0", "y"),
                ("0", "z"),
                ("x", "1"),
                ("y", "1"),
                ("z", "1"),
            ],
            &e,
        )
        .unwrap()
    }

    /// Boolean lattice on `n` atoms, elements named by their atom sets.
    pub fn boolean(n: usize) -> Self {
        Self::from_support_data(&SpecSpace::discrete(n)).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_lattice() -> ThickLattice {
        ThickLattice::from_support_data(&SpecSpace::v_model()).unwrap()
    }

    #[test]
    fn support_data_examples() {
        let s = ThickLattice::from_support_data(&SpecSpace::sierpinski()).unwrap();
        assert_eq!(s.ids(), &["∅", "{a}", "{a,b}"]);
        assert!(s.leq(0, 1) && s.leq(1, 2));
        let b = ThickLattice::boolean(2);
        assert_eq!(b.len(), 4);
        assert!(!b.leq(1, 2) && !b.leq(2, 1));
        let v = v_lattice();
        assert_eq!(v.ids(), &["∅", "{a}", "{b}", "{a,b}", "{a,b,η}"]);
        assert_eq!(v.upper_covers(0), &[1, 2]);
        assert_eq!(v.upper_covers(3), &[4]);
        v.validate().unwrap();
    }

    #[test]
    fn classified_join_meet_are_union_intersection() {
        let lat = ThickLattice::from_support_data(&SpecSpace::grid(2, 3)).unwrap();
        let m = lat.masks().unwrap().to_vec();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                assert_eq!(m[lat.join(a, b)], m[a] | m[b]);
                assert_eq!(m[lat.meet(a, b)], m[a] & m[b]);
                assert_eq!(lat.leq(a, b), m[a] & !m[b] == 0);
            }
        }
    }

    #[test]
    fn explicit_examples() {
        let c = ThickLattice::chain(3);
        assert_eq!(c.len(), 3);
        let n5 = ThickLattice::pentagon();
        let (a, b, c) = (
            n5.index_of("a").unwrap(),
            n5.index_of("b").unwrap(),
            n5.index_of("c").unwrap(),
        );
        assert_eq!(n5.join(a, b), n5.top());
        assert_eq!(n5.meet(c, b), n5.bottom());
        assert_eq!(n5.join(a, c), c);
        // distributivity fails: a ∨ (b ∧ c) = a, (a ∨ b) ∧ c = c
        assert_ne!(n5.join(a, n5.meet(b, c)), n5.meet(n5.join(a, b), c));
    }

    #[test]
    fn explicit_rejects_non_lattices() {
        let err = ThickLattice::from_explicit(
            &["x", "y", "1"],
            &[("x", "1"), ("y", "1")],
            &["x", "y", "1"],
        );
        assert!(matches!(err, Err(Error::NotALattice(..))), "{err:?}");
        // two upper bounds with no least one
        let bowtie = ThickLattice::from_explicit(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
            &["0", "a", "b", "c", "d", "1"],
        );
        assert!(matches!(bowtie, Err(Error::NotALattice(..))));
        let cyc = ThickLattice::from_explicit(&["0", "1"], &[("0", "1"), ("1", "0")], &["0"]);
        assert!(matches!(cyc, Err(Error::Cycle(_))));
        assert!(matches!(
            ThickLattice::from_explicit::<&str>(&[], &[], &[]),
            Err(Error::EmptyLattice)
        ));
    }

    #[test]
    fn explicit_rejects_bad_objects() {
        let e = ["0", "a", "b", "1"];
        let cov = [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")];
        let not_join_closed = ThickLattice::from_explicit(&e, &cov, &["0", "a", "b"]);
        assert!(matches!(not_join_closed, Err(Error::InvalidObjects(_))));
        let no_bottom = ThickLattice::from_explicit(&e, &cov, &["a", "b", "1"]);
        assert!(matches!(no_bottom, Err(Error::InvalidObjects(_))));
    }

    #[test]
    fn augment_examples() {
        let chain = ThickLattice::from_support_data(&SpecSpace::sierpinski()).unwrap();
        let aug = ThickLattice::augment(&chain, &["f"]).unwrap();
        assert_eq!(aug.len(), 4);
        let (f, a) = (aug.index_of("f").unwrap(), aug.index_of("{a}").unwrap());
        assert!(!aug.leq(f, a) && !aug.leq(a, f));
        assert!(aug.is_object(f));

        assert!(matches!(
            ThickLattice::augment::<&str>(&chain, &[]),
            Err(Error::EmptyLabels)
        ));
        assert!(matches!(
            ThickLattice::augment(&chain, &["f", "f"]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            ThickLattice::augment(&chain, &["{a}"]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            ThickLattice::augment(&ThickLattice::trivial(), &["f"]),
            Err(Error::TrivialBase)
        ));

        let aug = ThickLattice::augment(&v_lattice(), &["f1", "f2"]).unwrap();
        assert_eq!(aug.len(), 7);
        let (f1, f2) = (aug.index_of("f1").unwrap(), aug.index_of("f2").unwrap());
        assert_eq!(aug.join(f1, f2), aug.top());
        assert_eq!(aug.meet(f1, f2), aug.bottom());
        let ab = aug.index_of("{a,b}").unwrap();
        assert_eq!(aug.join(f1, ab), aug.top());
        assert_eq!(aug.meet(f1, ab), aug.bottom());
    }

    #[test]
    fn quotient_examples() {
        let v = v_lattice();
        let (q, map) = v.quotient("{a}").unwrap();
        assert_eq!(q.ids(), &["{a}", "{a,b}", "{a,b,η}"]);
        assert!(q.leq(0, 1) && q.leq(1, 2));
        assert!(map.is_order_embedding(&q, &v));
        assert_eq!(map.kind, MapKind::QuotientPreimage);
        assert_eq!(q.objects().count(), 3);

        let (q0, m0) = v.quotient("∅").unwrap();
        assert_eq!(q0, v);
        assert_eq!(m0.forward, (0..v.len()).collect::<Vec<_>>());

        let (qt, _) = v.quotient("{a,b,η}").unwrap();
        assert_eq!(qt.len(), 1);
        assert!(matches!(v.quotient("nope"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn transport_examples() {
        let v = v_lattice();
        let id: HashMap<String, String> = v.ids().iter().map(|s| (s.clone(), s.clone())).collect();
        let (same, map) = v.transport(&id).unwrap();
        assert_eq!(same, v);
        assert!(map.is_order_isomorphism(&v, &same));

        let b = ThickLattice::boolean(2);
        let swap: HashMap<String, String> = [
            ("∅", "∅"),
            ("{a}", "{b}"),
            ("{b}", "{a}"),
            ("{a,b}", "{a,b}"),
        ]
        .into_iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
        let (t, map) = b.transport(&swap).unwrap();
        assert!(map.is_order_isomorphism(&b, &t));

        let mut bad = id.clone();
        bad.insert("{a}".into(), "∅".into());
        assert!(matches!(v.transport(&bad), Err(Error::NotABijection(_))));
    }
}
