//! Finite T0 spaces stored as their specialization order.
//!
//! A point `x` lies below `y` when `x` is in the closure of `{y}`. Closed sets
//! are exactly the down-sets of this order, and since every space here is
//! finite, specialization-closed and Thomason subsets are down-sets too.
//! Point sets are bitmasks over point indices.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Bitmask over the points of a space (bit `i` is point `i`).
pub type PointSet = u64;

/// Hard limit imposed by the `u64` point-set representation.
pub const MAX_POINTS: usize = 64;

/// Default limit for anything that materializes all down-sets.
pub const DEFAULT_CAP: usize = 20;

/// The enumeration cap, overridable through `TRISPEC_CAP`.
pub fn enumeration_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("TRISPEC_CAP")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|c| c.min(MAX_POINTS))
            .unwrap_or(DEFAULT_CAP)
    })
}

pub(crate) fn bits(set: PointSet) -> impl Iterator<Item = usize> {
    let mut s = set;
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(i)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> PointSet {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Canonical ordering of subsets: by size, then numerically.
pub fn canonical_key(set: PointSet) -> (u32, PointSet) {
    (set.count_ones(), set)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecSpace {
    name: Option<String>,
    points: Vec<String>,
    /// `below[y]` is the closure of `{y}`.
    below: Vec<PointSet>,
    /// `above[x]` is the set of generizations of `x`.
    above: Vec<PointSet>,
}

impl SpecSpace {
    /// Builds a space from point labels and relations `(x, y)` meaning `x ≤ y`.
    ///
    /// Relations may be covers or arbitrary order pairs; the transitive
    /// closure is taken.
    pub fn new<S: AsRef<str>>(
        name: Option<String>,
        points: &[S],
        relations: &[(S, S)],
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicatePoint(p.as_ref().to_string()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownPoint(s.as_ref().to_string()))
        };
        let pairs = relations
            .iter()
            .map(|(x, y)| Ok((lookup(x)?, lookup(y)?)))
            .collect::<Result<Vec<_>>>()?;
        let labels = points.iter().map(|p| p.as_ref().to_string()).collect();
        Self::from_indices(name, labels, &pairs)
    }

    /// Same as [`SpecSpace::new`] with relations given by point index.
    pub fn from_indices(
        name: Option<String>,
        points: Vec<String>,
        relations: &[(usize, usize)],
    ) -> Result<Self> {
        let n = points.len();
        if n > MAX_POINTS {
            return Err(Error::CapExceeded {
                what: "point count",
                size: n,
                cap: MAX_POINTS,
            });
        }
        let mut below: Vec<PointSet> = (0..n).map(|i| 1u64 << i).collect();
        for &(x, y) in relations {
            if x >= n || y >= n {
                return Err(Error::UnknownPoint(format!("#{}", x.max(y))));
            }
            below[y] |= 1 << x;
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            let bk = below[k];
            for row in below.iter_mut() {
                if *row & (1 << k) != 0 {
                    *row |= bk;
                }
            }
        }
        for (y, &row) in below.iter().enumerate() {
            for x in bits(row) {
                if x != y && below[x] & (1 << y) != 0 {
                    return Err(Error::Cycle(points[x].clone()));
                }
            }
        }
        let mut above = vec![0u64; n];
        for (y, &row) in below.iter().enumerate() {
            for x in bits(row) {
                above[x] |= 1 << y;
            }
        }
        Ok(SpecSpace {
            name,
            points,
            below,
            above,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn label(&self, i: usize) -> &str {
        &self.points[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.points
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn all(&self) -> PointSet {
        full_mask(self.len())
    }

    /// `x ≤ y`, i.e. `x` lies in the closure of `{y}`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y] & (1 << x) != 0
    }

    /// Closure of a single point.
    pub fn point_closure(&self, y: usize) -> PointSet {
        self.below[y]
    }

    /// Up-set of a point: everything it specializes from.
    pub fn generizations(&self, x: usize) -> PointSet {
        self.above[x]
    }

    /// Topological closure of a point set.
    pub fn closure(&self, set: PointSet) -> Result<PointSet> {
        if set & !self.all() != 0 {
            return Err(Error::UnknownPoint(format!(
                "#{}",
                63 - (set & !self.all()).leading_zeros()
            )));
        }
        Ok(bits(set).fold(0, |acc, y| acc | self.below[y]))
    }

    pub fn is_closed(&self, set: PointSet) -> bool {
        set & !self.all() == 0 && bits(set).all(|y| self.below[y] & !set == 0)
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        self.is_closed(self.all() & !set)
    }

    /// Names the points of a subset, in point order.
    pub fn set_label(&self, set: PointSet) -> String {
        if set == 0 {
            return "∅".to_string();
        }
        let names: Vec<&str> = bits(set).map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Hasse diagram covers `(x, y)` with `x < y` and nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for y in 0..self.len() {
            let strict = self.below[y] & !(1 << y);
            for x in bits(strict) {
                let between = strict & self.above[x] & !(1 << x);
                if between == 0 {
                    out.push((x, y));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Subspace on `subset`, with the induced order and original labels.
    pub fn restrict(&self, subset: PointSet) -> SpecSpace {
        let keep: Vec<usize> = bits(subset & self.all()).collect();
        let points = keep.iter().map(|&i| self.points[i].clone()).collect();
        let mut rel = Vec::new();
        for (ni, &i) in keep.iter().enumerate() {
            for (nj, &j) in keep.iter().enumerate() {
                if i != j && self.leq(i, j) {
                    rel.push((ni, nj));
                }
            }
        }
        SpecSpace::from_indices(self.name.clone(), points, &rel)
            .expect("restriction of a partial order is a partial order")
    }

    /// Points sorted so that every point comes after everything below it.
    pub(crate) fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.below[i].count_ones(), i));
        order
    }

    /// Irreducible closed sets are the non-empty closed sets that are not a
    /// union of two proper closed subsets. Checks that each is the closure of
    /// exactly one point.
    pub fn is_sober(&self) -> Result<bool> {
        let closed = self.enumerate_spcl()?;
        for &c in closed.members.iter().filter(|&&c| c != 0) {
            let proper: Vec<PointSet> = closed
                .members
                .iter()
                .copied()
                .filter(|&d| d != c && d & !c == 0)
                .collect();
            let reducible = proper.iter().any(|&d| proper.iter().any(|&e| d | e == c));
            if reducible {
                continue;
            }
            let generic = (0..self.len()).filter(|&y| self.below[y] == c).count();
            if generic != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All specialization-closed subsets, in canonical order.
    pub fn enumerate_spcl(&self) -> Result<SubsetFamily> {
        self.enumerate_spcl_with_cap(enumeration_cap())
    }

    pub fn enumerate_spcl_with_cap(&self, cap: usize) -> Result<SubsetFamily> {
        if self.len() > cap {
            return Err(Error::CapExceeded {
                what: "enumeration of specialization-closed subsets",
                size: self.len(),
                cap,
            });
        }
        let order = self.linear_extension();
        let strict_below: Vec<PointSet> =
            order.iter().map(|&v| self.below[v] & !(1 << v)).collect();
        let mut members = Vec::new();
        // Depth-first over the linear extension: a point may join once all of
        // its strict predecessors have.
        let mut stack = vec![(0usize, 0u64)];
        while let Some((depth, set)) = stack.pop() {
            if depth == order.len() {
                members.push(set);
                continue;
            }
            stack.push((depth + 1, set));
            if strict_below[depth] & !set == 0 {
                stack.push((depth + 1, set | 1 << order[depth]));
            }
        }
        members.sort_unstable_by_key(|&s| canonical_key(s));
        Ok(SubsetFamily {
            n_points: self.len(),
            kind: SubsetKind::Spcl,
            members,
        })
    }

    /// Number of specialization-closed subsets, without materializing them.
    ///
    /// Dynamic programming along a linear extension; the state is the
    /// membership pattern of points that still have an unprocessed successor.
    pub fn count_spcl(&self) -> u128 {
        let order = self.linear_extension();
        let n = order.len();
        // last_use[v]: last position whose point lies strictly above v.
        let mut last_use = vec![None; n];
        for (k, &v) in order.iter().enumerate() {
            for u in bits(self.below[v] & !(1 << v)) {
                last_use[u] = Some(k);
            }
        }
        let mut states: HashMap<PointSet, u128> = HashMap::from([(0, 1)]);
        let mut active: PointSet = 0;
        for (k, &v) in order.iter().enumerate() {
            let need = self.below[v] & !(1 << v);
            let mut next: HashMap<PointSet, u128> = HashMap::with_capacity(states.len() * 2);
            if last_use[v].is_some() {
                active |= 1 << v;
            }
            for u in bits(need) {
                if last_use[u] == Some(k) {
                    active &= !(1 << u);
                }
            }
            for (&state, &count) in &states {
                *next.entry(state & active).or_default() += count;
                if need & !state == 0 {
                    *next.entry((state | 1 << v) & active).or_default() += count;
                }
            }
            states = next;
        }
        states.values().sum()
    }

    /// For each point `x`, the subset `W_x` of points whose closure misses `x`.
    ///
    /// These are the specialization-closed subsets admitting a unique minimal
    /// specialization-closed proper superset (namely `W_x ∪ {x}`).
    pub fn prime_spcl(&self) -> Vec<PointSet> {
        (0..self.len())
            .map(|x| self.all() & !self.above[x])
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetKind {
    Closed,
    Spcl,
    Thomason,
    Arbitrary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    pub n_points: usize,
    pub kind: SubsetKind,
    pub members: Vec<PointSet>,
}

impl SubsetFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: PointSet) -> bool {
        self.members
            .binary_search_by_key(&canonical_key(set), |&m| canonical_key(m))
            .is_ok()
    }
}

/// A few named shapes used throughout tests and the catalog.
impl SpecSpace {
    /// Two points, `a` in the closure of `b`.
    pub fn sierpinski() -> Self {
        SpecSpace::new(Some("sierpinski".into()), &["a", "b"], &[("a", "b")]).unwrap()
    }

    pub fn discrete(n: usize) -> Self {
        let pts: Vec<String> = (0..n).map(point_name).collect();
        SpecSpace::from_indices(Some(format!("discrete-{n}")), pts, &[]).unwrap()
    }

    /// Closed points `a < b < ...` ordered as a chain.
    pub fn chain(n: usize) -> Self {
        let pts: Vec<String> = (0..n).map(point_name).collect();
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        SpecSpace::from_indices(Some(format!("chain-{n}")), pts, &rel).unwrap()
    }

    /// `n` closed points under one generic point `η`.
    pub fn star(n: usize) -> Self {
        let mut pts: Vec<String> = (0..n).map(point_name).collect();
        pts.push("η".into());
        let rel: Vec<_> = (0..n).map(|i| (i, n)).collect();
        SpecSpace::from_indices(Some(format!("star-{n}")), pts, &rel).unwrap()
    }

    /// Irreducible curve with two closed points.
    pub fn v_model() -> Self {
        Self::star(2).with_name("v-model")
    }

    /// Product of a `rows`-chain and a `cols`-chain.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let pts: Vec<String> = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| format!("g{r}_{c}")))
            .collect();
        let mut rel = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let i = r * cols + c;
                if r + 1 < rows {
                    rel.push((i, i + cols));
                }
                if c + 1 < cols {
                    rel.push((i, i + 1));
                }
            }
        }
        SpecSpace::from_indices(Some(format!("grid-{rows}x{cols}")), pts, &rel).unwrap()
    }
}

fn point_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("p{i}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(space: &SpecSpace, names: &[&str]) -> PointSet {
        names
            .iter()
            .fold(0, |acc, n| acc | 1 << space.index_of(n).unwrap())
    }

    #[test]
    fn parse_examples() {
        let s = SpecSpace::sierpinski();
        assert_eq!(s.closure(0b10).unwrap(), 0b11);
        let d = SpecSpace::discrete(2);
        assert_eq!(d.closure(0b10).unwrap(), 0b10);
        let v = SpecSpace::v_model();
        let eta = v.index_of("η").unwrap();
        assert_eq!(v.closure(1 << eta).unwrap(), set(&v, &["a", "b", "η"]));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            SpecSpace::new(None, &["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(Error::Cycle(_))
        ));
        assert!(matches!(
            SpecSpace::new(None, &["a", "b"], &[("a", "c")]),
            Err(Error::UnknownPoint(_))
        ));
        assert!(matches!(
            SpecSpace::new(None, &["a", "a"], &[]),
            Err(Error::DuplicatePoint(_))
        ));
        // cycle only visible after transitive closure
        assert!(matches!(
            SpecSpace::new(
                None,
                &["a", "b", "c"],
                &[("a", "b"), ("b", "c"), ("c", "a")]
            ),
            Err(Error::Cycle(_))
        ));
    }

    #[test]
    fn closure_examples() {
        let s = SpecSpace::sierpinski();
        assert_eq!(s.closure(0).unwrap(), 0);
        assert_eq!(s.closure(0b01).unwrap(), 0b01);
        assert!(s.closure(0b100).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let s = SpecSpace::sierpinski();
        assert_eq!(s.enumerate_spcl().unwrap().members, vec![0, 0b01, 0b11]);
        let d = SpecSpace::discrete(2);
        assert_eq!(
            d.enumerate_spcl().unwrap().members,
            vec![0, 0b01, 0b10, 0b11]
        );
        let v = SpecSpace::v_model();
        assert_eq!(
            v.enumerate_spcl().unwrap().members,
            vec![0, 0b001, 0b010, 0b011, 0b111]
        );
    }

    #[test]
    fn enumerate_cap() {
        let big = SpecSpace::discrete(21);
        assert!(matches!(
            big.enumerate_spcl_with_cap(20),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(big.count_spcl(), 1 << 21);
    }

    #[test]
    fn count_examples() {
        assert_eq!(SpecSpace::discrete(10).count_spcl(), 1024);
        for n in 0..12 {
            assert_eq!(SpecSpace::chain(n).count_spcl(), n as u128 + 1);
        }
        let g = SpecSpace::grid(4, 4);
        assert_eq!(g.count_spcl(), g.enumerate_spcl().unwrap().len() as u128);
    }

    #[test]
    fn prime_spcl_examples() {
        let s = SpecSpace::sierpinski();
        assert_eq!(s.prime_spcl(), vec![0, 0b01]);
        let d = SpecSpace::discrete(2);
        assert_eq!(d.prime_spcl(), vec![0b10, 0b01]);
        let v = SpecSpace::v_model();
        assert_eq!(v.prime_spcl(), vec![0b010, 0b001, 0b011]);
    }

    #[test]
    fn covers_and_restrict() {
        let c = SpecSpace::chain(3);
        assert_eq!(c.covers(), vec![(0, 1), (1, 2)]);
        let r = c.restrict(0b101);
        assert_eq!(r.points(), &["a".to_string(), "c".to_string()]);
        assert!(r.leq(0, 1));
    }

    #[test]
    fn finite_t0_spaces_are_sober() {
        for s in [
            SpecSpace::v_model(),
            SpecSpace::grid(2, 3),
            SpecSpace::discrete(3),
        ] {
            assert!(s.is_sober().unwrap());
        }
    }
}
