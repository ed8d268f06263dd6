//! Brute-force oracles and generators.
//!
//! Nothing here calls into the fast paths it certifies: subsets are found by
//! scanning all masks, minimality by pairwise comparison.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::poset_space::{enumeration_cap, PointSet, SpecSpace};
use crate::thick_lattice::{ThickLattice, MAX_ELEMENTS};
use crate::topology::FiniteSpace;

pub const MAX_POSET_POINTS: usize = 6;
pub const MAX_HOMEOMORPHISM_POINTS: usize = 12;

/// Elements with exactly one minimal strict upper bound, by direct scan.
pub fn scan_primes(lat: &ThickLattice) -> Result<Vec<usize>> {
    let n = lat.len();
    if n > MAX_ELEMENTS {
        return Err(Error::CapExceeded {
            what: "lattice size",
            size: n,
            cap: MAX_ELEMENTS,
        });
    }
    let mut out = Vec::new();
    for p in 0..n {
        let strict: Vec<usize> = (0..n).filter(|&e| e != p && lat.leq(p, e)).collect();
        let minimal = strict
            .iter()
            .filter(|&&e| !strict.iter().any(|&f| f != e && lat.leq(f, e)))
            .count();
        if minimal == 1 {
            out.push(p);
        }
    }
    Ok(out)
}

fn is_down_closed(space: &SpecSpace, set: PointSet) -> bool {
    (0..space.len())
        .filter(|&y| set & (1 << y) != 0)
        .all(|y| (0..space.len()).all(|x| !space.leq(x, y) || set & (1 << x) != 0))
}

/// Specialization-closed subsets with a unique minimal specialization-closed
/// proper superset, found by scanning every subset.
pub fn scan_prime_subsets(space: &SpecSpace) -> Result<Vec<PointSet>> {
    let cap = enumeration_cap();
    if space.len() > cap {
        return Err(Error::CapExceeded {
            what: "subset scan",
            size: space.len(),
            cap,
        });
    }
    let spcl: Vec<PointSet> = (0..1u64 << space.len())
        .filter(|&s| is_down_closed(space, s))
        .collect();
    let mut out = Vec::new();
    for &w in &spcl {
        let strict: Vec<PointSet> = spcl
            .iter()
            .copied()
            .filter(|&t| t != w && w & !t == 0)
            .collect();
        let minimal = strict
            .iter()
            .filter(|&&t| !strict.iter().any(|&u| u != t && u & !t == 0))
            .count();
        if minimal == 1 {
            out.push(w);
        }
    }
    out.sort_unstable_by_key(|&s| (s.count_ones(), s));
    Ok(out)
}

/// Strict-below rows for every labeled partial order on `n` points.
///
/// Posets on `k + 1` points arise uniquely from one on `k` points by choosing
/// the predecessors `D` (a down-set) and successors `U` (an up-set) of the new
/// point, with everything in `D` below everything in `U`.
fn labeled_rows(n: usize) -> Vec<Vec<PointSet>> {
    let mut layer: Vec<Vec<PointSet>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for rows in &layer {
            // rows[y]: points strictly below y
            let down_closed = |s: PointSet| (0..k).all(|y| s & (1 << y) == 0 || rows[y] & !s == 0);
            let up_closed = |s: PointSet| (0..k).all(|u| s & (1 << u) != 0 || rows[u] & s == 0);
            let downs: Vec<PointSet> = (0..1u64 << k).filter(|&s| down_closed(s)).collect();
            let ups: Vec<PointSet> = (0..1u64 << k).filter(|&s| up_closed(s)).collect();
            for &d in &downs {
                for &u in &ups {
                    if d & u != 0 {
                        continue;
                    }
                    if (0..k).any(|y| u & (1 << y) != 0 && d & !rows[y] != 0) {
                        continue;
                    }
                    let mut new_rows = rows.clone();
                    for (y, row) in new_rows.iter_mut().enumerate() {
                        if u & (1 << y) != 0 {
                            *row |= 1 << k;
                        }
                    }
                    new_rows.push(d);
                    next.push(new_rows);
                }
            }
        }
        layer = next;
    }
    layer
}

fn rows_to_space(rows: &[PointSet], tag: usize) -> SpecSpace {
    let n = rows.len();
    let points: Vec<String> = (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    let rel: Vec<(usize, usize)> = (0..n)
        .flat_map(|y| {
            (0..n)
                .filter(move |&x| rows[y] & (1 << x) != 0)
                .map(move |x| (x, y))
        })
        .collect();
    SpecSpace::from_indices(Some(format!("poset-{n}-{tag}")), points, &rel)
        .expect("generated relation is a partial order")
}

/// Every partial order on `n` labeled points, optionally one per
/// isomorphism class. Order is deterministic.
pub fn all_posets(n: usize, up_to_iso: bool) -> Result<Vec<SpecSpace>> {
    if n > MAX_POSET_POINTS {
        return Err(Error::CapExceeded {
            what: "poset generator",
            size: n,
            cap: MAX_POSET_POINTS,
        });
    }
    let mut rows = labeled_rows(n);
    if up_to_iso {
        let mut seen = HashSet::new();
        rows.retain(|r| seen.insert(canonical_form(r)));
    }
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, r)| rows_to_space(r, i))
        .collect())
}

/// Labeled partial orders on `n ≤ 4` points by filtering every relation.
pub fn naive_poset_count(n: usize) -> Result<usize> {
    if n > 4 {
        return Err(Error::CapExceeded {
            what: "naive relation filter",
            size: n,
            cap: 4,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    for mask in 0u32..1 << pairs.len() {
        let rel = |i: usize, j: usize| {
            i == j
                || pairs
                    .iter()
                    .position(|&p| p == (i, j))
                    .is_some_and(|k| mask & (1 << k) != 0)
        };
        let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(rel(i, j) && rel(j, i))));
        let trans =
            (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k))));
        if antisym && trans {
            count += 1;
        }
    }
    Ok(count)
}

/// Minimal relation encoding over all relabelings that respect the
/// (down-degree, up-degree) invariant ordering.
fn canonical_form(rows: &[PointSet]) -> (Vec<(u32, u32)>, u64) {
    let n = rows.len();
    let up_deg = |x: usize| (0..n).filter(|&y| rows[y] & (1 << x) != 0).count() as u32;
    let key: Vec<(u32, u32)> = (0..n).map(|x| (rows[x].count_ones(), up_deg(x))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| key[x]);
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &x in &order {
        match blocks.last_mut() {
            Some(b) if key[b[0]] == key[x] => b.push(x),
            _ => blocks.push(vec![x]),
        }
    }
    let mut best = u64::MAX;
    let mut perm = Vec::with_capacity(n);
    permute_blocks(&blocks, 0, &mut perm, &mut |p: &[usize]| {
        // p[new] = old
        let mut code = 0u64;
        for (ny, &y) in p.iter().enumerate() {
            for (nx, &x) in p.iter().enumerate() {
                if rows[y] & (1 << x) != 0 {
                    code |= 1 << (ny * n + nx);
                }
            }
        }
        best = best.min(code);
    });
    let mut sorted_key: Vec<(u32, u32)> = key;
    sorted_key.sort_unstable();
    (sorted_key, best)
}

fn permute_blocks(
    blocks: &[Vec<usize>],
    bi: usize,
    prefix: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if bi == blocks.len() {
        visit(prefix);
        return;
    }
    let block = &blocks[bi];
    let mut used = vec![false; block.len()];
    fn rec(
        blocks: &[Vec<usize>],
        bi: usize,
        used: &mut Vec<bool>,
        prefix: &mut Vec<usize>,
        placed: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        let block = &blocks[bi];
        if placed == block.len() {
            permute_blocks(blocks, bi + 1, prefix, visit);
            return;
        }
        for i in 0..block.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(block[i]);
                rec(blocks, bi, used, prefix, placed + 1, visit);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    rec(blocks, bi, &mut used, prefix, 0, visit);
}

/// Searches for a bijection carrying closed sets onto closed sets both ways.
pub fn homeomorphic(a: &FiniteSpace, b: &FiniteSpace) -> Result<Option<Vec<usize>>> {
    for s in [a, b] {
        if s.len() > MAX_HOMEOMORPHISM_POINTS {
            return Err(Error::CapExceeded {
                what: "homeomorphism search",
                size: s.len(),
                cap: MAX_HOMEOMORPHISM_POINTS,
            });
        }
    }
    if a.len() != b.len() || a.closed.len() != b.closed.len() {
        return Ok(None);
    }
    let n = a.len();
    let closures = |s: &FiniteSpace| -> Vec<PointSet> {
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        (0..n)
            .map(|p| {
                s.closed
                    .iter()
                    .filter(|&&c| c & (1 << p) != 0)
                    .fold(all, |acc, &c| acc & c)
            })
            .collect()
    };
    let (ca, cb) = (closures(a), closures(b));
    let key = |cl: &[PointSet], p: usize| {
        let generic = (0..n).filter(|&q| cl[q] & (1 << p) != 0).count();
        (cl[p].count_ones(), generic)
    };
    let ka: Vec<_> = (0..n).map(|p| key(&ca, p)).collect();
    let kb: Vec<_> = (0..n).map(|p| key(&cb, p)).collect();
    let (mut sa, mut sb) = (ka.clone(), kb.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(None);
    }
    let b_closed: HashSet<PointSet> = b.closed.iter().copied().collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn search(
        p: usize,
        n: usize,
        ca: &[PointSet],
        cb: &[PointSet],
        ka: &[(u32, usize)],
        kb: &[(u32, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        accept: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if p == n {
            return accept(map);
        }
        for q in 0..n {
            if used[q] || ka[p] != kb[q] {
                continue;
            }
            let consistent = (0..p).all(|r| {
                let fr = map[r];
                (ca[r] & (1 << p) != 0) == (cb[fr] & (1 << q) != 0)
                    && (ca[p] & (1 << r) != 0) == (cb[q] & (1 << fr) != 0)
            });
            if !consistent {
                continue;
            }
            map[p] = q;
            used[q] = true;
            if search(p + 1, n, ca, cb, ka, kb, map, used, accept) {
                return true;
            }
            used[q] = false;
        }
        false
    }

    let mut accept = |m: &[usize]| {
        a.closed.iter().all(|&c| {
            let img = (0..n)
                .filter(|&p| c & (1 << p) != 0)
                .fold(0u64, |acc, p| acc | 1 << m[p]);
            b_closed.contains(&img)
        })
    };
    if search(0, n, &ca, &cb, &ka, &kb, &mut map, &mut used, &mut accept) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Down-sets of the `rows × cols` grid by a transfer matrix over row
/// prefix lengths, which must be non-increasing from row to row.
pub fn grid_downsets_transfer(rows: usize, cols: usize) -> u128 {
    if rows == 0 {
        return 1;
    }
    let mut v = vec![1u128; cols + 1];
    for _ in 1..rows {
        let mut next = vec![0u128; cols + 1];
        for (h_next, slot) in next.iter_mut().enumerate() {
            *slot = v[h_next..].iter().sum();
        }
        v = next;
    }
    v.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_primes_examples() {
        let chain = ThickLattice::from_support_data(&SpecSpace::sierpinski()).unwrap();
        assert_eq!(scan_primes(&chain).unwrap(), vec![0, 1]);
        let b = ThickLattice::boolean(2);
        assert_eq!(scan_primes(&b).unwrap(), vec![1, 2]);
        assert!(scan_primes(&ThickLattice::trivial()).unwrap().is_empty());
    }

    #[test]
    fn scan_prime_subsets_examples() {
        assert_eq!(
            scan_prime_subsets(&SpecSpace::sierpinski()).unwrap(),
            vec![0, 0b01]
        );
        assert_eq!(
            scan_prime_subsets(&SpecSpace::v_model()).unwrap(),
            vec![0b001, 0b010, 0b011]
        );
        assert_eq!(
            scan_prime_subsets(&SpecSpace::discrete(1)).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn poset_counts() {
        let expect_unlabeled = [1, 1, 2, 5, 16, 63];
        for (n, &unlabeled) in expect_unlabeled.iter().enumerate() {
            let labeled = all_posets(n, false).unwrap().len();
            if n <= 4 {
                assert_eq!(labeled, naive_poset_count(n).unwrap(), "n = {n}");
            }
            assert_eq!(all_posets(n, true).unwrap().len(), unlabeled);
        }
        assert_eq!(all_posets(1, false).unwrap().len(), 1);
        assert_eq!(all_posets(2, false).unwrap().len(), 3);
        assert_eq!(all_posets(3, false).unwrap().len(), 19);
        assert_eq!(all_posets(5, false).unwrap().len(), 4231);
        assert!(all_posets(7, false).is_err());
    }

    #[test]
    fn homeomorphic_examples() {
        let s = FiniteSpace::from_order(&SpecSpace::sierpinski()).unwrap();
        assert_eq!(homeomorphic(&s, &s).unwrap(), Some(vec![0, 1]));
        let d = FiniteSpace::from_order(&SpecSpace::discrete(2)).unwrap();
        assert_eq!(homeomorphic(&s, &d).unwrap(), None);
        let v = SpecSpace::v_model();
        let relabeled = SpecSpace::new(None, &["η", "x", "y"], &[("x", "η"), ("y", "η")]).unwrap();
        let m = homeomorphic(
            &FiniteSpace::from_order(&v).unwrap(),
            &FiniteSpace::from_order(&relabeled).unwrap(),
        )
        .unwrap()
        .unwrap();
        assert_eq!(m[2], 0);
    }

    #[test]
    fn transfer_matrix_small_cases() {
        assert_eq!(grid_downsets_transfer(1, 5), 6);
        assert_eq!(grid_downsets_transfer(2, 2), 6);
        for (r, c) in [(2, 3), (3, 3), (3, 4)] {
            let g = SpecSpace::grid(r, c);
            assert_eq!(
                grid_downsets_transfer(r, c),
                g.enumerate_spcl().unwrap().len() as u128
            );
        }
    }
}
