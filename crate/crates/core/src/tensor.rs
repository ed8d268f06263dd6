//! Tensor structure on classified lattices and the Balmer spectrum.
//!
//! Objects multiply by intersecting the subsets they stand for, with the
//! whole space as unit. This makes the product idempotent, so every ideal is
//! radical; the radical is still computed from its definition (products of
//! an object with itself landing in the ideal) and compared with the meet of
//! the prime ideals above it.
//!
//! Prime ideals are found by scanning pairs of objects. That suffices because
//! every element is the join of the objects below it.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::poset_space::{canonical_key, PointSet, SpecSpace};
use crate::report::Report;
use crate::spectrum::{primes, support_over, SpectrumSpace};
use crate::thick_lattice::{Provenance, ThickLattice};

#[derive(Debug, Clone)]
pub struct TensorLattice {
    base: ThickLattice,
    index: HashMap<PointSet, usize>,
}

/// Tensor lattice over the specialization-closed subsets of `space`.
pub fn tensor_lattice(space: &SpecSpace) -> Result<TensorLattice> {
    TensorLattice::from_lattice(ThickLattice::from_support_data(space)?)
}

impl TensorLattice {
    pub fn from_lattice(base: ThickLattice) -> Result<Self> {
        if !matches!(base.provenance(), Provenance::Classified(_)) {
            return Err(Error::NotClassified);
        }
        let index = base
            .masks()
            .ok_or(Error::NotClassified)?
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        Ok(TensorLattice { base, index })
    }

    pub fn base(&self) -> &ThickLattice {
        &self.base
    }

    pub fn space(&self) -> &SpecSpace {
        self.base.classified_space().expect("classified")
    }

    fn mask(&self, a: usize) -> PointSet {
        self.base.masks().expect("classified")[a]
    }

    pub fn unit(&self) -> usize {
        self.base.top()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&(self.mask(a) & self.mask(b))]
    }

    /// `a^{⊗n}` for `n ≥ 1`.
    pub fn power(&self, a: usize, n: u32) -> usize {
        (1..n).fold(a, |acc, _| self.mul(acc, a))
    }

    /// Closed under multiplication by every object.
    pub fn is_ideal(&self, a: usize) -> bool {
        self.base
            .objects()
            .all(|m| self.base.leq(self.mul(m, a), a))
    }

    /// Proper ideals `P` such that `c ⊗ d ≤ P` forces `c ≤ P` or `d ≤ P`.
    pub fn prime_ideals(&self) -> Vec<usize> {
        let lat = &self.base;
        let objects: Vec<usize> = lat.objects().collect();
        (0..lat.len())
            .filter(|&p| p != lat.top() && self.is_ideal(p))
            .filter(|&p| {
                let outside: Vec<usize> = objects
                    .iter()
                    .copied()
                    .filter(|&c| !lat.leq(c, p))
                    .collect();
                outside
                    .iter()
                    .all(|&c| outside.iter().all(|&d| !lat.leq(self.mul(c, d), p)))
            })
            .collect()
    }

    /// Join of the objects some tensor power of which lies below `a`.
    fn radical_by_powers(&self, a: usize) -> usize {
        let lat = &self.base;
        lat.objects()
            .filter(|&m| {
                // powers eventually cycle; stop at the first repeat
                let mut seen = HashSet::new();
                let mut x = m;
                loop {
                    if lat.leq(x, a) {
                        return true;
                    }
                    if !seen.insert(x) {
                        return false;
                    }
                    x = self.mul(x, m);
                }
            })
            .fold(lat.bottom(), |acc, m| lat.join(acc, m))
    }

    fn meet_of_primes_above(&self, primes: &[usize], a: usize) -> usize {
        primes
            .iter()
            .filter(|&&p| self.base.leq(a, p))
            .fold(self.base.top(), |acc, &p| self.base.meet(acc, p))
    }

    /// The tensor radical of `a`, checked against the meet of the prime
    /// ideals containing it.
    pub fn tensor_radical(&self, a: &str) -> Result<usize> {
        let a = self.base.index_of(a)?;
        let by_powers = self.radical_by_powers(a);
        let by_primes = self.meet_of_primes_above(&self.prime_ideals(), a);
        if by_powers != by_primes {
            return Err(Error::InvariantViolation(format!(
                "radical of `{}`: `{}` from powers, `{}` from prime ideals",
                self.base.id(a),
                self.base.id(by_powers),
                self.base.id(by_primes)
            )));
        }
        Ok(by_powers)
    }

    /// Spectrum of prime ideals with the topology of Balmer supports.
    pub fn balmer_spectrum(&self) -> Result<SpectrumSpace> {
        let points = self.prime_ideals();
        let witness = points
            .iter()
            .map(|&p| match self.base.upper_covers(p) {
                [c] => Some(*c),
                _ => None,
            })
            .collect();
        let spec = SpectrumSpace::build(&self.base, points, witness)?;
        for p in 0..spec.len() {
            spec.point_closure(p)?;
        }
        Ok(spec)
    }

    /// Radical ideals, in lattice order.
    pub fn radical_ideals(&self) -> Vec<usize> {
        (0..self.base.len())
            .filter(|&a| self.is_ideal(a) && self.radical_by_powers(a) == a)
            .collect()
    }

    /// Multiplication axioms and the product formula for supports.
    pub fn verify_axioms(&self) -> Result<Report> {
        let lat = &self.base;
        let n = lat.len();
        let mut r = Report::new("tensor axioms");
        let mut comm = true;
        let mut assoc = true;
        for a in 0..n {
            for b in 0..n {
                comm &= self.mul(a, b) == self.mul(b, a);
                for c in 0..n {
                    assoc &= self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
                }
            }
        }
        r.check("commutative", comm, "");
        r.check("associative", assoc, "");
        r.check("idempotent", (0..n).all(|a| self.mul(a, a) == a), "");
        r.check("unit", (0..n).all(|a| self.mul(self.unit(), a) == a), "");
        r.check(
            "every element an ideal",
            (0..n).all(|a| self.is_ideal(a)),
            "",
        );
        let spec = self.balmer_spectrum()?;
        let support = |a: usize| support_over(lat, spec.elements(), a);
        let product =
            (0..n).all(|a| (0..n).all(|b| support(self.mul(a, b)) == support(a) & support(b)));
        r.check("supp(a⊗b) = supp(a) ∩ supp(b)", product, "");
        Ok(r)
    }

    /// Prime ideals are the complements of up-sets of points.
    pub fn verify_points(&self) -> Report {
        let mut r = Report::new("prime ideals");
        let space = self.space();
        let mut expected: Vec<usize> = space
            .prime_spcl()
            .into_iter()
            .map(|w| self.index[&w])
            .collect();
        expected.sort_unstable();
        let got = self.prime_ideals();
        r.check(
            "prime ideals = complements of up-sets",
            got == expected,
            format!("{} prime ideals, {} points", got.len(), space.len()),
        );
        r
    }

    /// Radical from powers equals the meet of prime ideals above.
    pub fn verify_int(&self) -> Report {
        let mut r = Report::new("ideal intersections");
        let ps = self.prime_ideals();
        let bad: Vec<&str> = (0..self.base.len())
            .filter(|&a| self.radical_by_powers(a) != self.meet_of_primes_above(&ps, a))
            .map(|a| self.base.id(a))
            .collect();
        r.check(
            "radical = ⋂ prime ideals above",
            bad.is_empty(),
            bad.join(" "),
        );
        r
    }

    /// Point closures in the Balmer spectrum are the prime ideals contained.
    pub fn verify_cl(&self) -> Result<Report> {
        let mut r = Report::new("ideal closures");
        let spec = SpectrumSpace::build(&self.base, self.prime_ideals(), vec![])?;
        let ok = (0..spec.len()).all(|p| spec.topological_closure(p) == spec.contained_in(p));
        r.check("closure of P = prime ideals inside P", ok, "");
        Ok(r)
    }

    /// Supports and inverse supports are mutually inverse between radical
    /// ideals and Thomason (here: specialization-closed) subsets.
    pub fn verify_bal(&self) -> Result<Report> {
        let lat = &self.base;
        let mut r = Report::new("balmer spectrum");
        let spec = self.balmer_spectrum()?;
        let support = |a: usize| support_over(lat, spec.elements(), a);
        let thomason = spec.specialization_space().enumerate_spcl()?.members;
        let rad = self.radical_ideals();
        let inverse = |w: PointSet| -> usize {
            lat.objects()
                .filter(|&m| support(m) & !w == 0)
                .fold(lat.bottom(), |acc, m| lat.join(acc, m))
        };
        let mut image: Vec<PointSet> = rad.iter().map(|&a| support(a)).collect();
        image.sort_unstable_by_key(|&s| canonical_key(s));
        image.dedup();
        r.check(
            "supp injective on radical ideals",
            image.len() == rad.len(),
            format!("{} ↔ {}", rad.len(), thomason.len()),
        );
        r.check("supp onto Thomason subsets", image == thomason, "");
        r.check(
            "supp⁻¹ ∘ supp = id",
            rad.iter().all(|&a| inverse(support(a)) == a),
            "",
        );
        r.check(
            "supp ∘ supp⁻¹ = id",
            thomason.iter().all(|&w| support(inverse(w)) == w),
            "",
        );
        Ok(r)
    }

    /// A radical ideal has a unique minimal radical ideal strictly above it
    /// exactly when it is a prime ideal.
    pub fn verify_prid(&self) -> Report {
        let lat = &self.base;
        let mut r = Report::new("radical prime ideals");
        let rad = self.radical_ideals();
        let prime: HashSet<usize> = self.prime_ideals().into_iter().collect();
        let mut forward = true;
        let mut backward = true;
        for &p in &rad {
            let strict: Vec<usize> = rad
                .iter()
                .copied()
                .filter(|&q| q != p && lat.leq(p, q))
                .collect();
            let minimal = strict
                .iter()
                .filter(|&&q| !strict.iter().any(|&s| s != q && lat.leq(s, q)))
                .count();
            let unique = minimal == 1;
            if unique && !prime.contains(&p) {
                forward = false;
            }
            if prime.contains(&p) && !unique {
                backward = false;
            }
        }
        r.check("unique minimal radical superset ⇒ prime ideal", forward, "");
        r.check(
            "prime ideal ⇒ unique minimal radical superset",
            backward,
            "",
        );
        r
    }

    /// Prime elements that are radical ideals are prime ideals, and on
    /// classified models the two notions coincide.
    pub fn verify_pp_twoprm(&self) -> Report {
        let mut r = Report::new("prime ideals");
        let tri: Vec<usize> = primes(&self.base);
        let rad: HashSet<usize> = self.radical_ideals().into_iter().collect();
        let ten = self.prime_ideals();
        let ten_set: HashSet<usize> = ten.iter().copied().collect();
        r.check(
            "prime ∩ radical ideals ⊆ prime ideals",
            tri.iter()
                .filter(|p| rad.contains(p))
                .all(|p| ten_set.contains(p)),
            "",
        );
        r.check(
            "primes = prime ideals",
            tri == ten,
            format!("{} = {}", tri.len(), ten.len()),
        );
        r
    }

    /// Every tensor-side check.
    pub fn verify_all(&self) -> Result<Report> {
        let mut r = Report::new(self.space().name().unwrap_or("tensor").to_string());
        r.extend(self.verify_axioms()?);
        r.extend(self.verify_points());
        r.extend(self.verify_int());
        r.extend(self.verify_cl()?);
        r.extend(self.verify_bal()?);
        r.extend(self.verify_prid());
        r.extend(self.verify_pp_twoprm());
        Ok(r)
    }
}
