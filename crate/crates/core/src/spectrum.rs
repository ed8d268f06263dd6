//! Prime elements of a lattice and the spectrum they form.
//!
//! An element is prime when the elements strictly above it have a unique
//! minimal member; the top never is. Supports `supp(a) = {P : a ≰ P}` of the
//! objects form a closed basis, and closed sets are materialized explicitly.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::poset_space::{bits, canonical_key, full_mask, PointSet, SpecSpace};
use crate::report::Report;
use crate::thick_lattice::ThickLattice;
use crate::topology::{check_immersion, FiniteSpace};

pub const MAX_SPECTRUM_POINTS: usize = 64;
pub const MAX_CLOSED_SETS: usize = 1 << 16;

/// Prime elements, in lattice order.
pub fn primes(lat: &ThickLattice) -> Vec<usize> {
    (0..lat.len())
        .filter(|&p| lat.upper_covers(p).len() == 1)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSpace {
    labels: Vec<String>,
    elements: Vec<usize>,
    witness: Vec<Option<usize>>,
    basis: Vec<(usize, PointSet)>,
    closed_sets: Vec<PointSet>,
    /// `below[i]`: points whose element is contained in point `i`'s.
    below: Vec<PointSet>,
}

/// The spectrum of prime elements of `lat`.
pub fn spectrum(lat: &ThickLattice) -> Result<SpectrumSpace> {
    let points = primes(lat);
    let witness = points
        .iter()
        .map(|&p| Some(lat.upper_covers(p)[0]))
        .collect();
    SpectrumSpace::build(lat, points, witness)
}

impl SpectrumSpace {
    /// Spectrum on an arbitrary set of points of `lat`, with the topology
    /// generated by the supports of objects.
    pub(crate) fn build(
        lat: &ThickLattice,
        points: Vec<usize>,
        witness: Vec<Option<usize>>,
    ) -> Result<Self> {
        if points.len() > MAX_SPECTRUM_POINTS {
            return Err(Error::CapExceeded {
                what: "spectrum points",
                size: points.len(),
                cap: MAX_SPECTRUM_POINTS,
            });
        }
        let support = |a: usize| -> PointSet {
            points
                .iter()
                .enumerate()
                .filter(|(_, &p)| !lat.leq(a, p))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        let basis: Vec<(usize, PointSet)> = lat.objects().map(|a| (a, support(a))).collect();
        let all = full_mask(points.len());

        let mut unions: HashSet<PointSet> = HashSet::from([0]);
        let distinct: HashSet<PointSet> = basis.iter().map(|&(_, s)| s).collect();
        for &b in &distinct {
            let snapshot: Vec<PointSet> = unions.iter().copied().collect();
            for g in snapshot {
                unions.insert(g | b);
            }
            if unions.len() > MAX_CLOSED_SETS {
                return Err(too_many_closed_sets(unions.len()));
            }
        }
        let mut closed: HashSet<PointSet> = HashSet::from([all]);
        for &u in &unions {
            let snapshot: Vec<PointSet> = closed.iter().copied().collect();
            for f in snapshot {
                closed.insert(f & u);
            }
            if closed.len() > MAX_CLOSED_SETS {
                return Err(too_many_closed_sets(closed.len()));
            }
        }
        let mut closed_sets: Vec<PointSet> = closed.into_iter().collect();
        closed_sets.sort_unstable_by_key(|&c| canonical_key(c));

        let below = points
            .iter()
            .map(|&p| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, &q)| lat.leq(q, p))
                    .fold(0, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Ok(SpectrumSpace {
            labels: points.iter().map(|&p| lat.id(p).to_string()).collect(),
            elements: points,
            witness,
            basis,
            closed_sets,
            below,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Lattice index of each point.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn position(&self, element: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == element)
    }

    pub fn witness(&self) -> &[Option<usize>] {
        &self.witness
    }

    /// Object element and its support.
    pub fn basis(&self) -> &[(usize, PointSet)] {
        &self.basis
    }

    pub fn closed_sets(&self) -> &[PointSet] {
        &self.closed_sets
    }

    pub fn all(&self) -> PointSet {
        full_mask(self.len())
    }

    /// Closure of `{P}` computed from the closed-set family.
    pub fn topological_closure(&self, p: usize) -> PointSet {
        self.closed_sets
            .iter()
            .filter(|&&c| c & (1 << p) != 0)
            .fold(self.all(), |acc, &c| acc & c)
    }

    /// Points contained in point `p`.
    pub fn contained_in(&self, p: usize) -> PointSet {
        self.below[p]
    }

    /// Closure of a point; both the topological and the inclusion
    /// description are computed and must agree.
    pub fn point_closure(&self, p: usize) -> Result<PointSet> {
        if p >= self.len() {
            return Err(Error::UnknownElement(format!("spectrum point #{p}")));
        }
        let top = self.topological_closure(p);
        if top != self.below[p] {
            return Err(Error::InvariantViolation(format!(
                "closure of `{}` is {:#b} but the primes it contains are {:#b}",
                self.labels[p], top, self.below[p]
            )));
        }
        Ok(top)
    }

    pub fn to_finite_space(&self) -> FiniteSpace {
        FiniteSpace::new(self.labels.clone(), self.closed_sets.clone())
    }

    /// The points ordered by inclusion, as a space.
    pub fn specialization_space(&self) -> SpecSpace {
        let rel: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|p| bits(self.below[p] & !(1 << p)).map(move |q| (q, p)))
            .collect();
        SpecSpace::from_indices(Some("spectrum".into()), self.labels.clone(), &rel)
            .expect("inclusion of primes is a partial order")
    }

    pub fn set_label(&self, set: PointSet) -> String {
        if set == 0 {
            return "∅".into();
        }
        let names: Vec<&str> = bits(set).map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

fn too_many_closed_sets(n: usize) -> Error {
    Error::CapExceeded {
        what: "closed sets of the spectrum",
        size: n,
        cap: MAX_CLOSED_SETS,
    }
}

pub(crate) fn support_over(lat: &ThickLattice, points: &[usize], a: usize) -> PointSet {
    points
        .iter()
        .enumerate()
        .filter(|(_, &p)| !lat.leq(a, p))
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Primes not above `a`, as a subset of `primes(lat)`.
pub fn supp(lat: &ThickLattice, a: &str) -> Result<PointSet> {
    let a = lat.index_of(a)?;
    let ps = primes(lat);
    if ps.len() > MAX_SPECTRUM_POINTS {
        return Err(Error::CapExceeded {
            what: "spectrum points",
            size: ps.len(),
            cap: MAX_SPECTRUM_POINTS,
        });
    }
    Ok(support_over(lat, &ps, a))
}

/// Meet of all primes above `a`; the top if there are none.
pub fn radical(lat: &ThickLattice, a: &str) -> Result<usize> {
    let a = lat.index_of(a)?;
    Ok(radical_of(lat, &primes(lat), a))
}

pub(crate) fn radical_of(lat: &ThickLattice, primes: &[usize], a: usize) -> usize {
    primes
        .iter()
        .filter(|&&p| lat.leq(a, p))
        .fold(lat.top(), |acc, &p| lat.meet(acc, p))
}

/// Supports of all elements, deduplicated, in canonical order.
pub fn param_set(lat: &ThickLattice) -> Result<Vec<PointSet>> {
    let ps = primes(lat);
    if ps.len() > MAX_SPECTRUM_POINTS {
        return Err(Error::CapExceeded {
            what: "spectrum points",
            size: ps.len(),
            cap: MAX_SPECTRUM_POINTS,
        });
    }
    let mut out: Vec<PointSet> = (0..lat.len()).map(|a| support_over(lat, &ps, a)).collect();
    out.sort_unstable_by_key(|&s| canonical_key(s));
    out.dedup();
    Ok(out)
}

/// Checks that supports and their inverse are mutually inverse order
/// isomorphisms between radical elements and the parameter set. Also records
/// whether every element is radical.
pub fn verify_cls(lat: &ThickLattice) -> Result<Report> {
    let mut report = Report::new("cls");
    let ps = primes(lat);
    let params = param_set(lat)?;
    let supports: Vec<PointSet> = (0..lat.len()).map(|a| support_over(lat, &ps, a)).collect();
    let rad: Vec<usize> = (0..lat.len())
        .filter(|&a| radical_of(lat, &ps, a) == a)
        .collect();
    report.check(
        "finite-radical",
        rad.len() == lat.len(),
        format!("{} of {} elements radical", rad.len(), lat.len()),
    );

    // supp⁻¹(W): the largest element whose support lies in W.
    let inverse = |w: PointSet| -> usize {
        (0..lat.len())
            .filter(|&a| supports[a] & !w == 0)
            .fold(lat.bottom(), |acc, a| lat.join(acc, a))
    };
    let image: HashSet<PointSet> = rad.iter().map(|&a| supports[a]).collect();
    report.check(
        "supp injective on radicals",
        image.len() == rad.len(),
        format!("{} radicals, {} supports", rad.len(), image.len()),
    );
    let param_set: HashSet<PointSet> = params.iter().copied().collect();
    report.check(
        "supp onto parameter set",
        image == param_set,
        format!("{} parameters", params.len()),
    );
    let left = rad.iter().all(|&a| inverse(supports[a]) == a);
    report.check("supp⁻¹ ∘ supp = id", left, "");
    let right = params.iter().all(|&w| supports[inverse(w)] == w);
    report.check("supp ∘ supp⁻¹ = id", right, "");
    let monotone = rad.iter().all(|&a| {
        rad.iter()
            .all(|&b| lat.leq(a, b) == (supports[a] & !supports[b] == 0))
    });
    report.check("order isomorphism", monotone, "");
    Ok(report)
}

/// Closure of each point agrees with the primes below it, and the spectrum
/// is T0.
pub fn verify_point_closures(spec: &SpectrumSpace) -> Report {
    let mut report = Report::new("point closures");
    let agree = (0..spec.len()).all(|p| spec.point_closure(p).is_ok());
    report.check("point closure = primes contained", agree, "");
    let closures: HashSet<PointSet> = (0..spec.len())
        .map(|p| spec.topological_closure(p))
        .collect();
    report.check("T0", closures.len() == spec.len(), "");
    report
}

/// The reconstruction of a space from its lattice of specialization-closed
/// subsets.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub lattice: ThickLattice,
    pub spectrum: SpectrumSpace,
    /// Spectrum position of each point of the space.
    pub phi: Vec<usize>,
    pub report: Report,
}

/// Builds the lattice of `space`, maps `x ↦ W_x` and verifies the map is a
/// homeomorphism onto the spectrum. A failed verification is an error.
pub fn rcst_map(space: &SpecSpace) -> Result<Reconstruction> {
    let lattice = ThickLattice::from_support_data(space)?;
    let spec = spectrum(&lattice)?;
    let masks = lattice.masks().expect("classified lattice");
    let mut report = Report::new(space.name().unwrap_or("space").to_string());

    let mut phi = Vec::with_capacity(space.len());
    for w in space.prime_spcl() {
        let e = masks.iter().position(|&m| m == w);
        match e.and_then(|e| spec.position(e)) {
            Some(p) => phi.push(p),
            None => {
                report.check("phi lands in primes", false, space.set_label(w));
                return Err(Error::InvariantViolation(report.to_string()));
            }
        }
    }
    let hit = phi.iter().fold(0u64, |acc, &p| acc | 1 << p);
    report.check(
        "phi bijective",
        hit.count_ones() as usize == space.len() && spec.len() == space.len(),
        format!("{} points, {} primes", space.len(), spec.len()),
    );
    let preimage = |set: PointSet| -> PointSet {
        phi.iter()
            .enumerate()
            .filter(|(_, &p)| set & (1 << p) != 0)
            .fold(0, |acc, (x, _)| acc | 1 << x)
    };
    let supports_pull_back = spec.basis().iter().all(|&(a, s)| preimage(s) == masks[a]);
    report.check("phi⁻¹(supp a) = σ(a)", supports_pull_back, "");
    let closed_x = space.enumerate_spcl()?;
    let forward_closed = closed_x.members.iter().all(|&c| {
        let img = bits(c).fold(0u64, |acc, x| acc | 1 << phi[x]);
        spec.closed_sets()
            .binary_search_by_key(&canonical_key(img), |&s| canonical_key(s))
            .is_ok()
    });
    report.check("phi closed", forward_closed, "");
    let backward_closed = spec
        .closed_sets()
        .iter()
        .all(|&c| closed_x.contains(preimage(c)));
    report.check("phi⁻¹ closed", backward_closed, "");
    if !report.passed() {
        return Err(Error::InvariantViolation(report.to_string()));
    }
    Ok(Reconstruction {
        lattice,
        spectrum: spec,
        phi,
        report,
    })
}

/// The map from the spectrum of a quotient into the ambient spectrum.
#[derive(Debug, Clone)]
pub struct QuotientImmersion {
    pub quotient: ThickLattice,
    pub quotient_spectrum: SpectrumSpace,
    /// Ambient spectrum position of each quotient prime.
    pub map: Vec<usize>,
    pub image: PointSet,
    pub report: Report,
}

pub fn induced_immersion(lat: &ThickLattice, k: &str) -> Result<QuotientImmersion> {
    let (quotient, inclusion) = lat.quotient(k)?;
    let k_idx = lat.index_of(k)?;
    let ambient = spectrum(lat)?;
    let qspec = spectrum(&quotient)?;
    let mut report = Report::new(format!("quotient by {k}"));

    let mapped: Vec<Option<usize>> = qspec
        .elements()
        .iter()
        .map(|&q| ambient.position(inclusion.forward[q]))
        .collect();
    report.check(
        "primes map to primes",
        mapped.iter().all(Option::is_some),
        "",
    );
    let map: Vec<usize> = mapped.into_iter().flatten().collect();
    let expected: PointSet = ambient
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, &p)| lat.leq(k_idx, p))
        .fold(0, |acc, (i, _)| acc | 1 << i);
    let check = check_immersion(&qspec.to_finite_space(), &ambient.to_finite_space(), &map);
    report.check("injective", check.injective && map.len() == qspec.len(), "");
    report.check(
        "image = primes above k",
        check.image == expected,
        format!("{} points", expected.count_ones()),
    );
    report.check("subspace topology", check.subspace_topology, "");
    Ok(QuotientImmersion {
        quotient,
        quotient_spectrum: qspec,
        map,
        image: check.image,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn lat(space: SpecSpace) -> ThickLattice {
        ThickLattice::from_support_data(&space).unwrap()
    }

    fn ids(l: &ThickLattice, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| l.id(x).to_string()).collect()
    }

    #[test]
    fn primes_examples() {
        let s = lat(SpecSpace::sierpinski());
        assert_eq!(ids(&s, &primes(&s)), ["∅", "{a}"]);
        let v = lat(SpecSpace::v_model());
        assert_eq!(ids(&v, &primes(&v)), ["{a}", "{b}", "{a,b}"]);
        let aug = ThickLattice::augment(&v, &["f1", "f2"]).unwrap();
        let mut got = ids(&aug, &primes(&aug));
        got.sort();
        assert_eq!(got, ["f1", "f2", "{a,b}", "{a}", "{b}"]);
        for l in [s, v, aug] {
            assert_eq!(primes(&l), oracle::scan_primes(&l).unwrap());
        }
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(&lat(SpecSpace::sierpinski())).unwrap();
        let sierp = FiniteSpace::from_order(&SpecSpace::sierpinski()).unwrap();
        assert!(oracle::homeomorphic(&s.to_finite_space(), &sierp)
            .unwrap()
            .is_some());

        let b = spectrum(&ThickLattice::boolean(2)).unwrap();
        let disc = FiniteSpace::from_order(&SpecSpace::discrete(2)).unwrap();
        assert!(oracle::homeomorphic(&b.to_finite_space(), &disc)
            .unwrap()
            .is_some());

        let aug = ThickLattice::augment(&lat(SpecSpace::v_model()), &["f"]).unwrap();
        let sp = spectrum(&aug).unwrap();
        let f = sp.labels().iter().position(|l| l == "f").unwrap();
        assert!(sp.to_finite_space().is_closed(1 << f));
        assert!(sp.to_finite_space().is_closed(sp.all() & !(1 << f)));
        let rest = sp.to_finite_space().subspace(sp.all() & !(1 << f));
        let v = FiniteSpace::from_order(&SpecSpace::v_model()).unwrap();
        assert!(oracle::homeomorphic(&rest, &v).unwrap().is_some());
    }

    #[test]
    fn supp_examples() {
        let v = lat(SpecSpace::v_model());
        // primes in order: {a}, {b}, {a,b}
        assert_eq!(supp(&v, "{a}").unwrap(), 0b010);
        assert_eq!(supp(&v, "∅").unwrap(), 0);
        assert_eq!(supp(&v, "{a,b,η}").unwrap(), 0b111);
        assert!(matches!(supp(&v, "zz"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn point_closure_examples() {
        let v = lat(SpecSpace::v_model());
        let sp = spectrum(&v).unwrap();
        assert_eq!(sp.point_closure(2).unwrap(), 0b111);
        assert_eq!(sp.point_closure(0).unwrap(), 0b001);
        let aug = ThickLattice::augment(&v, &["f"]).unwrap();
        let sp = spectrum(&aug).unwrap();
        let f = sp.labels().iter().position(|l| l == "f").unwrap();
        assert_eq!(sp.point_closure(f).unwrap(), 1 << f);
        assert!(sp.point_closure(99).is_err());
    }

    #[test]
    fn radical_examples() {
        let v = lat(SpecSpace::v_model());
        assert_eq!(radical(&v, "{a,b,η}").unwrap(), v.top());
        assert_eq!(radical(&v, "∅").unwrap(), v.bottom());
        for l in [
            v,
            ThickLattice::pentagon(),
            ThickLattice::diamond(),
            ThickLattice::trivial(),
        ] {
            for a in 0..l.len() {
                assert_eq!(radical(&l, l.id(a)).unwrap(), a);
            }
        }
    }

    #[test]
    fn param_set_examples() {
        let s = lat(SpecSpace::sierpinski());
        assert_eq!(param_set(&s).unwrap(), vec![0, 0b01, 0b11]);
        assert_eq!(param_set(&ThickLattice::trivial()).unwrap(), vec![0]);
        assert_eq!(
            param_set(&ThickLattice::boolean(2)).unwrap(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn cls_examples() {
        let r = verify_cls(&lat(SpecSpace::v_model())).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(param_set(&lat(SpecSpace::v_model())).unwrap().len(), 5);
        assert!(verify_cls(&ThickLattice::trivial()).unwrap().passed());
        assert!(verify_cls(&ThickLattice::pentagon()).unwrap().passed());
    }

    #[test]
    fn rcst_examples() {
        let r = rcst_map(&SpecSpace::sierpinski()).unwrap();
        assert_eq!(r.spectrum.labels()[r.phi[0]], "∅");
        assert_eq!(r.spectrum.labels()[r.phi[1]], "{a}");
        for n in 1..=4 {
            let r = rcst_map(&SpecSpace::discrete(n)).unwrap();
            assert_eq!(r.spectrum.len(), n);
            assert_eq!(r.spectrum.closed_sets().len(), 1 << n);
        }
    }

    #[test]
    fn induced_immersion_examples() {
        let v = lat(SpecSpace::v_model());
        let im = induced_immersion(&v, "{a}").unwrap();
        assert!(im.report.passed(), "{}", im.report);
        let sp = spectrum(&v).unwrap();
        assert_eq!(sp.set_label(im.image), "{{a}, {a,b}}");
        assert_eq!(im.quotient_spectrum.len(), 2);
        assert_eq!(im.quotient_spectrum.closed_sets().len(), 3);

        let id = induced_immersion(&v, "∅").unwrap();
        assert!(id.report.passed());
        assert_eq!(id.map, vec![0, 1, 2]);

        let top = induced_immersion(&v, "{a,b,η}").unwrap();
        assert!(top.report.passed());
        assert!(top.map.is_empty() && top.image == 0);
    }
}
