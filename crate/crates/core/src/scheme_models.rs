//! Finite scheme models: a space whose points carry the type of their local
//! ring, the loci cut out by those types, and the lattice models of perfect
//! and singularity categories built from them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset_space::{bits, PointSet, SpecSpace};
use crate::report::Report;
use crate::spectrum::{spectrum, SpectrumSpace};
use crate::tensor::{tensor_lattice, TensorLattice};
use crate::thick_lattice::ThickLattice;
use crate::topology::{check_immersion, compress, FiniteSpace, ImmersionCheck};

/// Type of the local ring at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalType {
    Regular,
    Hypersurface,
    /// Complete intersection of codimension at least 2.
    CompleteIntersection(u32),
    /// Gorenstein but not a complete intersection.
    GorensteinNonCi,
    Other,
}

impl LocalType {
    pub fn is_complete_intersection(self) -> bool {
        matches!(
            self,
            LocalType::Regular | LocalType::Hypersurface | LocalType::CompleteIntersection(_)
        )
    }

    pub fn is_gorenstein(self) -> bool {
        self != LocalType::Other
    }
}

impl FromStr for LocalType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "regular" => Ok(LocalType::Regular),
            "hypersurface" => Ok(LocalType::Hypersurface),
            "gorenstein" => Ok(LocalType::GorensteinNonCi),
            "other" => Ok(LocalType::Other),
            _ => match s.strip_prefix("ci:").map(str::parse::<u32>) {
                Some(Ok(c)) if c >= 2 => Ok(LocalType::CompleteIntersection(c)),
                _ => Err(Error::InvalidTag(s.to_string())),
            },
        }
    }
}

impl fmt::Display for LocalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalType::Regular => f.write_str("regular"),
            LocalType::Hypersurface => f.write_str("hypersurface"),
            LocalType::CompleteIntersection(c) => write!(f, "ci:{c}"),
            LocalType::GorensteinNonCi => f.write_str("gorenstein"),
            LocalType::Other => f.write_str("other"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeModel {
    name: String,
    space: SpecSpace,
    /// `tags[i]` is the local type at point `i`.
    tags: Vec<LocalType>,
    separated: bool,
}

impl SchemeModel {
    /// `tags` must name every point of `space` exactly once. The space takes
    /// the model's name.
    pub fn new<S: AsRef<str>>(
        name: impl Into<String>,
        space: SpecSpace,
        tags: &[(S, LocalType)],
        separated: bool,
    ) -> Result<Self> {
        let mut slots: Vec<Option<LocalType>> = vec![None; space.len()];
        for (label, t) in tags {
            let i = space.index_of(label.as_ref())?;
            if slots[i].replace(*t).is_some() {
                return Err(Error::DuplicatePoint(label.as_ref().to_string()));
            }
        }
        let tags = slots
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::InvalidTag(format!("missing tag for `{}`", space.label(i))))
            })
            .collect::<Result<_>>()?;
        let name = name.into();
        Ok(SchemeModel {
            space: space.with_name(name.clone()),
            name,
            tags,
            separated,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &SpecSpace {
        &self.space
    }

    pub fn tags(&self) -> &[LocalType] {
        &self.tags
    }

    pub fn tag(&self, point: &str) -> Result<LocalType> {
        Ok(self.tags[self.space.index_of(point)?])
    }

    pub fn separated(&self) -> bool {
        self.separated
    }

    pub fn gorenstein(&self) -> bool {
        self.tags.iter().all(|t| t.is_gorenstein())
    }

    fn locus(&self, pred: impl Fn(LocalType) -> bool) -> PointSet {
        self.tags
            .iter()
            .enumerate()
            .filter(|(_, &t)| pred(t))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn sing_locus(&self) -> PointSet {
        self.locus(|t| t != LocalType::Regular)
    }

    pub fn ci_locus(&self) -> PointSet {
        self.locus(LocalType::is_complete_intersection)
    }

    pub fn hs_locus(&self) -> PointSet {
        self.locus(|t| t == LocalType::Hypersurface)
    }

    /// Why the singularity category has no lattice model, if it has none.
    fn sg_obstruction(&self) -> Option<String> {
        if !self.gorenstein() {
            return Some("model is not Gorenstein".into());
        }
        if !self.separated {
            return Some("model is not separated".into());
        }
        let bad = self.sing_locus() & !self.hs_locus();
        if bad != 0 {
            return Some(format!(
                "singular points {} are not hypersurfaces",
                self.space.set_label(bad)
            ));
        }
        None
    }

    /// Whether [`dsg_model`] and [`sg_immersion`] are available.
    pub fn sg_classified(&self) -> bool {
        self.sg_obstruction().is_none()
    }
}

/// Tensor lattice of the perfect complexes: specialization-closed subsets of
/// the whole space.
pub fn dperf_model(m: &SchemeModel) -> Result<TensorLattice> {
    tensor_lattice(&m.space)
}

/// Lattice of the singularity category: specialization-closed subsets of the
/// singular locus with the induced order.
pub fn dsg_model(m: &SchemeModel) -> Result<ThickLattice> {
    if let Some(why) = m.sg_obstruction() {
        return Err(Error::ClassificationUnavailable(why));
    }
    ThickLattice::from_support_data(&m.space.restrict(m.sing_locus()))
}

/// A map from a locus of the model into a spectrum, with its immersion check.
#[derive(Debug, Clone)]
pub struct ModelImmersion {
    pub source: FiniteSpace,
    pub spectrum: SpectrumSpace,
    /// Spectrum position of each source point.
    pub map: Vec<usize>,
    pub check: ImmersionCheck,
}

impl ModelImmersion {
    pub fn report(&self, subject: impl Into<String>) -> Report {
        let mut r = Report::new(subject);
        let c = &self.check;
        r.check("injective", c.injective, "");
        r.check("subspace topology", c.subspace_topology, "");
        let detail = format!(
            "{} points into {} primes",
            self.map.len(),
            self.spectrum.len()
        );
        if c.surjective {
            r.check("onto spectrum", true, detail);
        } else {
            r.warn("onto spectrum", detail);
        }
        r
    }
}

/// Maps each point `x` of `space` to the element with id `W_x` of `lat` and
/// checks the result is an immersion into the spectrum of `lat`.
///
/// `lat` may be any lattice containing the classified elements under their
/// usual ids, such as an augmentation of the classified lattice.
pub fn perf_immersion_into(space: &SpecSpace, lat: &ThickLattice) -> Result<ModelImmersion> {
    let spec = spectrum(lat)?;
    let map = space
        .prime_spcl()
        .into_iter()
        .map(|w| {
            let e = lat.index_of(&space.set_label(w))?;
            spec.position(e).ok_or_else(|| {
                Error::InvariantViolation(format!("`{}` is not prime", space.set_label(w)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let source = FiniteSpace::from_order(space)?;
    let check = check_immersion(&source, &spec.to_finite_space(), &map);
    Ok(ModelImmersion {
        source,
        spectrum: spec,
        map,
        check,
    })
}

/// `x ↦ S^perf(x)` into the spectrum of the perfect model.
pub fn perf_immersion(m: &SchemeModel) -> Result<ModelImmersion> {
    let tl = dperf_model(m)?;
    perf_immersion_into(&m.space, tl.base())
}

/// `x ↦ S^sg(x)` from the hypersurface locus into the spectrum of the
/// singularity model.
pub fn sg_immersion(m: &SchemeModel) -> Result<ModelImmersion> {
    let lat = dsg_model(m)?;
    let sing = m.sing_locus();
    let sing_space = m.space.restrict(sing);
    let keep: Vec<usize> = bits(sing).collect();
    let hs = compress(m.hs_locus(), &keep);
    let spec = spectrum(&lat)?;
    let map = bits(hs)
        .map(|x| {
            let w = sing_space.prime_spcl()[x];
            let e = lat.index_of(&sing_space.set_label(w))?;
            spec.position(e).ok_or_else(|| {
                Error::InvariantViolation(format!("`{}` is not prime", sing_space.set_label(w)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let source = FiniteSpace::from_order(&sing_space)?.subspace(hs);
    let check = check_immersion(&source, &spec.to_finite_space(), &map);
    Ok(ModelImmersion {
        source,
        spectrum: spec,
        map,
        check,
    })
}

/// Primality of a singularity-category point, where it is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgPrime {
    Prime,
    NotPrime,
    /// Gorenstein but not a complete intersection: not settled.
    Unknown,
    /// The point is regular or the local ring is not Gorenstein.
    NotApplicable,
}

impl fmt::Display for SgPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SgPrime::Prime => "prime",
            SgPrime::NotPrime => "not prime",
            SgPrime::Unknown => "unknown",
            SgPrime::NotApplicable => "n/a",
        })
    }
}

/// Primality of `S^b(x)` and `S^sg(x)` as determined by the local type.
///
/// These are lookups from the local type, not computations: the lattice of
/// the bounded derived category is never built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocusPrimality {
    pub sb_prime: bool,
    pub sg_prime: SgPrime,
}

pub fn locus_prime_predicates(m: &SchemeModel, point: &str) -> Result<LocusPrimality> {
    let t = m.tag(point)?;
    let sg_prime = match t {
        LocalType::Regular | LocalType::Other => SgPrime::NotApplicable,
        LocalType::Hypersurface => SgPrime::Prime,
        LocalType::CompleteIntersection(_) => SgPrime::NotPrime,
        LocalType::GorensteinNonCi => SgPrime::Unknown,
    };
    Ok(LocusPrimality {
        sb_prime: t.is_complete_intersection(),
        sg_prime,
    })
}

/// Whether CI(X) is open in X and HS(X) is open in Sing(X). Failures are
/// warnings: arbitrary tags need not come from an actual scheme.
pub fn loci_openness_check(m: &SchemeModel) -> Report {
    let mut r = Report::new(m.name.clone());
    let sp = &m.space;
    let ci = m.ci_locus();
    if sp.is_open(ci) {
        r.check("CI open in X", true, sp.set_label(ci));
    } else {
        r.warn("CI open in X", format!("{} is not open", sp.set_label(ci)));
    }
    let sing = m.sing_locus();
    let keep: Vec<usize> = bits(sing).collect();
    let sub = sp.restrict(sing);
    let hs = compress(m.hs_locus(), &keep);
    if sub.is_open(hs) {
        r.check("HS open in Sing", true, sub.set_label(hs));
    } else {
        r.warn(
            "HS open in Sing",
            format!("{} is not open", sub.set_label(hs)),
        );
    }
    r
}

/// Every model-level check: loci inclusions, the perfect immersion, the
/// singularity immersion when available, and openness of the loci.
pub fn verify_model(m: &SchemeModel) -> Result<Report> {
    let mut r = Report::new(m.name.clone());
    let (sing, ci, hs) = (m.sing_locus(), m.ci_locus(), m.hs_locus());
    r.check(
        "HS ⊆ CI ∩ Sing, X∖Sing ⊆ CI",
        hs & !(ci & sing) == 0 && m.space.all() & !sing & !ci == 0,
        "",
    );
    let perf = perf_immersion(m)?;
    let c = &perf.check;
    r.check(
        "perf immersion is a homeomorphism",
        c.is_homeomorphism(),
        format!("{} points, {} primes", m.space.len(), perf.spectrum.len()),
    );
    match sg_immersion(m) {
        Ok(sg) => {
            let hs_eq_sing = m.hs_locus() == m.sing_locus();
            r.check(
                "sg immersion",
                sg.check.is_immersion() && sg.check.is_homeomorphism() == hs_eq_sing,
                format!("{} points, {} primes", sg.map.len(), sg.spectrum.len()),
            );
        }
        Err(Error::ClassificationUnavailable(why)) => {
            r.warn("sg immersion", format!("classification unavailable: {why}"));
        }
        Err(e) => return Err(e),
    }
    r.extend(loci_openness_check(m));
    Ok(r)
}
