//! Verification suites over spaces, lattices and models, shared by the CLI
//! and the acceptance tests.
//!
//! Each suite yields a [`Report`]. Internal invariant violations become
//! failed checks and missing classifications become warnings; any other
//! error (bad input, exceeded caps) is returned as is.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::{homeomorphic, scan_prime_subsets, scan_primes};
use crate::poset_space::{bits, canonical_key, full_mask, PointSet, SpecSpace};
use crate::report::{Check, Report, Status};
use crate::scheme_models::{
    loci_openness_check, perf_immersion_into, sg_immersion, verify_model, SchemeModel,
};
use crate::spectrum::{
    induced_immersion, primes, radical, rcst_map, spectrum, verify_cls, verify_point_closures,
};
use crate::tensor::tensor_lattice;
use crate::thick_lattice::ThickLattice;
use crate::topology::FiniteSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Prime specialization-closed subsets against the brute-force scan.
    PrimeSubsets,
    /// Reconstruction of a space from its spectrum, with closure checks.
    Rcst,
    /// Radicals and the support classification.
    Cls,
    /// Spectra of every quotient.
    Quot,
    /// Every tensor-side comparison.
    Tensor,
    Prid,
    Twoprm,
    /// Openness of the CI and HS loci.
    Openness,
    /// Perfect and singularity immersions of a model.
    Sg,
    /// Fast primes against the brute-force scan.
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::PrimeSubsets,
        Suite::Rcst,
        Suite::Cls,
        Suite::Quot,
        Suite::Tensor,
        Suite::Prid,
        Suite::Twoprm,
        Suite::Openness,
        Suite::Sg,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PrimeSubsets => "prime-subsets",
            Suite::Rcst => "rcst",
            Suite::Cls => "cls",
            Suite::Quot => "quot",
            Suite::Tensor => "tensor",
            Suite::Prid => "prid",
            Suite::Twoprm => "twoprm",
            Suite::Openness => "openness",
            Suite::Sg => "sg",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Runs `f`, folding invariant violations and unavailable classifications
/// into the report.
fn guarded(subject: &str, f: impl FnOnce() -> Result<Report>) -> Result<Report> {
    match f() {
        Ok(r) => Ok(r),
        Err(Error::InvariantViolation(msg)) => {
            let mut r = Report::new(subject);
            r.check("invariant", false, msg);
            Ok(r)
        }
        Err(Error::ClassificationUnavailable(msg)) => {
            let mut r = Report::new(subject);
            r.warn(
                "classification",
                format!("classification unavailable: {msg}"),
            );
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

fn subject(space: &SpecSpace) -> String {
    space.name().unwrap_or("space").to_string()
}

fn sorted(mut v: Vec<PointSet>) -> Vec<PointSet> {
    v.sort_unstable_by_key(|&s| canonical_key(s));
    v.dedup();
    v
}

/// Prime specialization-closed subsets found by scanning equal `{W_x}`.
pub fn prime_subsets(space: &SpecSpace) -> Result<Report> {
    let mut r = Report::new(subject(space));
    let scanned = scan_prime_subsets(space)?;
    let fast = space.prime_spcl();
    let distinct = sorted(fast.clone());
    r.check(
        "prime spcl subsets = {W_x}",
        sorted(scanned) == distinct,
        format!("{} points", space.len()),
    );
    r.check("W_x pairwise distinct", distinct.len() == fast.len(), "");
    Ok(r)
}

/// Spectrum of the classified lattice is homeomorphic to the space, checked
/// both through the map `x ↦ W_x` and by an independent search; closures
/// in the spectrum are the primes contained.
pub fn rcst(space: &SpecSpace) -> Result<Report> {
    guarded(&subject(space), || {
        let rec = rcst_map(space)?;
        let mut r = rec.report;
        let found = homeomorphic(
            &rec.spectrum.to_finite_space(),
            &FiniteSpace::from_order(space)?,
        )?;
        r.check("oracle homeomorphism", found.is_some(), "");
        let closures = verify_point_closures(&rec.spectrum);
        r.extend(closures);
        r.check(
            "spectrum is a topology",
            rec.spectrum.to_finite_space().is_topology(),
            format!("{} closed sets", rec.spectrum.closed_sets().len()),
        );
        Ok(r)
    })
}

/// Every element is radical and supports classify radicals.
pub fn cls(name: &str, lat: &ThickLattice) -> Result<Report> {
    guarded(name, || {
        let mut r = Report::new(name);
        r.extend(verify_cls(lat)?);
        let mut fixed = true;
        for a in 0..lat.len() {
            fixed &= radical(lat, lat.id(a))? == a;
        }
        r.check("radical(a) = a", fixed, format!("{} elements", lat.len()));
        Ok(r)
    })
}

/// Spectrum of `[k, top]` immerses onto the primes above `k`, for every `k`.
pub fn quot(name: &str, lat: &ThickLattice) -> Result<Report> {
    guarded(name, || {
        let mut r = Report::new(name);
        for k in 0..lat.len() {
            let q = induced_immersion(lat, lat.id(k))?;
            for mut c in q.report.checks {
                c.name = format!("{} (k = {})", c.name, lat.id(k));
                r.checks.push(c);
            }
        }
        Ok(r)
    })
}

pub fn oracle(name: &str, lat: &ThickLattice) -> Result<Report> {
    let mut r = Report::new(name);
    let fast = primes(lat);
    let slow = scan_primes(lat)?;
    r.check(
        "primes = scanned primes",
        fast == slow,
        format!("{} primes", fast.len()),
    );
    Ok(r)
}

/// The tensor comparisons selected by `which` (a subset of tensor, prid,
/// twoprm), plus a homeomorphism between the Balmer spectrum and the space
/// when the full tensor suite is requested.
pub fn tensor(space: &SpecSpace, which: &[Suite]) -> Result<Report> {
    guarded(&subject(space), || {
        let tl = tensor_lattice(space)?;
        let mut r = Report::new(subject(space));
        if which.contains(&Suite::Tensor) {
            r.extend(tl.verify_all()?);
            let bal = tl.balmer_spectrum()?;
            let found = homeomorphic(&bal.to_finite_space(), &FiniteSpace::from_order(space)?)?;
            r.check("Balmer spectrum ≅ space", found.is_some(), "");
        } else {
            if which.contains(&Suite::Prid) {
                r.extend(tl.verify_prid());
            }
            if which.contains(&Suite::Twoprm) {
                r.extend(tl.verify_pp_twoprm());
            }
        }
        Ok(r)
    })
}

/// Checks on the classified lattice of `base` augmented by `atoms`: the
/// spectrum has `|base| + |atoms|` points, atom points are clopen, the rest
/// is the base space, and the base maps in by a proper immersion.
pub fn augmented<S: AsRef<str>>(
    name: &str,
    base: &SpecSpace,
    lat: &ThickLattice,
    atoms: &[S],
) -> Result<Report> {
    let m = atoms.len();
    guarded(name, || {
        let mut r = Report::new(name);
        let spec = spectrum(lat)?;
        let expected = base.len() + m;
        r.check(
            "spectrum size",
            spec.len() == expected,
            format!("{} points, expected {}", spec.len(), expected),
        );
        let top = spec.to_finite_space();
        let atoms: PointSet = spec
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| atoms.iter().any(|a| a.as_ref() == l.as_str()))
            .fold(0, |acc, (i, _)| acc | 1 << i);
        r.check(
            "atom points",
            atoms.count_ones() as usize == m,
            spec.set_label(atoms),
        );
        let clopen =
            bits(atoms).all(|p| top.is_closed(1 << p) && top.is_closed(top.all() & !(1 << p)));
        r.check("atom points clopen", clopen, "");
        let rest = top.subspace(full_mask(spec.len()) & !atoms);
        let found = homeomorphic(&rest, &FiniteSpace::from_order(base)?)?;
        r.check("complement of atoms ≅ base", found.is_some(), "");
        let imm = perf_immersion_into(base, lat)?;
        r.check("base immerses", imm.check.is_immersion(), "");
        r.check(
            "image = complement of atoms",
            imm.check.image == top.all() & !atoms,
            "",
        );
        Ok(r)
    })
}

/// Model-level checks, with the singularity spectrum compared to the
/// singular locus by an independent search whenever it is classified.
pub fn model(m: &SchemeModel) -> Result<Report> {
    guarded(m.name(), || {
        let mut r = verify_model(m)?;
        if m.sg_classified() {
            let sg = sg_immersion(m)?;
            let sing = FiniteSpace::from_order(&m.space().restrict(m.sing_locus()))?;
            let found = homeomorphic(&sg.spectrum.to_finite_space(), &sing)?;
            r.check("sg spectrum ≅ Sing", found.is_some(), "");
        }
        Ok(r)
    })
}

/// Relabels every element of `lat` and checks that primes correspond and
/// the spectra are homeomorphic through the relabeling.
pub fn transport_invariance(name: &str, lat: &ThickLattice) -> Result<Report> {
    let relabel: HashMap<String, String> = lat
        .ids()
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), format!("t{i}")))
        .collect();
    let (moved, map) = lat.transport(&relabel)?;
    let mut r = Report::new(name);
    r.check("iso", map.is_order_isomorphism(lat, &moved), "");
    let before = spectrum(lat)?;
    let after = spectrum(&moved)?;
    let mapped: Vec<usize> = before.elements().iter().map(|&e| map.forward[e]).collect();
    r.check("primes correspond", mapped == after.elements(), "");
    r.check(
        "spectra equal through relabeling",
        before.closed_sets() == after.closed_sets(),
        "",
    );
    Ok(r)
}

/// One input to [`verify`].
#[derive(Debug, Clone)]
pub enum Subject {
    Space(SpecSpace),
    Lattice(String, ThickLattice),
    Model(SchemeModel),
}

impl Subject {
    pub fn name(&self) -> &str {
        match self {
            Subject::Space(s) => s.name().unwrap_or("space"),
            Subject::Lattice(n, _) => n,
            Subject::Model(m) => m.name(),
        }
    }
}

/// Runs the requested suites on one subject, one report per suite. Suites
/// that do not apply to the subject are reported as warnings.
pub fn verify(subject: &Subject, suites: &[Suite]) -> Result<Vec<(Suite, Report)>> {
    let name = subject.name().to_string();
    let (space, lattice) = match subject {
        Subject::Space(s) => (Some(s.clone()), None),
        Subject::Model(m) => (Some(m.space().clone()), None),
        Subject::Lattice(_, l) => (None, Some(l.clone())),
    };
    let lattice = match (&space, lattice) {
        (_, Some(l)) => l,
        (Some(s), None) => ThickLattice::from_support_data(s)?,
        (None, None) => unreachable!(),
    };
    let mut out = Vec::new();
    for &suite in suites {
        let report = match (suite, &space, subject) {
            (Suite::PrimeSubsets, Some(s), _) => prime_subsets(s)?,
            (Suite::Rcst, Some(s), _) => rcst(s)?,
            (Suite::Cls, _, _) => cls(&name, &lattice)?,
            (Suite::Quot, _, _) => quot(&name, &lattice)?,
            (Suite::Oracle, _, _) => oracle(&name, &lattice)?,
            (Suite::Tensor | Suite::Prid | Suite::Twoprm, Some(s), _) => tensor(s, &[suite])?,
            (Suite::Openness, _, Subject::Model(m)) => loci_openness_check(m),
            (Suite::Sg, _, Subject::Model(m)) => model(m)?,
            _ => {
                let mut r = Report::new(name.clone());
                r.warn(
                    suite.name(),
                    format!("not applicable to this {}", kind(subject)),
                );
                r
            }
        };
        out.push((suite, report));
    }
    Ok(out)
}

fn kind(subject: &Subject) -> &'static str {
    match subject {
        Subject::Space(_) => "space",
        Subject::Lattice(..) => "lattice",
        Subject::Model(_) => "model",
    }
}

/// Collapses a report into one check named `name`: failed if any check
/// failed, a warning if any warned, passed otherwise.
pub fn summarize(name: &str, report: &Report) -> Check {
    let failures: Vec<&Check> = report.failures().collect();
    let (status, detail) = if let Some(first) = failures.first() {
        let d = if first.detail.is_empty() {
            first.name.clone()
        } else {
            format!("{}: {}", first.name, first.detail)
        };
        (Status::Fail, d)
    } else if let Some(w) = report.checks.iter().find(|c| c.status == Status::Warn) {
        (Status::Warn, format!("{}: {}", w.name, w.detail))
    } else {
        (Status::Pass, format!("{} checks", report.checks.len()))
    };
    Check {
        name: name.to_string(),
        status,
        detail,
    }
}

/// Maps `f` over `items` on `jobs` threads (0 = rayon's default), keeping
/// input order in the output.
pub fn run_parallel<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| items.par_iter().map(&f).collect())
}
