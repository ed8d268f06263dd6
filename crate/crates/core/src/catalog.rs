//! Named spaces, lattices and scheme models shipped with the library.

use crate::error::Result;
use crate::json::parse_model_catalog;
use crate::poset_space::SpecSpace;
use crate::scheme_models::SchemeModel;
use crate::thick_lattice::ThickLattice;

const MODELS_JSON: &str = include_str!("../data/models.json");

pub fn spaces() -> Vec<SpecSpace> {
    vec![
        SpecSpace::discrete(1).with_name("point"),
        SpecSpace::sierpinski(),
        SpecSpace::discrete(2),
        SpecSpace::discrete(3),
        SpecSpace::chain(3),
        SpecSpace::v_model(),
        SpecSpace::star(3),
        SpecSpace::star(4),
        SpecSpace::grid(2, 2),
        SpecSpace::grid(2, 3),
    ]
}

pub fn space(name: &str) -> Option<SpecSpace> {
    spaces().into_iter().find(|s| s.name() == Some(name))
}

/// Lattices given directly by their order, not by a space.
pub fn explicit_lattices() -> Vec<(&'static str, ThickLattice)> {
    let b3 = ThickLattice::boolean(3);
    let covers: Vec<(&str, &str)> = b3
        .covers()
        .into_iter()
        .map(|(a, b)| (b3.id(a), b3.id(b)))
        .collect();
    let ids: Vec<&str> = b3.ids().iter().map(String::as_str).collect();
    let boolean3 = ThickLattice::from_explicit(&ids, &covers, &ids).expect("valid lattice");
    vec![
        ("trivial", ThickLattice::trivial()),
        ("chain-2", ThickLattice::chain(2)),
        ("chain-4", ThickLattice::chain(4)),
        ("n5", ThickLattice::pentagon()),
        ("m3", ThickLattice::diamond()),
        ("boolean-3", boolean3),
    ]
}

/// A generic point over `n` closed points, with `m` extra atoms `f1..fm`
/// adjoined to its lattice.
pub fn augmented_star(n: usize, m: usize) -> Result<(SpecSpace, ThickLattice)> {
    let base = SpecSpace::star(n);
    let atoms: Vec<String> = (1..=m).map(|i| format!("f{i}")).collect();
    let lat = ThickLattice::augment(&ThickLattice::from_support_data(&base)?, &atoms)?;
    Ok((base, lat))
}

/// `augmented_star(n, m)` for `n ∈ {2,3,4}`, `m ∈ {1,2,3}`.
pub fn augmented_family() -> Result<Vec<(String, SpecSpace, ThickLattice)>> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for m in 1..=3 {
            let (base, lat) = augmented_star(n, m)?;
            out.push((format!("star{n}+{m}"), base, lat));
        }
    }
    Ok(out)
}

pub fn models() -> Vec<SchemeModel> {
    parse_model_catalog(MODELS_JSON).expect("bundled model catalog parses")
}

pub fn model(name: &str) -> Option<SchemeModel> {
    models().into_iter().find(|m| m.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads() {
        assert!(models().len() >= 10);
        assert_eq!(spaces().len(), 10);
        assert!(space("v-model").is_some());
        assert!(model("v-two-nodes").unwrap().sg_classified());
        assert!(!model("v-ci").unwrap().sg_classified());
        let (_, b3) = explicit_lattices().pop().unwrap();
        assert_eq!(b3.len(), 8);
        assert_eq!(augmented_family().unwrap().len(), 9);
    }

    #[test]
    fn space_names_are_unique() {
        let mut names: Vec<_> = spaces()
            .iter()
            .map(|s| s.name().unwrap().to_string())
            .collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), spaces().len());
    }
}
