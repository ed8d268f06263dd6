use std::collections::{HashMap, HashSet};

use proptest::prelude::*;

use trispec_core::json::{self, Document};
use trispec_core::oracle::{scan_prime_subsets, scan_primes};
use trispec_core::spectrum::{primes, supp};
use trispec_core::tensor::tensor_lattice;
use trispec_core::{PointSet, SpecSpace, ThickLattice};

/// A random order on up to `max` points: each pair `i < j` is related with
/// probability one third, then closed transitively.
fn poset(max: usize) -> impl Strategy<Value = SpecSpace> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let k = pairs.len();
        proptest::collection::vec(0..3u8, k).prop_map(move |coins| {
            let rel: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&coins)
                .filter(|(_, &c)| c == 0)
                .map(|(&p, _)| p)
                .collect();
            let labels = (0..n).map(|i| format!("p{i}")).collect();
            SpecSpace::from_indices(Some("random".into()), labels, &rel).unwrap()
        })
    })
}

fn with_subset(max: usize) -> impl Strategy<Value = (SpecSpace, PointSet, PointSet)> {
    poset(max).prop_flat_map(|s| {
        let all = s.all();
        (Just(s), 0..=all, 0..=all)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_a_closure_operator((s, a, b) in with_subset(8)) {
        let (a, b) = (a & s.all(), b & s.all());
        let ca = s.closure(a).unwrap();
        prop_assert_eq!(ca & a, a);
        prop_assert_eq!(s.closure(ca).unwrap(), ca);
        prop_assert!(s.is_closed(ca));
        let cab = s.closure(a | b).unwrap();
        prop_assert_eq!(cab & ca, ca);
        prop_assert_eq!(cab, ca | s.closure(b).unwrap());
    }

    #[test]
    fn spcl_family_is_a_sublattice(s in poset(8)) {
        let fam = s.enumerate_spcl().unwrap();
        let members: HashSet<PointSet> = fam.members.iter().copied().collect();
        prop_assert!(members.contains(&0) && members.contains(&s.all()));
        for &x in &fam.members {
            prop_assert!(s.is_closed(x));
            for &y in &fam.members {
                prop_assert!(members.contains(&(x | y)));
                prop_assert!(members.contains(&(x & y)));
            }
        }
    }

    #[test]
    fn count_matches_enumeration(s in poset(12)) {
        prop_assert_eq!(s.count_spcl(), s.enumerate_spcl().unwrap().len() as u128);
    }

    #[test]
    fn prime_subsets_match_scan(s in poset(7)) {
        let mut fast = s.prime_spcl();
        fast.sort_unstable();
        let mut slow = scan_prime_subsets(&s).unwrap();
        slow.sort_unstable();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn support_of_join_is_union(s in poset(6)) {
        let lat = ThickLattice::from_support_data(&s).unwrap();
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                let j = lat.join(a, b);
                let lhs = supp(&lat, lat.id(j)).unwrap();
                let rhs = supp(&lat, lat.id(a)).unwrap() | supp(&lat, lat.id(b)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn transport_then_inverse_is_identity(s in poset(6), shift in 0usize..100) {
        let lat = ThickLattice::from_support_data(&s).unwrap();
        let fwd: HashMap<String, String> = lat
            .ids()
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), format!("e{}", i + shift)))
            .collect();
        let back: HashMap<String, String> = fwd.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        let (moved, map) = lat.transport(&fwd).unwrap();
        prop_assert!(map.is_order_isomorphism(&lat, &moved));
        let (again, _) = moved.transport(&back).unwrap();
        prop_assert_eq!(again, lat);
    }

    #[test]
    fn primes_match_scan_on_quotients(s in poset(5)) {
        let lat = ThickLattice::from_support_data(&s).unwrap();
        for k in 0..lat.len() {
            let (q, map) = lat.quotient(lat.id(k)).unwrap();
            prop_assert!(map.is_order_embedding(&q, &lat));
            let image: Vec<usize> = map.forward.clone();
            let expected: Vec<usize> = (0..lat.len()).filter(|&e| lat.leq(k, e)).collect();
            prop_assert_eq!(image, expected);
            prop_assert_eq!(primes(&q), scan_primes(&q).unwrap());
        }
    }

    #[test]
    fn augmenting_keeps_a_lattice(s in poset(5), m in 1usize..4) {
        let lat = ThickLattice::from_support_data(&s).unwrap();
        let atoms: Vec<String> = (0..m).map(|i| format!("f{i}")).collect();
        let aug = ThickLattice::augment(&lat, &atoms).unwrap();
        prop_assert!(aug.validate().is_ok());
        prop_assert_eq!(aug.len(), lat.len() + m);
        prop_assert_eq!(primes(&aug), scan_primes(&aug).unwrap());
        for (i, a) in atoms.iter().enumerate() {
            let ai = aug.index_of(a).unwrap();
            for b in &atoms[i + 1..] {
                let bi = aug.index_of(b).unwrap();
                prop_assert_eq!(aug.join(ai, bi), aug.top());
                prop_assert_eq!(aug.meet(ai, bi), aug.bottom());
            }
        }
    }

    #[test]
    fn prime_ideals_are_complements_of_up_sets(s in poset(6)) {
        let tl = tensor_lattice(&s).unwrap();
        prop_assert!(tl.verify_points().passed());
        prop_assert!(tl.verify_int().passed());
        for a in 0..tl.base().len() {
            for b in 0..tl.base().len() {
                prop_assert_eq!(tl.mul(a, b), tl.mul(b, a));
            }
        }
    }

    #[test]
    fn space_json_round_trips(s in poset(10)) {
        let text = json::space_to_json(&s);
        let doc = json::parse_document(&text).unwrap();
        prop_assert_eq!(doc.to_json(), text);
        match doc {
            Document::Space(t) => prop_assert_eq!(t, s),
            _ => prop_assert!(false, "not a space"),
        }
    }

    #[test]
    fn lattice_json_round_trips(s in poset(5)) {
        let lat = ThickLattice::from_support_data(&s).unwrap();
        let text = json::lattice_to_json(&lat, Some("l"));
        let doc = json::parse_document(&text).unwrap();
        prop_assert_eq!(doc.to_json(), text);
        match doc {
            Document::Lattice { lattice, .. } => prop_assert_eq!(lattice, lat),
            _ => prop_assert!(false, "not a lattice"),
        }
    }
}
