//! Frozen expected values, each re-derived here by an oracle that is
//! independent of the implementation path it checks: brute-force
//! permutation search for automorphisms, raw exhaustive scans for
//! coloring counts, and explicit group actions for orbit counts.

mod common;

use common::*;
use smallcover::cover::{
    enumerate_characteristic, enumerate_gl_fixed, equivalence_classes, gl_order,
    is_characteristic,
};
use smallcover::polytope::{builtin, polygon};
use smallcover::tower::double;

#[rustfmt::skip]
const AUTOMORPHISM_ORDERS: &[(&str, usize)] = &[
    ("square", 8),
    ("pentagon", 10),
    ("cube", 48),
    ("6-prism", 24),
    ("dodecahedron", 120),
];

#[test]
fn automorphism_groups_match_brute_force() {
    for &(name, order) in AUTOMORPHISM_ORDERS {
        let p = builtin(name).unwrap();
        let brute = brute_force_automorphisms(&p);
        assert_eq!(brute.len(), order, "{name} (oracle)");
        let flags = p.automorphism_group().unwrap();
        assert_eq!(flags.len(), order, "{name} (flag algorithm)");
        // same facet-permutation sets, not just the same cardinality
        let mut brute_sorted = brute;
        brute_sorted.sort();
        let mut flag_sorted: Vec<Vec<usize>> = flags.into_iter().map(|a| a.facets).collect();
        flag_sorted.sort();
        assert_eq!(brute_sorted, flag_sorted, "{name}");
    }
}

#[rustfmt::skip]
const CHARACTERISTIC_COUNTS: &[(&str, u64)] = &[
    ("triangle", 6),     // 3 pairwise-distinct colors on a 3-cycle
    ("square", 18),      // proper 3-colorings of a 4-cycle: 2^4 + 2
    ("pentagon", 30),    // 2^5 - 2
    ("cube", 4200),
    ("5-prism", 10920),
    ("6-prism", 42168),
];

fn by_name(name: &str) -> smallcover::Polytope {
    if name == "triangle" {
        polygon(3).unwrap()
    } else {
        builtin(name).unwrap()
    }
}

#[test]
fn enumeration_matches_exhaustive_scan() {
    for &(name, expected) in CHARACTERISTIC_COUNTS {
        let p = by_name(name);
        assert_eq!(exhaustive_characteristic_count(&p), expected, "{name} (scan)");
        assert_eq!(
            enumerate_characteristic(&p).unwrap().count() as u64,
            expected,
            "{name} (backtracking)"
        );
    }
}

#[test]
fn enumerated_colorings_are_characteristic_and_ordered() {
    let cube = builtin("cube").unwrap();
    let mut previous = None;
    for c in enumerate_characteristic(&cube).unwrap() {
        assert!(is_characteristic(&cube, &c).unwrap());
        assert!(characteristic_scan(&cube, c.colors()), "oracle agrees");
        if let Some(prev) = previous {
            assert!(prev < c, "strictly increasing emission order");
        }
        previous = Some(c);
    }
}

#[test]
fn gl_fixed_enumeration_counts() {
    // one representative per GL-orbit, so fixed * |GL| = total
    for (name, total, fixed) in [("cube", 4200, 25), ("6-prism", 42168, 251), ("5-prism", 10920, 65)]
    {
        let p = builtin(name).unwrap();
        assert_eq!(enumerate_gl_fixed(&p).unwrap().count(), fixed, "{name}");
        assert_eq!(fixed as u64 * gl_order(3), total, "{name}");
    }
}

#[test]
fn class_counts_match_explicit_orbit_scan() {
    for (name, classes) in [("triangle", 1), ("square", 2), ("cube", 5)] {
        let p = by_name(name);
        let colorings: Vec<Vec<u8>> = all_colorings(&p)
            .into_iter()
            .map(|c| c.colors().to_vec())
            .collect();
        let sigmas = brute_force_automorphisms(&p);
        let matrices = gl_matrices(p.dim());
        assert_eq!(orbit_count(&colorings, &sigmas, &matrices), classes, "{name} (oracle)");
        let cls = equivalence_classes(&p).unwrap();
        assert_eq!(cls.class_count, classes, "{name} (library)");
        assert_eq!(cls.total_count, colorings.len() as u64, "{name} total");
    }
}

#[test]
fn dodecahedron_coloring_counts() {
    let dode = builtin("dodecahedron").unwrap();
    // stabilizer-pruned search: the three facets at vertex 0 pinned to
    // the standard basis
    let fixed = enumerate_gl_fixed(&dode).unwrap().count() as u64;
    assert_eq!(fixed, 2165);
    // full backtracking agrees with fixed * |GL(3,2)|
    let full = enumerate_characteristic(&dode).unwrap().count() as u64;
    assert_eq!(full, fixed * gl_order(3));
    assert_eq!(full, 363_720);
}

#[test]
fn doubling_against_f_vector_recurrences() {
    // V' = 2V - 2k, E' = 2E - 3k, F' = 2F - 2 - k, and Euler stays 2
    let dode = builtin("dodecahedron").unwrap();
    for face in 0..dode.facet_count() {
        let d = double(&dode, face).unwrap();
        assert!(d.validate().ok());
        assert_eq!(d.f_vector().unwrap(), vec![30, 45, 17]);
    }
    let d1 = double(&dode, 0).unwrap();
    for face in 0..d1.facet_count() {
        let k = d1.facets()[face].len();
        let d2 = double(&d1, face).unwrap();
        assert!(d2.validate().ok(), "face {face}");
        assert_eq!(
            d2.f_vector().unwrap(),
            vec![60 - 2 * k, 90 - 3 * k, 32 - k],
            "face {face}"
        );
    }
}
