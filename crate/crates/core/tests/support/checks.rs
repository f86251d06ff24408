#![allow(dead_code)]

use heegaard_core::boundary::{analyze, side_components, AnalysisReport, Side};
use heegaard_core::permdata::PermutationDataSet;
use heegaard_core::presentation::{Presentation, Sign};
use heegaard_core::surface::{orbit_partition, phi, surface_summary, Corner};
use heegaard_core::{analyze_one, decode, encode_canonical};
use proptest::prelude::*;

use super::oracle;

fn report_key(r: &AnalysisReport) -> String {
    serde_json::to_string(r).unwrap()
}

/// `(n, m, t, genus)` of each class, sorted.
type Profile = Vec<(usize, usize, usize, usize)>;

fn class_profile(r: &AnalysisReport) -> (Profile, Profile) {
    let prof = |cs: &[heegaard_core::boundary::ComponentClass]| {
        let mut v: Vec<_> = cs.iter().map(|c| (c.n, c.m, c.t, c.genus)).collect();
        v.sort_unstable();
        v
    };
    (prof(&r.x_side.components), prof(&r.y_side.components))
}

/// Corner-flow and orbit properties; holds for every data set.
pub fn corner_flow(ds: &PermutationDataSet) -> Result<(), TestCaseError> {
    let d = ds.degree();
    let mut hits = vec![0u8; 4 * d];
    for i in 0..4 * d {
        hits[phi(ds, Corner::from_index(i)).index()] += 1;
    }
    prop_assert!(hits.iter().all(|&h| h == 1), "phi is not a bijection");

    let orbits = orbit_partition(ds);
    let total: usize = orbits.sizes().iter().sum();
    prop_assert_eq!(total, 4 * d);
    let mut seen = vec![false; 4 * d];
    for (k, orbit) in orbits.orbits().iter().enumerate() {
        for (pos, &c) in orbit.iter().enumerate() {
            prop_assert!(!seen[c.index()], "corner visited twice");
            seen[c.index()] = true;
            prop_assert_eq!(orbits.orbit_of(c), k);
            prop_assert_eq!(phi(ds, c), orbit[(pos + 1) % orbit.len()]);
        }
    }
    prop_assert_eq!(
        orbits.len(),
        oracle::faces(ds).count,
        "orbit count differs from face-tracing oracle"
    );
    Ok(())
}

/// Surface and boundary properties of a transitive data set.
pub fn transitive_analysis(ds: &PermutationDataSet) -> Result<(), TestCaseError> {
    prop_assert_eq!(oracle::reachable_from_one(ds), ds.degree());
    let s = surface_summary(ds).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!((s.b + s.d) % 2, 0);
    prop_assert!(s.b <= s.d + 2);
    prop_assert_eq!(2 * s.genus_s as i64, 2 - s.euler_s);

    let r = analyze(ds).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for (side, summary, curves) in [
        (Side::X, &r.x_side, ds.alpha().cycle_count()),
        (Side::Y, &r.y_side, ds.beta().cycle_count()),
    ] {
        let n: usize = summary.components.iter().map(|c| c.n).sum();
        let m: usize = summary.components.iter().map(|c| c.m).sum();
        let t: usize = summary.components.iter().map(|c| c.t).sum();
        prop_assert_eq!(n, s.b);
        prop_assert_eq!(m, s.d);
        prop_assert_eq!(t, 2 * curves);
        prop_assert_eq!(n as i64 - m as i64, s.euler_s);
        for c in &summary.components {
            prop_assert_eq!(c.euler, c.n as i64 - c.m as i64 + c.t as i64);
            prop_assert!(c.euler <= 2 && c.euler % 2 == 0);
        }
        let sum: usize = summary.components.iter().map(|c| c.genus).sum();
        let formula = summary.component_count as i64 - curves as i64 + s.genus_s as i64 - 1;
        prop_assert_eq!(sum as i64, formula);
        prop_assert_eq!(summary.boundary_genus, sum);
        prop_assert_eq!(
            summary.is_empty_boundary,
            s.genus_s as i64 == 1 + curves as i64 - summary.component_count as i64
        );

        let mut genera: Vec<i64> = summary.components.iter().map(|c| c.genus as i64).collect();
        genera.sort_unstable();
        prop_assert_eq!(
            genera,
            oracle::side_genera(ds, side == Side::X),
            "{:?} side disagrees with oracle",
            side
        );
    }
    prop_assert_eq!(r.closed, r.x_side.is_empty_boundary && r.y_side.is_empty_boundary);
    prop_assert_eq!(r.presents_group, ds.alpha().cycle_count() == s.genus_s);

    // exchanging the curve families exchanges the sides
    let sw = analyze(&ds.swapped()).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(sw.surface, r.surface);
    prop_assert_eq!(sw.closed, r.closed);
    prop_assert_eq!(report_key_side(&sw, Side::X), report_key_side(&r, Side::Y));
    prop_assert_eq!(report_key_side(&sw, Side::Y), report_key_side(&r, Side::X));
    Ok(())
}

fn report_key_side(r: &AnalysisReport, side: Side) -> String {
    match side {
        Side::X => serde_json::to_string(&r.x_side).unwrap(),
        Side::Y => serde_json::to_string(&r.y_side).unwrap(),
    }
}

/// The tag corners of one curve side are in the same class at every point
/// of the curve (the side a quadrant lies on flips with the crossing sign).
pub fn tag_sides(ds: &PermutationDataSet) -> Result<(), TestCaseError> {
    let orbits = orbit_partition(ds);
    for side in [Side::X, Side::Y] {
        let classes = side_components(ds, &orbits, side).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let class_of = |c: Corner| {
            classes
                .iter()
                .position(|k| k.orbits.contains(&orbits.orbit_of(c)))
                .unwrap()
        };
        let curves = match side {
            Side::X => ds.alpha(),
            Side::Y => ds.beta(),
        };
        for cycle in curves.cycles() {
            let one_side = |p: usize| match (side, ds.sign(p)) {
                (Side::X, Sign::Pos) => Corner::new(p, 1),
                (Side::X, Sign::Neg) => Corner::new(p, 3),
                (Side::Y, Sign::Pos) => Corner::new(p, 4),
                (Side::Y, Sign::Neg) => Corner::new(p, 2),
            };
            let other_side = |p: usize| {
                let c = one_side(p);
                Corner::new(p, (c.quadrant + 1) % 4 + 1)
            };
            let first = class_of(one_side(cycle[0]));
            let second = class_of(other_side(cycle[0]));
            for &p in cycle {
                prop_assert_eq!(class_of(one_side(p)), first);
                prop_assert_eq!(class_of(other_side(p)), second);
            }
        }
    }
    Ok(())
}

/// `analyze_one` is unchanged (as a multiset of reports) under relabeling.
pub fn relabel_invariance(ds: &PermutationDataSet, sigma: &[usize]) -> Result<(), TestCaseError> {
    let relabeled = ds.relabel(sigma).unwrap();
    prop_assert_eq!(decode(&relabeled), decode(ds));
    let mut a: Vec<_> = analyze_one(ds)
        .unwrap()
        .iter()
        .map(|r| (report_key(r), class_profile(r)))
        .collect();
    let mut b: Vec<_> = analyze_one(&relabeled)
        .unwrap()
        .iter()
        .map(|r| (report_key(r), class_profile(r)))
        .collect();
    a.sort();
    b.sort();
    prop_assert_eq!(a, b);
    if ds.is_transitive() {
        prop_assert_eq!(
            report_key(&analyze(ds).unwrap()),
            report_key(&analyze(&relabeled).unwrap())
        );
    }
    Ok(())
}

/// Everything that must hold for one random data set.
pub fn data_set_properties(ds: &PermutationDataSet, sigma: &[usize]) -> Result<(), TestCaseError> {
    corner_flow(ds)?;
    let parts = ds.split_connected_sum();
    prop_assert_eq!(parts.iter().map(PermutationDataSet::degree).sum::<usize>(), ds.degree());
    for part in &parts {
        prop_assert!(part.is_transitive());
        transitive_analysis(part)?;
        tag_sides(part)?;
    }
    relabel_invariance(ds, sigma)
}

pub fn round_trip(p: &Presentation) -> Result<(), TestCaseError> {
    let ds = encode_canonical(p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let decoded = decode(&ds);
    prop_assert_eq!(decoded.relators(), p.relators());
    prop_assert_eq!(decoded.generator_count(), p.generator_count());
    Ok(())
}
