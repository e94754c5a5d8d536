mod common;

use common::*;
use dtk_core::plane::{
    analyze_disk, construct_freezing_c1, construct_freezing_c1_union, construct_freezing_c2,
    construct_freezing_c2_union, corner_necessity_check, is_bounding_curve, maximal_segments,
    minimize_bounding_curve, trace_bounding_curve,
};
use dtk_core::{Point, PointSet, Verifier};
use proptest::prelude::*;

fn fixture_disks() -> Vec<(&'static str, PointSet)> {
    let mut octagon = rect(0, 4, 0, 3);
    for c in [[0, 0], [4, 0], [0, 3], [4, 3]] {
        octagon.remove(&Point::from(c));
    }
    vec![
        ("rect 4x3", rect(0, 3, 0, 2)),
        ("square 3x3", rect(0, 2, 0, 2)),
        ("diamond 1", diamond(1)),
        ("diamond 2", diamond(2)),
        ("notched square", notched_square()),
        ("octagon", octagon),
        ("rect 3x5", rect(0, 2, 0, 4)),
    ]
}

#[test]
fn traced_and_minimized_curves_bound_their_disks() {
    for (name, d) in fixture_disks() {
        let c = trace_bounding_curve(&d).unwrap();
        assert!(is_bounding_curve(&c, &d), "{name}");
        let m = minimize_bounding_curve(&c, &d, true).unwrap();
        assert!(is_bounding_curve(&m.curve, &d), "{name}");
        assert!(m.curve.len() <= c.len());
    }
}

#[test]
fn bounding_curves_are_freezing_under_both_adjacencies() {
    let v = Verifier::default();
    for (name, d) in fixture_disks() {
        let s = trace_bounding_curve(&d).unwrap().point_set();
        for u in 1..=2 {
            assert!(v.verify_freezing(&planar(&d, u), &s).unwrap().holds, "{name} c{u}");
        }
    }
}

#[test]
fn maximal_segments_cover_each_curve_step_once() {
    for (name, d) in fixture_disks() {
        let c = trace_bounding_curve(&d).unwrap();
        let segs = maximal_segments(&c);
        let steps: usize = segs.iter().map(|(_, s)| s.len() - 1).sum();
        assert_eq!(steps, c.len(), "{name}");
        for w in segs.windows(2) {
            assert_ne!(w[0].1.orientation(), w[1].1.orientation(), "{name}");
        }
    }
}

#[test]
fn constructed_sets_are_minimal_freezing() {
    let v = Verifier::default();
    let mut built = Vec::new();
    for (name, d) in fixture_disks() {
        let a = analyze_disk(&d).unwrap();
        if !(a.thick && a.convex) {
            assert!(construct_freezing_c1(&d).is_err(), "{name}");
            continue;
        }
        built.push(name);
        let c1 = construct_freezing_c1(&d).unwrap().set;
        let r = v.verify_minimal_freezing(&planar(&d, 1), &c1).unwrap();
        assert!(r.holds, "{name} c1 {c1:?}");
        let c2 = construct_freezing_c2(&d, false).unwrap().set;
        let r = v.verify_minimal_freezing(&planar(&d, 2), &c2).unwrap();
        assert!(r.holds, "{name} c2 {c2:?}");
    }
    println!("constructed on {built:?}");
    assert!(built.len() >= 6, "{built:?}");
}

#[test]
fn union_constructions_freeze() {
    let v = Verifier::default();
    let left = rect(0, 2, 0, 2);
    let right = rect(2, 4, 0, 2);
    let mut x: PointSet = left.union(&right).cloned().collect();
    x.insert(Point::from([5, 0]));
    x.insert(Point::from([6, 0]));
    let disks = [left, right];
    let a = construct_freezing_c1_union(&x, &disks).unwrap();
    assert!(a.contains(&Point::from([6, 0])));
    assert!(v.verify_freezing(&planar(&x, 1), &a).unwrap().holds);
    let b = construct_freezing_c2_union(&x, &disks).unwrap();
    assert!(v.verify_freezing(&planar(&x, 2), &b).unwrap().holds);
}

#[test]
fn missing_a_thick_right_angle_corner_breaks_freezing_and_c1_coldness() {
    let v = Verifier::default();
    let d = rect(0, 3, 0, 2);
    let corners: Vec<Point> = [[0, 0], [3, 0], [0, 2], [3, 2]].iter().map(|&c| Point::from(c)).collect();
    let all = d.clone();
    for c in &corners {
        let mut a = all.clone();
        a.remove(c);
        assert!(!corner_necessity_check(&d, &a, false).unwrap());
        for u in 1..=2 {
            assert!(!v.verify_freezing(&planar(&d, u), &a).unwrap().holds);
        }
        assert!(!v.verify_cold(&planar(&d, 1), &a).unwrap().holds);
        // Under c2 every candidate image of the corner is one of its
        // neighbors, so the set stays cold.
        assert!(v.verify_cold(&planar(&d, 2), &a).unwrap().holds);
    }
}

fn random_blob() -> impl Strategy<Value = PointSet> {
    proptest::collection::btree_set((0i64..5, 0i64..5), 4..=20)
        .prop_map(|s| s.into_iter().map(|(a, b)| Point::from([a, b])).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_successful_trace_is_a_bounding_curve(d in random_blob()) {
        if let Ok(c) = trace_bounding_curve(&d) {
            prop_assert!(is_bounding_curve(&c, &d));
            if let Ok(m) = minimize_bounding_curve(&c, &d, false) {
                prop_assert!(is_bounding_curve(&m.curve, &d));
            }
        }
    }
}
