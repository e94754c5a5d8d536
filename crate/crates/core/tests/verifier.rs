mod common;

use std::sync::Arc;

use common::*;
use dtk_core::families::{complete_graph, cycle};
use dtk_core::maps::is_continuous;
use dtk_core::{DigitalImage, DigitalMap, Point, PointSet, Verifier};
use proptest::prelude::*;

fn v() -> Verifier {
    Verifier::default()
}

fn instances() -> Vec<Arc<DigitalImage>> {
    vec![
        boxed(&[(0, 2), (0, 2)], 1),
        boxed(&[(0, 2), (0, 1)], 2),
        boxed(&[(0, 4)], 1),
        cycle(6).unwrap().image,
        Arc::new(complete_graph(4).unwrap()),
        planar(&diamond(1), 2),
    ]
}

fn subset(x: &DigitalImage, mask: u32) -> PointSet {
    (0..x.len()).filter(|i| mask >> i & 1 == 1).map(|i| x.point(i).clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn supersets_keep_freezing_and_unifying(which in 0usize..6, mask in any::<u32>(), extra in any::<u32>()) {
        let x = &instances()[which];
        let a = subset(x, mask);
        let b: PointSet = a.union(&subset(x, extra)).cloned().collect();
        if v().verify_freezing(x, &a).unwrap().holds {
            prop_assert!(v().verify_freezing(x, &b).unwrap().holds);
        }
        if !a.is_empty() && v().verify_unifying(x, &a).unwrap().holds {
            prop_assert!(v().verify_unifying(x, &b).unwrap().holds);
        }
    }

    #[test]
    fn unifying_implies_freezing_implies_cold(which in 0usize..6, mask in any::<u32>()) {
        let x = &instances()[which];
        let a = subset(x, mask);
        let freezing = v().verify_freezing(x, &a).unwrap().holds;
        if !a.is_empty() && v().verify_unifying(x, &a).unwrap().holds {
            prop_assert!(freezing);
        }
        if freezing {
            prop_assert!(v().verify_cold(x, &a).unwrap().holds);
        }
    }
}

/// Coordinate swap carries `[0,2] x [0,1]` onto `[0,1] x [0,2]`.
#[test]
fn unifying_is_invariant_under_isomorphism() {
    for u in 1..=2 {
        let x = boxed(&[(0, 2), (0, 1)], u);
        let y = boxed(&[(0, 1), (0, 2)], u);
        let swap = |p: &Point| Point::from([p.coord(1), p.coord(0)]);
        let f = DigitalMap::from_fn(x.clone(), y.clone(), swap).unwrap();
        assert!(dtk_core::maps::is_isomorphism(&f));
        for mask in 1u32..(1 << x.len()) {
            let a = subset(&x, mask);
            let fa: PointSet = a.iter().map(swap).collect();
            assert_eq!(
                v().verify_unifying(&x, &a).unwrap().holds,
                v().verify_unifying(&y, &fa).unwrap().holds,
                "{a:?}"
            );
        }
    }
    // A reflection of the cycle onto itself.
    let c = cycle(7).unwrap();
    for mask in 1u32..(1 << 7) {
        let a = subset(&c.image, mask);
        let fa: PointSet = a.iter().map(|p| c.point((7 - p.coord(0) as usize) % 7)).collect();
        assert_eq!(v().verify_unifying(&c.image, &a).unwrap().holds, v().verify_unifying(&c.image, &fa).unwrap().holds);
    }
}

fn path_fixtures() -> Vec<Arc<DigitalImage>> {
    vec![
        boxed(&[(0, 4)], 1),
        boxed(&[(0, 2), (0, 1)], 1),
        boxed(&[(0, 2), (0, 2)], 2),
        cycle(7).unwrap().image,
        dtk_core::families::tree_from_edges(&[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)]).unwrap().into(),
    ]
}

/// Unique shortest paths between every ordered pair, as index sequences.
fn unique_paths(x: &DigitalImage) -> Vec<Vec<Option<Vec<usize>>>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    x.unique_shortest_path(x.point(i), x.point(j))
                        .unwrap()
                        .map(|p| p.iter().map(|q| x.index_of(q).unwrap()).collect())
                })
                .collect()
        })
        .collect()
}

/// Fixed points at both ends of a unique shortest path fix the whole path.
#[test]
fn unique_shortest_paths_between_fixed_points_are_fixed() {
    for x in path_fixtures() {
        let paths = unique_paths(&x);
        for t in oracle_maps(&x, &x, &[]) {
            let fixed: Vec<usize> = (0..x.len()).filter(|&i| t[i] == i).collect();
            for &a in &fixed {
                for &b in &fixed {
                    if let Some(p) = &paths[a][b] {
                        assert!(p.iter().all(|&k| t[k] == k));
                    }
                }
            }
        }
    }
}

/// A map sending the ends of a unique shortest path `P` to the ends of a
/// unique shortest path `Q` of the same length sends `P` onto `Q` step by
/// step, so two such maps agree on `P`.
#[test]
fn maps_carry_unique_shortest_paths_onto_each_other() {
    for x in path_fixtures() {
        let paths = unique_paths(&x);
        let n = x.len();
        for t in oracle_maps(&x, &x, &[]) {
            for i in 0..n {
                for j in 0..n {
                    let (Some(p), Some(q)) = (&paths[i][j], &paths[t[i]][t[j]]) else { continue };
                    if p.len() == q.len() {
                        assert!(p.iter().zip(q).all(|(&a, &b)| t[a] == b));
                    }
                }
            }
        }
    }
}

#[test]
fn freezing_subsets_of_the_square_are_those_holding_the_corners() {
    let x = boxed(&[(0, 2), (0, 2)], 1);
    let corners = point_set_of(&[[0, 0], [0, 2], [2, 0], [2, 2]]);
    let pts = x.points().to_vec();
    let mut checked = 0;
    for k in 0..=5 {
        for a in subsets_of_size(&pts, k) {
            let a: PointSet = a.into_iter().collect();
            assert_eq!(v().verify_freezing(&x, &a).unwrap().holds, corners.is_subset(&a), "{a:?}");
            checked += 1;
        }
    }
    assert_eq!(checked, 382);
}

fn point_set_of(v: &[[i64; 2]]) -> PointSet {
    v.iter().map(|&p| Point::from(p)).collect()
}

#[test]
fn complete_graphs_need_every_vertex() {
    for k in 2..=5 {
        let x = Arc::new(complete_graph(k).unwrap());
        for mask in 0u32..(1 << k) {
            let a = subset(&x, mask);
            let all = a.len() == k;
            assert_eq!(v().verify_freezing(&x, &a).unwrap().holds, all);
            if !a.is_empty() {
                assert_eq!(v().verify_unifying(&x, &a).unwrap().holds, all);
            }
        }
    }
}

/// Searches small instances for a freezing set that is not unifying and
/// reports what it finds without asserting either way.
#[test]
fn freezing_versus_unifying_survey() {
    for x in instances() {
        let found = v().find_freezing_not_unifying(&x, 3).unwrap();
        if let Some(a) = found {
            let (f, u) = v().compare_freezing_unifying(&x, &a).unwrap();
            assert!(f && !u);
            println!("freezing but not unifying on {} points: {a:?}", x.len());
        }
    }
}

#[test]
fn failure_witnesses_are_continuous_and_reproducible() {
    let x = boxed(&[(0, 2), (0, 2)], 1);
    let a = point_set_of(&[[0, 0], [2, 2], [0, 2]]);
    let r1 = v().verify_freezing(&x, &a).unwrap();
    let r2 = Verifier::new(dtk_core::SearchConfig::default().with_jobs(4)).verify_freezing(&x, &a).unwrap();
    assert!(!r1.holds);
    assert!(is_continuous(&r1.witnesses[0]));
    assert_eq!(r1.witnesses[0], r2.witnesses[0]);
}
