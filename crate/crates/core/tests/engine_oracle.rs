mod common;

use std::sync::Arc;

use common::*;
use dtk_core::maps::{check_pull_property, is_continuous};
use dtk_core::search::{for_each_extension, VariableOrder};
use dtk_core::{DigitalImage, DigitalMap, PartialMap, Point, PointSet};
use proptest::prelude::*;

fn configs() -> Vec<(&'static str, dtk_core::SearchConfig)> {
    vec![
        ("default", unlimited()),
        ("lex", unlimited().with_order(VariableOrder::Lexicographic)),
        ("no_pull", unlimited().with_pull_pruning(false)),
        ("no_ac", unlimited().with_arc_consistency(false)),
        ("bare", unlimited().with_arc_consistency(false).with_pull_pruning(false)),
        ("jobs4", unlimited().with_jobs(4)),
    ]
}

#[test]
fn every_fixture_matches_the_oracle() {
    for (name, x) in small_fixtures() {
        let expected = oracle_maps(&x, &x, &[]);
        for (cname, cfg) in configs() {
            let got = engine_tables(&PartialMap::on(x.clone()), &cfg);
            assert_eq!(got.len(), expected.len(), "{name} with {cname}");
            assert!(got == expected, "{name} with {cname}");
        }
    }
}

#[test]
fn lexicographic_order_streams_sorted_tables() {
    let x = boxed(&[(0, 2), (0, 1)], 1);
    let mut seen = Vec::new();
    let cfg = unlimited().with_order(VariableOrder::Lexicographic);
    for_each_extension(&PartialMap::on(x.clone()), &cfg, |f| {
        seen.push(f.table().to_vec());
        std::ops::ControlFlow::Continue(())
    })
    .unwrap();
    assert_eq!(seen, oracle_maps(&x, &x, &[]));
}

#[test]
fn seeded_fixtures_match_the_oracle() {
    for (name, x) in small_fixtures() {
        let n = x.len();
        // Fix the first and last point; restrict the middle one to its
        // closed neighborhood.
        let mut seed = PartialMap::on(x.clone());
        let mut forced: Vec<Option<Vec<usize>>> = vec![None; n];
        seed.assign(x.point(0).clone(), x.point(0).clone()).unwrap();
        forced[0] = Some(vec![0]);
        if n > 1 {
            seed.assign(x.point(n - 1).clone(), x.point(n - 1).clone()).unwrap();
            forced[n - 1] = Some(vec![n - 1]);
        }
        if n > 2 {
            let mid = n / 2;
            let cands: PointSet = x.closed_neighborhood(x.point(mid)).unwrap();
            forced[mid] = Some(cands.iter().map(|p| x.index_of(p).unwrap()).collect());
            seed.restrict(x.point(mid).clone(), cands).unwrap();
        }
        let expected = oracle_maps(&x, &x, &forced);
        for (cname, cfg) in configs() {
            assert!(engine_tables(&seed, &cfg) == expected, "{name} with {cname}");
        }
    }
}

#[test]
fn maps_into_another_image_match_the_oracle() {
    let x = boxed(&[(0, 3)], 1);
    let y = boxed(&[(0, 1), (0, 1)], 1);
    let expected = oracle_maps(&x, &y, &[]);
    let got = engine_tables(&PartialMap::new(x, y), &unlimited());
    assert_eq!(got, expected);
}

#[test]
fn every_enumerated_map_pulls() {
    for (name, x) in small_fixtures() {
        if !x.is_lattice() || !matches!(x.adjacency(), dtk_core::Adjacency::Cu(_)) {
            continue;
        }
        for t in oracle_maps(&x, &x, &[]) {
            let f = DigitalMap::from_table(x.clone(), x.clone(), t).unwrap();
            assert!(check_pull_property(&f).unwrap(), "{name}");
        }
    }
}

fn random_graph() -> impl Strategy<Value = Arc<DigitalImage>> {
    (1usize..=7)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)))
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n as i64 {
                for j in i + 1..n as i64 {
                    if bits[k] {
                        edges.push((Point::from(i), Point::from(j)));
                    }
                    k += 1;
                }
            }
            let adj = dtk_core::Adjacency::explicit(edges).unwrap();
            Arc::new(DigitalImage::new((0..n as i64).map(Point::from), adj).unwrap())
        })
}

fn random_planar() -> impl Strategy<Value = (PointSet, usize)> {
    (proptest::collection::btree_set((0i64..4, 0i64..3), 1..=8), 1usize..=2)
        .prop_map(|(s, u)| (s.into_iter().map(|(a, b)| Point::from([a, b])).collect(), u))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn random_graphs_match_the_oracle(x in random_graph(), fixed in proptest::collection::vec(any::<bool>(), 7)) {
        let mut seed = PartialMap::on(x.clone());
        let mut forced = vec![None; x.len()];
        for i in 0..x.len() {
            if fixed[i] {
                seed.assign(x.point(i).clone(), x.point(i).clone()).unwrap();
                forced[i] = Some(vec![i]);
            }
        }
        let expected = oracle_maps(&x, &x, &forced);
        for (_, cfg) in configs() {
            prop_assert_eq!(engine_tables(&seed, &cfg), expected.clone());
        }
    }

    #[test]
    fn random_planar_sets_match_the_oracle((s, u) in random_planar()) {
        let x = planar(&s, u);
        let expected = oracle_maps(&x, &x, &[]);
        for (_, cfg) in configs() {
            let got = engine_tables(&PartialMap::on(x.clone()), &cfg);
            prop_assert_eq!(&got, &expected);
        }
        for t in expected {
            let f = DigitalMap::from_table(x.clone(), x.clone(), t).unwrap();
            prop_assert!(is_continuous(&f));
            prop_assert!(check_pull_property(&f).unwrap());
        }
    }
}
