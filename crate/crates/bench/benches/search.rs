use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dtk_bench::{box_corners, caterpillar, cycle_image, diamond, lattice_box, planar};
use dtk_core::families::tree_leaves;
use dtk_core::plane::{construct_freezing_c2, trace_bounding_curve};
use dtk_core::search::{enumerate_continuous_extensions, ExtensionProblem};
use dtk_core::shy::tree_shy_retraction;
use dtk_core::{PartialMap, Point, PointSet, SearchConfig, StopMode, VariableOrder, Verifier};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_all_self_maps");
    let x = lattice_box(&[(0, 2), (0, 2)], 1);
    for (name, cfg) in [
        ("most_constrained", SearchConfig::default()),
        ("lexicographic", SearchConfig::default().with_order(VariableOrder::Lexicographic)),
        ("no_pull", SearchConfig::default().with_pull_pruning(false)),
        ("no_arc_consistency", SearchConfig::default().with_arc_consistency(false)),
        ("jobs4", SearchConfig::default().with_jobs(4)),
    ] {
        let problem = ExtensionProblem::new(PartialMap::on(x.clone()), StopMode::All);
        g.bench_function(name, |b| b.iter(|| enumerate_continuous_extensions(black_box(&problem), &cfg).unwrap()));
    }
    g.finish();
}

fn verification(c: &mut Criterion) {
    let v = Verifier::default();
    let rect = lattice_box(&[(0, 19), (0, 14)], 1);
    let corners = box_corners(19, 14);
    c.bench_function("freezing_corners_20x15", |b| b.iter(|| v.verify_freezing(&rect, black_box(&corners)).unwrap()));
    let small = lattice_box(&[(-2, 2), (-1, 1)], 1);
    let sc: PointSet = [[-2, -1], [2, -1], [-2, 1], [2, 1]].into_iter().map(Point::from).collect();
    c.bench_function("unifying_corners_5x3", |b| b.iter(|| v.verify_unifying(&small, black_box(&sc)).unwrap()));
    let c10 = cycle_image(10);
    let triple: PointSet = [0i64, 3, 6].into_iter().map(Point::from).collect();
    c.bench_function("unifying_cycle10_triple", |b| b.iter(|| v.verify_unifying(&c10, black_box(&triple)).unwrap()));
    let t = caterpillar(6);
    let leaves = tree_leaves(&t).unwrap();
    c.bench_function("minimal_freezing_tree_leaves", |b| {
        b.iter(|| v.verify_minimal_freezing(&t, black_box(&leaves)).unwrap())
    });
    c.bench_function("afp_propagation_tree_leaves", |b| {
        b.iter(|| v.verify_afp_propagation(&t, black_box(&leaves)).unwrap())
    });
}

fn geometry(c: &mut Criterion) {
    let d = diamond(6);
    c.bench_function("trace_diamond6", |b| b.iter(|| trace_bounding_curve(black_box(&d)).unwrap()));
    let d3 = diamond(3);
    c.bench_function("construct_c2_certified_diamond3", |b| {
        b.iter(|| construct_freezing_c2(black_box(&d3), false).unwrap())
    });
    let x = planar(&diamond(2), 2);
    let v = Verifier::default();
    let set = construct_freezing_c2(&diamond(2), false).unwrap().set;
    c.bench_function("freezing_diamond2_c2", |b| b.iter(|| v.verify_freezing(&x, black_box(&set)).unwrap()));
}

fn shy(c: &mut Criterion) {
    let t = caterpillar(8);
    let r: PointSet = (2i64..6).map(Point::from).collect();
    c.bench_function("tree_shy_retraction", |b| b.iter(|| tree_shy_retraction(&t, black_box(&r)).unwrap()));
}

criterion_group!(benches, enumeration, verification, geometry, shy);
criterion_main!(benches);
