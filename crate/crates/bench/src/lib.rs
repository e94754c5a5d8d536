//! Instances shared by the benchmarks in `benches/`.

use std::sync::Arc;

use dtk_core::families::{cycle, tree_from_edges};
use dtk_core::{Adjacency, DigitalImage, Point, PointSet};

pub fn lattice_box(ranges: &[(i64, i64)], u: usize) -> Arc<DigitalImage> {
    Arc::new(DigitalImage::lattice_box(ranges, Adjacency::Cu(u)).expect("valid box"))
}

pub fn box_corners(x1: i64, y1: i64) -> PointSet {
    [[0, 0], [x1, 0], [0, y1], [x1, y1]].into_iter().map(Point::from).collect()
}

pub fn diamond(r: i64) -> PointSet {
    (-r..=r)
        .flat_map(|x| (-r..=r).map(move |y| Point::from([x, y])))
        .filter(|p| p.coord(0).abs() + p.coord(1).abs() <= r)
        .collect()
}

pub fn planar(points: &PointSet, u: usize) -> Arc<DigitalImage> {
    Arc::new(DigitalImage::new(points.iter().cloned(), Adjacency::Cu(u)).expect("valid image"))
}

/// A path of `spine` points with a two-point branch at every other point.
pub fn caterpillar(spine: usize) -> Arc<DigitalImage> {
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
    let mut next = spine;
    for i in (0..spine).step_by(2) {
        edges.push((i, next));
        edges.push((next, next + 1));
        next += 2;
    }
    Arc::new(tree_from_edges(&edges).expect("valid tree"))
}

pub fn cycle_image(n: usize) -> Arc<DigitalImage> {
    cycle(n).expect("n >= 3").image
}
