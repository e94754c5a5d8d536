#![allow(dead_code)]

use std::sync::Arc;

use dtk_core::families::{complete_graph, cycle, free_trees, tree_from_edges, wedge};
use dtk_core::search::{enumerate_continuous_extensions, ExtensionProblem};
use dtk_core::{Adjacency, DigitalImage, PartialMap, Point, PointSet, SearchConfig, StopMode};

pub fn boxed(ranges: &[(i64, i64)], u: usize) -> Arc<DigitalImage> {
    Arc::new(DigitalImage::lattice_box(ranges, Adjacency::Cu(u)).unwrap())
}

pub fn planar(points: &PointSet, u: usize) -> Arc<DigitalImage> {
    Arc::new(DigitalImage::new(points.iter().cloned(), Adjacency::Cu(u)).unwrap())
}

pub fn rect(x0: i64, x1: i64, y0: i64, y1: i64) -> PointSet {
    (x0..=x1).flat_map(|x| (y0..=y1).map(move |y| Point::from([x, y]))).collect()
}

pub fn diamond(r: i64) -> PointSet {
    rect(-r, r, -r, r)
        .into_iter()
        .filter(|p| p.coord(0).abs() + p.coord(1).abs() <= r)
        .collect()
}

/// `[0,3]^2` without `(3,3)`.
pub fn notched_square() -> PointSet {
    let mut d = rect(0, 3, 0, 3);
    d.remove(&Point::from([3, 3]));
    d
}

pub fn seq(v: &[[i64; 2]]) -> Vec<Point> {
    v.iter().map(|&p| Point::from(p)).collect()
}

pub fn notched_ring() -> Vec<Point> {
    seq(&[[0, 0], [1, 0], [2, 0], [3, 0], [3, 1], [3, 2], [2, 2], [2, 3], [1, 3], [0, 3], [0, 2], [0, 1]])
}

pub fn notched_shortcut() -> Vec<Point> {
    seq(&[[0, 0], [1, 0], [2, 0], [3, 0], [3, 1], [3, 2], [2, 3], [1, 3], [0, 3], [0, 2], [0, 1]])
}

/// `[0,6] x [0,2]` without `(3,2)`, and the 16-point curve that dips to
/// `(3,1)`.
pub fn pinched_strip() -> (PointSet, Vec<Point>) {
    let mut d = rect(0, 6, 0, 2);
    d.remove(&Point::from([3, 2]));
    let s = seq(&[
        [0, 0], [1, 0], [2, 0], [3, 0], [4, 0], [5, 0], [6, 0], [6, 1], [6, 2], [5, 2], [4, 2], [3, 1], [2, 2],
        [1, 2], [0, 2], [0, 1],
    ]);
    (d, s)
}

/// The filled slanted rectangle with corners `(0,0)`, `(m,m)`, `(n,-n)`,
/// `(m+n, m-n)`.
pub fn slanted_rectangle(m: i64, n: i64) -> PointSet {
    let mut s = PointSet::new();
    for a in 0..=2 * m {
        for b in 0..=2 * n {
            // a = x + y, b = x - y, same parity.
            if (a + b) % 2 == 0 {
                s.insert(Point::from([(a + b) / 2, (a - b) / 2]));
            }
        }
    }
    s
}

/// Images with at most 9 points from every family the engine handles.
pub fn small_fixtures() -> Vec<(String, Arc<DigitalImage>)> {
    let mut out: Vec<(String, Arc<DigitalImage>)> = Vec::new();
    for n in 1..=9 {
        out.push((format!("path{n}"), boxed(&[(0, n - 1)], 1)));
    }
    for n in 3..=9 {
        out.push((format!("cycle{n}"), cycle(n).unwrap().image));
    }
    for k in 2..=5 {
        out.push((format!("K{k}"), Arc::new(complete_graph(k).unwrap())));
    }
    for u in 1..=2 {
        out.push((format!("box3x3_c{u}"), boxed(&[(0, 2), (0, 2)], u)));
        out.push((format!("box2x4_c{u}"), boxed(&[(0, 1), (0, 3)], u)));
        out.push((format!("box2x3_c{u}"), boxed(&[(0, 1), (0, 2)], u)));
        out.push((format!("diamond1_c{u}"), planar(&diamond(1), u)));
        out.push((format!("slanted21_c{u}"), planar(&slanted_rectangle(2, 1), u)));
    }
    out.push(("cube2_c1".into(), boxed(&[(0, 1), (0, 1), (0, 1)], 1)));
    out.push(("wedge5_5".into(), wedge(5, 5).unwrap().image));
    for n in 2..=9 {
        for (i, e) in free_trees(n).iter().enumerate().step_by(if n > 7 { 5 } else { 1 }) {
            out.push((format!("tree{n}_{i}"), Arc::new(tree_from_edges(e).unwrap())));
        }
    }
    out
}

/// Every continuous map `x -> y` with the given forced values, by plain
/// generate-and-test in point order. Tables come out in lexicographic order.
pub fn oracle_maps(x: &DigitalImage, y: &DigitalImage, forced: &[Option<Vec<usize>>]) -> Vec<Vec<usize>> {
    let n = x.len();
    let m = y.len();
    let mut out = Vec::new();
    let mut t = vec![0usize; n];
    fn ok(x: &DigitalImage, y: &DigitalImage, t: &[usize], i: usize) -> bool {
        x.neighbor_indices(i)
            .iter()
            .filter(|&&j| j < i)
            .all(|&j| y.adjacent_or_equal_indices(t[i], t[j]))
    }
    fn go(
        x: &DigitalImage,
        y: &DigitalImage,
        forced: &[Option<Vec<usize>>],
        t: &mut Vec<usize>,
        i: usize,
        m: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == t.len() {
            out.push(t.clone());
            return;
        }
        for v in 0..m {
            if let Some(Some(allowed)) = forced.get(i) {
                if !allowed.contains(&v) {
                    continue;
                }
            }
            t[i] = v;
            if ok(x, y, t, i) {
                go(x, y, forced, t, i + 1, m, out);
            }
        }
    }
    go(x, y, forced, &mut t, 0, m, &mut out);
    out
}

/// All continuous self-maps by the engine, as tables, sorted.
pub fn engine_tables(seed: &PartialMap, config: &SearchConfig) -> Vec<Vec<usize>> {
    let e = enumerate_continuous_extensions(&ExtensionProblem::new(seed.clone(), StopMode::All), config).unwrap();
    let mut v: Vec<Vec<usize>> = e.maps.iter().map(|m| m.table().to_vec()).collect();
    v.sort();
    v
}

pub fn unlimited() -> SearchConfig {
    SearchConfig::default().with_budget(u64::MAX)
}

/// All subsets of `items` of size `k`.
pub fn subsets_of_size<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if k > n {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        if !dtk_core::verify::next_combination(&mut idx, n) {
            return out;
        }
    }
}
