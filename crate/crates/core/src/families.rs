//! Cycles, trees, complete graphs and wedges of two cycles as abstract
//! graphs with explicit edges.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Adjacency, DigitalImage, Point, PointSet};
use crate::maps::DigitalMap;

/// The cycle `x_0 ... x_{n-1}`, with `x_i` labeled by the 1-D point `i`.
#[derive(Clone, Debug)]
pub struct CycleImage {
    pub n: usize,
    pub image: Arc<DigitalImage>,
}

impl CycleImage {
    pub fn point(&self, i: usize) -> Point {
        Point::from((i % self.n) as i64)
    }

    pub fn points_at(&self, idx: &[usize]) -> PointSet {
        idx.iter().map(|&i| self.point(i)).collect()
    }
}

/// `C_m ∨ C_n` sharing the wedge point. `x_i` is `(0, i)`, `x'_j` is
/// `(1, j)` for `j > 0`, and `x'_0 = x_0 = (0, 0)`.
#[derive(Clone, Debug)]
pub struct WedgeImage {
    pub m: usize,
    pub n: usize,
    pub image: Arc<DigitalImage>,
}

impl WedgeImage {
    /// `x_i` on the left cycle.
    pub fn left(&self, i: usize) -> Point {
        Point::from([0, (i % self.m) as i64])
    }

    /// `x'_j` on the right cycle.
    pub fn right(&self, j: usize) -> Point {
        match j % self.n {
            0 => Point::from([0, 0]),
            j => Point::from([1, j as i64]),
        }
    }

    pub fn wedge_point(&self) -> Point {
        Point::from([0, 0])
    }
}

fn ring_edges(labels: &[Point]) -> Vec<(Point, Point)> {
    let n = labels.len();
    (0..n).map(|i| (labels[i].clone(), labels[(i + 1) % n].clone())).collect()
}

pub fn cycle(n: usize) -> Result<CycleImage> {
    if n < 3 {
        return Err(Error::Hypothesis(format!("a cycle needs at least 3 points, got {n}")));
    }
    let labels: Vec<Point> = (0..n as i64).map(Point::from).collect();
    let image = DigitalImage::new(labels.clone(), Adjacency::explicit(ring_edges(&labels))?)?;
    Ok(CycleImage {
        n,
        image: Arc::new(image),
    })
}

/// A tree on vertices `0..=max`, labeled by 1-D points. An empty edge list
/// gives the one-point tree.
pub fn tree_from_edges(edges: &[(usize, usize)]) -> Result<DigitalImage> {
    let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(1);
    if edges.len() + 1 != n {
        return Err(Error::Hypothesis(format!(
            "{} edges on {} vertices cannot form a tree",
            edges.len(),
            n
        )));
    }
    let adj = Adjacency::explicit(edges.iter().map(|&(a, b)| (Point::from(a as i64), Point::from(b as i64))))?;
    let image = DigitalImage::new((0..n as i64).map(Point::from), adj)?;
    if !image.is_connected() {
        return Err(Error::Hypothesis("the edges are not connected".into()));
    }
    Ok(image)
}

pub fn complete_graph(k: usize) -> Result<DigitalImage> {
    if k < 2 {
        return Err(Error::Hypothesis(format!("K_k needs k >= 2, got {k}")));
    }
    let mut edges = Vec::new();
    for i in 0..k as i64 {
        for j in i + 1..k as i64 {
            edges.push((Point::from(i), Point::from(j)));
        }
    }
    DigitalImage::new((0..k as i64).map(Point::from), Adjacency::explicit(edges)?)
}

pub fn wedge(m: usize, n: usize) -> Result<WedgeImage> {
    if m <= 4 || n <= 4 {
        return Err(Error::Hypothesis(format!("wedge needs both cycles longer than 4, got {m} and {n}")));
    }
    let left: Vec<Point> = (0..m as i64).map(|i| Point::from([0, i])).collect();
    let right: Vec<Point> = std::iter::once(Point::from([0, 0]))
        .chain((1..n as i64).map(|j| Point::from([1, j])))
        .collect();
    let mut edges = ring_edges(&left);
    edges.extend(ring_edges(&right));
    let pts: PointSet = left.into_iter().chain(right).collect();
    let image = DigitalImage::new(pts, Adjacency::explicit(edges)?)?;
    Ok(WedgeImage {
        m,
        n,
        image: Arc::new(image),
    })
}

/// Whether three distinct positions on `C_n` split it into arcs that are
/// each the unique shorter path between their ends, i.e. every arc is
/// shorter than `n / 2`. Requires `n > 4`.
pub fn cycle_freezing_triple_valid(c: &CycleImage, i: usize, j: usize, k: usize) -> bool {
    triple_valid(c.n, i, j, k)
}

fn triple_valid(n: usize, i: usize, j: usize, k: usize) -> bool {
    let mut t = [i % n, j % n, k % n];
    t.sort_unstable();
    if n <= 4 || t[0] == t[1] || t[1] == t[2] {
        return false;
    }
    let arcs = [t[1] - t[0], t[2] - t[1], n - t[2] + t[0]];
    arcs.iter().all(|&a| 2 * a < n)
}

/// All valid triples `i < j < k` on `C_n`.
pub fn valid_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if triple_valid(n, i, j, k) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Degree-1 vertices of a tree with at least two points.
pub fn tree_leaves(t: &DigitalImage) -> Result<PointSet> {
    if t.len() < 2 {
        return Err(Error::Hypothesis("a tree with fewer than 2 points has no leaves".into()));
    }
    if !t.is_connected() || t.edge_count() + 1 != t.len() {
        return Err(Error::Hypothesis("the image is not a tree".into()));
    }
    Ok((0..t.len())
        .filter(|&i| t.neighbor_indices(i).len() == 1)
        .map(|i| t.point(i).clone())
        .collect())
}

/// `{x_i, x_j, x'_k, x'_p}`, provided `x_0, x_i, x_j` and `x'_0, x'_k, x'_p`
/// are valid triples on their cycles.
pub fn wedge_freezing_set(w: &WedgeImage, i: usize, j: usize, k: usize, p: usize) -> Result<PointSet> {
    if !triple_valid(w.m, 0, i, j) {
        return Err(Error::Hypothesis(format!("x_0, x_{i}, x_{j} is not a valid triple on C_{}", w.m)));
    }
    if !triple_valid(w.n, 0, k, p) {
        return Err(Error::Hypothesis(format!("x'_0, x'_{k}, x'_{p} is not a valid triple on C_{}", w.n)));
    }
    Ok([w.left(i), w.left(j), w.right(k), w.right(p)].into_iter().collect())
}

/// On `C_6 ∨ C_n`: `x_3 -> x_0`, `x_2 -> x_1`, `x_4 -> x_5`, identity
/// elsewhere. Continuous, every point but `x_3` is an approximate fixed
/// point.
pub fn wedge_collapse_map(w: &WedgeImage) -> Result<DigitalMap> {
    if w.m != 6 {
        return Err(Error::Hypothesis(format!("the left cycle must be C_6, got C_{}", w.m)));
    }
    let moves = [(3, 0), (2, 1), (4, 5)];
    DigitalMap::from_fn(w.image.clone(), w.image.clone(), |p| {
        moves
            .iter()
            .find(|&&(from, _)| *p == w.left(from))
            .map(|&(_, to)| w.left(to))
            .unwrap_or_else(|| p.clone())
    })
}

/// Walks a cycle from `start`, first stepping to `next`, until it returns
/// to `start`. Every point visited must have degree 2 except `start`.
fn walk_ring(x: &DigitalImage, start: usize, next: usize) -> Result<Vec<usize>> {
    let mut ring = vec![start];
    let (mut prev, mut cur) = (start, next);
    while cur != start {
        let nb = x.neighbor_indices(cur);
        if nb.len() != 2 || ring.len() > x.len() {
            return Err(Error::Hypothesis(format!("point {} does not lie on a simple cycle", x.point(cur))));
        }
        ring.push(cur);
        let step = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = step;
    }
    Ok(ring)
}

/// Point indices of a cycle image in cyclic order, starting at index 0 and
/// stepping first to its lower-indexed neighbor.
pub fn cycle_order(x: &DigitalImage) -> Result<Vec<usize>> {
    if x.len() < 3 || (0..x.len()).any(|i| x.neighbor_indices(i).len() != 2) || !x.is_connected() {
        return Err(Error::Hypothesis("the image is not a cycle".into()));
    }
    let first = *x.neighbor_indices(0).iter().min().unwrap();
    walk_ring(x, 0, first)
}

/// The two cycles of a wedge image, each in cyclic order from the wedge
/// point. The cycle through the wedge point's lowest-indexed neighbor
/// comes first.
pub fn wedge_cycles(x: &DigitalImage) -> Result<(Vec<usize>, Vec<usize>)> {
    let not_wedge = || Error::Hypothesis("the image is not a wedge of two cycles".into());
    let hubs: Vec<usize> = (0..x.len()).filter(|&i| x.neighbor_indices(i).len() != 2).collect();
    let [hub] = hubs[..] else { return Err(not_wedge()) };
    if x.neighbor_indices(hub).len() != 4 || !x.is_connected() {
        return Err(not_wedge());
    }
    let mut nb = x.neighbor_indices(hub).to_vec();
    nb.sort_unstable();
    let left = walk_ring(x, hub, nb[0])?;
    let rest: Vec<usize> = nb.iter().copied().filter(|v| !left.contains(v)).collect();
    let right = walk_ring(x, hub, rest[0])?;
    if left.len() + right.len() != x.len() + 1 {
        return Err(not_wedge());
    }
    Ok((left, right))
}

/// The lexicographically first valid triple of a cycle image, as points.
pub fn cycle_freezing_set(x: &DigitalImage) -> Result<PointSet> {
    let ring = cycle_order(x)?;
    let [i, j, k] = *valid_triples(ring.len())
        .first()
        .ok_or_else(|| Error::Hypothesis(format!("C_{} has no valid triple; it needs more than 4 points", ring.len())))?;
    Ok([i, j, k].iter().map(|&t| x.point(ring[t]).clone()).collect())
}

/// A 4-point freezing set of a wedge image: on each cycle, the two points
/// completing the first valid triple through the wedge point.
pub fn wedge_freezing_set_of(x: &DigitalImage) -> Result<PointSet> {
    let (left, right) = wedge_cycles(x)?;
    let mut out = PointSet::new();
    for ring in [left, right] {
        let [_, i, j] = *valid_triples(ring.len())
            .iter()
            .find(|t| t[0] == 0)
            .ok_or_else(|| Error::Hypothesis(format!("C_{} has no valid triple; it needs more than 4 points", ring.len())))?;
        out.insert(x.point(ring[i]).clone());
        out.insert(x.point(ring[j]).clone());
    }
    Ok(out)
}

/// Necessary condition for `A` to be freezing on a tree: it holds every leaf.
pub fn leaf_necessity_check(t: &DigitalImage, a: &PointSet) -> Result<bool> {
    Ok(tree_leaves(t)?.is_subset(a))
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(adj, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in &adj[v] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Canonical string of an unlabeled tree on `0..n`: the least rooted code
/// over its centers.
pub fn tree_canonical_form(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    centers(&adj)
        .into_iter()
        .map(|c| rooted_code(&adj, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// One edge list per isomorphism class of trees on `n >= 1` vertices,
/// ordered by canonical form.
pub fn free_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for k in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..k {
                let mut e = t.clone();
                e.push((v, k));
                if seen.insert(tree_canonical_form(k + 1, &e)) {
                    next.push(e);
                }
            }
        }
        level = next;
    }
    level.sort_by_cached_key(|e| tree_canonical_form(n, e));
    level
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{approximate_fixed_points, is_continuous};

    #[test]
    fn constructors() {
        let c = cycle(8).unwrap();
        assert_eq!(c.image.len(), 8);
        assert!((0..8).all(|i| c.image.neighbor_indices(i).len() == 2));
        assert_eq!(complete_graph(3).unwrap().edge_count(), 3);
        let w = wedge(6, 8).unwrap();
        assert_eq!(w.image.len(), 13);
        assert_eq!(w.image.degree(&w.wedge_point()).unwrap(), 4);
        assert!(cycle(2).is_err() && complete_graph(1).is_err() && wedge(4, 8).is_err());
        assert!(tree_from_edges(&[(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(tree_from_edges(&[(0, 1), (2, 3), (3, 4)]).is_err());
    }

    #[test]
    fn triples() {
        let c8 = cycle(8).unwrap();
        assert!(cycle_freezing_triple_valid(&c8, 0, 3, 6));
        assert!(!cycle_freezing_triple_valid(&c8, 0, 1, 2));
        assert!(!cycle_freezing_triple_valid(&c8, 0, 0, 4));
        assert!(cycle_freezing_triple_valid(&cycle(6).unwrap(), 0, 2, 4));
        assert!(!cycle_freezing_triple_valid(&cycle(4).unwrap(), 0, 1, 2));
        assert_eq!(valid_triples(6), vec![[0, 2, 4], [1, 3, 5]]);
    }

    #[test]
    fn leaves() {
        let path = tree_from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(tree_leaves(&path).unwrap(), crate::point_set([0, 4]));
        let star = tree_from_edges(&[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(tree_leaves(&star).unwrap(), crate::point_set([1, 2, 3]));
        let pair = tree_from_edges(&[(0, 1)]).unwrap();
        assert_eq!(tree_leaves(&pair).unwrap().len(), 2);
        assert!(leaf_necessity_check(&path, &crate::point_set([0, 4])).unwrap());
        assert!(!leaf_necessity_check(&path, &crate::point_set([0, 2])).unwrap());
    }

    #[test]
    fn wedge_set_and_example_map() {
        let w = wedge(6, 8).unwrap();
        let a = wedge_freezing_set(&w, 2, 4, 3, 6).unwrap();
        assert_eq!(a.len(), 4);
        assert!(wedge_freezing_set(&w, 1, 2, 3, 6).is_err());
        let f = wedge_collapse_map(&w).unwrap();
        assert!(is_continuous(&f));
        assert_eq!(f.apply(&w.left(3)).unwrap(), &w.left(0));
        assert!((0..8).all(|j| f.apply(&w.right(j)).unwrap() == &w.right(j)));
        let afix = approximate_fixed_points(&f).unwrap();
        assert!(!afix.contains(&w.left(3)));
        assert!(a.is_subset(&afix));
        assert!(wedge_collapse_map(&wedge(7, 8).unwrap()).is_err());
    }

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        for e in free_trees(7) {
            assert!(tree_from_edges(&e).is_ok());
        }
    }

    #[test]
    fn recognizes_cycles_and_wedges() {
        let c = cycle(8).unwrap();
        assert_eq!(cycle_order(&c.image).unwrap(), vec![0, 1, 2, 3, 4, 5, 6, 7]);
        assert!(cycle_order(&tree_from_edges(&[(0, 1), (1, 2)]).unwrap()).is_err());
        let set = cycle_freezing_set(&c.image).unwrap();
        let idx: Vec<i64> = set.iter().map(|p| p.coord(0)).collect();
        assert!(triple_valid(8, idx[0] as usize, idx[1] as usize, idx[2] as usize));
        let w = wedge(6, 8).unwrap();
        let (l, r) = wedge_cycles(&w.image).unwrap();
        assert_eq!((l.len(), r.len()), (6, 8));
        assert_eq!(wedge_freezing_set_of(&w.image).unwrap().len(), 4);
        assert!(wedge_cycles(&c.image).is_err());
    }
}
