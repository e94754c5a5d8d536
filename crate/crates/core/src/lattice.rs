//! Lattice points, adjacency relations and finite digital images.
//!
//! A [`DigitalImage`] is a finite graph whose vertices are lattice points.
//! Edges come from one of three rules: `c_u` adjacency on `Z^n`, the
//! generalized normal product `NP_u` of factor adjacencies, or an explicit
//! edge list (for abstract graphs such as cycles, trees and complete graphs).
//!
//! Points are kept in lexicographic order, so every iteration and every
//! report built on top of an image is deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of paths returned by [`DigitalImage::shortest_paths`].
pub const DEFAULT_PATH_LIMIT: usize = 10_000;

/// A point of `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        let coords = coords.into();
        assert!(!coords.is_empty(), "a point needs at least one coordinate");
        Point(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate `axis` (0-based).
    pub fn coord(&self, axis: usize) -> i64 {
        self.0[axis]
    }

    pub fn offset(&self, delta: &[i64]) -> Point {
        Point(self.0.iter().zip(delta).map(|(a, b)| a + b).collect())
    }

    fn concat(parts: &[&Point]) -> Point {
        Point(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(c: [i64; N]) -> Self {
        Point::new(c.to_vec())
    }
}

impl From<i64> for Point {
    fn from(c: i64) -> Self {
        Point(vec![c])
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A subset of an image's points.
pub type PointSet = BTreeSet<Point>;

/// Collects points into a [`PointSet`].
pub fn point_set<I, P>(points: I) -> PointSet
where
    I: IntoIterator<Item = P>,
    P: Into<Point>,
{
    points.into_iter().map(Into::into).collect()
}

/// One factor of a normal-product adjacency: the factor's dimension and its
/// own adjacency rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub dim: usize,
    pub adjacency: Adjacency,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Adjacency {
    /// `c_u`: distinct points differing by exactly 1 in at most `u`
    /// coordinates and equal elsewhere.
    Cu(usize),
    /// `NP_u(k_1, ..., k_v)`: between 1 and `u` factors step to an adjacent
    /// factor point, the rest are equal.
    Np { u: usize, factors: Vec<Factor> },
    /// Explicit undirected edges, each stored as `(min, max)`.
    Explicit(BTreeSet<(Point, Point)>),
}

impl Adjacency {
    /// Builds an explicit adjacency, normalizing each pair. Self-loops are
    /// rejected.
    pub fn explicit<I>(edges: I) -> Result<Adjacency>
    where
        I: IntoIterator<Item = (Point, Point)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidAdjacency(format!("self-loop at {a}")));
            }
            if a.dim() != b.dim() {
                return Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    found: b.dim(),
                });
            }
            set.insert(if a < b { (a, b) } else { (b, a) });
        }
        Ok(Adjacency::Explicit(set))
    }

    /// `NP_u` over factors that are each one-dimensional.
    pub fn np_of_lines(u: usize, factors: Vec<Adjacency>) -> Adjacency {
        Adjacency::Np {
            u,
            factors: factors
                .into_iter()
                .map(|adjacency| Factor { dim: 1, adjacency })
                .collect(),
        }
    }

    /// True when the rule never consults an explicit edge list, i.e. the
    /// image is embedded in `Z^n`.
    pub fn is_lattice(&self) -> bool {
        match self {
            Adjacency::Cu(_) => true,
            Adjacency::Np { factors, .. } => factors.iter().all(|f| f.adjacency.is_lattice()),
            Adjacency::Explicit(_) => false,
        }
    }

    /// Checks the parameters against an ambient dimension.
    pub fn validate(&self, dim: usize) -> Result<()> {
        match self {
            Adjacency::Cu(u) => {
                if *u == 0 || *u > dim {
                    return Err(Error::AdjacencyOutOfRange { u: *u, max: dim });
                }
            }
            Adjacency::Np { u, factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidAdjacency("NP needs at least one factor".into()));
                }
                if *u == 0 || *u > factors.len() {
                    return Err(Error::AdjacencyOutOfRange {
                        u: *u,
                        max: factors.len(),
                    });
                }
                let total: usize = factors.iter().map(|f| f.dim).sum();
                if total != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: total,
                    });
                }
                for f in factors {
                    f.adjacency.validate(f.dim)?;
                }
            }
            Adjacency::Explicit(edges) => {
                if let Some((a, _)) = edges.iter().find(|(a, _)| a.dim() != dim) {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: a.dim(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Adjacency test without validation; callers have checked dimensions.
    fn test(&self, p: &[i64], q: &[i64]) -> bool {
        match self {
            Adjacency::Cu(u) => {
                let mut unit = 0;
                for (a, b) in p.iter().zip(q) {
                    match (a - b).abs() {
                        0 => {}
                        1 => unit += 1,
                        _ => return false,
                    }
                }
                unit >= 1 && unit <= *u
            }
            Adjacency::Np { u, factors } => {
                let mut stepped = 0;
                let mut start = 0;
                for f in factors {
                    let (a, b) = (&p[start..start + f.dim], &q[start..start + f.dim]);
                    start += f.dim;
                    if a == b {
                        continue;
                    }
                    if f.adjacency.test(a, b) {
                        stepped += 1;
                    } else {
                        return false;
                    }
                }
                stepped >= 1 && stepped <= *u
            }
            Adjacency::Explicit(edges) => {
                if p == q {
                    return false;
                }
                let (a, b) = (Point(p.to_vec()), Point(q.to_vec()));
                let key = if a < b { (a, b) } else { (b, a) };
                edges.contains(&key)
            }
        }
    }
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adjacency::Cu(u) => write!(f, "c{u}"),
            Adjacency::Np { u, factors } => {
                write!(f, "NP{u}(")?;
                for (i, fac) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    if fac.dim == 1 {
                        write!(f, "{}", fac.adjacency)?;
                    } else {
                        write!(f, "{}:{}", fac.adjacency, fac.dim)?;
                    }
                }
                write!(f, ")")
            }
            Adjacency::Explicit(edges) => write!(f, "explicit[{} edges]", edges.len()),
        }
    }
}

fn check_dims(p: &Point, q: &Point) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(())
}

/// `p <-> q` under `adj`. Irreflexive.
pub fn adjacent(p: &Point, q: &Point, adj: &Adjacency) -> Result<bool> {
    check_dims(p, q)?;
    adj.validate(p.dim())?;
    Ok(adj.test(p.coords(), q.coords()))
}

/// `p <-> q` or `p = q`.
pub fn adjacent_or_equal(p: &Point, q: &Point, adj: &Adjacency) -> Result<bool> {
    check_dims(p, q)?;
    adj.validate(p.dim())?;
    Ok(p == q || adj.test(p.coords(), q.coords()))
}

/// A finite digital image: a nonempty point set of one dimension plus an
/// adjacency. Neighbor lists are materialized once at construction.
#[derive(Clone)]
pub struct DigitalImage {
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    dimension: usize,
    adjacency: Adjacency,
    neighbors: Vec<Vec<usize>>,
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.adjacency == other.adjacency
    }
}

impl Eq for DigitalImage {}

impl fmt::Debug for DigitalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DigitalImage")
            .field("dimension", &self.dimension)
            .field("adjacency", &format_args!("{}", self.adjacency))
            .field("points", &self.points)
            .finish()
    }
}

impl DigitalImage {
    pub fn new<I>(points: I, adjacency: Adjacency) -> Result<Self>
    where
        I: IntoIterator<Item = Point>,
    {
        let set: PointSet = points.into_iter().collect();
        let first = set.iter().next().ok_or(Error::EmptyImage)?;
        let dimension = first.dim();
        if let Some(p) = set.iter().find(|p| p.dim() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: p.dim(),
            });
        }
        adjacency.validate(dimension)?;
        if let Adjacency::Explicit(edges) = &adjacency {
            for (a, b) in edges {
                for p in [a, b] {
                    if !set.contains(p) {
                        return Err(Error::PointNotInImage(p.clone()));
                    }
                }
            }
        }
        let points: Vec<Point> = set.into_iter().collect();
        let index: HashMap<Point, usize> =
            points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let neighbors = Self::build_neighbors(&points, &index, dimension, &adjacency);
        Ok(DigitalImage {
            points,
            index,
            dimension,
            adjacency,
            neighbors,
        })
    }

    /// The box `prod [lo_i, hi_i]` in `Z^n`.
    pub fn lattice_box(ranges: &[(i64, i64)], adjacency: Adjacency) -> Result<Self> {
        let mut pts = vec![Vec::new()];
        for &(lo, hi) in ranges {
            let mut next = Vec::new();
            for prefix in &pts {
                for c in lo..=hi {
                    let mut v: Vec<i64> = prefix.clone();
                    v.push(c);
                    next.push(v);
                }
            }
            pts = next;
        }
        DigitalImage::new(pts.into_iter().map(Point::new), adjacency)
    }

    fn build_neighbors(
        points: &[Point],
        index: &HashMap<Point, usize>,
        dim: usize,
        adj: &Adjacency,
    ) -> Vec<Vec<usize>> {
        let n = points.len();
        let mut nbrs = vec![Vec::new(); n];
        let offsets_count = 3usize.checked_pow(dim as u32).unwrap_or(usize::MAX);
        if let Adjacency::Explicit(edges) = adj {
            for (a, b) in edges {
                let (i, j) = (index[a], index[b]);
                nbrs[i].push(j);
                nbrs[j].push(i);
            }
        } else if adj.is_lattice() && offsets_count <= n.saturating_mul(4).max(27) {
            // Lattice rules only relate points whose coordinates differ by at
            // most 1 everywhere, so the 3^n - 1 offsets cover every candidate.
            let offsets = unit_offsets(dim);
            for (i, p) in points.iter().enumerate() {
                for d in &offsets {
                    let q = p.offset(d);
                    if let Some(&j) = index.get(&q) {
                        if adj.test(p.coords(), q.coords()) {
                            nbrs[i].push(j);
                        }
                    }
                }
            }
        } else {
            for i in 0..n {
                for j in (i + 1)..n {
                    if adj.test(points[i].coords(), points[j].coords()) {
                        nbrs[i].push(j);
                        nbrs[j].push(i);
                    }
                }
            }
        }
        for list in &mut nbrs {
            list.sort_unstable();
            list.dedup();
        }
        nbrs
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point_set(&self) -> PointSet {
        self.points.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn is_lattice(&self) -> bool {
        self.adjacency.is_lattice()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub(crate) fn require_index(&self, p: &Point) -> Result<usize> {
        self.index_of(p)
            .ok_or_else(|| Error::PointNotInImage(p.clone()))
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// Sorted neighbor indices of point `i`.
    pub fn neighbor_indices(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn adjacent_indices(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    pub fn adjacent_or_equal_indices(&self, i: usize, j: usize) -> bool {
        i == j || self.adjacent_indices(i, j)
    }

    /// Each undirected edge once, as `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, p: &Point) -> Result<usize> {
        Ok(self.neighbors[self.require_index(p)?].len())
    }

    /// `N(X, x)`.
    pub fn neighbors(&self, x: &Point) -> Result<PointSet> {
        let i = self.require_index(x)?;
        Ok(self.neighbors[i].iter().map(|&j| self.points[j].clone()).collect())
    }

    /// `N*(X, x) = N(X, x) ∪ {x}`.
    pub fn closed_neighborhood(&self, x: &Point) -> Result<PointSet> {
        let mut set = self.neighbors(x)?;
        set.insert(x.clone());
        Ok(set)
    }

    /// Connected components by breadth-first search, each as a sorted index
    /// list; components are ordered by their least point.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.neighbors[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<PointSet> {
        self.component_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.points[i].clone()).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_indices().len() == 1
    }

    /// True when the members of `subset` induce a connected subgraph.
    /// The empty set counts as connected.
    pub fn is_connected_subset(&self, subset: &PointSet) -> Result<bool> {
        let idx: Vec<usize> = subset
            .iter()
            .map(|p| self.require_index(p))
            .collect::<Result<_>>()?;
        Ok(self.indices_connected(&idx))
    }

    pub(crate) fn indices_connected(&self, idx: &[usize]) -> bool {
        if idx.len() <= 1 {
            return true;
        }
        let mut inside = vec![false; self.len()];
        for &i in idx {
            inside[i] = true;
        }
        let mut seen = vec![false; self.len()];
        seen[idx[0]] = true;
        let mut stack = vec![idx[0]];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.neighbors[v] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == idx.len()
    }

    /// The induced sub-image on `subset`, same adjacency rule.
    pub fn subimage(&self, subset: &PointSet) -> Result<DigitalImage> {
        for p in subset {
            self.require_index(p)?;
        }
        let adjacency = match &self.adjacency {
            Adjacency::Explicit(edges) => Adjacency::Explicit(
                edges
                    .iter()
                    .filter(|(a, b)| subset.contains(a) && subset.contains(b))
                    .cloned()
                    .collect(),
            ),
            other => other.clone(),
        };
        DigitalImage::new(subset.iter().cloned(), adjacency)
    }

    fn bfs_distances(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &self.neighbors[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Distance in edges between two points, or `None` if disconnected.
    pub fn distance(&self, a: &Point, b: &Point) -> Result<Option<usize>> {
        let (ia, ib) = (self.require_index(a)?, self.require_index(b)?);
        Ok(self.bfs_distances(ia)[ib])
    }

    /// All minimum-length paths from `a` to `b`, in lexicographic order of
    /// their point sequences. Fails once more than `limit` paths exist.
    pub fn shortest_paths(&self, a: &Point, b: &Point, limit: usize) -> Result<Vec<Vec<Point>>> {
        let (ia, ib) = (self.require_index(a)?, self.require_index(b)?);
        let da = self.bfs_distances(ia);
        let db = self.bfs_distances(ib);
        let total = da[ib].ok_or_else(|| Error::NoPath(a.clone(), b.clone()))?;
        let on_path = |v: usize, step: usize| da[v] == Some(step) && db[v] == Some(total - step);
        let mut out = Vec::new();
        let mut path = vec![ia];
        fn walk(
            img: &DigitalImage,
            path: &mut Vec<usize>,
            target: usize,
            total: usize,
            on_path: &dyn Fn(usize, usize) -> bool,
            out: &mut Vec<Vec<Point>>,
            limit: usize,
        ) -> Result<()> {
            let v = *path.last().unwrap();
            if v == target {
                if out.len() == limit {
                    return Err(Error::PathLimitExceeded(limit));
                }
                out.push(path.iter().map(|&i| img.points[i].clone()).collect());
                return Ok(());
            }
            let step = path.len();
            for &w in &img.neighbors[v] {
                if step <= total && on_path(w, step) {
                    path.push(w);
                    walk(img, path, target, total, on_path, out, limit)?;
                    path.pop();
                }
            }
            Ok(())
        }
        walk(self, &mut path, ib, total, &on_path, &mut out, limit)?;
        Ok(out)
    }

    /// Number of shortest paths from `a` to `b`, saturating at `cap`.
    pub fn count_shortest_paths(&self, a: &Point, b: &Point, cap: u64) -> Result<u64> {
        let (ia, ib) = (self.require_index(a)?, self.require_index(b)?);
        let da = self.bfs_distances(ia);
        let total = da[ib].ok_or_else(|| Error::NoPath(a.clone(), b.clone()))?;
        let mut by_layer: Vec<Vec<usize>> = vec![Vec::new(); total + 1];
        for (v, d) in da.iter().enumerate() {
            if let Some(d) = d {
                if *d <= total {
                    by_layer[*d].push(v);
                }
            }
        }
        let mut count = vec![0u64; self.len()];
        count[ia] = 1;
        for layer in 1..=total {
            for &v in &by_layer[layer] {
                let c: u64 = self.neighbors[v]
                    .iter()
                    .filter(|&&w| da[w] == Some(layer - 1))
                    .fold(0u64, |acc, &w| acc.saturating_add(count[w]));
                count[v] = c.min(cap);
            }
        }
        Ok(count[ib])
    }

    /// The shortest path from `a` to `b` when it is unique.
    pub fn unique_shortest_path(&self, a: &Point, b: &Point) -> Result<Option<Vec<Point>>> {
        if self.count_shortest_paths(a, b, 2)? != 1 {
            return Ok(None);
        }
        let mut paths = self.shortest_paths(a, b, 1)?;
        Ok(paths.pop())
    }

    /// `Bd_i(X)`: points with a `c_i`-neighbor in `Z^n \ X`.
    pub fn boundary(&self, i: usize) -> Result<PointSet> {
        if !self.is_lattice() {
            return Err(Error::AbstractImage);
        }
        let rule = Adjacency::Cu(i);
        rule.validate(self.dimension)?;
        let offsets: Vec<Vec<i64>> = unit_offsets(self.dimension)
            .into_iter()
            .filter(|d| d.iter().filter(|c| **c != 0).count() <= i)
            .collect();
        Ok(self
            .points
            .iter()
            .filter(|p| offsets.iter().any(|d| !self.contains(&p.offset(d))))
            .cloned()
            .collect())
    }

    /// `Int_i(X) = X \ Bd_i(X)`.
    pub fn interior(&self, i: usize) -> Result<PointSet> {
        let bd = self.boundary(i)?;
        Ok(self.points.iter().filter(|p| !bd.contains(*p)).cloned().collect())
    }

    /// Same point set under a different adjacency.
    pub fn with_adjacency(&self, adjacency: Adjacency) -> Result<DigitalImage> {
        DigitalImage::new(self.points.iter().cloned(), adjacency)
    }
}

/// All vectors in `{-1, 0, 1}^n` except zero, lexicographically ordered.
pub fn unit_offsets(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * 3);
        for v in &out {
            for c in [-1, 0, 1] {
                let mut w: Vec<i64> = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out.retain(|v| v.iter().any(|c| *c != 0));
    out
}

/// Cartesian product of factor images under `NP_u` of the factor
/// adjacencies. Coordinates are concatenated in factor order.
pub fn product_image(factors: &[&DigitalImage], u: usize) -> Result<DigitalImage> {
    if factors.is_empty() {
        return Err(Error::InvalidAdjacency("product needs at least one factor".into()));
    }
    if u == 0 || u > factors.len() {
        return Err(Error::AdjacencyOutOfRange {
            u,
            max: factors.len(),
        });
    }
    let adjacency = Adjacency::Np {
        u,
        factors: factors
            .iter()
            .map(|f| Factor {
                dim: f.dimension(),
                adjacency: f.adjacency().clone(),
            })
            .collect(),
    };
    let mut tuples: Vec<Vec<&Point>> = vec![Vec::new()];
    for f in factors {
        let mut next = Vec::new();
        for t in &tuples {
            for p in f.points() {
                let mut t2 = t.clone();
                t2.push(p);
                next.push(t2);
            }
        }
        tuples = next;
    }
    DigitalImage::new(tuples.iter().map(|t| Point::concat(t)), adjacency)
}

/// Splits a product point into factor points by the factor dimensions.
pub fn split_point(p: &Point, dims: &[usize]) -> Vec<Point> {
    let mut start = 0;
    dims.iter()
        .map(|&d| {
            let part = Point(p.coords()[start..start + d].to_vec());
            start += d;
            part
        })
        .collect()
}
