//! Closed curves in the plane, their complements, and bounding curves of
//! digital disks.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Point, PointSet};
use crate::plane::segment::{direction_between, is_diagonal, require_planar, step};

/// Candidate limit for the exhaustive minimal-bounding-curve search.
pub const CERTIFY_LIMIT: usize = 20;

pub(crate) fn adjacent2(p: &Point, q: &Point, u: usize) -> bool {
    let dx = (p.coord(0) - q.coord(0)).abs();
    let dy = (p.coord(1) - q.coord(1)).abs();
    match u {
        1 => dx + dy == 1,
        _ => dx.max(dy) == 1,
    }
}

/// Unit steps for c1 (axis only) or c2 (all eight).
pub(crate) fn steps(u: usize) -> impl Iterator<Item = usize> {
    (0..8).filter(move |&d| u == 2 || !is_diagonal(d))
}

/// Components of a planar point set under c1 or c2, each in point order,
/// listed by least point.
pub fn planar_components(set: &PointSet, u: usize) -> Vec<PointSet> {
    let mut seen = PointSet::new();
    let mut out = Vec::new();
    for p in set {
        if seen.contains(p) {
            continue;
        }
        let mut comp = PointSet::new();
        let mut queue = VecDeque::from([p.clone()]);
        seen.insert(p.clone());
        while let Some(c) = queue.pop_front() {
            for d in steps(u) {
                let n = step(&c, d);
                if set.contains(&n) && seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
            comp.insert(c);
        }
        out.push(comp);
    }
    out
}

/// Bd_u of a planar set: members with a c_u-neighbor outside the set.
pub fn planar_boundary(set: &PointSet, u: usize) -> PointSet {
    set.iter()
        .filter(|p| steps(u).any(|d| !set.contains(&step(p, d))))
        .cloned()
        .collect()
}

fn is_closed_sequence(pts: &[Point], u: usize) -> bool {
    let m = pts.len();
    if m < 2 || pts.iter().any(|p| p.dim() != 2) {
        return false;
    }
    let distinct: BTreeSet<&Point> = pts.iter().collect();
    distinct.len() == m && (0..m).all(|i| adjacent2(&pts[i], &pts[(i + 1) % m], u))
}

fn strip_closing(seq: &[Point]) -> &[Point] {
    if seq.len() >= 2 && seq.first() == seq.last() {
        &seq[..seq.len() - 1]
    } else {
        seq
    }
}

/// Is `seq` a closed c_u-curve? The closing repetition of the first point
/// at the end is optional.
pub fn is_closed_curve(seq: &[Point], u: usize) -> bool {
    (u == 1 || u == 2) && is_closed_sequence(strip_closing(seq), u)
}

/// A closed curve whose only c_u-neighbors within the curve are its two
/// curve neighbors, with at least 8 points for c1 and 4 for c2.
pub fn is_simple_closed_curve(seq: &[Point], u: usize) -> bool {
    if !is_closed_curve(seq, u) {
        return false;
    }
    let pts = strip_closing(seq);
    let m = pts.len();
    if m < if u == 1 { 8 } else { 4 } {
        return false;
    }
    (0..m).all(|i| {
        let prev = (i + m - 1) % m;
        let next = (i + 1) % m;
        (0..m).all(|j| j == i || adjacent2(&pts[i], &pts[j], u) == (j == prev || j == next))
    })
}

/// A closed curve in the plane: a cyclic sequence of distinct points, each
/// c_u-adjacent to the next. The first point is not repeated at the end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedCurve {
    points: Vec<Point>,
    adjacency: usize,
}

impl ClosedCurve {
    pub fn new(seq: Vec<Point>, u: usize) -> Result<Self> {
        if u != 1 && u != 2 {
            return Err(Error::AdjacencyOutOfRange { u, max: 2 });
        }
        require_planar(&seq)?;
        let pts = strip_closing(&seq).to_vec();
        if !is_closed_sequence(&pts, u) {
            return Err(Error::NotAClosedCurve(format!(
                "sequence of {} points is not a closed c{u}-curve",
                pts.len()
            )));
        }
        Ok(ClosedCurve { points: pts, adjacency: u })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn adjacency(&self) -> usize {
        self.adjacency
    }

    pub fn point_set(&self) -> PointSet {
        self.points.iter().cloned().collect()
    }

    pub fn is_simple(&self) -> bool {
        is_simple_closed_curve(&self.points, self.adjacency)
    }

    /// The same cyclic sequence viewed as a c2-curve.
    pub fn as_c2(&self) -> ClosedCurve {
        ClosedCurve {
            points: self.points.clone(),
            adjacency: 2,
        }
    }

    /// Twice the signed area of the polygon through the curve points;
    /// positive for counterclockwise traversal.
    pub fn signed_area2(&self) -> i64 {
        let m = self.points.len();
        (0..m)
            .map(|i| {
                let (p, q) = (&self.points[i], &self.points[(i + 1) % m]);
                p.coord(0) * q.coord(1) - q.coord(0) * p.coord(1)
            })
            .sum()
    }

    /// Direction index of the step from point `i` to point `i + 1`.
    pub fn step_direction(&self, i: usize) -> usize {
        let m = self.points.len();
        direction_between(&self.points[i % m], &self.points[(i + 1) % m]).expect("curve steps are unit steps")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanDecomposition {
    pub curve_points: PointSet,
    /// The single finite complementary component.
    pub interior: PointSet,
    /// A point of the infinite component.
    pub exterior_marker: Point,
    pub complement_adjacency: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum JordanOutcome {
    Separated(JordanDecomposition),
    /// The complement is connected.
    NotSeparating { exterior_marker: Point },
    /// More than one finite component.
    MultipleBounded { components: Vec<PointSet> },
}

impl JordanOutcome {
    pub fn decomposition(&self) -> Option<&JordanDecomposition> {
        match self {
            JordanOutcome::Separated(d) => Some(d),
            _ => None,
        }
    }
}

/// Finite components of the complement of `s` under c_u, plus the lexicographically
/// least point of the infinite one. Works in the bounding box of `s`
/// grown by one; components meeting the outer frame are the infinite one.
pub fn complement_components(s: &PointSet, u: usize) -> (Vec<PointSet>, Point) {
    let xs = s.iter().map(|p| p.coord(0));
    let ys = s.iter().map(|p| p.coord(1));
    let (x0, x1) = (xs.clone().min().unwrap() - 1, xs.max().unwrap() + 1);
    let (y0, y1) = (ys.clone().min().unwrap() - 1, ys.max().unwrap() + 1);
    let mut window = PointSet::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            let p = Point::new(vec![x, y]);
            if !s.contains(&p) {
                window.insert(p);
            }
        }
    }
    let on_frame = |p: &Point| p.coord(0) == x0 || p.coord(0) == x1 || p.coord(1) == y0 || p.coord(1) == y1;
    let bounded = planar_components(&window, u)
        .into_iter()
        .filter(|c| !c.iter().any(on_frame))
        .collect();
    (bounded, Point::new(vec![x0, y0]))
}

/// Components of the plane minus the curve, taken in the adjacency
/// complementary to the curve's own.
pub fn jordan_decompose(curve: &ClosedCurve) -> JordanOutcome {
    jordan_decompose_with(&curve.point_set(), 3 - curve.adjacency)
}

/// Like [`jordan_decompose`] for an arbitrary nonempty point set and an
/// explicit complement adjacency.
pub fn jordan_decompose_with(s: &PointSet, complement_u: usize) -> JordanOutcome {
    let (mut bounded, marker) = complement_components(s, complement_u);
    match bounded.len() {
        0 => JordanOutcome::NotSeparating { exterior_marker: marker },
        1 => JordanOutcome::Separated(JordanDecomposition {
            curve_points: s.clone(),
            interior: bounded.pop().unwrap(),
            exterior_marker: marker,
            complement_adjacency: complement_u,
        }),
        _ => JordanOutcome::MultipleBounded { components: bounded },
    }
}

/// Is `curve`, read as a c2-curve, a bounding curve of the disk `d`? Its
/// complement must have one finite and one infinite c1-component, and the
/// curve together with the finite one must be exactly `d`.
pub fn is_bounding_curve(curve: &ClosedCurve, d: &PointSet) -> bool {
    is_closed_curve(curve.points(), 2) && bounds(&curve.point_set(), d)
}

fn bounds(s: &PointSet, d: &PointSet) -> bool {
    match jordan_decompose_with(s, 1) {
        JordanOutcome::Separated(j) => s.len() + j.interior.len() == d.len() && s.is_subset(d) && j.interior.is_subset(d),
        _ => false,
    }
}

/// Interior of a bounding curve, which is `d` minus the curve.
pub fn interior_of(curve: &ClosedCurve) -> Option<PointSet> {
    jordan_decompose_with(&curve.point_set(), 1)
        .decomposition()
        .map(|j| j.interior.clone())
}

/// Walks the outer contour of `d` by Moore-neighbor tracing, starting at
/// the lexicographically least point and stopping when the first move is
/// about to repeat. Points may repeat for sets with one-point-wide parts.
pub fn moore_trace(d: &PointSet) -> Vec<Point> {
    let Some(start) = d.iter().next().cloned() else {
        return Vec::new();
    };
    // Clockwise scan order: W, NW, N, NE, E, SE, S, SW.
    const CW: [usize; 8] = [4, 3, 2, 1, 0, 7, 6, 5];
    let next_from = |c: &Point, back: &Point| -> Option<(Point, Point)> {
        let bdir = direction_between(c, back).unwrap();
        let k0 = CW.iter().position(|&d| d == bdir).unwrap();
        let mut prev = back.clone();
        for j in 1..=8 {
            let n = step(c, CW[(k0 + j) % 8]);
            if d.contains(&n) {
                return Some((n, prev));
            }
            prev = n;
        }
        None
    };
    let west = step(&start, 4);
    let Some((first, first_back)) = next_from(&start, &west) else {
        return vec![start];
    };
    let mut out = vec![start.clone()];
    let (mut cur, mut back) = (first.clone(), first_back);
    // A contour of n points is walked in at most 4n moves.
    for _ in 0..4 * d.len() + 8 {
        let (n, b) = next_from(&cur, &back).unwrap();
        if cur == start && n == first {
            break;
        }
        out.push(cur);
        cur = n;
        back = b;
    }
    out
}

/// A bounding curve of `d` found by boundary tracing, falling back to the
/// exhaustive search when tracing does not produce one.
pub fn trace_bounding_curve(d: &PointSet) -> Result<ClosedCurve> {
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    require_planar(d)?;
    let comps = planar_components(d, 2);
    if comps.len() > 1 {
        return Err(Error::NotADisk(format!("the set has {} c2-components", comps.len())));
    }
    let seq = moore_trace(d);
    let diagnosis = match ClosedCurve::new(seq.clone(), 2) {
        Ok(c) => match jordan_decompose_with(&c.point_set(), 1) {
            JordanOutcome::Separated(_) if bounds(&c.point_set(), d) => return Ok(c),
            JordanOutcome::Separated(j) => {
                let holes: PointSet = d.iter().filter(|p| !c.point_set().contains(p) && !j.interior.contains(p)).cloned().collect();
                if holes.is_empty() {
                    "the traced curve encloses points outside the set".to_string()
                } else {
                    format!("the set has holes; points {} are cut off from the interior", fmt_points(&holes))
                }
            }
            JordanOutcome::NotSeparating { .. } => "the traced curve has an empty interior".to_string(),
            JordanOutcome::MultipleBounded { components } => format!(
                "the traced curve leaves {} bounded c1-components: {}",
                components.len(),
                components.iter().map(fmt_points).collect::<Vec<_>>().join(", ")
            ),
        },
        Err(_) => {
            let mut seen = PointSet::new();
            let repeated: PointSet = seq.iter().filter(|p| !seen.insert((*p).clone())).cloned().collect();
            if seq.len() < 3 {
                "the set is too thin to enclose any point".to_string()
            } else {
                format!("the traced boundary passes through {} more than once", fmt_points(&repeated))
            }
        }
    };
    match search_bounding_curves(d, CERTIFY_LIMIT) {
        Ok(Some(c)) => Ok(c),
        _ => Err(Error::NotADisk(diagnosis)),
    }
}

pub(crate) fn fmt_points(s: &PointSet) -> String {
    format!("{{{}}}", s.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
}

/// Finds a c2-closed curve through every point of `t`, preferring axis
/// steps. Depth-first over a graph that is nearly a cycle in practice.
fn closed_walk_through(t: &PointSet) -> Option<Vec<Point>> {
    let pts: Vec<Point> = t.iter().cloned().collect();
    let n = pts.len();
    if n < 2 {
        return None;
    }
    let index = |p: &Point| pts.binary_search(p).ok();
    let order: Vec<usize> = (0..8).filter(|d| !is_diagonal(*d)).chain((0..8).filter(|d| is_diagonal(*d))).collect();
    let adj: Vec<Vec<usize>> = pts
        .iter()
        .map(|p| order.iter().filter_map(|&d| index(&step(p, d))).collect())
        .collect();
    if adj.iter().any(|a| a.len() < 2) && n > 2 {
        return None;
    }
    let mut path = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    fn dfs(adj: &[Vec<usize>], path: &mut Vec<usize>, used: &mut [bool], budget: &mut u64) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let n = adj.len();
        let last = *path.last().unwrap();
        if path.len() == n {
            return adj[last].contains(&0);
        }
        for &v in &adj[last] {
            if used[v] {
                continue;
            }
            used[v] = true;
            path.push(v);
            // Every unused point still needs two usable neighbors.
            let ok = (0..n).all(|w| {
                used[w] || adj[w].iter().filter(|&&z| !used[z] || z == 0 || z == v).count() >= 2
            });
            if ok && dfs(adj, path, used, budget) {
                return true;
            }
            path.pop();
            used[v] = false;
        }
        false
    }
    let mut budget = 1_000_000u64;
    if dfs(&adj, &mut path, &mut used, &mut budget) {
        Some(path.into_iter().map(|i| pts[i].clone()).collect())
    } else {
        None
    }
}

/// Exhaustive search over bounding curves of `d`. Any bounding curve
/// contains Bd_1(d) and lies in Bd_2(d), so only the points of
/// Bd_2(d) \ Bd_1(d) are optional. Subsets are tried by size, so the
/// first curve found has the fewest points. Errors when there are more
/// than `limit` optional points.
pub fn search_bounding_curves(d: &PointSet, limit: usize) -> Result<Option<ClosedCurve>> {
    let bd1 = planar_boundary(d, 1);
    let optional: Vec<Point> = planar_boundary(d, 2).difference(&bd1).cloned().collect();
    if optional.len() > limit {
        return Err(Error::CertificationLimit {
            candidates: optional.len(),
            limit,
        });
    }
    if bd1.is_empty() {
        return Ok(None);
    }
    for k in 0..=optional.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut t = bd1.clone();
            t.extend(idx.iter().map(|&i| optional[i].clone()));
            if bounds(&t, d) {
                if let Some(walk) = closed_walk_through(&t) {
                    return Ok(Some(ClosedCurve::new(walk, 2)?));
                }
            }
            if k == 0 || !crate::verify::next_combination(&mut idx, optional.len()) {
                break;
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizedCurve {
    /// Result of the corner-shortcut heuristic.
    pub curve: ClosedCurve,
    /// With certification: whether no bounding curve has fewer points.
    pub certified_minimal: Option<bool>,
    /// With certification: a bounding curve of least size.
    pub minimum: Option<ClosedCurve>,
}

/// Repeatedly replaces two perpendicular axis steps `u -> p -> v` by the
/// diagonal step `u -> v` while the curve still bounds `d`. With `certify`,
/// also runs the exhaustive search to decide global minimality.
pub fn minimize_bounding_curve(curve: &ClosedCurve, d: &PointSet, certify: bool) -> Result<MinimizedCurve> {
    if !is_bounding_curve(curve, d) {
        return Err(Error::NotADisk("the given curve does not bound the set".into()));
    }
    let mut pts = curve.points().to_vec();
    'outer: loop {
        let m = pts.len();
        for i in 0..m {
            let (u, p, v) = (&pts[(i + m - 1) % m], &pts[i], &pts[(i + 1) % m]);
            let (Some(a), Some(b)) = (direction_between(u, p), direction_between(p, v)) else {
                continue;
            };
            if is_diagonal(a) || is_diagonal(b) || a % 4 == b % 4 || m <= 4 {
                continue;
            }
            let mut cand = pts.clone();
            cand.remove(i);
            if let Ok(c) = ClosedCurve::new(cand.clone(), 2) {
                if is_bounding_curve(&c, d) {
                    pts = cand;
                    continue 'outer;
                }
            }
        }
        break;
    }
    let result = ClosedCurve::new(pts, 2)?;
    if !certify {
        return Ok(MinimizedCurve {
            curve: result,
            certified_minimal: None,
            minimum: None,
        });
    }
    let minimum = search_bounding_curves(d, CERTIFY_LIMIT)?
        .ok_or_else(|| Error::Internal("exhaustive search missed a known bounding curve".into()))?;
    Ok(MinimizedCurve {
        certified_minimal: Some(minimum.len() >= result.len()),
        curve: result,
        minimum: Some(minimum),
    })
}

/// Bounding curves of a connected planar set with holes: the outer curve
/// first, then one curve around each hole (by least hole point). Each
/// condition of the definition is re-checked.
///
/// The separation condition is read as: the exterior of the outer curve
/// and the hole disks are pairwise neither c1- nor c2-adjacent. Read with
/// the outer curve included it would fail for every set with a hole whose
/// ring touches the outer ring diagonally.
pub fn bounding_curve_set(x: &PointSet) -> Result<Vec<ClosedCurve>> {
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    require_planar(x)?;
    if planar_components(x, 2).len() != 1 {
        return Err(Error::Disconnected);
    }
    let (holes, _) = complement_components(x, 1);
    let mut filled = x.clone();
    for h in &holes {
        filled.extend(h.iter().cloned());
    }
    let outer = trace_bounding_curve(&filled)?;
    let outer_int = interior_of(&outer).unwrap();
    let mut curves = vec![outer.clone()];
    let mut disks = Vec::new();
    for h in &holes {
        let ring: PointSet = x
            .iter()
            .filter(|p| (0..8).any(|d| h.contains(&step(p, d))))
            .cloned()
            .collect();
        let mut disk = ring.clone();
        disk.extend(h.iter().cloned());
        let c = trace_bounding_curve(&disk)
            .map_err(|e| Error::NotADisk(format!("hole {}: {e}", fmt_points(h))))?;
        if interior_of(&c).as_ref() != Some(h) {
            return Err(Error::NotADisk(format!("no curve in the set encloses exactly the hole {}", fmt_points(h))));
        }
        disks.push(disk);
        curves.push(c);
    }
    // Curves pairwise disjoint and inside X.
    for (i, c) in curves.iter().enumerate() {
        if !c.point_set().is_subset(x) {
            return Err(Error::NotADisk("a bounding curve leaves the set".into()));
        }
        for d in &curves[i + 1..] {
            if !c.point_set().is_disjoint(&d.point_set()) {
                return Err(Error::NotADisk("two bounding curves share a point".into()));
            }
        }
    }
    let mut outer_disk = outer.point_set();
    outer_disk.extend(outer_int.iter().cloned());
    if !x.is_subset(&outer_disk) {
        return Err(Error::NotADisk("the outer curve does not enclose the set".into()));
    }
    let touches = |a: &PointSet, b: &PointSet| a.iter().any(|p| (0..8).any(|d| b.contains(&step(p, d))));
    // Exterior points that can touch a hole disk lie next to the outer disk.
    let ext_near: PointSet = outer_disk
        .iter()
        .flat_map(|p| (0..8).map(move |d| step(p, d)))
        .filter(|q| !outer_disk.contains(q))
        .collect();
    for (i, di) in disks.iter().enumerate() {
        if touches(&ext_near, di) {
            return Err(Error::NotADisk("a hole disk touches the exterior".into()));
        }
        for dj in &disks[i + 1..] {
            if touches(di, dj) || !di.is_disjoint(dj) {
                return Err(Error::NotADisk("two hole disks touch".into()));
            }
        }
    }
    // The complement of X is the exterior plus the hole interiors.
    let covered: usize = holes.iter().map(|h| h.len()).sum();
    if outer_disk.len() != x.len() + covered {
        return Err(Error::NotADisk("the complement is not the exterior plus the holes".into()));
    }
    Ok(curves)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::point_set;

    fn seq(v: &[[i64; 2]]) -> Vec<Point> {
        v.iter().map(|&p| Point::from(p)).collect()
    }

    pub(crate) fn diamond(r: i64) -> PointSet {
        let mut s = PointSet::new();
        for x in -r..=r {
            for y in -r..=r {
                if x.abs() + y.abs() <= r {
                    s.insert(Point::from([x, y]));
                }
            }
        }
        s
    }

    fn rect(w: i64, h: i64) -> PointSet {
        let mut s = PointSet::new();
        for x in 0..=w {
            for y in 0..=h {
                s.insert(Point::from([x, y]));
            }
        }
        s
    }

    fn notched_square() -> PointSet {
        let mut d = rect(3, 3);
        d.remove(&Point::from([3, 3]));
        d
    }

    fn notched_ring() -> Vec<Point> {
        seq(&[[0, 0], [1, 0], [2, 0], [3, 0], [3, 1], [3, 2], [2, 2], [2, 3], [1, 3], [0, 3], [0, 2], [0, 1]])
    }

    fn notched_shortcut() -> Vec<Point> {
        seq(&[[0, 0], [1, 0], [2, 0], [3, 0], [3, 1], [3, 2], [2, 3], [1, 3], [0, 3], [0, 2], [0, 1]])
    }

    fn pinched_strip() -> (PointSet, Vec<Point>) {
        let mut d = rect(6, 2);
        d.remove(&Point::from([3, 2]));
        let s = seq(&[
            [0, 0], [1, 0], [2, 0], [3, 0], [4, 0], [5, 0], [6, 0], [6, 1], [6, 2], [5, 2], [4, 2], [3, 1], [2, 2],
            [1, 2], [0, 2], [0, 1],
        ]);
        (d, s)
    }

    #[test]
    fn closed_and_simple_curves() {
        let dia = seq(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        assert!(is_closed_curve(&dia, 2));
        assert!(is_simple_closed_curve(&dia, 2));
        assert!(!is_closed_curve(&dia, 1));
        assert!(is_closed_curve(&notched_shortcut(), 2));
        assert!(!is_simple_closed_curve(&notched_shortcut(), 2));
        let ring = seq(&[[0, 0], [1, 0], [2, 0], [2, 1], [2, 2], [1, 2], [0, 2], [0, 1], [0, 0]]);
        assert!(is_simple_closed_curve(&ring, 1));
        assert!(!is_closed_curve(&seq(&[[0, 0], [1, 0], [0, 0], [1, 0]]), 1));
    }

    #[test]
    fn jordan_examples() {
        let dia = ClosedCurve::new(seq(&[[1, 0], [0, 1], [-1, 0], [0, -1]]), 2).unwrap();
        let j = jordan_decompose(&dia);
        assert_eq!(j.decomposition().unwrap().interior, point_set([[0, 0]]));
        let ring = ClosedCurve::new(seq(&[[0, 0], [1, 0], [2, 0], [2, 1], [2, 2], [1, 2], [0, 2], [0, 1]]), 1).unwrap();
        assert_eq!(jordan_decompose(&ring).decomposition().unwrap().interior, point_set([[1, 1]]));
        let (_, s) = pinched_strip();
        let c = ClosedCurve::new(s, 2).unwrap();
        match jordan_decompose(&c) {
            JordanOutcome::MultipleBounded { components } => {
                assert_eq!(components, vec![point_set([[1, 1], [2, 1]]), point_set([[4, 1], [5, 1]])]);
            }
            other => panic!("unexpected {other:?}"),
        }
        // Under c2 the notch at (3,2) joins (2,1) and (4,1) to the outside.
        assert!(matches!(
            jordan_decompose_with(&c.point_set(), 2),
            JordanOutcome::NotSeparating { .. }
        ));
    }

    #[test]
    fn ring_and_shortcut_bound_the_same_disk() {
        let d = notched_square();
        let ring = ClosedCurve::new(notched_ring(), 1).unwrap();
        let slanted = ClosedCurve::new(notched_shortcut(), 2).unwrap();
        assert!(is_bounding_curve(&ring, &d));
        assert!(is_bounding_curve(&slanted, &d));
        assert!(slanted.len() < ring.len());
        let (d3, s3) = pinched_strip();
        assert!(!is_bounding_curve(&ClosedCurve::new(s3, 2).unwrap(), &d3));
    }

    #[test]
    fn tracing() {
        let sq = rect(2, 2);
        let c = trace_bounding_curve(&sq).unwrap();
        assert_eq!(c.len(), 8);
        assert!(is_bounding_curve(&c, &sq));
        let dia = trace_bounding_curve(&diamond(1)).unwrap();
        assert_eq!(dia.point_set(), point_set([[1, 0], [0, 1], [-1, 0], [0, -1]]));
        let f2 = trace_bounding_curve(&notched_square()).unwrap();
        assert_eq!(f2.point_set(), seq(&notched_shortcut().iter().map(|p| [p.coord(0), p.coord(1)]).collect::<Vec<_>>()).into_iter().collect());
        let (d3, _) = pinched_strip();
        assert!(matches!(trace_bounding_curve(&d3), Err(Error::NotADisk(_))));
        assert!(matches!(trace_bounding_curve(&rect(3, 0)), Err(Error::NotADisk(_))));
    }

    #[test]
    fn minimization() {
        let d = notched_square();
        let ring = ClosedCurve::new(notched_ring(), 1).unwrap();
        let m = minimize_bounding_curve(&ring, &d, true).unwrap();
        assert_eq!(m.curve.point_set(), notched_shortcut().into_iter().collect());
        assert_eq!(m.certified_minimal, Some(true));
        let sq = rect(2, 2);
        let c = trace_bounding_curve(&sq).unwrap();
        let m = minimize_bounding_curve(&c, &sq, true).unwrap();
        assert_eq!(m.curve, c);
        assert_eq!(m.certified_minimal, Some(true));
        let dia = diamond(1);
        let c = trace_bounding_curve(&dia).unwrap();
        assert_eq!(minimize_bounding_curve(&c, &dia, true).unwrap().curve, c);
    }

    #[test]
    fn curve_sets() {
        assert_eq!(bounding_curve_set(&rect(3, 2)).unwrap().len(), 1);
        let mut annulus = rect(4, 4);
        annulus.remove(&Point::from([2, 2]));
        let cs = bounding_curve_set(&annulus).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[1].len(), 8);
        assert_eq!(interior_of(&cs[1]).unwrap(), point_set([[2, 2]]));
        let (d3, _) = pinched_strip();
        assert!(bounding_curve_set(&d3).is_err());
    }
}
