//! Sides, interior angles, thickness and convexity of digital disks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Point, PointSet};
use crate::plane::curve::{interior_of, is_bounding_curve, minimize_bounding_curve, trace_bounding_curve, ClosedCurve};
use crate::plane::segment::{is_diagonal, is_digital_segment, require_planar, step, Orientation, Segment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub point: Point,
    /// Interior angle in degrees, a multiple of 45.
    pub angle: u32,
    /// Orientation of the side arriving at the vertex.
    pub incoming: Orientation,
    /// Orientation of the side leaving the vertex.
    pub outgoing: Orientation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThicknessRule {
    Slant,
    RightAngle,
    ObtuseAngle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThicknessFailure {
    pub point: Point,
    pub rule: ThicknessRule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveSource {
    Traced,
    Minimized,
    Given,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiskAnalysis {
    pub points: PointSet,
    pub curve: ClosedCurve,
    pub curve_source: CurveSource,
    pub interior: PointSet,
    /// Maximal segments in curve order, starting at the first vertex.
    pub maximal_segments: Vec<Segment>,
    pub vertices: Vec<Vertex>,
    pub thick: bool,
    /// Failures for `curve`. Empty whenever `thick` holds for this curve.
    pub thickness_failures: Vec<ThicknessFailure>,
    pub convex: bool,
    /// Vertices of the real convex hull, counterclockwise from the least.
    pub hull_vertices: Vec<Point>,
}

impl DiskAnalysis {
    pub fn axis_parallel_segments(&self) -> impl Iterator<Item = &Segment> {
        self.maximal_segments.iter().filter(|s| s.orientation().is_axis_parallel())
    }

    pub fn slanted_segments(&self) -> impl Iterator<Item = &Segment> {
        self.maximal_segments.iter().filter(|s| s.orientation().is_slanted())
    }

    pub fn vertex(&self, p: &Point) -> Option<&Vertex> {
        self.vertices.iter().find(|v| &v.point == p)
    }
}

/// Vertices of the convex hull of a planar set, counterclockwise from the
/// least point, with collinear boundary points dropped.
pub fn convex_hull(points: &PointSet) -> Vec<Point> {
    let pts: Vec<(i64, i64)> = points.iter().map(|p| (p.coord(0), p.coord(1))).collect();
    if pts.len() <= 2 {
        return points.iter().cloned().collect();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().map(|(x, y)| Point::new(vec![x, y])).collect()
}

/// Splits a closed curve into maximal runs of equal step direction.
/// Returns the segments and the curve index at which each one starts.
pub fn maximal_segments(curve: &ClosedCurve) -> Vec<(usize, Segment)> {
    let m = curve.len();
    let dirs: Vec<usize> = (0..m).map(|i| curve.step_direction(i)).collect();
    let Some(first) = (0..m).find(|&i| dirs[(i + m - 1) % m] != dirs[i]) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut i = first;
    loop {
        let d = dirs[i];
        let mut pts = vec![curve.points()[i].clone()];
        let start = i;
        while dirs[i] == d {
            i = (i + 1) % m;
            pts.push(curve.points()[i].clone());
            if i == first {
                break;
            }
        }
        out.push((start, Segment::from_walk(pts, d)));
        if i == first {
            break;
        }
    }
    out
}

/// Which way round the curve runs, and the directions strictly inside the
/// interior angle at curve index `i`.
fn wedge(curve: &ClosedCurve, ccw: bool, i: usize) -> (u32, Vec<usize>) {
    let m = curve.len();
    let fwd = curve.step_direction(i);
    let back = (curve.step_direction((i + m - 1) % m) + 4) % 8;
    let (from, k) = if ccw {
        (fwd, (back + 8 - fwd) % 8)
    } else {
        (back, (fwd + 8 - back) % 8)
    };
    (k as u32 * 45, (1..k).map(|j| (from + j) % 8).collect())
}

/// Analyzes `d` against one specific bounding curve.
pub fn analyze_with_curve(d: &PointSet, curve: &ClosedCurve) -> Result<DiskAnalysis> {
    require_planar(d)?;
    if !is_bounding_curve(curve, d) {
        return Err(Error::NotADisk("the curve does not bound the set".into()));
    }
    let curve = curve.as_c2();
    let interior = interior_of(&curve).unwrap_or_default();
    let ccw = curve.signed_area2() > 0;
    let segs = maximal_segments(&curve);
    let mut vertices = Vec::new();
    let mut failures = Vec::new();
    for (k, (start, seg)) in segs.iter().enumerate() {
        let prev = &segs[(k + segs.len() - 1) % segs.len()].1;
        let (angle, inside) = wedge(&curve, ccw, *start);
        let p = seg.points()[0].clone();
        let ok = match angle {
            90 if seg.orientation().is_axis_parallel() => {
                (0..8).filter(|&d| is_diagonal(d)).any(|d| interior.contains(&step(&p, d)))
            }
            90 => (0..8).filter(|&d| !is_diagonal(d)).any(|d| interior.contains(&step(&p, d))),
            135 => inside.iter().all(|&dir| d.contains(&step(&p, dir))),
            _ => true,
        };
        if !ok {
            let rule = if angle == 90 {
                ThicknessRule::RightAngle
            } else {
                ThicknessRule::ObtuseAngle
            };
            failures.push(ThicknessFailure { point: p.clone(), rule });
        }
        vertices.push(Vertex {
            point: p,
            angle,
            incoming: prev.orientation(),
            outgoing: seg.orientation(),
        });
        if seg.orientation().is_slanted() {
            let dir = curve.step_direction(*start);
            let normal = if ccw { (dir + 2) % 8 } else { (dir + 6) % 8 };
            for q in &seg.points()[1..seg.len() - 1] {
                if !d.contains(&step(q, normal)) {
                    failures.push(ThicknessFailure {
                        point: q.clone(),
                        rule: ThicknessRule::Slant,
                    });
                }
            }
        }
    }
    let hull = convex_hull(d);
    let corner_set: PointSet = vertices.iter().map(|v| v.point.clone()).collect();
    let convex = corner_set == hull.iter().cloned().collect::<PointSet>();
    Ok(DiskAnalysis {
        points: d.clone(),
        curve,
        curve_source: CurveSource::Given,
        interior,
        maximal_segments: segs.into_iter().map(|(_, s)| s).collect(),
        vertices,
        thick: failures.is_empty(),
        thickness_failures: failures,
        convex,
        hull_vertices: hull,
    })
}

/// Analyzes a disk. Thickness and convexity only need some bounding curve,
/// so the traced curve is tried first and then its minimized form; the
/// report describes the first curve that is both thick and convex (or
/// failing that, thick; or failing that, the traced one), while `thick`
/// and `convex` say whether any tried curve qualifies.
pub fn analyze_disk(d: &PointSet) -> Result<DiskAnalysis> {
    let traced = trace_bounding_curve(d)?;
    let minimized = minimize_bounding_curve(&traced, d, false)?.curve;
    let mut a = analyze_with_curve(d, &traced)?;
    a.curve_source = CurveSource::Traced;
    if minimized == traced || (a.thick && a.convex) {
        return Ok(a);
    }
    let mut b = analyze_with_curve(d, &minimized)?;
    b.curve_source = CurveSource::Minimized;
    let (thick, convex) = (a.thick || b.thick, a.convex || b.convex);
    let mut chosen = if (b.thick && b.convex) || (b.thick && !a.thick) { b } else { a };
    chosen.thick = thick;
    chosen.convex = convex;
    Ok(chosen)
}

/// Digital convexity: a single point, a digital line segment, or a disk
/// whose curve corners are exactly the vertices of its convex hull.
pub fn is_digitally_convex(y: &PointSet) -> bool {
    if y.len() == 1 {
        return true;
    }
    let pts: Vec<Point> = y.iter().cloned().collect();
    if is_digital_segment(&pts).is_some() {
        return true;
    }
    analyze_disk(y).map(|a| a.convex).unwrap_or(false)
}
