//! Freezing sets read off from the geometry of an image.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, Point, PointSet};
use crate::plane::curve::{fmt_points, minimize_bounding_curve, trace_bounding_curve, ClosedCurve};
use crate::plane::disk::{analyze_disk, analyze_with_curve, DiskAnalysis, ThicknessFailure};
use crate::plane::segment::require_planar;

/// A constructed set with the analysis it was read from.
#[derive(Clone, Debug, Serialize)]
pub struct FreezingConstruction {
    pub set: PointSet,
    pub analysis: DiskAnalysis,
    /// Whether the bounding curve's minimality was taken on trust rather
    /// than certified by exhaustive search.
    pub assumed_minimal: bool,
}

/// Bd_1(X), freezing for every c_u.
pub fn construct_freezing_bd1(x: &DigitalImage) -> Result<PointSet> {
    x.boundary(1)
}

/// The 2^n corners of a box image with every side of length at least 1.
pub fn construct_corner_freezing(x: &DigitalImage) -> Result<PointSet> {
    if !x.is_lattice() {
        return Err(Error::AbstractImage);
    }
    let n = x.dimension();
    let lo: Vec<i64> = (0..n).map(|i| x.points().iter().map(|p| p.coord(i)).min().unwrap()).collect();
    let hi: Vec<i64> = (0..n).map(|i| x.points().iter().map(|p| p.coord(i)).max().unwrap()).collect();
    let volume: i64 = lo.iter().zip(&hi).map(|(a, b)| b - a + 1).product();
    if volume != x.len() as i64 {
        return Err(Error::Hypothesis("the image is not a box".into()));
    }
    if lo.iter().zip(&hi).any(|(a, b)| a == b) {
        return Err(Error::Hypothesis("every side of the box needs length at least 1".into()));
    }
    let mut corners = vec![Vec::new()];
    for i in 0..n {
        corners = corners
            .into_iter()
            .flat_map(|c: Vec<i64>| {
                [lo[i], hi[i]].map(|v| {
                    let mut c = c.clone();
                    c.push(v);
                    c
                })
            })
            .collect();
    }
    Ok(corners.into_iter().map(Point::new).collect())
}

fn require_thick_convex(a: &DiskAnalysis) -> Result<()> {
    if !a.thick {
        return Err(Error::Hypothesis(format!(
            "the disk is not thick: {}",
            describe_failures(&a.thickness_failures)
        )));
    }
    if !a.convex {
        return Err(Error::Hypothesis("the disk is not digitally convex".into()));
    }
    Ok(())
}

fn describe_failures(f: &[ThicknessFailure]) -> String {
    f.iter()
        .map(|t| format!("{} ({:?})", t.point, t.rule))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Endpoints of the maximal axis-parallel sides plus every point of the
/// slanted sides.
fn c1_set(a: &DiskAnalysis) -> PointSet {
    let mut s = PointSet::new();
    for seg in a.axis_parallel_segments() {
        let (p, q) = seg.endpoints();
        s.insert(p.clone());
        s.insert(q.clone());
    }
    for seg in a.slanted_segments() {
        s.extend(seg.points().iter().cloned());
    }
    s
}

/// Endpoints of the maximal slanted sides plus every point of the
/// axis-parallel sides.
fn c2_set(a: &DiskAnalysis) -> PointSet {
    let mut s = PointSet::new();
    for seg in a.slanted_segments() {
        let (p, q) = seg.endpoints();
        s.insert(p.clone());
        s.insert(q.clone());
    }
    for seg in a.axis_parallel_segments() {
        s.extend(seg.points().iter().cloned());
    }
    s
}

/// Minimal freezing set for a thick convex disk under c1.
pub fn construct_freezing_c1(d: &PointSet) -> Result<FreezingConstruction> {
    let analysis = analyze_disk(d)?;
    require_thick_convex(&analysis)?;
    Ok(FreezingConstruction {
        set: c1_set(&analysis),
        analysis,
        assumed_minimal: false,
    })
}

/// A minimal bounding curve of `d`: certified by exhaustive search, or,
/// with `assume_minimal`, the corner-shortcut result taken on trust.
pub fn minimal_bounding_curve(d: &PointSet, assume_minimal: bool) -> Result<ClosedCurve> {
    let traced = trace_bounding_curve(d)?;
    let m = minimize_bounding_curve(&traced, d, !assume_minimal)?;
    Ok(m.minimum.unwrap_or(m.curve))
}

/// Minimal freezing set for a thick convex disk under c2, read from a
/// minimal bounding curve.
pub fn construct_freezing_c2(d: &PointSet, assume_minimal: bool) -> Result<FreezingConstruction> {
    let overall = analyze_disk(d)?;
    require_thick_convex(&overall)?;
    let curve = minimal_bounding_curve(d, assume_minimal)?;
    let mut analysis = analyze_with_curve(d, &curve)?;
    analysis.thick = overall.thick;
    analysis.convex = overall.convex;
    Ok(FreezingConstruction {
        set: c2_set(&analysis),
        analysis,
        assumed_minimal: assume_minimal,
    })
}

fn union_set(x: &PointSet, disks: &[PointSet], per_disk: fn(&DiskAnalysis) -> PointSet) -> Result<PointSet> {
    require_planar(x)?;
    let mut covered = PointSet::new();
    let mut out = PointSet::new();
    for v in disks {
        if !v.is_subset(x) {
            return Err(Error::Hypothesis(format!("disk {} is not inside the image", fmt_points(v))));
        }
        let a = analyze_disk(v)?;
        require_thick_convex(&a)?;
        out.extend(per_disk(&a));
        covered.extend(v.iter().cloned());
    }
    out.extend(x.difference(&covered).cloned());
    Ok(out)
}

/// Freezing set for c1 on an image covered in part by thick convex disks:
/// the uncovered points plus each disk's c1 set.
pub fn construct_freezing_c1_union(x: &PointSet, disks: &[PointSet]) -> Result<PointSet> {
    union_set(x, disks, c1_set)
}

/// Freezing set for c2 on an image covered in part by thick convex disks:
/// the uncovered points plus each disk's c2 set.
pub fn construct_freezing_c2_union(x: &PointSet, disks: &[PointSet]) -> Result<PointSet> {
    union_set(x, disks, c2_set)
}

/// Points every freezing set (under c1 or c2) and every c1-cold set must
/// contain: vertices of a minimal bounding curve with a 90° angle between
/// axis-parallel sides at which the image is thick. A c2-cold set may miss
/// them, since each candidate image of such a corner is a c2-neighbor.
pub fn required_corners(x: &PointSet, assume_minimal: bool) -> Result<PointSet> {
    let curve = minimal_bounding_curve(x, assume_minimal)?;
    let a = analyze_with_curve(x, &curve)?;
    let failed: PointSet = a.thickness_failures.iter().map(|f| f.point.clone()).collect();
    Ok(a.vertices
        .iter()
        .filter(|v| v.angle == 90 && v.incoming.is_axis_parallel() && v.outgoing.is_axis_parallel())
        .filter(|v| !failed.contains(&v.point))
        .map(|v| v.point.clone())
        .collect())
}

/// Quick refutation of a candidate freezing set or c1-cold set: false when
/// it misses one of the [`required_corners`].
pub fn corner_necessity_check(x: &PointSet, a: &PointSet, assume_minimal: bool) -> Result<bool> {
    Ok(required_corners(x, assume_minimal)?.is_subset(a))
}
