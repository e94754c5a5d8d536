use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Point, PointSet};

/// The eight unit steps of the plane, counterclockwise from east. The index
/// times 45 is the direction's angle in degrees.
pub const DIRECTIONS: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

/// Index into [`DIRECTIONS`] of the step from `a` to `b`, if it is one.
pub fn direction_between(a: &Point, b: &Point) -> Option<usize> {
    let d = (b.coord(0) - a.coord(0), b.coord(1) - a.coord(1));
    DIRECTIONS.iter().position(|&s| s == d)
}

pub fn step(p: &Point, dir: usize) -> Point {
    let (dx, dy) = DIRECTIONS[dir % 8];
    Point::new(vec![p.coord(0) + dx, p.coord(1) + dy])
}

pub fn is_diagonal(dir: usize) -> bool {
    dir % 2 == 1
}

pub(crate) fn require_planar<'a>(pts: impl IntoIterator<Item = &'a Point>) -> Result<()> {
    for p in pts {
        if p.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.dim(),
            });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Horizontal,
    Vertical,
    /// Slope +1.
    SlantedUp,
    /// Slope -1.
    SlantedDown,
}

impl Orientation {
    pub fn of_direction(dir: usize) -> Orientation {
        match dir % 4 {
            0 => Orientation::Horizontal,
            1 => Orientation::SlantedUp,
            2 => Orientation::Vertical,
            _ => Orientation::SlantedDown,
        }
    }

    pub fn is_slanted(self) -> bool {
        matches!(self, Orientation::SlantedUp | Orientation::SlantedDown)
    }

    pub fn is_axis_parallel(self) -> bool {
        !self.is_slanted()
    }
}

/// A digital line segment: at least two collinear lattice points, each
/// c2-adjacent to the next, along an axis or a diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    points: Vec<Point>,
    orientation: Orientation,
}

impl Segment {
    /// Points in walking order from one endpoint to the other.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn endpoints(&self) -> (&Point, &Point) {
        (&self.points[0], self.points.last().unwrap())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_set(&self) -> PointSet {
        self.points.iter().cloned().collect()
    }

    /// Builds a segment from points already in walking order. Used by curve
    /// decomposition, where the order follows the curve.
    pub(crate) fn from_walk(points: Vec<Point>, dir: usize) -> Segment {
        Segment {
            points,
            orientation: Orientation::of_direction(dir),
        }
    }
}

/// Recognizes a set of planar points as a digital line segment. Returns
/// `None` for fewer than two distinct points, for gaps, and for any slope
/// other than 0, infinity or ±1.
pub fn is_digital_segment(pts: &[Point]) -> Option<Segment> {
    if require_planar(pts).is_err() {
        return None;
    }
    let mut sorted: Vec<Point> = pts.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() < 2 {
        return None;
    }
    let dir = direction_between(&sorted[0], &sorted[1])?;
    if sorted.windows(2).any(|w| direction_between(&w[0], &w[1]) != Some(dir)) {
        return None;
    }
    Some(Segment {
        points: sorted,
        orientation: Orientation::of_direction(dir),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[[i64; 2]]) -> Vec<Point> {
        v.iter().map(|&p| Point::from(p)).collect()
    }

    #[test]
    fn recognizes_the_four_orientations() {
        let h = is_digital_segment(&pts(&[[2, 0], [0, 0], [1, 0]])).unwrap();
        assert_eq!(h.orientation(), Orientation::Horizontal);
        assert_eq!(h.endpoints(), (&Point::from([0, 0]), &Point::from([2, 0])));
        let up = is_digital_segment(&pts(&[[0, 0], [1, 1], [2, 2]])).unwrap();
        assert_eq!(up.orientation(), Orientation::SlantedUp);
        let down = is_digital_segment(&pts(&[[0, 2], [1, 1], [2, 0]])).unwrap();
        assert_eq!(down.orientation(), Orientation::SlantedDown);
        let v = is_digital_segment(&pts(&[[3, 1], [3, 2]])).unwrap();
        assert_eq!(v.orientation(), Orientation::Vertical);
    }

    #[test]
    fn rejects_other_sets() {
        assert!(is_digital_segment(&pts(&[[0, 0], [1, 2]])).is_none());
        assert!(is_digital_segment(&pts(&[[0, 0], [2, 0]])).is_none());
        assert!(is_digital_segment(&pts(&[[0, 0], [1, 0], [2, 1]])).is_none());
        assert!(is_digital_segment(&pts(&[[0, 0]])).is_none());
        assert!(is_digital_segment(&[Point::from(1), Point::from(2)]).is_none());
    }

    #[test]
    fn directions_round_trip() {
        let o = Point::from([0, 0]);
        for d in 0..8 {
            assert_eq!(direction_between(&o, &step(&o, d)), Some(d));
        }
    }
}
