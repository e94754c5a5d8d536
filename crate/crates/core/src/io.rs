//! Text formats for images and point sets, and ASCII rendering of planar
//! sets.
//!
//! A grid file has rows over `#` (in the set) and `.` (not in the set).
//! The top row has the largest `y`, the leftmost column is `x = 0`, and
//! the bottom-left cell is `(0, 0)`. A points file has one point per line
//! as comma-separated integers; blank lines and lines starting with `#`
//! are skipped.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{Adjacency, Factor, Point, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageFormat {
    Grid,
    Points,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Grid when the first nonblank line is made of `#` and `.` only, so a
/// grid with a bad character still parses as a grid and reports where.
pub fn detect_format(text: &str) -> ImageFormat {
    match text.lines().map(str::trim).find(|l| !l.is_empty()) {
        Some(l) if l.chars().all(|c| c == '#' || c == '.') => ImageFormat::Grid,
        _ => ImageFormat::Points,
    }
}

pub fn parse_grid(text: &str) -> Result<PointSet> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .skip_while(|(_, l)| l.is_empty())
        .collect();
    let last = lines.iter().rposition(|(_, l)| !l.is_empty());
    let Some(last) = last else {
        return Err(parse_err(1, 1, "empty grid"));
    };
    let rows = &lines[..=last];
    let mut set = PointSet::new();
    for (r, (line_no, row)) in rows.iter().enumerate() {
        let y = (rows.len() - 1 - r) as i64;
        for (col, ch) in row.chars().enumerate() {
            match ch {
                '#' => {
                    set.insert(Point::from([col as i64, y]));
                }
                '.' => {}
                c => return Err(parse_err(*line_no, col + 1, format!("unexpected character {c:?} in grid"))),
            }
        }
    }
    if set.is_empty() {
        return Err(parse_err(rows[0].0, 1, "grid has no '#' cells"));
    }
    Ok(set)
}

/// Points in file order, with the line each came from.
pub fn parse_points_with_lines(text: &str) -> Result<Vec<(usize, Point)>> {
    let mut out: Vec<(usize, Point)> = Vec::new();
    let mut seen: HashMap<Point, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut coords = Vec::new();
        let mut offset = 0;
        for field in raw.split(',') {
            let col = offset + 1 + (field.len() - field.trim_start().len());
            offset += field.len() + 1;
            let tok = field.trim();
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, col, format!("expected an integer, found {tok:?}")))?;
            coords.push(v);
        }
        if let Some((_, first)) = out.first() {
            if first.dim() != coords.len() {
                return Err(parse_err(
                    line_no,
                    1,
                    format!("expected {} coordinates, found {}", first.dim(), coords.len()),
                ));
            }
        }
        let p = Point::new(coords);
        if let Some(prev) = seen.insert(p.clone(), line_no) {
            return Err(parse_err(line_no, 1, format!("point {p} repeats line {prev}")));
        }
        out.push((line_no, p));
    }
    if out.is_empty() {
        return Err(parse_err(1, 1, "no points"));
    }
    Ok(out)
}

pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    Ok(parse_points_with_lines(text)?.into_iter().map(|(_, p)| p).collect())
}

/// Points of a file in either format. Grid points come out in sorted
/// order.
pub fn parse_image_points(text: &str) -> Result<Vec<Point>> {
    match detect_format(text) {
        ImageFormat::Grid => Ok(parse_grid(text)?.into_iter().collect()),
        ImageFormat::Points => parse_points(text),
    }
}

/// An edges file: one pair of 0-based indices into `points` per line,
/// separated by a comma or whitespace.
pub fn parse_edges(text: &str, points: &[Point]) -> Result<Adjacency> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = t.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        if toks.len() != 2 {
            return Err(parse_err(line_no, 1, "expected two point indices"));
        }
        let mut ends = [0usize; 2];
        for (k, tok) in toks.iter().enumerate() {
            let col = raw.find(tok).unwrap_or(0) + 1;
            let idx: usize = tok
                .parse()
                .map_err(|_| parse_err(line_no, col, format!("expected an index, found {tok:?}")))?;
            if idx >= points.len() {
                return Err(parse_err(line_no, col, format!("index {idx} out of range (0..{})", points.len())));
            }
            ends[k] = idx;
        }
        if ends[0] == ends[1] {
            return Err(parse_err(line_no, 1, "self-loop"));
        }
        edges.push((points[ends[0]].clone(), points[ends[1]].clone()));
    }
    Adjacency::explicit(edges)
}

fn parse_cu(s: &str) -> Option<usize> {
    s.trim().strip_prefix('c')?.parse().ok().filter(|&u| u > 0)
}

/// `c<u>`.
pub fn parse_cu_adjacency(s: &str) -> Result<Adjacency> {
    parse_cu(s)
        .map(Adjacency::Cu)
        .ok_or_else(|| Error::InvalidAdjacency(format!("expected c<u>, found {s:?}")))
}

/// `u;k1,k2,...` where each factor is `c<u>` on a line or `c<u>:<dim>`.
pub fn parse_np_adjacency(s: &str) -> Result<Adjacency> {
    let bad = || Error::InvalidAdjacency(format!("expected \"u;c1,c1\", found {s:?}"));
    let (u, rest) = s.split_once(';').ok_or_else(bad)?;
    let u: usize = u.trim().parse().map_err(|_| bad())?;
    let mut factors = Vec::new();
    for f in rest.split(',') {
        let (adj, dim) = match f.split_once(':') {
            Some((a, d)) => (a, d.trim().parse().map_err(|_| bad())?),
            None => (f, 1),
        };
        factors.push(Factor {
            dim,
            adjacency: Adjacency::Cu(parse_cu(adj).ok_or_else(bad)?),
        });
    }
    Ok(Adjacency::Np { u, factors })
}

/// One point per line, comma separated.
pub fn format_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> String {
    let mut s = String::new();
    for p in points {
        let c: Vec<String> = p.coords().iter().map(i64::to_string).collect();
        s.push_str(&c.join(","));
        s.push('\n');
    }
    s
}

/// ASCII picture of a planar set, in grid-file orientation. The window
/// spans from the origin (or the lowest coordinate, if negative) to the
/// largest coordinate. Set points print as `#`, overlay points as `@` when
/// in the set and `o` otherwise.
pub fn render_grid(set: &PointSet, overlay: Option<&PointSet>) -> Result<String> {
    let all: Vec<&Point> = set.iter().chain(overlay.into_iter().flatten()).collect();
    if all.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(p) = all.iter().find(|p| p.dim() != 2) {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let x0 = all.iter().map(|p| p.coord(0)).min().unwrap().min(0);
    let y0 = all.iter().map(|p| p.coord(1)).min().unwrap().min(0);
    let x1 = all.iter().map(|p| p.coord(0)).max().unwrap();
    let y1 = all.iter().map(|p| p.coord(1)).max().unwrap();
    let mut s = String::new();
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            let p = Point::from([x, y]);
            let marked = overlay.is_some_and(|o| o.contains(&p));
            s.push(match (set.contains(&p), marked) {
                (true, false) => '#',
                (true, true) => '@',
                (false, true) => 'o',
                (false, false) => '.',
            });
        }
        s.push('\n');
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::point_set;

    const DIAMOND: &str = ".#.\n###\n.#.\n";

    #[test]
    fn grid_orientation() {
        let s = parse_grid("#..\n##.\n").unwrap();
        assert_eq!(s, point_set([[0, 1], [0, 0], [1, 0]]));
        assert_eq!(parse_grid(DIAMOND).unwrap().len(), 5);
        assert_eq!(render_grid(&parse_grid(DIAMOND).unwrap(), None).unwrap(), DIAMOND);
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format(DIAMOND), ImageFormat::Grid);
        assert_eq!(detect_format("# comment\n0,0\n"), ImageFormat::Points);
        assert_eq!(detect_format(""), ImageFormat::Points);
    }

    #[test]
    fn points_round_trip() {
        let text = "# a path\n0, 0\n\n1,0\n2,0\n";
        let pts = parse_points(text).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(parse_points(&format_points(&pts)).unwrap(), pts);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_points("0,0\n1,x\n") {
            Err(Error::Parse { line: 2, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_points("0,0\n1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_points(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_grid("#.\n#x\n"), Err(Error::Parse { line: 2, column: 2, .. })));
        assert!(matches!(parse_points("0,0\n0,0\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn edges_and_adjacency_specs() {
        let pts = parse_points("0\n5\n9\n").unwrap();
        let adj = parse_edges("0 1\n1,2\n", &pts).unwrap();
        assert!(matches!(adj, Adjacency::Explicit(ref e) if e.len() == 2));
        assert!(parse_edges("0 3\n", &pts).is_err());
        assert_eq!(parse_cu_adjacency("c2").unwrap(), Adjacency::Cu(2));
        assert!(parse_cu_adjacency("c0").is_err());
        let np = parse_np_adjacency("1;c1,c1:2").unwrap();
        assert_eq!(np.to_string(), "NP1(c1,c1:2)");
    }

    #[test]
    fn overlay_rendering() {
        let s = parse_grid(DIAMOND).unwrap();
        let o = point_set([[1, 1], [3, 3]]);
        assert_eq!(render_grid(&s, Some(&o)).unwrap(), "...o\n.#..\n#@#.\n.#..\n");
        assert!(render_grid(&point_set([[0, 0, 0]]), None).is_err());
    }
}
