//! The dot-diagram text format for 2-d point sets.
//!
//! One character per cell: `.` absent, `#` member, `o` member that is the
//! origin. Rows run top to bottom with decreasing second coordinate, columns
//! left to right with increasing first coordinate. When no `o` marker is
//! present the bottom-left cell of the diagram anchors the coordinates at
//! `(0,0)`.

use crate::error::{MorphError, Result};
use crate::geometry::{pt2, PixelSet, Point, PointSet, StructuringElement};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cell {
    Absent,
    Member,
    OriginMember,
}

/// A parsed diagram: rectangular grid of cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DotDiagram {
    rows: Vec<Vec<Cell>>,
}

impl DotDiagram {
    pub fn parse(text: &str) -> Result<DotDiagram> {
        let lines: Vec<&str> = text.trim_end_matches('\n').split('\n').collect();
        let mut rows = Vec::with_capacity(lines.len());
        let mut width = None;
        for (i, line) in lines.iter().enumerate() {
            let lineno = i + 1;
            let mut row = Vec::with_capacity(line.len());
            for ch in line.chars() {
                row.push(match ch {
                    '.' => Cell::Absent,
                    '#' => Cell::Member,
                    'o' => Cell::OriginMember,
                    other => {
                        return Err(MorphError::DiagramParse {
                            line: lineno,
                            reason: format!("unexpected character {other:?}"),
                        })
                    }
                });
            }
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(MorphError::DiagramParse {
                        line: lineno,
                        reason: format!("ragged row: expected width {w}, got {}", row.len()),
                    })
                }
                _ => {}
            }
            rows.push(row);
        }
        if rows.iter().all(|r| r.iter().all(|&c| c == Cell::Absent)) {
            return Err(MorphError::DiagramParse {
                line: 1,
                reason: "diagram has no member cells".into(),
            });
        }
        Ok(DotDiagram { rows })
    }

    /// Members in anchored coordinates plus the origin flag.
    pub fn to_points(&self) -> Result<(PointSet, bool)> {
        let nrows = self.rows.len() as i64;
        let mut origin_cell: Option<Point> = None;
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &cell) in row.iter().enumerate() {
                if cell == Cell::OriginMember {
                    if origin_cell.is_some() {
                        return Err(MorphError::DiagramMultipleOrigins);
                    }
                    origin_cell = Some(pt2(c as i64, nrows - 1 - r as i64));
                }
            }
        }
        let anchor = origin_cell.clone().unwrap_or_else(|| pt2(0, 0));
        let mut points = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &cell) in row.iter().enumerate() {
                if cell != Cell::Absent {
                    points.push(pt2(c as i64, nrows - 1 - r as i64).sub(&anchor));
                }
            }
        }
        Ok((PointSet::from_points(points)?, origin_cell.is_some()))
    }
}

/// Parses a diagram into a raw point set; `bool` reports whether an origin
/// marker was present.
pub fn parse_point_set(text: &str) -> Result<(PointSet, bool)> {
    DotDiagram::parse(text)?.to_points()
}

/// Parses a diagram that must carry exactly one `o` marker.
pub fn parse_structuring_element(text: &str) -> Result<StructuringElement> {
    let (points, has_origin) = parse_point_set(text)?;
    if !has_origin {
        return Err(MorphError::DiagramNoOrigin);
    }
    StructuringElement::new(points)
}

/// Parses a diagram into a pixel set; an origin marker is allowed but not
/// required.
pub fn parse_pixel_set(text: &str) -> Result<PixelSet> {
    let (points, _) = parse_point_set(text)?;
    PixelSet::from_set(points)
}

/// Renders a 2-d point set with the given origin. The origin is marked `o`
/// when it is a member; bounding box covers the members and the origin.
pub fn render(points: &PointSet, origin: &Point) -> Result<String> {
    if points.dim() != 2 || origin.dim() != 2 {
        return Err(MorphError::DimensionMismatch {
            expected: 2,
            got: if points.dim() != 2 {
                points.dim()
            } else {
                origin.dim()
            },
        });
    }
    if points.is_empty() {
        return Err(MorphError::EmptySet);
    }
    let mut lo = origin.coords().to_vec();
    let mut hi = lo.clone();
    for p in points.iter() {
        for i in 0..2 {
            lo[i] = lo[i].min(p.coords()[i]);
            hi[i] = hi[i].max(p.coords()[i]);
        }
    }
    let mut out = String::new();
    for y in (lo[1]..=hi[1]).rev() {
        for x in lo[0]..=hi[0] {
            let p = pt2(x, y);
            out.push(if p == *origin && points.contains(&p) {
                'o'
            } else if points.contains(&p) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    Ok(out)
}

/// Renders a structuring element with its origin marker.
pub fn render_structuring_element(se: &StructuringElement) -> Result<String> {
    render(se.points(), &Point::origin(se.dim()))
}
