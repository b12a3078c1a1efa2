//! Serialization of images: plain PGM (P2) for rectangular domains, a
//! masked-grid text format for arbitrary domains, a JSON report, and the CSV
//! emitted by granulometry runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagram::{render, DotDiagram};
use crate::error::{MorphError, Result};
use crate::geometry::{pt2, PixelSet, Point};
use crate::image::Image;

fn parse_err(format: &'static str, line: usize, reason: impl Into<String>) -> MorphError {
    MorphError::FormatParse {
        format,
        line,
        reason: reason.into(),
    }
}

/// Parses a plain (ASCII, `P2`) PGM file. The image occupies the rectangle
/// `[0, w-1] x [0, h-1]`; the first raster row of the file is the top of the
/// image, i.e. second coordinate `h-1`. Returns the image and the declared
/// maximum gray value.
pub fn read_pgm(text: &str) -> Result<(Image, u32)> {
    // token stream with line tracking; '#' starts a comment to end of line
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        for tok in body.split_whitespace() {
            tokens.push((i + 1, tok));
        }
    }
    let mut it = tokens.into_iter();
    let mut next = |what: &str| {
        it.next()
            .ok_or_else(|| parse_err("pgm", 0, format!("unexpected end of file, expected {what}")))
    };
    let (line, magic) = next("magic number")?;
    if magic != "P2" {
        return Err(parse_err("pgm", line, format!("expected P2, got {magic:?}")));
    }
    let mut read_u64 = |what: &str| -> Result<(usize, u64)> {
        let (line, tok) = next(what)?;
        let v = tok
            .parse::<u64>()
            .map_err(|_| parse_err("pgm", line, format!("invalid {what}: {tok:?}")))?;
        Ok((line, v))
    };
    let (_, w) = read_u64("width")?;
    let (_, h) = read_u64("height")?;
    let (line, maxval) = read_u64("maxval")?;
    if w == 0 || h == 0 {
        return Err(parse_err("pgm", line, "image dimensions must be positive"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(parse_err("pgm", line, format!("maxval {maxval} out of range")));
    }
    let mut values = BTreeMap::new();
    for row in 0..h {
        for col in 0..w {
            let (line, v) = read_u64("pixel value")?;
            if v > maxval {
                return Err(parse_err(
                    "pgm",
                    line,
                    format!("pixel value {v} exceeds maxval {maxval}"),
                ));
            }
            values.insert(pt2(col as i64, (h - 1 - row) as i64), v as f64);
        }
    }
    if let Some((line, tok)) = it.next() {
        return Err(parse_err("pgm", line, format!("trailing token {tok:?}")));
    }
    let domain = PixelSet::rectangle(&pt2(0, 0), &pt2(w as i64 - 1, h as i64 - 1))?;
    Ok((Image::new(domain, values)?, maxval as u32))
}

/// Writes a plain PGM file. The domain must be a rectangle; coordinates are
/// shifted so its lower-left corner becomes `(0,0)`. Values must be integers
/// not exceeding `maxval`; pass `None` to use the largest value present
/// (minimum 1).
pub fn write_pgm(image: &Image, maxval: Option<u32>) -> Result<String> {
    let (lo, hi) = image
        .domain()
        .as_rectangle()
        .cloned()
        .ok_or_else(|| MorphError::NotRectangle("pgm requires a rectangular domain".into()))?;
    if image.dim() != 2 {
        return Err(MorphError::DimensionMismatch {
            expected: 2,
            got: image.dim(),
        });
    }
    let observed_max = image
        .values()
        .map(|(_, v)| v)
        .fold(0.0f64, f64::max)
        .ceil() as u32;
    let maxval = maxval.unwrap_or_else(|| observed_max.max(1));
    if observed_max > maxval {
        return Err(MorphError::NotRectangle(format!(
            "value {observed_max} exceeds requested maxval {maxval}"
        )));
    }
    let w = hi.coords()[0] - lo.coords()[0] + 1;
    let h = hi.coords()[1] - lo.coords()[1] + 1;
    let mut out = format!("P2\n{w} {h}\n{maxval}\n");
    for y in (lo.coords()[1]..=hi.coords()[1]).rev() {
        let row: Vec<String> = (lo.coords()[0]..=hi.coords()[0])
            .map(|x| {
                let v = image.value(&pt2(x, y)).expect("rectangle is total");
                format!("{}", v.round() as u64)
            })
            .collect();
        writeln!(out, "{}", row.join(" ")).expect("string write");
    }
    Ok(out)
}

/// Parses the masked-grid format: a dot diagram describing the domain, one
/// blank line, then one line of whitespace-separated values per diagram row
/// with `_` in the absent cells.
pub fn read_masked_grid(text: &str) -> Result<Image> {
    let lines: Vec<&str> = text.lines().collect();
    let split = lines
        .iter()
        .position(|l| l.trim().is_empty())
        .ok_or_else(|| parse_err("masked-grid", 1, "missing blank line between mask and values"))?;
    let mask_text = lines[..split].join("\n");
    let diagram = DotDiagram::parse(&mask_text)?;
    let (points, _) = diagram.to_points()?;
    let domain = PixelSet::from_set(points)?;

    let value_lines: Vec<(usize, &str)> = lines[split + 1..]
        .iter()
        .enumerate()
        .map(|(i, l)| (split + 2 + i, *l))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if value_lines.len() != split {
        return Err(parse_err(
            "masked-grid",
            split + 2,
            format!("expected {split} value rows, got {}", value_lines.len()),
        ));
    }
    let mask_rows: Vec<&str> = mask_text.lines().collect();
    let mut values = BTreeMap::new();
    for (r, row) in mask_rows.iter().enumerate() {
        let (lineno, vline) = value_lines[r];
        let tokens: Vec<&str> = vline.split_whitespace().collect();
        if tokens.len() != row.chars().count() {
            return Err(parse_err(
                "masked-grid",
                lineno,
                format!(
                    "expected {} entries, got {}",
                    row.chars().count(),
                    tokens.len()
                ),
            ));
        }
        for (c, (ch, tok)) in row.chars().zip(&tokens).enumerate() {
            let member = ch != '.';
            match (member, *tok) {
                (false, "_") => {}
                (false, other) => {
                    return Err(parse_err(
                        "masked-grid",
                        lineno,
                        format!("expected _ outside the mask, got {other:?}"),
                    ))
                }
                (true, "_") => {
                    return Err(parse_err(
                        "masked-grid",
                        lineno,
                        "missing value inside the mask",
                    ))
                }
                (true, tok) => {
                    let v: f64 = tok.parse().map_err(|_| {
                        parse_err("masked-grid", lineno, format!("invalid value {tok:?}"))
                    })?;
                    values.insert(cell_point(&domain, &mask_rows, r, c)?, v);
                }
            }
        }
    }
    Image::new(domain, values)
}

/// Maps a diagram cell to the point the diagram parser assigned to it.
fn cell_point(domain: &PixelSet, mask_rows: &[&str], r: usize, c: usize) -> Result<Point> {
    let nrows = mask_rows.len() as i64;
    // the parser anchors at the origin marker if present, else at cell (0, 0)
    // of the bottom row; reconstruct that anchor
    let mut origin_cell = None;
    for (rr, row) in mask_rows.iter().enumerate() {
        for (cc, ch) in row.chars().enumerate() {
            if ch == 'o' {
                origin_cell = Some(pt2(cc as i64, nrows - 1 - rr as i64));
            }
        }
    }
    let anchor = origin_cell.unwrap_or_else(|| pt2(0, 0));
    let p = pt2(c as i64, nrows - 1 - r as i64).sub(&anchor);
    if !domain.contains(&p) {
        return Err(MorphError::PointNotInDomain {
            point: p.to_string(),
        });
    }
    Ok(p)
}

/// Writes the masked-grid format; inverse of [`read_masked_grid`] up to
/// numeric formatting. `origin` marks one cell with `o` when it lies in the
/// domain; pass the domain's lower-left bound to keep plain `#` masks.
pub fn write_masked_grid(image: &Image) -> Result<String> {
    if image.dim() != 2 {
        return Err(MorphError::DimensionMismatch {
            expected: 2,
            got: image.dim(),
        });
    }
    let (lo, hi) = image.domain().bounds();
    // render the mask anchored so the bottom-left cell is (0,0): shift by lo
    let shifted = image.domain().points().translate(&lo.neg())?;
    let mask = render(&shifted, &pt2(0, 0))?;
    let mut out = String::new();
    // drop the origin marker: plain masks keep the format origin-free
    out.push_str(&mask.replace('o', "#"));
    out.push('\n');
    for y in (lo.coords()[1]..=hi.coords()[1]).rev() {
        let row: Vec<String> = (lo.coords()[0]..=hi.coords()[0])
            .map(|x| match image.value(&pt2(x, y)) {
                Some(v) => {
                    if v.fract() == 0.0 {
                        format!("{}", v as i64)
                    } else {
                        format!("{v}")
                    }
                }
                None => "_".into(),
            })
            .collect();
        writeln!(out, "{}", row.join(" ")).expect("string write");
    }
    Ok(out)
}

/// JSON-friendly snapshot of an image: its domain, all values, and the
/// derived zero set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ImageReport {
    pub domain: Vec<Point>,
    pub values: Vec<(Point, f64)>,
    pub zero_set: Vec<Point>,
}

impl From<&Image> for ImageReport {
    fn from(image: &Image) -> Self {
        ImageReport {
            domain: image.domain().iter().cloned().collect(),
            values: image.values().map(|(p, v)| (p.clone(), v)).collect(),
            zero_set: image.zero_set().iter().cloned().collect(),
        }
    }
}

/// CSV for a granulometric curve: header `step,zero_pixels`, one row per
/// sequence element.
pub fn granulometry_csv(curve: &[usize]) -> String {
    let mut out = String::from("step,zero_pixels\n");
    for (i, n) in curve.iter().enumerate() {
        writeln!(out, "{i},{n}").expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PixelSet;

    #[test]
    fn pgm_roundtrip() {
        let text = "P2\n3 2\n9\n1 2 3\n4 0 9\n";
        let (img, maxval) = read_pgm(text).unwrap();
        assert_eq!(maxval, 9);
        // first raster row is the top: y = 1
        assert_eq!(img.value(&pt2(0, 1)), Some(1.0));
        assert_eq!(img.value(&pt2(2, 1)), Some(3.0));
        assert_eq!(img.value(&pt2(1, 0)), Some(0.0));
        assert_eq!(write_pgm(&img, Some(9)).unwrap(), text);
        // maxval inferred from the data when not given
        assert!(write_pgm(&img, None).unwrap().starts_with("P2\n3 2\n9\n"));
    }

    #[test]
    fn pgm_accepts_comments_and_loose_whitespace() {
        let text = "P2 # plain\n# a comment line\n 2 2\n5\n1 2 3\n4";
        let (img, _) = read_pgm(text).unwrap();
        assert_eq!(img.value(&pt2(1, 0)), Some(4.0));
    }

    #[test]
    fn pgm_errors() {
        assert!(matches!(
            read_pgm("P5\n1 1\n1\n0"),
            Err(MorphError::FormatParse { format: "pgm", .. })
        ));
        assert!(read_pgm("P2\n2 1\n5\n1").is_err()); // truncated raster
        assert!(read_pgm("P2\n1 1\n5\n6").is_err()); // value above maxval
        assert!(read_pgm("P2\n1 1\n5\n1 7").is_err()); // trailing token

        let domain = PixelSet::from_points([pt2(0, 0), pt2(2, 0)]).unwrap();
        let img = Image::constant(domain, 1.0).unwrap();
        assert!(matches!(
            write_pgm(&img, None),
            Err(MorphError::NotRectangle(_))
        ));
    }

    #[test]
    fn masked_grid_roundtrip() {
        let text = "##.\n.##\n\n3 1 _\n_ 0 2\n";
        let img = read_masked_grid(text).unwrap();
        assert_eq!(img.domain().len(), 4);
        assert_eq!(img.value(&pt2(0, 1)), Some(3.0));
        assert_eq!(img.value(&pt2(1, 1)), Some(1.0));
        assert_eq!(img.value(&pt2(1, 0)), Some(0.0));
        assert_eq!(img.value(&pt2(2, 0)), Some(2.0));
        assert_eq!(write_masked_grid(&img).unwrap(), text);
    }

    #[test]
    fn masked_grid_errors() {
        // value where the mask has a hole
        assert!(read_masked_grid("#.\n\n1 2\n").is_err());
        // underscore inside the mask
        assert!(read_masked_grid("##\n\n1 _\n").is_err());
        // wrong number of value rows
        assert!(read_masked_grid("##\n##\n\n1 1\n").is_err());
        // no blank separator
        assert!(read_masked_grid("##\n1 1\n").is_err());
        // bad token
        assert!(read_masked_grid("##\n\n1 x\n").is_err());
    }

    #[test]
    fn image_report_lists_zero_set() {
        let domain = PixelSet::rectangle(&pt2(0, 0), &pt2(1, 0)).unwrap();
        let img = Image::from_fn(domain, |p| p.coords()[0] as f64).unwrap();
        let report = ImageReport::from(&img);
        assert_eq!(report.domain.len(), 2);
        assert_eq!(report.zero_set, vec![pt2(0, 0)]);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"zero_set\":[[0,0]]"));
    }

    #[test]
    fn csv_layout() {
        assert_eq!(granulometry_csv(&[28, 27, 25]), "step,zero_pixels\n0,28\n1,27\n2,25\n");
    }
}
