//! Text formats for point sets and bracket families.
//!
//! Point-set file: first line `s N`, then N rows of s coordinates.
//! Bracket file: first line `s M`, then M rows of 2s coordinates
//! (lower corner, then upper corner).
//!
//! Coordinates are written with 17 significant digits so a read-back
//! reproduces the exact doubles. Lines starting with `#` are comments;
//! blank lines are ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::covers::Bracket;
use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

/// Data lines with their 1-based physical line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line_no: usize, line: &str, what: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
        return Err(parse_err(
            line_no,
            format!("header must be exactly two integers: dimension and {what}"),
        ));
    };
    let dim: usize = a
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad dimension {a:?}")))?;
    let count: usize = b
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad {what} {b:?}")))?;
    Ok((dim, count))
}

fn parse_row(line_no: usize, line: &str, expected: usize) -> Result<Vec<f64>> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != expected {
        return Err(parse_err(
            line_no,
            format!("expected {expected} coordinates, found {}", tokens.len()),
        ));
    }
    tokens
        .iter()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| parse_err(line_no, format!("bad coordinate {t:?}")))
        })
        .collect()
}

fn point_from_row(line_no: usize, coords: Vec<f64>) -> Result<Point> {
    Point::new(coords).map_err(|e| parse_err(line_no, e))
}

/// Parses the point-set format from a string.
pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input, expected `s N` header"))?;
    let (dim, n) = parse_header(line_no, header, "point count")?;
    let mut points = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if points.len() == n {
            return Err(parse_err(line_no, format!("more than {n} data rows")));
        }
        let coords = parse_row(line_no, line, dim)?;
        points.push(point_from_row(line_no, coords)?);
    }
    if points.len() != n {
        return Err(parse_err(
            0,
            format!("header promised {n} points, file has {}", points.len()),
        ));
    }
    PointSet::new(dim, points).map_err(|e| parse_err(0, e))
}

fn push_coords(out: &mut String, coords: &[f64]) {
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{c:.16e}");
    }
    out.push('\n');
}

/// Serializes a point set in the exact-round-trip text format.
pub fn format_point_set(ps: &PointSet) -> String {
    let mut out = format!("{} {}\n", ps.dim(), ps.len());
    for p in ps.points() {
        push_coords(&mut out, p.coords());
    }
    out
}

pub fn read_point_set(path: &Path) -> Result<PointSet> {
    parse_point_set(&fs::read_to_string(path)?)
}

pub fn write_point_set(path: &Path, ps: &PointSet) -> Result<()> {
    Ok(fs::write(path, format_point_set(ps))?)
}

/// Serializes brackets: header `s M`, rows of lower then upper coordinates.
pub fn format_brackets(dim: usize, brackets: &[Bracket]) -> String {
    let mut out = format!("{} {}\n", dim, brackets.len());
    for b in brackets {
        let mut row: Vec<f64> = b.lower.coords().to_vec();
        row.extend_from_slice(b.upper.coords());
        push_coords(&mut out, &row);
    }
    out
}

/// Parses a bracket file; returns the dimension and the brackets.
pub fn parse_brackets(text: &str) -> Result<(usize, Vec<Bracket>)> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input, expected `s M` header"))?;
    let (dim, m) = parse_header(line_no, header, "bracket count")?;
    if dim == 0 {
        return Err(parse_err(line_no, "dimension must be at least 1"));
    }
    let mut brackets = Vec::with_capacity(m);
    for (line_no, line) in lines {
        if brackets.len() == m {
            return Err(parse_err(line_no, format!("more than {m} data rows")));
        }
        let row = parse_row(line_no, line, 2 * dim)?;
        let lower = point_from_row(line_no, row[..dim].to_vec())?;
        let upper = point_from_row(line_no, row[dim..].to_vec())?;
        if !crate::geom::leq(lower.coords(), upper.coords()) {
            return Err(parse_err(line_no, "bracket lower corner exceeds upper"));
        }
        brackets.push(Bracket { lower, upper });
    }
    if brackets.len() != m {
        return Err(parse_err(
            0,
            format!("header promised {m} brackets, file has {}", brackets.len()),
        ));
    }
    Ok((dim, brackets))
}

pub fn write_brackets(path: &Path, dim: usize, brackets: &[Bracket]) -> Result<()> {
    Ok(fs::write(path, format_brackets(dim, brackets))?)
}

pub fn read_brackets(path: &Path) -> Result<(usize, Vec<Bracket>)> {
    parse_brackets(&fs::read_to_string(path)?)
}
