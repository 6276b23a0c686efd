//! Plain-text point-set files.
//!
//! ```text
//! # comment
//! field rational        (or `field gf:<p>`)
//! dim 2
//! point 0 1/2
//! point 1 -3
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use almostcover::{FieldSpec, Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

pub fn parse_point_set(text: &str) -> Result<PointSet, ParseError> {
    let mut field: Option<FieldSpec> = None;
    let mut dim: Option<usize> = None;
    let mut points = Vec::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().expect("nonempty line");
        let rest: Vec<&str> = words.collect();
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(err(line_no, "duplicate `field` line"));
                }
                let [name] = rest[..] else {
                    return Err(err(line_no, "expected `field rational` or `field gf:<p>`"));
                };
                field = Some(name.parse().map_err(|e: almostcover::Error| err(line_no, e.to_string()))?);
            }
            "dim" => {
                if dim.is_some() {
                    return Err(err(line_no, "duplicate `dim` line"));
                }
                let n = match rest[..] {
                    [n] => n.parse::<usize>().ok().filter(|&n| n > 0),
                    _ => None,
                };
                dim = Some(n.ok_or_else(|| err(line_no, "expected `dim <n>` with n >= 1"))?);
            }
            "point" => {
                let f = field.ok_or_else(|| err(line_no, "`point` before `field`"))?;
                let n = dim.ok_or_else(|| err(line_no, "`point` before `dim`"))?;
                if rest.len() != n {
                    return Err(err(line_no, format!("expected {n} coordinates, found {}", rest.len())));
                }
                let coords = rest
                    .iter()
                    .map(|c| f.parse_scalar(c))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| err(line_no, e.to_string()))?;
                let p = Point::new(coords);
                if let Some(first) = seen.insert(p.to_string(), line_no) {
                    return Err(err(line_no, format!("duplicate point {p} (first at line {first})")));
                }
                points.push(p);
            }
            other => return Err(err(line_no, format!("unknown keyword `{other}`"))),
        }
    }
    let field = field.ok_or_else(|| err(0, "missing `field` line"))?;
    let dim = dim.ok_or_else(|| err(0, "missing `dim` line"))?;
    PointSet::new(field, dim, points).map_err(|e| err(0, e.to_string()))
}

/// Canonical text form; `parse_point_set(&write_point_set(s))` reproduces `s`.
pub fn write_point_set(set: &PointSet) -> String {
    let mut out = format!("field {}\ndim {}\n", set.field(), set.dim());
    for p in set.points() {
        out.push_str("point");
        for c in p.coords() {
            write!(out, " {c}").expect("write to string");
        }
        out.push('\n');
    }
    out
}
