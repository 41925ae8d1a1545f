//! Curve serialization.
//!
//! Two formats are supported:
//!
//! * JSON: `{"dim": d, "vertices": [[x, y, ...], ...]}`
//! * CSV: one vertex per row, coordinates comma-separated, no header
//!
//! Parsing collapses consecutive duplicate vertices (reported as warnings)
//! and rejects closed curves, i.e. inputs whose first and last vertex
//! coincide after collapsing.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::geom::{Point, PolyCurve};
use crate::{Error, Result};

/// A parsed curve together with any parse-time warnings (currently only
/// duplicate-vertex collapses).
#[derive(Clone, Debug)]
pub struct ParsedCurve {
    pub curve: PolyCurve,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    dim: usize,
    vertices: Vec<Vec<f64>>,
}

fn finish(raw: Vec<Vec<f64>>, dim_hint: Option<usize>) -> Result<ParsedCurve> {
    if raw.is_empty() {
        return Err(Error::Parse("no vertices in input".into()));
    }
    let dim = dim_hint.unwrap_or(raw[0].len());
    for (i, v) in raw.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::Parse(format!(
                "vertex {} has {} coordinates, expected {}",
                i + 1,
                v.len(),
                dim
            )));
        }
        if v.iter().any(|c| !c.is_finite()) {
            return Err(Error::Parse(format!(
                "vertex {} has a non-finite coordinate",
                i + 1
            )));
        }
    }

    let mut warnings = Vec::new();
    let mut verts: Vec<Vec<f64>> = Vec::with_capacity(raw.len());
    for (i, v) in raw.into_iter().enumerate() {
        if verts.last().is_some_and(|last| *last == v) {
            warnings.push(format!(
                "vertex {} duplicates its predecessor and was collapsed",
                i + 1
            ));
        } else {
            verts.push(v);
        }
    }
    if verts.len() < 2 {
        return Err(Error::Parse(
            "curve must have at least 2 distinct vertices".into(),
        ));
    }
    if verts.first() == verts.last() {
        return Err(Error::Parse(
            "closed curves (first vertex equals last vertex) are not supported".into(),
        ));
    }
    let curve = PolyCurve::new(verts.into_iter().map(Point).collect())?;
    Ok(ParsedCurve { curve, warnings })
}

/// Parses a curve from its JSON representation.
pub fn curve_from_json_str(s: &str) -> Result<ParsedCurve> {
    let cj: CurveJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad curve JSON: {e}")))?;
    if cj.dim == 0 {
        return Err(Error::Parse("dim must be >= 1".into()));
    }
    finish(cj.vertices, Some(cj.dim))
}

/// Serializes a curve to its JSON representation.
pub fn curve_to_json_string(c: &PolyCurve) -> String {
    let cj = CurveJson {
        dim: c.dim(),
        vertices: c.vertices().iter().map(|p| p.0.clone()).collect(),
    };
    serde_json::to_string_pretty(&cj).expect("curve JSON serialization cannot fail")
}

/// Parses a curve from CSV text: one vertex per row, no header.
pub fn curve_from_csv_str(s: &str) -> Result<ParsedCurve> {
    let mut raw = Vec::new();
    for (lineno, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let coords: Result<Vec<f64>> = line
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|e| {
                    Error::Parse(format!("line {}: bad number {tok:?}: {e}", lineno + 1))
                })
            })
            .collect();
        raw.push(coords?);
    }
    finish(raw, None)
}

/// Serializes a curve to CSV text: one vertex per row.
pub fn curve_to_csv_string(c: &PolyCurve) -> String {
    let mut out = String::new();
    for v in c.vertices() {
        let row: Vec<String> = v.0.iter().map(|x| format!("{x}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Loads a curve from a file, dispatching on the `.json` / `.csv`
/// extension.
pub fn load_curve(path: &Path) -> Result<ParsedCurve> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => curve_from_json_str(&text),
        Some("csv") => curve_from_csv_str(&text),
        other => Err(Error::Parse(format!(
            "unsupported curve file extension {:?} (expected .json or .csv)",
            other.unwrap_or("")
        ))),
    }
}

/// Writes a curve to a file, dispatching on the `.json` / `.csv`
/// extension.
pub fn save_curve(path: &Path, c: &PolyCurve) -> Result<()> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => curve_to_json_string(c),
        Some("csv") => curve_to_csv_string(c),
        other => {
            return Err(Error::Parse(format!(
                "unsupported curve file extension {:?} (expected .json or .csv)",
                other.unwrap_or("")
            )))
        }
    };
    std::fs::write(path, text)?;
    Ok(())
}
