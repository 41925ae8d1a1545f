//! JSON schema for gadget curves and solve reports.
//!
//! Exact rationals are stored as `"num/den"` strings (plain integers when
//! the denominator is 1), with nearest-double renderings alongside for
//! plotting and eyeballing.  `gadget solve` treats the instance and scale
//! parameters as the source of truth: it regenerates the curve and
//! requires the stored vertices to match exactly, so a hand-edited vertex
//! cannot smuggle a different geometry past the solver.

use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use minlink::exact::Rat;
use minlink::gadget::{
    generate_gadget, verify_simplification, GadgetCurve, GadgetParams, HoleChoice, HolePath,
    SubsetSumInstance,
};
use minlink::{Error, Result};

/// Parse a rational from `"N"` or `"N/D"` decimal strings.
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::Parse(format!("bad rational {s:?} (want \"N\" or \"N/D\"): {e}")))
}

#[derive(Serialize, Deserialize)]
pub struct GadgetVertex {
    /// Exact coordinates, `"num/den"`.
    pub x: String,
    pub y: String,
    /// Nearest-double renderings.
    pub xf: f64,
    pub yf: f64,
}

#[derive(Serialize, Deserialize)]
pub struct GadgetLevelJson {
    pub label: String,
    /// 0-based inclusive vertex span of the level's subcurve.
    pub first: usize,
    pub last: usize,
    /// Exact y-coordinate of the level's base line.
    pub y: String,
}

#[derive(Serialize, Deserialize)]
pub struct GadgetFile {
    /// The Subset-Sum elements, in encoding order.
    pub set: Vec<u64>,
    /// The target sum.
    pub target: u64,
    /// Spike scale, exact.
    pub gamma: String,
    /// Hole-opening offset, exact (0 = degenerate point tangencies).
    pub zeta: String,
    /// Tube radius `max a_i`, exact.
    pub delta: String,
    /// Link budget of the reduction: `2n - 1`.
    pub k: usize,
    pub vertex_count: usize,
    pub vertices: Vec<GadgetVertex>,
    pub levels: Vec<GadgetLevelJson>,
    /// Hole x-coordinates per inter-level gap, exact, left-to-right.
    pub holes: Vec<Vec<String>>,
}

pub fn to_file(curve: &GadgetCurve) -> GadgetFile {
    GadgetFile {
        set: curve.inst.a.clone(),
        target: curve.inst.b,
        gamma: curve.params.gamma.to_string(),
        zeta: curve.params.zeta.to_string(),
        delta: curve.delta.to_string(),
        k: curve.k,
        vertex_count: curve.vertices.len(),
        vertices: curve
            .vertices
            .iter()
            .map(|p| {
                let (xf, yf) = p.to_f64();
                GadgetVertex { x: p.x.to_string(), y: p.y.to_string(), xf, yf }
            })
            .collect(),
        levels: curve
            .levels
            .iter()
            .map(|l| GadgetLevelJson {
                label: l.kind.label(),
                first: l.first,
                last: l.last,
                y: l.y.to_string(),
            })
            .collect(),
        holes: curve
            .holes
            .iter()
            .map(|gap| gap.iter().map(Rat::to_string).collect())
            .collect(),
    }
}

/// Rebuild the gadget from the stored instance and parameters, and check
/// the stored vertex list against the regeneration, coordinate by exact
/// coordinate.
pub fn from_file(file: &GadgetFile) -> Result<GadgetCurve> {
    let inst = SubsetSumInstance::new(file.set.clone(), file.target)?;
    let params = GadgetParams {
        gamma: parse_rat(&file.gamma)?,
        zeta: parse_rat(&file.zeta)?,
    };
    let curve = generate_gadget(&inst, &params)?;
    if file.vertices.len() != curve.vertices.len() {
        return Err(Error::Parse(format!(
            "gadget file stores {} vertices but the instance generates {}",
            file.vertices.len(),
            curve.vertices.len()
        )));
    }
    for (i, (stored, gen)) in file.vertices.iter().zip(&curve.vertices).enumerate() {
        let sx = parse_rat(&stored.x)?;
        let sy = parse_rat(&stored.y)?;
        if sx != gen.x || sy != gen.y {
            return Err(Error::Parse(format!(
                "gadget file vertex {i} = ({}, {}) does not match the curve generated \
                 from its instance, ({}, {}); the file was edited or corrupted",
                stored.x, stored.y, gen.x, gen.y
            )));
        }
    }
    Ok(curve)
}

#[derive(Serialize)]
pub struct PathVertexJson {
    pub x: String,
    pub y: String,
    pub xf: f64,
    pub yf: f64,
    /// 0-based index of the host level.
    pub level: usize,
}

#[derive(Serialize)]
pub struct GadgetSolveReport {
    pub set: Vec<u64>,
    pub target: u64,
    pub link_budget: usize,
    pub solvable: bool,
    /// The chosen subset (element values in encoding order).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<u64>>,
    /// Per-gap hole choices: "left" / "right" / "only".
    #[serde(skip_serializing_if = "Option::is_none")]
    pub choices: Option<Vec<String>>,
    /// The simplification's vertices, exact, one per level.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<PathVertexJson>>,
    /// Outcome of the exact-rational geometric verification of the path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    pub wall_time_ms: f64,
}

pub fn solve_report(
    curve: &GadgetCurve,
    solution: Option<&HolePath>,
    wall: Duration,
) -> GadgetSolveReport {
    let mut report = GadgetSolveReport {
        set: curve.inst.a.clone(),
        target: curve.inst.b,
        link_budget: curve.k,
        solvable: solution.is_some(),
        subset: None,
        choices: None,
        path: None,
        verified: None,
        wall_time_ms: wall.as_secs_f64() * 1e3,
    };
    if let Some(path) = solution {
        report.subset = Some(path.chosen_values(&curve.inst));
        report.choices = Some(
            path.choices
                .iter()
                .map(|c| {
                    match c {
                        HoleChoice::Only => "only",
                        HoleChoice::Left => "left",
                        HoleChoice::Right => "right",
                    }
                    .to_string()
                })
                .collect(),
        );
        report.path = Some(
            path.vertices
                .iter()
                .map(|(p, level)| {
                    let (xf, yf) = p.to_f64();
                    PathVertexJson {
                        x: p.x.to_string(),
                        y: p.y.to_string(),
                        xf,
                        yf,
                        level: *level,
                    }
                })
                .collect(),
        );
        report.verified = Some(verify_simplification(curve, path).ok);
    }
    report
}
