//! Minimum-link simplification of polygonal curves under global distance
//! measures.
//!
//! Given a polygonal curve `P = <p_1, ..., p_n>` in `R^d` and a radius
//! `delta >= 0`, the solvers in this crate compute a polygonal curve `P'`
//! from `p_1` to `p_n` with as few links (edges) as possible whose distance
//! to the *whole* input curve is at most `delta`. The distance is global:
//! each candidate `P'` is compared against all of `P`, never edge-by-edge
//! against the chain of vertices it skips. Four variants are provided:
//!
//! * [`vr_frechet`] — vertices of `P'` must be vertices of `P`, in order;
//!   the measure is the continuous Frechet distance. Exact optimum via
//!   dynamic programming over a free-space surface.
//! * [`nonrestricted`] — vertices of `P'` may be arbitrary points of the
//!   ambient space; a lattice discretization of the `delta`-balls around
//!   input vertices yields a `(1 + eps)`-approximation using at most
//!   `2m + 1` links, where `m` is the unrestricted optimum.
//! * [`hausdorff`] — vertices of `P'` must be vertices of `P`; the measure
//!   is the directed Hausdorff distance from `P'` to `P` (every point of
//!   `P'` lies within `delta` of `P`).
//! * [`curve1d`] — `P'` must lie on `P` itself (curve-restricted), for
//!   curves in `R^1`; a linear-time greedy walk.
//!
//! The [`gadget`] module builds, solves, and verifies the Subset-Sum
//! reduction curves that make curve-restricted simplification under the
//! directed Hausdorff measure NP-hard, in exact rational arithmetic
//! ([`exact`]), and [`oracle`] ships the brute-force references that the
//! fast solvers are tested against.

pub mod corpus;
pub mod curve1d;
pub mod exact;
pub mod frechet;
pub mod gadget;
pub mod geom;
pub mod hausdorff;
pub mod io;
pub mod nonrestricted;
pub mod oracle;
pub mod vr_frechet;

pub use geom::{PolyCurve, Point, Segment, Tolerances};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parameter {t} outside curve domain [1, {n}]")]
    OutOfDomain { t: f64, n: usize },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no path found: {0}")]
    Infeasible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("oracle budget exceeded: {0}")]
    OracleBudget(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
