//! Core geometric primitives: points, segments, polygonal curves, and the
//! interval arithmetic used by the free-space machinery.
//!
//! A polygonal curve `P = <p_1, ..., p_n>` is parametrized over `[1, n]`:
//! `P(i + s) = (1 - s) p_i + s p_{i+1}` for integer `i` and `s` in `[0, 1]`.
//! Vertex indices, edge indices, and curve parameters are all 1-based so
//! that the parameter value at vertex `i` is exactly `i`.
//!
//! All distance comparisons are closed (`<= delta`). Where floating point
//! demands slack, the ball radius is inflated by [`Tolerances::eps_geom`]
//! so that exact tangencies survive rounding; every primitive in the crate
//! uses the same inflation, which keeps the decision procedures, the
//! dynamic program, and the brute-force oracles mutually consistent.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Numeric tolerances shared across the crate.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Absolute slack for closed distance comparisons and interval
    /// junctions.
    pub eps_geom: f64,
    /// Sampling step used by densification-based cross-checks, as a
    /// fraction of total curve length.
    pub densify_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eps_geom: 1e-9, densify_step: 1e-3 }
    }
}

/// The crate-wide default geometric slack (`Tolerances::default().eps_geom`).
pub const EPS_GEOM: f64 = 1e-9;

/// A point in `R^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Point {
        Point(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Euclidean distance to `other`.
    pub fn dist(&self, other: &Point) -> f64 {
        dist(&self.0, &other.0)
    }
}

/// Euclidean distance between coordinate slices of equal length.
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

/// Squared Euclidean distance between coordinate slices of equal length.
pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// A directed line segment between two points of equal dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Segment {
        assert_eq!(a.dim(), b.dim(), "segment endpoints must share a dimension");
        Segment { a, b }
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// The point at parameter `t` (affine; `t` is not clamped).
    pub fn eval(&self, t: f64) -> Point {
        Point(
            self.a
                .0
                .iter()
                .zip(&self.b.0)
                .map(|(x, y)| x + t * (y - x))
                .collect(),
        )
    }

    pub fn length(&self) -> f64 {
        self.a.dist(&self.b)
    }

    /// A two-vertex polygonal curve tracing this segment.
    pub fn to_curve(&self) -> PolyCurve {
        PolyCurve::new(vec![self.a.clone(), self.b.clone()])
            .expect("a segment is always a valid two-vertex curve")
    }
}

/// Distance from point `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    point_segment_distance_sq(p, a, b).sqrt()
}

/// Squared distance from point `p` to the closed segment `[a, b]`.
pub fn point_segment_distance_sq(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let mut dd = 0.0; // |b - a|^2
    let mut dp = 0.0; // (b - a) . (p - a)
    for k in 0..a.len() {
        let d = b[k] - a[k];
        dd += d * d;
        dp += d * (p[k] - a[k]);
    }
    let t = if dd > 0.0 { (dp / dd).clamp(0.0, 1.0) } else { 0.0 };
    let mut out = 0.0;
    for k in 0..a.len() {
        let q = a[k] + t * (b[k] - a[k]);
        out += (p[k] - q) * (p[k] - q);
    }
    out
}

/// The Frechet distance between two segments: the larger of the two
/// endpoint distances. The affine matching is optimal for a pair of
/// segments, so this is exact.
pub fn segment_frechet(s1: &Segment, s2: &Segment) -> f64 {
    s1.a.dist(&s2.a).max(s1.b.dist(&s2.b))
}

/// A parameter interval with explicit closedness at each end.
///
/// Geometric free intervals are closed on both ends. The half-open flags
/// exist for elementary-interval bookkeeping, where abutting pieces must
/// partition a closed interval without overlap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamInterval {
    pub lo: f64,
    pub hi: f64,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl ParamInterval {
    /// The closed interval `[lo, hi]`. Requires `lo <= hi`.
    pub fn closed(lo: f64, hi: f64) -> ParamInterval {
        debug_assert!(lo <= hi, "closed interval needs lo <= hi, got [{lo}, {hi}]");
        ParamInterval { lo, hi, closed_lo: true, closed_hi: true }
    }

    /// The half-open interval `[lo, hi)`. Requires `lo < hi`.
    pub fn half_open(lo: f64, hi: f64) -> ParamInterval {
        debug_assert!(lo < hi, "half-open interval needs lo < hi, got [{lo}, {hi})");
        ParamInterval { lo, hi, closed_lo: true, closed_hi: false }
    }

    /// Width `hi - lo` (zero for degenerate intervals).
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// True when the interval is the single point `[t, t]`.
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// Exact membership honoring the closedness flags.
    pub fn contains(&self, t: f64) -> bool {
        let lo_ok = if self.closed_lo { t >= self.lo } else { t > self.lo };
        let hi_ok = if self.closed_hi { t <= self.hi } else { t < self.hi };
        lo_ok && hi_ok
    }

    /// Closed membership with `eps` slack at both ends (flags ignored).
    pub fn contains_with_eps(&self, t: f64, eps: f64) -> bool {
        t >= self.lo - eps && t <= self.hi + eps
    }

    /// Closed-overlap test between two intervals, honoring half-open ends:
    /// a shared single endpoint only counts when both sides include it.
    pub fn overlaps(&self, other: &ParamInterval) -> bool {
        let left_ok = match (self.closed_hi, other.closed_lo) {
            (true, true) => self.hi >= other.lo,
            _ => self.hi > other.lo,
        };
        let right_ok = match (other.closed_hi, self.closed_lo) {
            (true, true) => other.hi >= self.lo,
            _ => other.hi > self.lo,
        };
        left_ok && right_ok
    }
}

/// A polygonal curve with at least two vertices, parametrized over `[1, n]`.
///
/// Consecutive duplicate vertices are permitted at this level (the parsers
/// in [`crate::io`] collapse them); zero-length edges are handled by every
/// primitive in the crate.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyCurve {
    dim: usize,
    vertices: Vec<Point>,
}

impl PolyCurve {
    /// Builds a curve, validating that there are at least two vertices, all
    /// of one dimension `>= 1`, with finite coordinates.
    pub fn new(vertices: Vec<Point>) -> Result<PolyCurve> {
        if vertices.len() < 2 {
            return Err(Error::InvalidCurve(format!(
                "a curve needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        let dim = vertices[0].dim();
        if dim == 0 {
            return Err(Error::InvalidCurve("points must have dimension >= 1".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.dim() });
            }
            if v.0.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidCurve(format!(
                    "vertex {} has a non-finite coordinate",
                    i + 1
                )));
            }
        }
        Ok(PolyCurve { dim, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of vertices `n`.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// The `i`-th vertex, 1-based (`1 <= i <= n`).
    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i - 1]
    }

    /// The `k`-th edge, 1-based: joins vertex `k` and vertex `k + 1`, and
    /// spans parameters `[k, k + 1]`.
    pub fn edge(&self, k: usize) -> Segment {
        Segment::new(self.vertices[k - 1].clone(), self.vertices[k].clone())
    }

    /// The point at curve parameter `t` in `[1, n]` (with `eps_geom` domain
    /// slack; parameters further outside are a domain error).
    pub fn eval(&self, t: f64) -> Result<Point> {
        let n = self.n();
        if !t.is_finite() || t < 1.0 - EPS_GEOM || t > n as f64 + EPS_GEOM {
            return Err(Error::OutOfDomain { t, n });
        }
        let t = t.clamp(1.0, n as f64);
        let i = (t.floor() as usize).min(n - 1); // 1..=n-1
        let s = t - i as f64;
        let a = &self.vertices[i - 1].0;
        let b = &self.vertices[i].0;
        Ok(Point(a.iter().zip(b).map(|(x, y)| x + s * (y - x)).collect()))
    }

    /// The subcurve from parameter `s` to parameter `t`, `s <= t`. A
    /// degenerate call with `s == t` yields a two-vertex zero-length curve.
    pub fn subcurve(&self, s: f64, t: f64) -> Result<PolyCurve> {
        if !(s <= t) {
            return Err(Error::InvalidInput(format!(
                "subcurve needs s <= t, got s = {s}, t = {t}"
            )));
        }
        let ps = self.eval(s)?;
        let pt = self.eval(t)?;
        let mut verts = vec![ps];
        let mut i = s.floor() as usize + 1; // smallest integer strictly above s
        while (i as f64) < t {
            verts.push(self.vertices[i - 1].clone());
            i += 1;
        }
        verts.push(pt);
        PolyCurve::new(verts)
    }

    /// Sum of the edge lengths.
    pub fn total_length(&self) -> f64 {
        self.vertices.windows(2).map(|w| w[0].dist(&w[1])).sum()
    }

    /// The largest distance between any two vertices. For a polygonal
    /// curve this equals the diameter of the curve, because the distance
    /// between points of two segments is maximized at segment endpoints.
    pub fn max_pairwise_vertex_distance(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                best = best.max(self.vertices[i].dist(&self.vertices[j]));
            }
        }
        best
    }
}

/// The set of parameters `t` on `edge` (as `t` in `[0, 1]`) whose point
/// lies within distance `delta` of `center`: a single maximal closed
/// interval, or `None` when the edge misses the ball.
///
/// The ball radius is inflated by [`EPS_GEOM`] so that exact tangencies
/// survive floating point; all callers in the crate share this convention.
pub fn ball_edge_free_interval(
    center: &Point,
    delta: f64,
    edge: &Segment,
) -> Option<ParamInterval> {
    ball_segment_interval(&center.0, delta, &edge.a.0, &edge.b.0)
        .map(|(lo, hi)| ParamInterval::closed(lo, hi))
}

/// Slice-level core of [`ball_edge_free_interval`]: the sub-range of
/// `t` in `[0, 1]` with `|a + t (b - a) - center| <= delta + eps_geom`.
pub(crate) fn ball_segment_interval(
    center: &[f64],
    delta: f64,
    a: &[f64],
    b: &[f64],
) -> Option<(f64, f64)> {
    let r = delta + EPS_GEOM;
    // Quadratic |a + t d - c|^2 <= r^2 with d = b - a.  Solved via the foot
    // of the perpendicular rather than the textbook discriminant: the
    // residual vector at the foot is computed by direct subtraction, so its
    // squared norm m2 is accurate near tangency (absolute error ~1e-31 when
    // m ~ 0) where b^2 - 4ac would cancel catastrophically (error ~1e-14 at
    // unit coordinate scale, destroying radii below ~1e-7).
    let mut qa = 0.0;
    let mut qb = 0.0;
    let mut qc = -r * r;
    for k in 0..center.len() {
        let d = b[k] - a[k];
        let e = a[k] - center[k];
        qa += d * d;
        qb += 2.0 * d * e;
        qc += e * e;
    }
    if qa <= 0.0 {
        // Zero-length edge: constant distance.
        return if qc <= 0.0 { Some((0.0, 1.0)) } else { None };
    }
    let t_star = -qb / (2.0 * qa);
    let mut m2 = 0.0;
    for k in 0..center.len() {
        let d = b[k] - a[k];
        let e = a[k] - center[k];
        let res = e + t_star * d;
        m2 += res * res;
    }
    let rad2 = r * r - m2;
    if rad2 < 0.0 {
        return None;
    }
    let h = (rad2 / qa).sqrt();
    let lo = (t_star - h).max(0.0);
    let hi = (t_star + h).min(1.0);
    if hi < lo {
        None
    } else {
        Some((lo, hi))
    }
}
