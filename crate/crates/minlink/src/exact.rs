//! Exact rational geometry for the reduction gadget.
//!
//! The gadget curve separates features by factors of `2^20` (`gamma`
//! relative to `delta`) and optionally another `2^40` (`zeta` relative to
//! `gamma`). Doubles cannot resolve those scales, and the degenerate
//! (`zeta = 0`) construction relies on *closed* tangencies: the optimal
//! simplification touches the boundary of the `delta`-tube at isolated
//! points and must still count as contained. Everything in this module is
//! therefore exact: points are [`BigRational`] pairs, and the square roots
//! that appear when intersecting a line with a ball are carried
//! symbolically as quadratic-extension values `p + q*sqrt(d)` whose signs
//! are decided by squaring, never by rounding.
//!
//! [`BigRational`]: num_rational::BigRational

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `1 / 2^k` as an exact rational.
pub fn rat_pow2_inv(k: u32) -> Rat {
    Rat::new(BigInt::from(1), BigInt::from(1) << k)
}

/// Sign of a rational as -1 / 0 / +1.
fn rsign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `b*sqrt(u)` where `u >= 0`.
fn sign_sqrt_term(b: &Rat, u: &Rat) -> i8 {
    if u.is_zero() {
        0
    } else {
        rsign(b)
    }
}

/// Exact sign of `a + b*sqrt(w)` with `w >= 0`. One squaring at most.
fn sign_rat_plus_sqrt(a: &Rat, b: &Rat, w: &Rat) -> i8 {
    let sb = sign_sqrt_term(b, w);
    let sa = rsign(a);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb.max(sa);
    }
    // Opposite signs: |a| vs |b|*sqrt(w) decided by squaring.
    match (a * a).cmp(&(b * b * w)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// Exact sign of `a + b*sqrt(u) + c*sqrt(v)` with `u, v >= 0`.
///
/// At most two squarings: the first compares the two radical terms when
/// their signs differ, the second compares `(b*sqrt(u) + c*sqrt(v))^2 =
/// b^2 u + c^2 v + 2bc*sqrt(uv)` against `a^2`, which is again of the
/// one-radical form.
pub fn sign_sum(a: &Rat, b: &Rat, u: &Rat, c: &Rat, v: &Rat) -> Ordering {
    let sb = sign_sqrt_term(b, u);
    let sc = sign_sqrt_term(c, v);
    let s_rad = if sb == 0 {
        sc
    } else if sc == 0 || sb == sc {
        sb
    } else {
        match (b * b * u).cmp(&(c * c * v)) {
            Ordering::Greater => sb,
            Ordering::Less => sc,
            Ordering::Equal => 0,
        }
    };
    let sa = rsign(a);
    let sign = if sa == 0 {
        s_rad
    } else if s_rad == 0 || sa == s_rad {
        sa
    } else {
        // a and the radical part have opposite nonzero signs. Compare
        // magnitudes: (b*sqrt(u) + c*sqrt(v))^2 - a^2 = A + B*sqrt(W).
        let big_a = b * b * u + c * c * v - a * a;
        let big_b = rat_int(2) * b * c;
        let big_w = u * v;
        match sign_rat_plus_sqrt(&big_a, &big_b, &big_w) {
            1 => s_rad,
            -1 => sa,
            _ => 0,
        }
    };
    match sign {
        1 => Ordering::Greater,
        -1 => Ordering::Less,
        _ => Ordering::Equal,
    }
}

/// A quadratic-extension value `p + q*sqrt(d)` with `d >= 0`, the exact
/// form of a root of a rational quadratic. Comparisons are exact.
#[derive(Clone, Debug)]
pub struct QuadVal {
    p: Rat,
    q: Rat,
    d: Rat,
}

impl QuadVal {
    /// A plain rational as a quadratic-extension value.
    pub fn from_rat(p: Rat) -> Self {
        QuadVal { p, q: Rat::zero(), d: Rat::zero() }
    }

    /// `p + q*sqrt(d)`; requires `d >= 0`.
    pub fn new(p: Rat, q: Rat, d: Rat) -> Self {
        debug_assert!(!d.is_negative(), "radicand must be non-negative");
        if q.is_zero() || d.is_zero() {
            QuadVal::from_rat(p)
        } else {
            QuadVal { p, q, d }
        }
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &QuadVal) -> Ordering {
        // self - other = (p1 - p2) + q1*sqrt(d1) - q2*sqrt(d2).
        sign_sum(&(&self.p - &other.p), &self.q, &self.d, &(-&other.q), &other.d)
    }

    /// Exact comparison against a plain rational.
    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        sign_sum(&(&self.p - r), &self.q, &self.d, &Rat::zero(), &Rat::zero())
    }

    /// Nearest-double rendering (for diagnostics only; never compared).
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        p + q * d.sqrt()
    }

    fn max(self, other: QuadVal) -> QuadVal {
        if self.cmp_exact(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    fn min(self, other: QuadVal) -> QuadVal {
        if self.cmp_exact(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }
}

/// A 2D point with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoint2 {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint2 { x, y }
    }

    /// Nearest-double rendering for plotting and reports.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

fn dot(ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat) -> Rat {
    ax * bx + ay * by
}

/// Exact test that `p` lies on the polyline through `chain` (with its
/// vertices in the given order). Zero-tolerance: collinearity and bounding
/// boxes are checked in rationals.
pub fn point_on_polyline_exact(p: &RatPoint2, chain: &[RatPoint2]) -> bool {
    if chain.is_empty() {
        return false;
    }
    if chain.len() == 1 {
        return *p == chain[0];
    }
    for w in chain.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let cross = (&b.x - &a.x) * (&p.y - &a.y) - (&b.y - &a.y) * (&p.x - &a.x);
        if !cross.is_zero() {
            continue;
        }
        let in_x = (&p.x - &a.x) * (&p.x - &b.x) <= Rat::zero();
        let in_y = (&p.y - &a.y) * (&p.y - &b.y) <= Rat::zero();
        if in_x && in_y {
            return true;
        }
    }
    false
}

/// `{t : a*t^2 + b*t + c <= 0}` for a quadratic that is a squared norm of
/// an affine map minus a constant: `a = |Q|^2`, `b = 2 P.Q`, `c = |P|^2 -
/// r^2`. In that shape `a == 0` forces `b == 0`, so the solution set is
/// empty, everything, or one closed interval with quadratic-extension
/// endpoints.
enum QuadSolution {
    Empty,
    All,
    Interval(QuadVal, QuadVal),
}

fn solve_quad_leq(a: &Rat, b: &Rat, c: &Rat) -> QuadSolution {
    if a.is_zero() {
        debug_assert!(b.is_zero(), "squared-norm quadratic with a=0 must have b=0");
        return if c.is_positive() { QuadSolution::Empty } else { QuadSolution::All };
    }
    let disc = b * b - rat_int(4) * a * c;
    if disc.is_negative() {
        return QuadSolution::Empty;
    }
    let half = rat(1, 2);
    let mid = -&half * b / a;
    let scale = &half / a;
    // a > 0, so -|scale| pairs with the lower root.
    QuadSolution::Interval(
        QuadVal::new(mid.clone(), -&scale, disc.clone()),
        QuadVal::new(mid, scale, disc),
    )
}

/// Coefficients of `|P + t*Q|^2 - r2` as `(a, b, c)`.
fn norm_quad(px: &Rat, py: &Rat, qx: &Rat, qy: &Rat, r2: &Rat) -> (Rat, Rat, Rat) {
    let a = dot(qx, qy, qx, qy);
    let b = rat_int(2) * dot(px, py, qx, qy);
    let c = dot(px, py, px, py) - r2;
    (a, b, c)
}

/// Exact test that the segment `seg` lies entirely within the closed
/// `delta`-tube (offset region) of the polyline `curve`.
///
/// For every curve edge the parameters `t` of `seg` covered by that edge's
/// capsule form up to three closed pieces (endpoint balls and the
/// perpendicular slab); their endpoints are exact quadratic-extension
/// numbers. The segment is contained iff the closed pieces cover `[0, 1]`,
/// decided by an exact sweep. Tangencies count as covered, which is what
/// the degenerate (`zeta = 0`) gadget needs.
pub fn segment_in_tube_exact(u: &RatPoint2, v: &RatPoint2, curve: &[RatPoint2], delta: &Rat) -> bool {
    assert!(curve.len() >= 2, "tube needs a polyline with at least one edge");
    assert!(!delta.is_negative(), "delta must be non-negative");
    let r2 = delta * delta;
    let dx = &v.x - &u.x;
    let dy = &v.y - &u.y;

    let zero = QuadVal::from_rat(Rat::zero());
    let one_rat = rat_int(1);
    let one = QuadVal::from_rat(one_rat.clone());

    // Conservative f64 prefilter: skip edges whose bounding box is farther
    // than delta*(1 + 1/64) from the segment's bounding box. Coordinates
    // are desk-scale (|coord| <~ 1e4), so the conversion error is ~1e-12,
    // dwarfed by the delta/64 margin (delta >= 1 for all gadget curves).
    let seg_box = f64_box(&[u.clone(), v.clone()]);
    let delta_f = delta.to_f64().unwrap_or(f64::INFINITY) * (1.0 + 1.0 / 64.0) + 1e-9;

    let mut pieces: Vec<(QuadVal, QuadVal)> = Vec::new();
    let push_clipped = |lo: QuadVal, hi: QuadVal, pieces: &mut Vec<(QuadVal, QuadVal)>| {
        let lo = lo.max(zero.clone());
        let hi = hi.min(one.clone());
        if lo.cmp_exact(&hi) != Ordering::Greater {
            pieces.push((lo, hi));
        }
    };

    for w in curve.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let edge_box = f64_box(&[a.clone(), b.clone()]);
        if box_gap(&seg_box, &edge_box) > delta_f {
            continue;
        }

        // Ball around each edge endpoint: |(u - e) + t*d|^2 <= delta^2.
        for e in [a, b] {
            let px = &u.x - &e.x;
            let py = &u.y - &e.y;
            let (qa, qb, qc) = norm_quad(&px, &py, &dx, &dy, &r2);
            match solve_quad_leq(&qa, &qb, &qc) {
                QuadSolution::Empty => {}
                QuadSolution::All => return true,
                QuadSolution::Interval(lo, hi) => push_clipped(lo, hi, &mut pieces),
            }
        }

        // Perpendicular slab of the edge body: distance to the supporting
        // line <= delta AND the projection parameter g(t) in [0, 1].
        let wx = &b.x - &a.x;
        let wy = &b.y - &a.y;
        let l2 = dot(&wx, &wy, &wx, &wy);
        if l2.is_zero() {
            continue; // zero-length edge: the endpoint balls already cover it
        }
        // g(t) = g0 + g1*t, the projection parameter of seg(t) onto the edge.
        let ux = &u.x - &a.x;
        let uy = &u.y - &a.y;
        let g0 = dot(&ux, &uy, &wx, &wy) / &l2;
        let g1 = dot(&dx, &dy, &wx, &wy) / &l2;
        // Perpendicular component of seg(t) - a is P + t*Q with
        // P = (u - a) - g0*w, Q = d - g1*w.
        let px = &ux - &g0 * &wx;
        let py = &uy - &g0 * &wy;
        let qx = &dx - &g1 * &wx;
        let qy = &dy - &g1 * &wy;
        let (qa, qb, qc) = norm_quad(&px, &py, &qx, &qy, &r2);
        let body = match solve_quad_leq(&qa, &qb, &qc) {
            QuadSolution::Empty => continue,
            QuadSolution::All => (zero.clone(), one.clone()),
            QuadSolution::Interval(lo, hi) => (lo, hi),
        };
        // Intersect with the rational slab {t : 0 <= g(t) <= 1}.
        let slab = if g1.is_zero() {
            if g0.is_negative() || g0 > one_rat {
                continue;
            }
            (zero.clone(), one.clone())
        } else {
            let t_at_0 = -&g0 / &g1;
            let t_at_1 = (&one_rat - &g0) / &g1;
            let (s_lo, s_hi) = if g1.is_positive() { (t_at_0, t_at_1) } else { (t_at_1, t_at_0) };
            (QuadVal::from_rat(s_lo), QuadVal::from_rat(s_hi))
        };
        let lo = body.0.max(slab.0);
        let hi = body.1.min(slab.1);
        push_clipped(lo, hi, &mut pieces);
    }

    // Exact sweep: closed pieces must cover [0, 1]; touching endpoints
    // chain (closed-set union), so a gap exists only when the next piece
    // starts strictly beyond the covered prefix.
    pieces.sort_by(|x, y| x.0.cmp_exact(&y.0));
    let mut covered = zero;
    for (lo, hi) in pieces {
        if covered.cmp_exact(&one) != Ordering::Less {
            return true;
        }
        if lo.cmp_exact(&covered) == Ordering::Greater {
            return false;
        }
        covered = covered.max(hi);
    }
    covered.cmp_exact(&one) != Ordering::Less
}

fn f64_box(pts: &[RatPoint2]) -> [f64; 4] {
    let mut bx = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for p in pts {
        let (x, y) = p.to_f64();
        bx[0] = bx[0].min(x);
        bx[1] = bx[1].min(y);
        bx[2] = bx[2].max(x);
        bx[3] = bx[3].max(y);
    }
    bx
}

/// Euclidean gap between two axis-aligned boxes (0 when they overlap).
fn box_gap(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    let gx = (b[0] - a[2]).max(a[0] - b[2]).max(0.0);
    let gy = (b[1] - a[3]).max(a[1] - b[3]).max(0.0);
    (gx * gx + gy * gy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(x: Rat, y: Rat) -> RatPoint2 {
        RatPoint2::new(x, y)
    }

    #[test]
    fn sign_sum_handles_pure_rationals() {
        let z = Rat::zero();
        assert_eq!(sign_sum(&rat_int(3), &z, &z, &z, &z), Ordering::Greater);
        assert_eq!(sign_sum(&rat_int(-3), &z, &z, &z, &z), Ordering::Less);
        assert_eq!(sign_sum(&z, &z, &z, &z, &z), Ordering::Equal);
    }

    #[test]
    fn sign_sum_one_radical() {
        // -1 + sqrt(2) > 0, -3/2 + sqrt(2) < 0, -sqrt(4)/2 + 1 == 0.
        let z = Rat::zero();
        assert_eq!(sign_sum(&rat_int(-1), &rat_int(1), &rat_int(2), &z, &z), Ordering::Greater);
        assert_eq!(sign_sum(&rat(-3, 2), &rat_int(1), &rat_int(2), &z, &z), Ordering::Less);
        assert_eq!(sign_sum(&rat_int(1), &rat(-1, 2), &rat_int(4), &z, &z), Ordering::Equal);
    }

    #[test]
    fn sign_sum_two_radicals_first_squaring() {
        // sqrt(8) - 2*sqrt(2) == 0: decided by the radical-vs-radical squaring.
        let z = Rat::zero();
        assert_eq!(
            sign_sum(&z, &rat_int(1), &rat_int(8), &rat_int(-2), &rat_int(2)),
            Ordering::Equal
        );
        // sqrt(2) - sqrt(3) < 0.
        assert_eq!(
            sign_sum(&z, &rat_int(1), &rat_int(2), &rat_int(-1), &rat_int(3)),
            Ordering::Less
        );
    }

    #[test]
    fn sign_sum_two_radicals_second_squaring() {
        // 1 + sqrt(2) - sqrt(7): 1 + 1.414 - 2.646 < 0; needs both squarings.
        assert_eq!(
            sign_sum(&rat_int(1), &rat_int(1), &rat_int(2), &rat_int(-1), &rat_int(7)),
            Ordering::Less
        );
        // 2 + sqrt(2) - sqrt(7) > 0.
        assert_eq!(
            sign_sum(&rat_int(2), &rat_int(1), &rat_int(2), &rat_int(-1), &rat_int(7)),
            Ordering::Greater
        );
        // 3 - sqrt(2) - sqrt(2) = 3 - sqrt(8) > 0 and 2 - sqrt(2) - sqrt(2) < 0.
        assert_eq!(
            sign_sum(&rat_int(3), &rat_int(-1), &rat_int(2), &rat_int(-1), &rat_int(2)),
            Ordering::Greater
        );
        assert_eq!(
            sign_sum(&rat_int(2), &rat_int(-1), &rat_int(2), &rat_int(-1), &rat_int(2)),
            Ordering::Less
        );
    }

    #[test]
    fn quadval_equality_across_radicands() {
        // 2*sqrt(2) and sqrt(8) are the same number in different clothes.
        let a = QuadVal::new(Rat::zero(), rat_int(2), rat_int(2));
        let b = QuadVal::new(Rat::zero(), rat_int(1), rat_int(8));
        assert_eq!(a.cmp_exact(&b), Ordering::Equal);
        assert_eq!(a.cmp_rat(&rat_int(3)), Ordering::Less);
        assert_eq!(a.cmp_rat(&rat_int(2)), Ordering::Greater);
    }

    #[test]
    fn point_on_polyline_exact_cases() {
        let chain = vec![
            rp(rat_int(0), rat_int(0)),
            rp(rat_int(4), rat_int(0)),
            rp(rat_int(4), rat_int(3)),
        ];
        // Vertex, mid-edge, rational interior point.
        assert!(point_on_polyline_exact(&rp(rat_int(4), rat_int(0)), &chain));
        assert!(point_on_polyline_exact(&rp(rat_int(2), rat_int(0)), &chain));
        assert!(point_on_polyline_exact(&rp(rat_int(4), rat(3, 2)), &chain));
        // Off by 2^-100: undetectable in doubles, rejected exactly here.
        let eps = rat_pow2_inv(100);
        assert!(!point_on_polyline_exact(&rp(rat_int(2), eps.clone()), &chain));
        // Collinear with the first edge but beyond its box.
        assert!(!point_on_polyline_exact(&rp(rat_int(5), rat_int(0)), &chain));
        assert!(!point_on_polyline_exact(&rp(rat_int(-1), rat_int(0)), &chain));
    }

    #[test]
    fn tube_accepts_exact_tangency_along_whole_segment() {
        // Tube of radius 1 around the x-axis segment; a parallel segment at
        // height exactly 1 rides the boundary the whole way and is inside
        // under the closed convention.
        let curve = vec![rp(rat_int(0), rat_int(0)), rp(rat_int(10), rat_int(0))];
        let u = rp(rat_int(0), rat_int(1));
        let v = rp(rat_int(10), rat_int(1));
        assert!(segment_in_tube_exact(&u, &v, &curve, &rat_int(1)));
        // Raising the far end by 2^-200 breaks containment; doubles cannot
        // even represent the perturbation.
        let v_bad = rp(rat_int(10), rat_int(1) + rat_pow2_inv(200));
        assert!(!segment_in_tube_exact(&u, &v_bad, &curve, &rat_int(1)));
    }

    #[test]
    fn tube_point_tangency_pinch() {
        // Two vertical walls whose end vertices (0,-1) and (0,1) pinch the
        // origin: their delta-balls touch the crossing segment only at the
        // single parameter where it passes through (0,0). The closed sweep
        // must chain the two one-point-touching cover pieces.
        let curve = vec![
            rp(rat_int(0), rat_int(-1)),
            rp(rat_int(0), rat_int(-5)),
            rp(rat_int(100), rat_int(-5)),
            rp(rat_int(100), rat_int(5)),
            rp(rat_int(0), rat_int(5)),
            rp(rat_int(0), rat_int(1)),
        ];
        let delta = rat_int(1);
        let u = rp(rat(-1, 10), rat(-1, 5));
        let v = rp(rat(1, 10), rat(1, 5));
        assert!(segment_in_tube_exact(&u, &v, &curve, &delta));
        // Shifting the segment sideways by 2^-100 misses the pinch point.
        let shift = rat_pow2_inv(100);
        let u2 = rp(rat(-1, 10) + &shift, rat(-1, 5));
        let v2 = rp(rat(1, 10) + &shift, rat(1, 5));
        assert!(!segment_in_tube_exact(&u2, &v2, &curve, &delta));
    }

    #[test]
    fn tube_respects_endpoint_balls_and_slab() {
        // Diagonal edge; probe a segment that needs the endpoint ball (past
        // the slab) on one side and the body slab on the other.
        let curve = vec![rp(rat_int(0), rat_int(0)), rp(rat_int(3), rat_int(4))];
        let delta = rat_int(2);
        let u = rp(rat_int(-1), rat_int(0));
        let v = rp(rat_int(3), rat_int(2));
        assert!(segment_in_tube_exact(&u, &v, &curve, &delta));
        let far = rp(rat_int(-3), rat_int(0)); // distance 3 from the near endpoint
        assert!(!segment_in_tube_exact(&far, &v, &curve, &delta));
    }

    #[test]
    fn tube_zero_delta_requires_lying_on_curve() {
        let curve = vec![rp(rat_int(0), rat_int(0)), rp(rat_int(10), rat_int(0))];
        let u = rp(rat_int(2), rat_int(0));
        let v = rp(rat_int(7), rat_int(0));
        assert!(segment_in_tube_exact(&u, &v, &curve, &Rat::zero()));
        let v_off = rp(rat_int(7), rat_pow2_inv(120));
        assert!(!segment_in_tube_exact(&u, &v_off, &curve, &Rat::zero()));
    }
}
