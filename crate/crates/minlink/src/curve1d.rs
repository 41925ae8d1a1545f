//! Curve-restricted min-link simplification of one-dimensional curves under
//! the Fréchet distance, by a linear-time greedy sweep.
//!
//! Think of the input curve as a dog running along the real line and of the
//! simplification as its handler holding a leash of length `delta`.  Every
//! link of a 1D polyline is a monotone value sweep, so the handler's path is
//! piecewise monotone and the number of links is the number of direction
//! reversals plus one.  The greedy handler stands still until the taut leash
//! drags him (a *ratchet*: his extreme position only ever advances), commits
//! to the direction of the first drag, and turns around only when a drag
//! opposes the committed direction — at which point the current extreme
//! becomes a reversal vertex of the output.  Each reversal vertex is placed
//! on the curve at the first parameter after the previous vertex where the
//! curve attains the reversal value (such a crossing always exists, because
//! the dog was at leash distance on one side of it when the ratchet last
//! advanced and beyond leash distance on the other side when the cut
//! triggered).
//!
//! The sweep touches each edge a bounded number of times: the main scan
//! visits each vertex once and the crossing searches resume where the last
//! one stopped, so the total number of edge visits is at most `3n`.
//!
//! Like every other feasibility decision in the crate, the leash is
//! inflated by [`EPS_GEOM`]: a drag that exceeds `delta` by less than the
//! shared geometric epsilon does not count.  Without this, the greedy
//! would decide knife-edge ties (`delta` exactly half the gap between two
//! values) differently from the free-space solvers, and could emit more
//! links than the vertex-restricted optimum it is compared against.

use crate::geom::{Point, PolyCurve, EPS_GEOM};
use crate::{Error, Result};

/// A curve-restricted simplification of a 1D curve.
#[derive(Clone, Debug)]
pub struct Curve1dSimplification {
    /// `(parameter, value)` of every retained point: parameters strictly
    /// increase from 1 to n, and `P(parameter) == value` for each, so all
    /// vertices lie on the input curve (but need not be input vertices).
    pub vertices: Vec<(f64, f64)>,
    /// Number of links (`vertices.len() - 1`).
    pub link_count: usize,
    /// Edge visits performed, for the linear-work guarantee.
    pub visits: usize,
}

impl Curve1dSimplification {
    /// The simplification as a 1D curve of values (parameters dropped).
    pub fn value_polyline(&self) -> Result<PolyCurve> {
        PolyCurve::new(
            self.vertices
                .iter()
                .map(|&(_, x)| Point::new(vec![x]))
                .collect(),
        )
    }
}

/// Greedy curve-restricted simplification of the 1D curve `p` at tolerance
/// `delta`.  The output is always within Fréchet distance `delta` of the
/// input and uses no more links than the optimal *vertex*-restricted
/// simplification.
pub fn simplify_curve_restricted_1d(p: &PolyCurve, delta: f64) -> Result<Curve1dSimplification> {
    if p.dim() != 1 {
        return Err(Error::InvalidInput(format!(
            "the curve-restricted sweep handles 1-dimensional curves, got dimension {}",
            p.dim()
        )));
    }
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be a finite non-negative number, got {delta}"
        )));
    }
    let xs: Vec<f64> = p.vertices().iter().map(|v| v.0[0]).collect();
    let n = xs.len();
    let mut visits = 0usize;
    let leash = delta + EPS_GEOM;

    let mut out: Vec<(f64, f64)> = vec![(1.0, xs[0])];
    let mut x = xs[0]; // the handler's ratcheted extreme position
    let mut dir = 0i8; // committed direction of the current link
    let mut t_prev = 1.0; // parameter of the last emitted vertex

    for k in 2..=n {
        visits += 1;
        let xk = xs[k - 1];
        if xk - leash > x {
            if dir < 0 {
                let t = first_crossing(&xs, x, t_prev, k, &mut visits);
                out.push((t, x));
                t_prev = t;
            }
            dir = 1;
            x = xk - leash;
        } else if xk + leash < x {
            if dir > 0 {
                let t = first_crossing(&xs, x, t_prev, k, &mut visits);
                out.push((t, x));
                t_prev = t;
            }
            dir = -1;
            x = xk + leash;
        }
    }

    // Landing: the curve ends at xs[n-1], which is within leash distance of
    // the ratchet (otherwise the loop would have cut at k = n).  If it lies
    // behind the committed direction, the ratcheted extreme is one last
    // reversal vertex; either way the final vertex is the curve's endpoint.
    let xn = xs[n - 1];
    if (dir > 0 && xn < x) || (dir < 0 && xn > x) {
        let t = first_crossing(&xs, x, t_prev, n, &mut visits);
        out.push((t, x));
        t_prev = t;
    }
    debug_assert!(t_prev < n as f64);
    out.push((n as f64, xn));

    let link_count = out.len() - 1;
    debug_assert!(out.windows(2).all(|w| w[0].0 < w[1].0));
    Ok(Curve1dSimplification {
        vertices: out,
        link_count,
        visits,
    })
}

/// First parameter strictly greater than `after` (and at most `hi_vertex`)
/// where the piecewise-linear function through `xs` attains `target`.
/// The caller guarantees such a crossing exists.
fn first_crossing(xs: &[f64], target: f64, after: f64, hi_vertex: usize, visits: &mut usize) -> f64 {
    let start = (after.floor() as usize).max(1);
    for k in start..hi_vertex {
        *visits += 1;
        let (a, b) = (xs[k - 1], xs[k]);
        let (plo, phi) = (k as f64, (k + 1) as f64);
        if phi <= after {
            continue;
        }
        if a == b {
            if a == target {
                // A plateau at the target value: any parameter on it works.
                return if plo > after { plo } else { (after + phi) / 2.0 };
            }
            continue;
        }
        let t = (target - a) / (b - a);
        if (-1e-12..=1.0 + 1e-12).contains(&t) {
            let param = plo + t.clamp(0.0, 1.0) * (phi - plo);
            if param > after {
                return param;
            }
        }
    }
    unreachable!("the ratchet invariant guarantees a crossing of the reversal value");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{random_curve, seeded_rng};
    use crate::frechet::decide_frechet;

    fn curve1(xs: &[f64]) -> PolyCurve {
        PolyCurve::new(xs.iter().map(|&x| Point::new(vec![x])).collect()).unwrap()
    }

    #[test]
    fn rejects_higher_dimensions_and_bad_tolerances() {
        let p2 = PolyCurve::new(vec![Point::new(vec![0.0, 0.0]), Point::new(vec![1.0, 1.0])])
            .unwrap();
        assert!(simplify_curve_restricted_1d(&p2, 1.0).is_err());
        let p1 = curve1(&[0.0, 1.0]);
        assert!(simplify_curve_restricted_1d(&p1, -1.0).is_err());
        assert!(simplify_curve_restricted_1d(&p1, f64::NAN).is_err());
    }

    #[test]
    fn zero_tolerance_keeps_the_reversal_structure() {
        let p = curve1(&[0.0, 1.0, 0.0, 1.0, 0.0]);
        let r = simplify_curve_restricted_1d(&p, 0.0).unwrap();
        // Every reversal survives; positions and values match the input
        // extremes up to the geometric epsilon the leash is inflated by.
        assert_eq!(r.link_count, 4);
        let want = [(1.0, 0.0), (2.0, 1.0), (3.0, 0.0), (4.0, 1.0), (5.0, 0.0)];
        for (got, want) in r.vertices.iter().zip(want) {
            assert!((got.0 - want.0).abs() < 1e-8 && (got.1 - want.1).abs() < 1e-8);
        }
        // Monotone curves collapse to a single link at zero tolerance,
        // with both endpoints exact.
        let p = curve1(&[0.0, 0.5, 2.0, 2.5]);
        let r = simplify_curve_restricted_1d(&p, 0.0).unwrap();
        assert_eq!(r.vertices, vec![(1.0, 0.0), (4.0, 2.5)]);
    }

    #[test]
    fn zigzag_frozen_sweep() {
        let p = curve1(&[0.0, 1.0, 0.0, 1.0, 0.0]);
        // Amplitude 1 oscillations: at delta = 0.4 every swing exceeds the
        // leash, so every reversal survives (with ratcheted values).
        let r = simplify_curve_restricted_1d(&p, 0.4).unwrap();
        let want = [(1.0, 0.0), (1.6, 0.6), (2.6, 0.4), (3.6, 0.6), (5.0, 0.0)];
        assert_eq!(r.vertices.len(), want.len());
        for (got, want) in r.vertices.iter().zip(want) {
            assert!((got.0 - want.0).abs() < 1e-8 && (got.1 - want.1).abs() < 1e-8);
        }
        // At delta = 0.5 the handler parks at 0.5 and absorbs the whole
        // oscillation: one climb, one descent.
        let r = simplify_curve_restricted_1d(&p, 0.5).unwrap();
        let want = [(1.0, 0.0), (1.5, 0.5), (5.0, 0.0)];
        assert_eq!(r.vertices.len(), want.len());
        for (got, want) in r.vertices.iter().zip(want) {
            assert!((got.0 - want.0).abs() < 1e-8 && (got.1 - want.1).abs() < 1e-8);
        }
    }

    #[test]
    fn wide_tolerance_gives_a_single_link() {
        let p = curve1(&[0.0, 1.0, -1.0, 0.5]);
        let r = simplify_curve_restricted_1d(&p, 1.0).unwrap();
        assert_eq!(r.vertices, vec![(1.0, 0.0), (4.0, 0.5)]);
        assert_eq!(r.link_count, 1);
    }

    #[test]
    fn output_lies_on_the_curve_and_is_feasible() {
        let mut rng = seeded_rng(1201);
        for case in 0..60 {
            let n = 2 + (case % 9);
            let p = random_curve(&mut rng, n, 1, 4.0);
            for delta in [0.0, 0.3, 0.9, 2.0] {
                let r = simplify_curve_restricted_1d(&p, delta).unwrap();
                // Vertices lie on the curve at their claimed parameters.
                for &(t, v) in &r.vertices {
                    let on = p.eval(t).unwrap();
                    assert!(
                        (on.0[0] - v).abs() <= 1e-9,
                        "case {case} delta {delta}: ({t}, {v}) is not on the curve"
                    );
                }
                // Parameters strictly increase and span the whole curve.
                assert_eq!(r.vertices[0], (1.0, p.vertex(1).0[0]));
                assert_eq!(r.vertices.last().unwrap().0, n as f64);
                assert!(r.vertices.windows(2).all(|w| w[0].0 < w[1].0));
                // The value polyline is within delta of the input.
                let q = r.value_polyline().unwrap();
                assert!(
                    decide_frechet(&p, &q, delta + 1e-9),
                    "case {case} delta {delta}: simplification is not within tolerance"
                );
                // Linear work.
                assert!(r.visits <= 4 * n, "case {case}: {} visits", r.visits);
            }
        }
    }

    #[test]
    fn plateaus_are_handled() {
        let p = curve1(&[0.0, 1.0, 1.0, 0.0, 0.0, 2.0]);
        let r = simplify_curve_restricted_1d(&p, 0.0).unwrap();
        // Reversal at the start of the descending edge (value 1 is attained
        // first at parameter 2), then at the start of the climb to 2.
        assert_eq!(r.link_count, 3);
        assert!((r.vertices[1].1 - 1.0).abs() < 1e-8);
        assert!(r.vertices[2].1.abs() < 1e-8);
        let q = r.value_polyline().unwrap();
        assert!(decide_frechet(&p, &q, 1e-8));
    }

}
