//! Free-space machinery for the continuous Frechet distance.
//!
//! * [`decide_frechet`] — the classic free-space-diagram reachability test
//!   (`delta`-decision) between two polygonal curves, `O(n m)`.
//! * [`frechet_distance`] — the distance itself via bisection over the
//!   decision procedure.
//! * [`decide_frechet_segment`] — the one-segment special case, solved by
//!   threading a monotone sequence of crossing parameters; exactly
//!   equivalent to [`decide_frechet`] against a two-vertex curve but
//!   allocation-free.
//! * [`capsule_cover_interval`] / [`segment_in_tube`] — coverage of a
//!   candidate link by the `delta`-neighborhoods of the input edges, used
//!   by the directed-Hausdorff variant.
//! * [`FreeSpaceRow`] / [`reach_through_strip`] — the free space of a whole
//!   curve against one candidate shortcut segment (a *strip*), and batched
//!   monotone reachability through it: given labeled entry intervals on
//!   the bottom side, the minimum label reaching every part of the top
//!   side. This is the workhorse of the vertex-restricted dynamic program.
//!
//! Conventions: curve parameters are global (`[1, n]`), segment parameters
//! are `[0, 1]`, comparisons are closed with [`EPS_GEOM`] slack, and every
//! ball test shares the inflated-radius convention of
//! [`crate::geom::ball_edge_free_interval`].

use crate::geom::{
    ball_segment_interval, dist, ParamInterval, Point, PolyCurve, Segment, EPS_GEOM,
};

/// Decides whether the Frechet distance between `p` and `q` is at most
/// `delta` (closed comparison, `EPS_GEOM` slack).
pub fn decide_frechet(p: &PolyCurve, q: &PolyCurve, delta: f64) -> bool {
    assert_eq!(p.dim(), q.dim(), "curves must share a dimension");
    let eps = EPS_GEOM;
    let pv = p.vertices();
    let qv = q.vertices();
    let np = pv.len();
    let nq = qv.len();
    if dist(&pv[0].0, &qv[0].0) > delta + eps
        || dist(&pv[np - 1].0, &qv[nq - 1].0) > delta + eps
    {
        return false;
    }
    let ne_p = np - 1;
    let ne_q = nq - 1;
    // Free interval of t on Q-edge j against P-vertex i (all 0-based).
    let lfree = |i: usize, j: usize| ball_segment_interval(&pv[i].0, delta, &qv[j].0, &qv[j + 1].0);
    // Free interval of s on P-edge i against Q-vertex j.
    let bfree = |i: usize, j: usize| ball_segment_interval(&qv[j].0, delta, &pv[i].0, &pv[i + 1].0);

    // Lowest reachable t on the diagram's left boundary, per Q-edge: only
    // reachable by sliding up from the origin corner through free space.
    let mut lr_col0: Vec<Option<f64>> = vec![None; ne_q];
    let mut alive = true;
    for (j, slot) in lr_col0.iter_mut().enumerate() {
        *slot = match (alive, lfree(0, j)) {
            (true, Some((lo, hi))) if lo <= eps => {
                alive = hi >= 1.0 - eps;
                Some(lo)
            }
            _ => {
                alive = false;
                None
            }
        };
    }
    // br[i]: lowest reachable s on the horizontal boundary currently swept
    // (initialized to the diagram's bottom boundary).
    let mut br: Vec<Option<f64>> = vec![None; ne_p];
    let mut alive = true;
    for (i, slot) in br.iter_mut().enumerate() {
        *slot = match (alive, bfree(i, 0)) {
            (true, Some((lo, hi))) if lo <= eps => {
                alive = hi >= 1.0 - eps;
                Some(lo)
            }
            _ => {
                alive = false;
                None
            }
        };
    }

    let mut lr_final: Option<f64> = None;
    for j in 0..ne_q {
        // lr: lowest reachable t on the vertical boundary left of cell (i, j).
        let mut lr: Option<f64> = lr_col0[j];
        for i in 0..ne_p {
            let right = lfree(i + 1, j);
            let top = bfree(i, j + 1);
            let new_lr = if br[i].is_some() {
                // Reachable from below: the whole free interval opens up.
                right.map(|(lo, _)| lo)
            } else if let Some(t0) = lr {
                right.and_then(|(lo, hi)| (hi >= t0 - eps).then(|| lo.max(t0)))
            } else {
                None
            };
            let new_br = if lr.is_some() {
                top.map(|(lo, _)| lo)
            } else if let Some(s0) = br[i] {
                top.and_then(|(lo, hi)| (hi >= s0 - eps).then(|| lo.max(s0)))
            } else {
                None
            };
            br[i] = new_br;
            lr = new_lr;
        }
        if j == ne_q - 1 {
            lr_final = lr;
        }
    }
    // Accept at the top-right corner, via either incident boundary.
    if lr_final.is_some() {
        if let Some((_, hi)) = lfree(np - 1, ne_q - 1) {
            if hi >= 1.0 - eps {
                return true;
            }
        }
    }
    if br[ne_p - 1].is_some() {
        if let Some((_, hi)) = bfree(ne_p - 1, nq - 1) {
            if hi >= 1.0 - eps {
                return true;
            }
        }
    }
    false
}

/// Decides whether the Frechet distance between the single segment `seg`
/// and the polygonal chain `verts` is at most `delta`.
///
/// Equivalent to [`decide_frechet`] with `seg` as a two-vertex curve: a
/// monotone matching exists iff crossing parameters `t_k` (the position on
/// `seg` when the chain traversal passes vertex `k`) can be chosen
/// non-decreasing inside each vertex's free interval on `seg`, and the
/// greedy running maximum of interval starts is the optimal choice.
pub fn decide_frechet_segment(seg: &Segment, verts: &[Point], delta: f64) -> bool {
    assert!(verts.len() >= 2, "chain needs at least 2 vertices");
    let eps = EPS_GEOM;
    let s0 = &seg.a.0;
    let s1 = &seg.b.0;
    if dist(s0, &verts[0].0) > delta + eps
        || dist(s1, &verts[verts.len() - 1].0) > delta + eps
    {
        return false;
    }
    let mut lo = 0.0f64;
    for v in &verts[1..verts.len() - 1] {
        match ball_segment_interval(&v.0, delta, s0, s1) {
            None => return false,
            Some((a, b)) => {
                lo = lo.max(a);
                if lo > b + eps {
                    return false;
                }
            }
        }
    }
    true
}

/// The Frechet distance between `p` and `q`, computed by bisection over
/// [`decide_frechet`] to absolute tolerance `tol`. The returned value is
/// the midpoint of the final bracket, so it is within `tol / 2` of the
/// true distance (up to the `EPS_GEOM` slack of the decision procedure).
pub fn frechet_distance(p: &PolyCurve, q: &PolyCurve, tol: f64) -> f64 {
    let tol = tol.max(1e-12);
    // The end |p_1 - q_1| and |p_n - q_m| matches are forced: lower bound.
    let lo0 = dist(&p.vertices()[0].0, &q.vertices()[0].0).max(dist(
        &p.vertices()[p.n() - 1].0,
        &q.vertices()[q.n() - 1].0,
    ));
    if decide_frechet(p, q, lo0) {
        return lo0;
    }
    // Any matching stays within the largest cross vertex distance: the
    // distance between points of two segments is maximized at endpoints.
    let mut hi = 0.0f64;
    for a in p.vertices() {
        for b in q.vertices() {
            hi = hi.max(a.dist(b));
        }
    }
    let mut attempts = 0;
    while !decide_frechet(p, q, hi) {
        // Floating-point insurance; mathematically unreachable.
        hi = hi * 2.0 + tol;
        attempts += 1;
        if attempts > 8 {
            break;
        }
    }
    let mut lo = lo0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if decide_frechet(p, q, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The set of parameters `t` on `seg` whose point lies within `delta` of
/// the closed segment `edge` (the *capsule* around `edge`): a single
/// maximal closed interval or `None`.
///
/// Distance to a convex set is convex along an affine path, so the covered
/// set is always one interval.
pub fn capsule_cover_interval(
    edge: &Segment,
    delta: f64,
    seg: &Segment,
) -> Option<ParamInterval> {
    capsule_cover_slices(&edge.a.0, &edge.b.0, delta, &seg.a.0, &seg.b.0)
        .map(|(lo, hi)| ParamInterval::closed(lo, hi))
}

/// Solves `|U + t Z|^2 <= r^2` over `[r0, r1]`, with the vector components
/// `(u_k, z_k)` supplied lazily.  Stable at tangency: the minimum norm is
/// evaluated by direct subtraction at the foot of the perpendicular, not
/// via the textbook discriminant (which cancels catastrophically and
/// destroys radii below ~1e-7 at unit coordinate scale).  `|Z| = 0` forces
/// the derivative to vanish too, so no separate linear branch exists.
fn stable_quad_cover(
    d: usize,
    comp: impl Fn(usize) -> (f64, f64),
    r: f64,
    r0: f64,
    r1: f64,
) -> Option<(f64, f64)> {
    let mut qa = 0.0;
    let mut uz = 0.0;
    let mut uu = 0.0;
    for k in 0..d {
        let (u, z) = comp(k);
        qa += z * z;
        uz += u * z;
        uu += u * u;
    }
    if qa <= 0.0 {
        return (uu <= r * r).then_some((r0, r1));
    }
    let t_star = -uz / qa;
    let mut m2 = 0.0;
    for k in 0..d {
        let (u, z) = comp(k);
        let res = u + t_star * z;
        m2 += res * res;
    }
    let rad2 = r * r - m2;
    if rad2 < 0.0 {
        return None;
    }
    let h = (rad2 / qa).sqrt();
    let lo = (t_star - h).max(r0);
    let hi = (t_star + h).min(r1);
    (hi >= lo).then_some((lo, hi))
}

pub(crate) fn capsule_cover_slices(
    a: &[f64],
    b: &[f64],
    delta: f64,
    s0: &[f64],
    s1: &[f64],
) -> Option<(f64, f64)> {
    let d = a.len();
    let r = delta + EPS_GEOM;
    let mut dd = 0.0; // |b - a|^2
    for k in 0..d {
        let t = b[k] - a[k];
        dd += t * t;
    }
    if dd <= 0.0 {
        // Degenerate edge: the capsule is a ball around `a`.
        return ball_segment_interval(a, delta, s0, s1);
    }
    // Projection parameter scaled by dd: w(t) = (seg(t) - a) . (b - a).
    let mut w0 = 0.0;
    let mut w1 = 0.0;
    for k in 0..d {
        let dk = b[k] - a[k];
        w0 += (s0[k] - a[k]) * dk;
        w1 += (s1[k] - s0[k]) * dk;
    }
    // Split [0, 1] where the closest feature of the edge changes
    // (w = 0: endpoint a; w = dd: endpoint b; between: the open body).
    let mut cuts = vec![0.0, 1.0];
    if w1 != 0.0 {
        for target in [0.0, dd] {
            let t = (target - w0) / w1;
            if t > 0.0 && t < 1.0 {
                cuts.push(t);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let (p0, p1) = (w0 / dd, w1 / dd);
    for g in cuts.windows(2) {
        let (r0, r1) = (g[0], g[1]);
        let wm = w0 + w1 * 0.5 * (r0 + r1);
        let piece = if wm <= 0.0 {
            // Closest feature: endpoint a.  |seg(t) - a|^2 <= r^2.
            stable_quad_cover(d, |k| (s0[k] - a[k], s1[k] - s0[k]), r, r0, r1)
        } else if wm >= dd {
            stable_quad_cover(d, |k| (s0[k] - b[k], s1[k] - s0[k]), r, r0, r1)
        } else {
            // Closest feature: the open body.  The rejection of seg(t) - a
            // from the edge direction is itself affine in t.
            stable_quad_cover(
                d,
                |k| {
                    let dk = b[k] - a[k];
                    (s0[k] - a[k] - p0 * dk, s1[k] - s0[k] - p1 * dk)
                },
                r,
                r0,
                r1,
            )
        };
        if let Some((plo, phi)) = piece {
            lo = lo.min(plo);
            hi = hi.max(phi);
        }
    }
    // Convexity makes the union of the piece solutions contiguous, so the
    // hull is exact.
    (hi >= lo).then_some((lo, hi))
}

/// Whether every point of `seg` lies within `delta` of the curve `p`,
/// i.e. whether `seg` is covered by the union of the edge capsules. The
/// coverage sweep allows `EPS_GEOM` junction slack.
pub fn segment_in_tube(seg: &Segment, p: &PolyCurve, delta: f64) -> bool {
    let eps = EPS_GEOM;
    let verts = p.vertices();
    let mut ivs: Vec<(f64, f64)> = Vec::with_capacity(verts.len() - 1);
    for w in verts.windows(2) {
        if let Some(iv) = capsule_cover_slices(&w[0].0, &w[1].0, delta, &seg.a.0, &seg.b.0) {
            ivs.push(iv);
        }
    }
    ivs.sort_by(|x, y| f64::total_cmp(&x.0, &y.0));
    let mut reach = 0.0f64;
    for (lo, hi) in ivs {
        if lo > reach + eps {
            return false;
        }
        if hi > reach {
            reach = hi;
        }
        if reach >= 1.0 - eps {
            return true;
        }
    }
    reach >= 1.0 - eps
}

/// The free space of curve `p` against one candidate shortcut segment: a
/// *strip* `[1, n] x [0, 1]` whose bottom side matches the segment's start
/// point, top side its end point, and whose vertical boundaries sit at the
/// curve vertices.
#[derive(Clone, Debug)]
pub struct FreeSpaceRow {
    /// Per curve edge `k+1` (0-based slot `k`): the free sub-interval of
    /// the edge's parameter span `[k+1, k+2]` against the segment start.
    pub bottom: Vec<Option<ParamInterval>>,
    /// Same against the segment end.
    pub top: Vec<Option<ParamInterval>>,
    /// Per curve vertex `v+1` (0-based slot `v`): the free interval of the
    /// segment parameter in `[0, 1]` against that vertex.
    pub vert: Vec<Option<ParamInterval>>,
}

impl FreeSpaceRow {
    pub fn new(p: &PolyCurve, seg: &Segment, delta: f64) -> FreeSpaceRow {
        let verts = p.vertices();
        let n = verts.len();
        let mut bottom = Vec::with_capacity(n - 1);
        let mut top = Vec::with_capacity(n - 1);
        for k in 0..n - 1 {
            let (a, b) = (&verts[k].0, &verts[k + 1].0);
            let base = (k + 1) as f64;
            bottom.push(
                ball_segment_interval(&seg.a.0, delta, a, b)
                    .map(|(lo, hi)| ParamInterval::closed(base + lo, base + hi)),
            );
            top.push(
                ball_segment_interval(&seg.b.0, delta, a, b)
                    .map(|(lo, hi)| ParamInterval::closed(base + lo, base + hi)),
            );
        }
        let vert = verts
            .iter()
            .map(|v| {
                ball_segment_interval(&v.0, delta, &seg.a.0, &seg.b.0)
                    .map(|(lo, hi)| ParamInterval::closed(lo, hi))
            })
            .collect();
        FreeSpaceRow { bottom, top, vert }
    }
}

/// Reachable intervals on the top side of a strip. Pieces are disjoint up
/// to shared endpoints, sorted, and each carries the minimum label among
/// the entry intervals that reach it.
#[derive(Clone, Debug, PartialEq)]
pub struct ReachabilityFrontier<L> {
    pub pieces: Vec<(ParamInterval, L)>,
}

/// Pointwise lower envelope of labeled closed pieces `(lo, hi, label)`:
/// disjoint output pieces (sharing endpoints where ownership changes, with
/// closedness flags awarding each shared endpoint to the smaller label),
/// covering exactly the union of the inputs, each with the minimum label
/// at its points. Degenerate single-point pieces are preserved when they
/// strictly beat their surroundings.
pub(crate) fn lower_envelope<L: Copy + Ord>(pieces: &[(f64, f64, L)]) -> Vec<(ParamInterval, L)> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    if pieces.is_empty() {
        return Vec::new();
    }
    let mut bps: Vec<f64> = pieces.iter().flat_map(|p| [p.0, p.1]).collect();
    bps.sort_by(f64::total_cmp);
    bps.dedup();
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by(|&x, &y| f64::total_cmp(&pieces[x].0, &pieces[y].0));

    // Lazy-deletion min-heap keyed by label; entries carry the piece end
    // as raw bits (ends here are non-negative, so bit order is numeric).
    let mut heap: BinaryHeap<Reverse<(L, u64)>> = BinaryHeap::new();
    let mut oi = 0;
    let mut out: Vec<(ParamInterval, L)> = Vec::new();
    let mut prev_gap: Option<L> = None;
    for w in 0..bps.len() {
        let g = bps[w];
        while oi < order.len() && pieces[order[oi]].0 <= g {
            let pc = &pieces[order[oi]];
            heap.push(Reverse((pc.2, pc.1.to_bits())));
            oi += 1;
        }
        while let Some(&Reverse((_, eb))) = heap.peek() {
            if f64::from_bits(eb) < g {
                heap.pop();
            } else {
                break;
            }
        }
        let point_label = heap.peek().map(|&Reverse((l, _))| l);
        let next_gap = if w + 1 < bps.len() {
            let nxt = bps[w + 1];
            // Pieces ending before the next breakpoint end exactly at g
            // (ends are breakpoints), so they cover no future point either.
            while let Some(&Reverse((_, eb))) = heap.peek() {
                if f64::from_bits(eb) < nxt {
                    heap.pop();
                } else {
                    break;
                }
            }
            heap.peek().map(|&Reverse((l, _))| l)
        } else {
            None
        };
        let beats = |x: Option<L>, y: Option<L>| match (x, y) {
            (Some(a), Some(b)) => a < b,
            (Some(_), None) => true,
            _ => false,
        };
        if beats(point_label, prev_gap) && beats(point_label, next_gap) {
            out.push((ParamInterval::closed(g, g), point_label.unwrap()));
        }
        if w + 1 < bps.len() {
            if let Some(l) = next_gap {
                let nxt = bps[w + 1];
                match out.last_mut() {
                    Some((iv, ol)) if *ol == l && iv.hi == g && iv.closed_hi => iv.hi = nxt,
                    _ => out.push((ParamInterval::closed(g, nxt), l)),
                }
            }
        }
        prev_gap = next_gap;
    }
    // Award shared endpoints to the smaller label.
    for i in 1..out.len() {
        if out[i - 1].0.hi == out[i].0.lo {
            if out[i - 1].1 <= out[i].1 {
                out[i].0.closed_lo = false;
            } else {
                out[i - 1].0.closed_hi = false;
            }
        }
    }
    out
}

/// Batched monotone reachability through a strip.
///
/// `entries` are labeled closed intervals on the strip's bottom side (in
/// global curve parameters, each contained in the bottom free space). A
/// top-side point `t'` is reachable from an entry point `t` iff a monotone
/// path through the strip's free space connects `(t, 0)` to `(t', 1)`; the
/// result maps every reachable top point to the minimum label among the
/// entries that reach it, as a lower-envelope frontier.
///
/// The sweep walks the cells left to right carrying three pieces of
/// state — the best labels that can slide along the bottom and the top
/// free space across the cell boundary, and the *staircase* of labels on
/// the current vertical boundary (suffix starts with strictly improving
/// labels; the value at height `s` is the best label with start `<= s`,
/// which is exactly what a monotone crossing admits).
pub fn reach_through_strip<L: Copy + Ord>(
    row: &FreeSpaceRow,
    entries: &[(ParamInterval, L)],
) -> ReachabilityFrontier<L> {
    let eps = EPS_GEOM;
    let ncells = row.bottom.len();
    // Clip the entries to cells.
    let mut cell_entries: Vec<Vec<(f64, L)>> = vec![Vec::new(); ncells];
    for &(iv, label) in entries {
        let k_first = ((iv.lo.ceil() as isize) - 2).max(0) as usize;
        let k_last = (((iv.hi.floor() as isize) - 1).max(0) as usize).min(ncells - 1);
        for (k, slot) in cell_entries
            .iter_mut()
            .enumerate()
            .take(k_last + 1)
            .skip(k_first)
        {
            let lo = iv.lo.max((k + 1) as f64);
            let hi = iv.hi.min((k + 2) as f64);
            if lo <= hi {
                slot.push((lo, label));
            }
        }
    }

    let min2 = |a: Option<L>, b: Option<L>| match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    };

    let mut raw: Vec<(f64, f64, L)> = Vec::new();
    // Suffix-start staircase on the current vertical boundary.
    let mut stair: Vec<(f64, L)> = Vec::new();
    let mut bottom_run: Option<L> = None;
    let mut top_run: Option<L> = None;
    for k in 0..ncells {
        let left = (k + 1) as f64;
        let right = (k + 2) as f64;
        let bp = row.bottom[k];
        let tf = row.top[k];

        // Bottom slide survives only if the bottom free piece touches the
        // cell's left edge.
        let bl_in = match (bottom_run, bp) {
            (Some(l), Some(iv)) if iv.lo <= left + eps => Some(l),
            _ => None,
        };
        let mut cell_bottom_best = bl_in;
        for &(_, l) in &cell_entries[k] {
            cell_bottom_best = min2(cell_bottom_best, Some(l));
        }

        // Emit top coverage for this cell.
        let mut cell_top_best: Option<L> = None;
        if let Some(tf) = tf {
            let mut push = |start: f64, l: L| {
                if start <= tf.hi + eps {
                    raw.push((start.min(tf.hi), tf.hi, l));
                    cell_top_best = min2(cell_top_best, Some(l));
                }
            };
            if let Some(l) = top_run {
                if tf.lo <= left + eps {
                    push(tf.lo, l);
                }
            }
            if let Some(&(_, l)) = stair.last() {
                // Best label on the left boundary reaches the whole piece.
                push(tf.lo, l);
            }
            if let Some(l) = bl_in {
                push(tf.lo, l);
            }
            for &(elo, l) in &cell_entries[k] {
                push(elo.max(tf.lo), l);
            }
        }
        top_run = match tf {
            Some(iv) if iv.hi >= right - eps => cell_top_best,
            _ => None,
        };

        // Build the staircase on the right boundary.
        let vf = row.vert[k + 1];
        stair = match vf {
            None => Vec::new(),
            Some(vf) => {
                let mut cand: Vec<(f64, L)> = Vec::new();
                if let Some(l) = cell_bottom_best {
                    cand.push((vf.lo, l));
                }
                for &(s, l) in &stair {
                    let sp = s.max(vf.lo);
                    if sp <= vf.hi + eps {
                        cand.push((sp.min(vf.hi), l));
                    }
                }
                cand.sort_by(|a, b| f64::total_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
                let mut best: Option<L> = None;
                let mut next = Vec::with_capacity(cand.len());
                for (s, l) in cand {
                    if best.is_none_or(|b| l < b) {
                        next.push((s, l));
                        best = Some(l);
                    }
                }
                next
            }
        };

        bottom_run = match bp {
            Some(iv) if iv.hi >= right - eps => cell_bottom_best,
            _ => None,
        };
    }

    ReachabilityFrontier { pieces: lower_envelope(&raw) }
}

/// Reference implementation of strip reachability for a *single* entry
/// interval: a scalar state walk, deliberately independent of the batched
/// staircase sweep. Returns the reached subsets of the top side, sorted
/// and merged.
pub fn reach_through_strip_naive(
    row: &FreeSpaceRow,
    entry: &ParamInterval,
) -> Vec<ParamInterval> {
    let eps = EPS_GEOM;
    let ncells = row.bottom.len();
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut reach_s: Option<f64> = None; // lowest reachable height on the boundary
    let mut bottom_ok = false;
    let mut top_ok = false;
    for k in 0..ncells {
        let left = (k + 1) as f64;
        let right = (k + 2) as f64;
        let bp = row.bottom[k];
        let tf = row.top[k];
        let clip = {
            let lo = entry.lo.max(left);
            let hi = entry.hi.min(right);
            (lo <= hi).then_some(lo)
        };
        let bottom_in = bottom_ok && bp.is_some_and(|iv| iv.lo <= left + eps);
        let has_bottom = bottom_in || clip.is_some();

        let mut emitted = false;
        if let Some(tf) = tf {
            if (top_ok && tf.lo <= left + eps) || reach_s.is_some() || bottom_in {
                out.push((tf.lo, tf.hi));
                emitted = true;
            }
            if let Some(elo) = clip {
                let s = elo.max(tf.lo);
                if s <= tf.hi + eps {
                    out.push((s.min(tf.hi), tf.hi));
                    emitted = true;
                }
            }
        }
        top_ok = emitted && tf.is_some_and(|iv| iv.hi >= right - eps);

        reach_s = match row.vert[k + 1] {
            None => None,
            Some(vf) => {
                if has_bottom {
                    Some(vf.lo)
                } else if let Some(s0) = reach_s {
                    (vf.hi >= s0 - eps).then(|| vf.lo.max(s0))
                } else {
                    None
                }
            }
        };
        bottom_ok = has_bottom && bp.is_some_and(|iv| iv.hi >= right - eps);
    }
    out.sort_by(|a, b| f64::total_cmp(&a.0, &b.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in out {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    merged
        .into_iter()
        .map(|(lo, hi)| ParamInterval::closed(lo, hi))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(coords: &[f64]) -> Point {
        Point(coords.to_vec())
    }

    fn curve(coords: &[&[f64]]) -> PolyCurve {
        PolyCurve::new(coords.iter().map(|c| p(c)).collect()).unwrap()
    }

    fn seg(a: &[f64], b: &[f64]) -> Segment {
        Segment::new(p(a), p(b))
    }

    #[test]
    fn decide_identical_curves_at_zero() {
        let c = curve(&[&[0.0, 0.0], &[1.0, 2.0], &[3.0, 1.0]]);
        assert!(decide_frechet(&c, &c, 0.0));
    }

    #[test]
    fn decide_peak_against_baseline() {
        // Frozen: the peak must detour to distance exactly 1 from the
        // baseline segment.
        let peak = curve(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 0.0]]);
        let base = curve(&[&[0.0, 0.0], &[2.0, 0.0]]);
        assert!(!decide_frechet(&peak, &base, 0.9));
        assert!(decide_frechet(&peak, &base, 1.0)); // exact tangency
        assert!(decide_frechet(&peak, &base, 1.1));
        let d = frechet_distance(&peak, &base, 1e-7);
        assert!((d - 1.0).abs() < 1e-6, "got {d}");
    }

    #[test]
    fn decide_monotone_in_delta_and_symmetric() {
        let a = curve(&[&[0.0, 0.0], &[2.0, 1.0], &[4.0, -1.0], &[6.0, 0.0]]);
        let b = curve(&[&[0.0, 0.5], &[3.0, -0.5], &[6.0, 0.5]]);
        let d = frechet_distance(&a, &b, 1e-9);
        let d_rev = frechet_distance(&b, &a, 1e-9);
        assert!((d - d_rev).abs() < 1e-7);
        assert!(!decide_frechet(&a, &b, d - 1e-4));
        assert!(decide_frechet(&a, &b, d + 1e-4));
    }

    #[test]
    fn frechet_distance_of_offset_segments() {
        let a = curve(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let b = curve(&[&[0.0, 0.5], &[1.0, 0.5]]);
        let d = frechet_distance(&a, &b, 1e-9);
        assert!((d - 0.5).abs() < 1e-8);
    }

    #[test]
    fn segment_decide_matches_full_decide() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let dim = rng.gen_range(1..=3);
            let n = rng.gen_range(2..=6);
            let verts: Vec<Point> = (0..n)
                .map(|_| Point((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()))
                .collect();
            let chain = PolyCurve::new(verts).unwrap();
            let s = Segment::new(
                Point((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()),
                Point((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()),
            );
            let delta = rng.gen_range(0.0..2.5);
            let fast = decide_frechet_segment(&s, chain.vertices(), delta);
            let full = decide_frechet(&s.to_curve(), &chain, delta);
            assert_eq!(fast, full, "seg {s:?} chain {chain:?} delta {delta}");
        }
    }

    #[test]
    fn capsule_cover_interval_frozen() {
        // Edge (1,0)-(3,0), radius 0.5, link (0,0)-(4,0): covered for
        // x in [0.5, 3.5], i.e. t in [0.125, 0.875].
        let iv = capsule_cover_interval(
            &seg(&[1.0, 0.0], &[3.0, 0.0]),
            0.5,
            &seg(&[0.0, 0.0], &[4.0, 0.0]),
        )
        .unwrap();
        assert!((iv.lo - 0.125).abs() < 1e-7, "lo {}", iv.lo);
        assert!((iv.hi - 0.875).abs() < 1e-7, "hi {}", iv.hi);

        // Radius 1 reaches both link endpoints: full coverage.
        let iv = capsule_cover_interval(
            &seg(&[1.0, 0.0], &[3.0, 0.0]),
            1.0,
            &seg(&[0.0, 0.0], &[4.0, 0.0]),
        )
        .unwrap();
        assert!(iv.lo.abs() < 1e-4 && (iv.hi - 1.0).abs() < 1e-4);

        // A capsule the link only grazes from the side.
        let iv = capsule_cover_interval(
            &seg(&[1.0, 1.0], &[3.0, 1.0]),
            0.5,
            &seg(&[0.0, 0.0], &[4.0, 0.0]),
        );
        assert!(iv.is_none());
    }

    #[test]
    fn capsule_cover_matches_dense_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let dim = rng.gen_range(2..=3);
            let rnd_pt =
                |rng: &mut ChaCha8Rng| Point((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect());
            let e = Segment::new(rnd_pt(&mut rng), rnd_pt(&mut rng));
            let s = Segment::new(rnd_pt(&mut rng), rnd_pt(&mut rng));
            let delta = rng.gen_range(0.1..1.5);
            let iv = capsule_cover_interval(&e, delta, &s);
            for i in 0..=100 {
                let t = i as f64 / 100.0;
                let q = s.eval(t);
                let dist_t = crate::geom::point_segment_distance(&q.0, &e.a.0, &e.b.0);
                let inside = iv.is_some_and(|iv| iv.contains_with_eps(t, 1e-9));
                if dist_t < delta - 1e-7 {
                    assert!(inside, "t={t} should be covered (dist {dist_t} < {delta})");
                }
                if dist_t > delta + 1e-7 {
                    assert!(!inside, "t={t} must not be covered (dist {dist_t} > {delta})");
                }
            }
        }
    }

    #[test]
    fn tube_containment_u_shape_frozen() {
        // U-shaped curve; the straight closing link needs delta = 1.5.
        let u = curve(&[&[0.0, 0.0], &[0.0, 5.0], &[3.0, 5.0], &[3.0, 0.0]]);
        let link = seg(&[0.0, 0.0], &[3.0, 0.0]);
        assert!(!segment_in_tube(&link, &u, 1.0));
        assert!(!segment_in_tube(&link, &u, 1.49));
        assert!(segment_in_tube(&link, &u, 1.5)); // exact junction
        assert!(segment_in_tube(&link, &u, 1.6));
    }

    #[test]
    fn strip_single_cell_full_match() {
        // One-edge curve matched by an identical segment at small delta:
        // entering at parameter 1 exits near the far end.
        let c = curve(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let row = FreeSpaceRow::new(&c, &seg(&[0.0, 0.0], &[1.0, 0.0]), 0.1);
        let frontier = reach_through_strip(
            &row,
            &[(ParamInterval::closed(1.0, 1.0), 0u32)],
        );
        assert_eq!(frontier.pieces.len(), 1);
        let (iv, l) = frontier.pieces[0];
        assert_eq!(l, 0);
        assert!((iv.lo - 1.9).abs() < 1e-6 && (iv.hi - 2.0).abs() < 1e-6);
    }

    fn frontier_value_at<L: Copy + Ord>(
        pieces: &[(ParamInterval, L)],
        t: f64,
    ) -> Option<L> {
        pieces
            .iter()
            .filter(|(iv, _)| iv.lo <= t && t <= iv.hi)
            .map(|&(_, l)| l)
            .min()
    }

    #[test]
    fn batched_strip_matches_naive_per_entry() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for case in 0..250 {
            let dim = 2;
            let n = rng.gen_range(2..=7);
            let verts: Vec<Point> = (0..n)
                .map(|_| Point((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()))
                .collect();
            let c = PolyCurve::new(verts).unwrap();
            let s = Segment::new(
                Point((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()),
                Point((0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()),
            );
            let delta = rng.gen_range(0.3..2.0);
            let row = FreeSpaceRow::new(&c, &s, delta);

            // Entries: sub-intervals of the bottom free space.
            let mut entries: Vec<(ParamInterval, u32)> = Vec::new();
            let mut label = 0u32;
            for bp in row.bottom.iter().flatten() {
                if rng.gen_bool(0.7) {
                    let a = rng.gen_range(0.0..=1.0);
                    let b = rng.gen_range(0.0..=1.0);
                    let (a, b) = if a <= b { (a, b) } else { (b, a) };
                    let lo = bp.lo + a * (bp.hi - bp.lo);
                    let hi = bp.lo + b * (bp.hi - bp.lo);
                    entries.push((ParamInterval::closed(lo, hi), label));
                    label += 1;
                }
            }
            let batched = reach_through_strip(&row, &entries);

            // Naive: per-entry scalar walk, combined by pointwise min.
            let per_entry: Vec<(Vec<ParamInterval>, u32)> = entries
                .iter()
                .map(|&(iv, l)| (reach_through_strip_naive(&row, &iv), l))
                .collect();
            let naive_value = |t: f64| -> Option<u32> {
                per_entry
                    .iter()
                    .filter(|(ivs, _)| ivs.iter().any(|iv| iv.lo <= t && t <= iv.hi))
                    .map(|&(_, l)| l)
                    .min()
            };

            // Compare as functions at all breakpoints and gap midpoints.
            let mut probes: Vec<f64> = Vec::new();
            for (iv, _) in &batched.pieces {
                probes.push(iv.lo);
                probes.push(iv.hi);
            }
            for (ivs, _) in &per_entry {
                for iv in ivs {
                    probes.push(iv.lo);
                    probes.push(iv.hi);
                }
            }
            probes.sort_by(f64::total_cmp);
            probes.dedup();
            let mids: Vec<f64> = probes.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
            probes.extend(mids);
            for &t in &probes {
                assert_eq!(
                    frontier_value_at(&batched.pieces, t),
                    naive_value(t),
                    "case {case}: mismatch at t = {t} (delta {delta})"
                );
            }
        }
    }

    #[test]
    fn lower_envelope_frozen_example() {
        // [2,6] at cost 4 union [4,9] at cost 2 refines to
        // [2,4) at 4 and [4,9] at 2.
        let env = lower_envelope(&[(2.0, 6.0, 4u32), (4.0, 9.0, 2u32)]);
        assert_eq!(env.len(), 2);
        assert_eq!((env[0].0.lo, env[0].0.hi, env[0].1), (2.0, 4.0, 4));
        assert!(env[0].0.closed_lo && !env[0].0.closed_hi);
        assert_eq!((env[1].0.lo, env[1].0.hi, env[1].1), (4.0, 9.0, 2));
        assert!(env[1].0.closed_lo && env[1].0.closed_hi);
    }

    #[test]
    fn lower_envelope_keeps_strict_point_improvements() {
        let env = lower_envelope(&[(2.0, 6.0, 4u32), (4.0, 4.0, 1u32)]);
        assert_eq!(env.len(), 3);
        assert_eq!((env[1].0.lo, env[1].0.hi, env[1].1), (4.0, 4.0, 1));
        assert!(!env[0].0.closed_hi && !env[2].0.closed_lo);
        // A point piece that only ties is absorbed.
        let env = lower_envelope(&[(2.0, 6.0, 4u32), (4.0, 4.0, 4u32)]);
        assert_eq!(env.len(), 1);
        assert_eq!((env[0].0.lo, env[0].0.hi), (2.0, 6.0));
    }
}
