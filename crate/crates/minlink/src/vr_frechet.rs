//! Vertex-restricted min-link simplification under the (global) Fréchet
//! distance.
//!
//! The algorithm works on the *free-space surface* of the curve: for every
//! vertex `v` it computes the **spine** `SP(v)` — the set of curve parameters
//! `t` with `dist(P(t), p_v) <= delta` — and runs a dynamic program whose
//! states are the *elementary intervals* of each spine (the spine's free
//! intervals subdivided at every interesting parameter).  A link `p_u -> p_v`
//! advances the state from an entry interval on `SP(u)` to the exit intervals
//! on `SP(v)` that are monotonically reachable through the free-space strip
//! spanned by the segment `(p_u, p_v)` and the whole curve.  The value
//! `phi(v, e)` is the minimum number of links of a partial simplification
//! that starts at vertex 1 (matching curve parameter 1), ends at vertex `v`,
//! and can leave the traversal anywhere in the elementary interval `e`.
//!
//! Ties between equal-cost predecessors are broken lexicographically by
//! (source vertex index, entry interval index), which makes the output fully
//! deterministic.

use crate::frechet::{lower_envelope, reach_through_strip, FreeSpaceRow};
use crate::geom::{ball_segment_interval, ParamInterval, Point, PolyCurve, Segment, EPS_GEOM};
use crate::{Error, Result};

/// The spines of every vertex: `free[v-1]` is the sorted list of maximal
/// closed free intervals of vertex `v` against the whole curve, in global
/// curve parameters (the interval for edge `k` lives in `[k, k+1]`).
///
/// Endpoints are *snapped*: endpoint values within `EPS_GEOM` of each other
/// are replaced by a common representative, so equal-up-to-noise parameters
/// compare bit-equal everywhere downstream.
#[derive(Clone, Debug)]
pub struct SpineTable {
    pub free: Vec<Vec<ParamInterval>>,
}

/// Compute the spine of every vertex of `p` at tolerance `delta`.
pub fn compute_spines(p: &PolyCurve, delta: f64) -> SpineTable {
    let verts = p.vertices();
    let n = verts.len();
    let mut free: Vec<Vec<ParamInterval>> = Vec::with_capacity(n);
    for v in verts {
        let mut ivs: Vec<ParamInterval> = Vec::new();
        for k in 0..n - 1 {
            if let Some((lo, hi)) =
                ball_segment_interval(&v.0, delta, &verts[k].0, &verts[k + 1].0)
            {
                let base = (k + 1) as f64;
                let (glo, ghi) = (base + lo, base + hi);
                match ivs.last_mut() {
                    // Merge pieces that abut at the shared vertex parameter.
                    Some(last) if glo <= last.hi + EPS_GEOM => last.hi = last.hi.max(ghi),
                    _ => ivs.push(ParamInterval::closed(glo, ghi)),
                }
            }
        }
        free.push(ivs);
    }
    snap_spines(&mut free);
    SpineTable { free }
}

/// Snap every interval endpoint to the representative of its `EPS_GEOM`
/// cluster so that endpoints which agree up to floating-point noise become
/// bit-identical.  Clusters are anchored at their smallest member, so no
/// value moves by more than `EPS_GEOM`.
fn snap_spines(free: &mut [Vec<ParamInterval>]) {
    let mut vals: Vec<f64> = free
        .iter()
        .flatten()
        .flat_map(|iv| [iv.lo, iv.hi])
        .collect();
    if vals.is_empty() {
        return;
    }
    vals.sort_by(f64::total_cmp);
    let mut reps: Vec<f64> = Vec::new();
    for &x in &vals {
        match reps.last() {
            Some(&r) if x - r <= EPS_GEOM => {}
            _ => reps.push(x),
        }
    }
    let snap = |x: f64| -> f64 {
        let i = reps.partition_point(|&r| r <= x);
        reps[i - 1]
    };
    for ivs in free.iter_mut() {
        for iv in ivs.iter_mut() {
            iv.lo = snap(iv.lo);
            iv.hi = snap(iv.hi);
        }
        // Snapping may close an eps-wide gap between neighbours; re-merge.
        let mut merged: Vec<ParamInterval> = Vec::new();
        for &iv in ivs.iter() {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => last.hi = last.hi.max(iv.hi),
                _ => merged.push(iv),
            }
        }
        *ivs = merged;
    }
}

/// One elementary interval of a spine: a maximal piece of a free interval
/// that contains no interesting parameter in its interior.  A free interval
/// `[a, b]` cut at interior points `s_1 < ... < s_k` yields the pieces
/// `[a, s_1), [s_1, s_2), ..., [s_k, b]`: every piece is closed at its lower
/// end and only the last one is closed at its upper end, so the pieces
/// partition `[a, b]` exactly.  A degenerate free interval yields the single
/// closed point piece `[a, a]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElementaryInterval {
    pub lo: f64,
    pub hi: f64,
    /// Whether the piece is closed at `hi` (`lo` is always closed).
    pub closed_hi: bool,
    /// Index of the host free interval within its spine.
    pub host: usize,
}

impl ElementaryInterval {
    pub fn interval(&self) -> ParamInterval {
        ParamInterval {
            lo: self.lo,
            hi: self.hi,
            closed_lo: true,
            closed_hi: self.closed_hi,
        }
    }
}

/// Subdivide every spine into elementary intervals.  The cut set is the
/// union of all spine interval endpoints, so no downstream reachability
/// boundary can fall strictly inside an elementary interval.
pub fn elementary_intervals(spines: &SpineTable) -> Vec<Vec<ElementaryInterval>> {
    let mut s: Vec<f64> = spines
        .free
        .iter()
        .flatten()
        .flat_map(|iv| [iv.lo, iv.hi])
        .collect();
    s.sort_by(f64::total_cmp);
    s.dedup();
    spines
        .free
        .iter()
        .map(|ivs| {
            let mut out = Vec::new();
            for (host, iv) in ivs.iter().enumerate() {
                if iv.lo == iv.hi {
                    out.push(ElementaryInterval {
                        lo: iv.lo,
                        hi: iv.hi,
                        closed_hi: true,
                        host,
                    });
                    continue;
                }
                let a = s.partition_point(|&x| x <= iv.lo);
                let b = s.partition_point(|&x| x < iv.hi);
                let mut prev = iv.lo;
                for &cut in &s[a..b] {
                    out.push(ElementaryInterval {
                        lo: prev,
                        hi: cut,
                        closed_hi: false,
                        host,
                    });
                    prev = cut;
                }
                out.push(ElementaryInterval {
                    lo: prev,
                    hi: iv.hi,
                    closed_hi: true,
                    host,
                });
            }
            out
        })
        .collect()
}

/// Lower envelope of labelled intervals: the minimal label at every covered
/// parameter, returned as maximal disjoint pieces.  This is the subdivision
/// step of the dynamic program, exposed for direct use and testing.
pub fn subdivide<L: Copy + Ord>(pieces: &[(ParamInterval, L)]) -> Vec<(ParamInterval, L)> {
    let raw: Vec<(f64, f64, L)> = pieces.iter().map(|&(iv, l)| (iv.lo, iv.hi, l)).collect();
    lower_envelope(&raw)
}

/// Result of a vertex-restricted simplification: the 1-based indices of the
/// retained input vertices (always starting at 1 and ending at n, strictly
/// increasing) and the resulting number of links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplificationResult {
    pub indices: Vec<usize>,
    pub link_count: usize,
}

/// DP label ordered lexicographically by (cost, source vertex, entry
/// interval index); `min` over labels therefore implements both the cost
/// minimisation and the deterministic tie-break.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Label {
    cost: u32,
    u: u32,
    entry: u32,
}

/// Build the free-space strip for the link `p_u -> p_v` from the snapped
/// spines, so its bottom/top interval endpoints are bit-identical to the
/// elementary interval endpoints of spines `u` and `v`.
fn strip_row(p: &PolyCurve, spines: &SpineTable, u: usize, v: usize, delta: f64) -> FreeSpaceRow {
    let verts = p.vertices();
    let ncells = verts.len() - 1;
    let (pu, pv) = (&verts[u - 1], &verts[v - 1]);
    let bottom = clip_spine_to_cells(&spines.free[u - 1], ncells);
    let top = clip_spine_to_cells(&spines.free[v - 1], ncells);
    let vert = verts
        .iter()
        .map(|w| {
            ball_segment_interval(&w.0, delta, &pu.0, &pv.0)
                .map(|(lo, hi)| ParamInterval::closed(lo, hi))
        })
        .collect();
    FreeSpaceRow { bottom, top, vert }
}

/// Split global-parameter spine intervals into per-cell pieces.  Cell `k`
/// (0-based) spans `[k+1, k+2]`; since a ball meets each edge in at most one
/// interval, each cell receives at most one piece.
fn clip_spine_to_cells(ivs: &[ParamInterval], ncells: usize) -> Vec<Option<ParamInterval>> {
    let mut out: Vec<Option<ParamInterval>> = vec![None; ncells];
    for iv in ivs {
        let k_first = ((iv.lo.ceil() as isize) - 2).max(0) as usize;
        let k_last = (((iv.hi.floor() as isize) - 1).max(0) as usize).min(ncells - 1);
        for (k, slot) in out.iter_mut().enumerate().take(k_last + 1).skip(k_first) {
            let lo = iv.lo.max((k + 1) as f64);
            let hi = iv.hi.min((k + 2) as f64);
            if lo <= hi {
                debug_assert!(slot.is_none(), "ball meets an edge in one interval");
                *slot = Some(ParamInterval::closed(lo, hi));
            }
        }
    }
    out
}

/// Minimum-link vertex-restricted simplification of `p` under the Fréchet
/// distance with tolerance `delta`.
///
/// Returns the retained vertex indices of an optimal simplification.  The
/// problem is always feasible (keeping every vertex gives distance 0), so
/// the result has at most `n - 1` links.
pub fn min_link_simplify_vr(p: &PolyCurve, delta: f64) -> Result<SimplificationResult> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be a finite non-negative number, got {delta}"
        )));
    }
    let n = p.n();
    let spines = compute_spines(p, delta);
    let elems = elementary_intervals(&spines);

    // cost[v-1][e]: best label cost reaching elementary interval e of spine v,
    // plus the predecessor (source vertex, source entry index) if any.
    type Cell = Option<(u32, Option<(u32, u32)>)>;
    let mut cost: Vec<Vec<Cell>> = elems.iter().map(|e| vec![None; e.len()]).collect();

    // Start states: the pieces of the spine-1 free interval that contains
    // curve parameter 1 (the traversal starts at P(1) matched to p_1).
    let host0 = spines.free[0]
        .iter()
        .position(|iv| iv.contains_with_eps(1.0, EPS_GEOM))
        .expect("vertex 1 lies on the curve, so its spine contains parameter 1");
    for (ei, e) in elems[0].iter().enumerate() {
        if e.host == host0 {
            cost[0][ei] = Some((0, None));
        }
    }

    for v in 2..=n {
        let mut raw: Vec<(f64, f64, Label)> = Vec::new();
        for u in 1..v {
            let entries: Vec<(ParamInterval, Label)> = elems[u - 1]
                .iter()
                .enumerate()
                .filter_map(|(ei, e)| {
                    cost[u - 1][ei].map(|(c, _)| {
                        (
                            e.interval(),
                            Label {
                                cost: c,
                                u: u as u32,
                                entry: ei as u32,
                            },
                        )
                    })
                })
                .collect();
            if entries.is_empty() {
                continue;
            }
            let row = strip_row(p, &spines, u, v, delta);
            let frontier = reach_through_strip(&row, &entries);
            for (iv, l) in frontier.pieces {
                raw.push((iv.lo, iv.hi, l));
            }
        }
        if raw.is_empty() {
            continue;
        }
        let env = lower_envelope(&raw);

        // Assign the envelope onto the elementary intervals of spine v.  No
        // envelope breakpoint falls strictly inside an elementary interval,
        // so the minimum over each interval is attained uniformly on it.
        let mut j = 0usize;
        for (ei, e) in elems[v - 1].iter().enumerate() {
            let t = e.interval();
            while j < env.len() {
                let iv = &env[j].0;
                let gone = iv.hi < t.lo || (iv.hi == t.lo && !(iv.closed_hi && t.closed_lo));
                if gone {
                    j += 1;
                } else {
                    break;
                }
            }
            let mut best: Option<Label> = None;
            for (iv, l) in env.iter().skip(j) {
                if iv.lo > t.hi || (iv.lo == t.hi && !(iv.closed_lo && t.closed_hi)) {
                    break;
                }
                if iv.overlaps(&t) {
                    best = Some(match best {
                        Some(b) => b.min(*l),
                        None => *l,
                    });
                }
            }
            if let Some(l) = best {
                let new = (l.cost + 1, Some((l.u, l.entry)));
                match cost[v - 1][ei] {
                    Some((c, _)) if c <= new.0 => {}
                    _ => cost[v - 1][ei] = Some(new),
                }
            }
        }
    }

    // Extract: the answer is the value at spine n, parameter n.  Snapping may
    // have nudged endpoint values by up to EPS_GEOM, so accept pieces within
    // that slack of parameter n and take the cheapest.
    let target = n as f64;
    let vi = n - 1;
    let mut end: Option<(u32, usize)> = None;
    for (ei, e) in elems[vi].iter().enumerate() {
        if e.interval().contains_with_eps(target, EPS_GEOM) {
            if let Some((c, _)) = cost[vi][ei] {
                if end.map_or(true, |(bc, _)| c < bc) {
                    end = Some((c, ei));
                }
            }
        }
    }
    let (final_cost, mut ei) = end.expect(
        "keeping every vertex is a feasible simplification, so the end state is reachable",
    );

    // Backtrack predecessors (source vertex, source entry interval).
    let mut indices = vec![n];
    let mut vtx = n;
    loop {
        let (_, pred) = cost[vtx - 1][ei].expect("backtracked state was assigned");
        match pred {
            Some((u, e)) => {
                vtx = u as usize;
                ei = e as usize;
                indices.push(vtx);
            }
            None => break,
        }
    }
    debug_assert_eq!(*indices.last().unwrap(), 1);
    indices.reverse();
    let link_count = indices.len() - 1;
    debug_assert_eq!(link_count as u32, final_cost);
    Ok(SimplificationResult {
        indices,
        link_count,
    })
}

/// Construct the vertex-restricted output curve from retained indices.
pub fn restricted_curve(p: &PolyCurve, indices: &[usize]) -> Result<PolyCurve> {
    let verts: Vec<Point> = indices.iter().map(|&i| p.vertex(i).clone()).collect();
    PolyCurve::new(verts)
}

/// The segment spanned by retained vertices `i -> j` of `p`.
pub fn link_segment(p: &PolyCurve, i: usize, j: usize) -> Segment {
    Segment::new(p.vertex(i).clone(), p.vertex(j).clone())
}
