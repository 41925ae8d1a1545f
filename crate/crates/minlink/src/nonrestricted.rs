//! Non-restricted min-link simplification under the Fréchet distance, up to
//! a (1 + eps) factor in the tolerance.
//!
//! Output vertices may be arbitrary points, not just input vertices.  The
//! continuum of candidate positions is discretised: around every interior
//! curve vertex `p_i` a lattice of side `eps * delta / (2 sqrt(d))`,
//! anchored at `p_i`, is intersected with the open ball `B(p_i, delta)`, and
//! the corners of the lattice cells that meet the ball become candidate
//! vertices.  Any point within `delta` of `p_i` is then within
//! `eps * delta / 2` of a candidate.  A candidate path from `p_1` to `p_n`
//! is searched by breadth-first search, where a link from candidate `x`
//! (ball `i`) to candidate `y` (ball `j > i`) is *valid* when the segment
//! `(x, y)` is within `(1 + eps/2) * delta` Fréchet distance of the
//! subchain `P[i..j]`.  Chaining link matchings at the shared endpoints
//! shows the returned polyline is within `(1 + eps/2) * delta <=
//! (1 + eps) * delta` of the whole curve, and the search uses at most
//! `2m + 1` links when the true non-restricted optimum at `delta` uses `m`.
//!
//! Validity checks are the hot path, so each source/target ball pair is
//! classified once: links whose endpoints stay close to the pair's chord
//! are accepted or rejected wholesale from the chord's Fréchet distance
//! (the Fréchet distance between two segments with paired endpoints is the
//! larger endpoint displacement, so moving endpoints by at most `r` moves
//! the distance by at most `r`); most of the remainder is accepted by
//! re-using a monotone threading witness computed for the chord; only the
//! stragglers pay for an exact decision.  Every shortcut in practice is
//! resolved identically to the unpruned graph — a property the tests check
//! by building the full graph explicitly.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::collections::HashMap;

use crate::frechet::decide_frechet_segment;
use crate::geom::{
    ball_segment_interval, point_segment_distance, point_segment_distance_sq, Point, PolyCurve,
    Segment, EPS_GEOM,
};
use crate::{Error, Result};

/// The candidate positions ("grid corners") for one ball.
#[derive(Clone, Debug)]
pub struct BallGrid {
    pub center: Point,
    /// Lattice cell side: `eps * delta / (2 sqrt(d))`.
    pub side: f64,
    /// Candidate points, sorted lexicographically by coordinates.
    pub corners: Vec<Point>,
}

/// Enumerate the corners of all lattice cells (side `eps*delta/(2 sqrt d)`,
/// anchored at `center`) whose closed extent intersects the *open* ball
/// `B(center, delta)`.
pub fn ball_grid_corners(center: &Point, delta: f64, eps: f64) -> BallGrid {
    assert!(delta > 0.0 && eps > 0.0);
    let d = center.dim();
    let side = eps * delta / (2.0 * (d as f64).sqrt());
    let m = (delta / side).ceil() as i64;
    let mut ids: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut idx = vec![-m; d];
    'cells: loop {
        // Minimum squared distance from the cell [idx, idx+1]*side to the
        // ball center (the lattice is anchored at the center).
        let mut dd = 0.0;
        for &i in &idx {
            let lo = i as f64 * side;
            let hi = (i + 1) as f64 * side;
            let c = if lo > 0.0 {
                lo
            } else if hi < 0.0 {
                -hi
            } else {
                0.0
            };
            dd += c * c;
        }
        if dd < delta * delta {
            for mask in 0..(1u32 << d) {
                let id: Vec<i64> = idx
                    .iter()
                    .enumerate()
                    .map(|(j, &i)| i + ((mask >> j) & 1) as i64)
                    .collect();
                ids.insert(id);
            }
        }
        for j in (0..d).rev() {
            idx[j] += 1;
            if idx[j] < m {
                continue 'cells;
            }
            idx[j] = -m;
        }
        break;
    }
    let corners = ids
        .into_iter()
        .map(|id| {
            Point::new(
                id.iter()
                    .zip(center.as_slice())
                    .map(|(&i, &c)| c + i as f64 * side)
                    .collect(),
            )
        })
        .collect();
    BallGrid {
        center: center.clone(),
        side,
        corners,
    }
}

/// The link-validity test of the search: is the segment within Fréchet
/// distance `(1 + eps/2) * delta` of the subchain `chain`?
pub fn validate(seg: &Segment, chain: &[Point], delta: f64, eps: f64) -> bool {
    decide_frechet_segment(seg, chain, (1.0 + 0.5 * eps) * delta)
}

/// A candidate node: `ball` is the 1-based curve vertex index (1 is the
/// source `p_1`, `n` the sink `p_n`, with a single corner each); `corner`
/// indexes the ball's corner list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NodeId {
    pub ball: usize,
    pub corner: usize,
}

/// A non-restricted simplification: `points[k]` lies in the ball of input
/// vertex `ball_indices[k]`, and the link `points[k] -> points[k+1]` is
/// within `(1 + eps/2) * delta` of the input subchain between those
/// vertices.
#[derive(Clone, Debug)]
pub struct NonRestrictedResult {
    pub points: Vec<Point>,
    pub ball_indices: Vec<usize>,
    pub link_count: usize,
}

impl NonRestrictedResult {
    pub fn polyline(&self) -> Result<PolyCurve> {
        PolyCurve::new(self.points.clone())
    }
}

/// Per ball-pair classification data shared by all candidate links of the
/// pair (see the module docs).
struct PairInfo {
    /// Valid whenever `max(ax, by) <= accept`.
    accept: f64,
    /// Invalid whenever `max(ax, by) < reject`.
    reject: f64,
    /// Monotone chord-threading parameters for the interior vertices at the
    /// search threshold, if the chord itself threads.
    witness: Option<Vec<f64>>,
    /// Interior chain vertex (index into `chain`) that last caused a full
    /// rejection: invalid links of one pair overwhelmingly fail at the
    /// same vertex, so testing it first rejects in O(d) instead of
    /// O(chain * d).
    kill: Cell<Option<usize>>,
}

fn classify_pair(chain: &[Point], thr: f64) -> PairInfo {
    let (a, b) = (&chain[0], &chain[chain.len() - 1]);
    if chain.len() == 2 {
        // A single edge: the Fréchet distance of any candidate link to it is
        // exactly max(ax, by) < thr, so everything is accepted.
        return PairInfo {
            accept: thr,
            reject: 0.0,
            witness: Some(Vec::new()),
            kill: Cell::new(None),
        };
    }
    let interior = &chain[1..chain.len() - 1];
    // Bracket the chord's Fréchet distance to the chain.
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    for q in interior {
        lo = lo.max(point_segment_distance(
            q.as_slice(),
            a.as_slice(),
            b.as_slice(),
        ));
        hi = hi.max(q.dist(a)).max(q.dist(b));
    }
    let chord = Segment::new(a.clone(), b.clone());
    let tol = (1e-9 * (1.0 + hi)).max(1e-12);
    let (mut blo, mut bhi) = (lo, hi.max(lo));
    while bhi - blo > tol {
        let mid = 0.5 * (blo + bhi);
        if decide_frechet_segment(&chord, chain, mid) {
            bhi = mid;
        } else {
            blo = mid;
        }
    }
    let f0 = 0.5 * (blo + bhi);
    // The margin absorbs both the bisection bracket and the epsilon slack
    // inside the decision procedure itself.
    let margin = 0.5 * (bhi - blo) + 1e-8 * (1.0 + hi);

    // Chord threading witness at thr: forward maxima / backward minima of
    // the per-vertex free intervals, taking midpoints (both passes are
    // monotone, so the midpoints are monotone too).
    let mut witness = None;
    let mut fwd = Vec::with_capacity(interior.len());
    let mut running = 0.0f64;
    let mut ok = true;
    for q in interior {
        match ball_segment_interval(&q.0, thr, &a.0, &b.0) {
            Some((qlo, qhi)) => {
                running = running.max(qlo);
                if running > qhi {
                    ok = false;
                    break;
                }
                fwd.push((running, qhi));
            }
            None => {
                ok = false;
                break;
            }
        }
    }
    if ok {
        let mut ts = vec![0.0; interior.len()];
        let mut back = 1.0f64;
        for (k, &(flo, fhi)) in fwd.iter().enumerate().rev() {
            back = back.min(fhi);
            debug_assert!(flo <= back + 1e-9);
            ts[k] = 0.5 * (flo + back.max(flo));
        }
        witness = Some(ts);
    }
    PairInfo {
        accept: thr - (f0 + margin),
        reject: (f0 - margin) - thr,
        witness,
        kill: Cell::new(None),
    }
}

/// Does the chord witness certify the link `(x, y)` at threshold `thr`?
fn witness_ok(x: &Point, y: &Point, ts: &[f64], chain: &[Point], thr: f64) -> bool {
    debug_assert_eq!(ts.len() + 2, chain.len());
    let thr2 = thr * thr;
    for (t, q) in ts.iter().zip(&chain[1..chain.len() - 1]) {
        let mut dd = 0.0;
        for j in 0..x.dim() {
            let z = x.0[j] + t * (y.0[j] - x.0[j]);
            let e = z - q.0[j];
            dd += e * e;
        }
        if dd > thr2 {
            return false;
        }
    }
    true
}

/// Full validity cascade for one candidate link.
fn link_valid(x: &Point, ax: f64, y: &Point, by: f64, info: &PairInfo, chain: &[Point], thr: f64) -> bool {
    let m = ax.max(by);
    if m <= info.accept {
        return true;
    }
    if m < info.reject {
        return false;
    }
    // The cached kill vertex rejects most invalid links in O(d): a chain
    // vertex farther from the segment than the (doubly epsilon-inflated)
    // threshold makes any matching impossible.  Doubling the inflation
    // keeps the shortcut strictly sound against the single inflation
    // inside the decision procedure.
    let cut = thr + 2.0 * EPS_GEOM;
    if let Some(k) = info.kill.get() {
        if point_segment_distance_sq(chain[k].as_slice(), x.as_slice(), y.as_slice()) > cut * cut {
            return false;
        }
    }
    if let Some(ts) = &info.witness {
        if witness_ok(x, y, ts, chain, thr) {
            return true;
        }
    }
    if decide_frechet_segment(&Segment::new(x.clone(), y.clone()), chain, thr) {
        return true;
    }
    // Cache the farthest interior vertex for future O(d) rejections.
    // Coverage failures of one pair cluster on one vertex; an
    // ordering-only failure (every vertex near the segment, free
    // intervals out of order) leaves the cache unchanged.
    let mut best = (0usize, 0.0f64);
    for (k, q) in chain.iter().enumerate().skip(1).take(chain.len().saturating_sub(2)) {
        let dd = point_segment_distance_sq(q.as_slice(), x.as_slice(), y.as_slice());
        if dd > best.1 {
            best = (k, dd);
        }
    }
    if best.1 > cut * cut {
        info.kill.set(Some(best.0));
    }
    false
}

/// Min-link non-restricted simplification of `p`, with tolerance inflated
/// by at most `(1 + eps)`.  Ties are broken deterministically: the BFS
/// assigns each candidate the lexicographically smallest (ball, corner)
/// predecessor among the earliest layer that reaches it.
pub fn simplify_nonrestricted(p: &PolyCurve, delta: f64, eps: f64) -> Result<NonRestrictedResult> {
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "the approximate variant needs a positive tolerance, got {delta}"
        )));
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "the approximation parameter must be positive, got {eps}"
        )));
    }
    let n = p.n();
    let verts = p.vertices();
    let thr = (1.0 + 0.5 * eps) * delta;
    if n == 2 {
        return Ok(NonRestrictedResult {
            points: vec![verts[0].clone(), verts[1].clone()],
            ball_indices: vec![1, 2],
            link_count: 1,
        });
    }
    let grids: Vec<BallGrid> = (2..n)
        .map(|i| ball_grid_corners(&verts[i - 1], delta, eps))
        .collect();
    let node_point = |node: NodeId| -> &Point {
        if node.ball == 1 {
            &verts[0]
        } else if node.ball == n {
            &verts[n - 1]
        } else {
            &grids[node.ball - 2].corners[node.corner]
        }
    };

    let mut reached: Vec<Vec<bool>> = grids.iter().map(|g| vec![false; g.corners.len()]).collect();
    let mut preds: Vec<Vec<Option<NodeId>>> =
        grids.iter().map(|g| vec![None; g.corners.len()]).collect();
    let mut pair_cache: HashMap<(usize, usize), PairInfo> = HashMap::new();

    let mut frontier = vec![NodeId { ball: 1, corner: 0 }];
    for layer in 0..(2 * n + 3) {
        // Can any frontier node see the sink?  (Checked first so a layer
        // that reaches the sink does not waste work expanding elsewhere.)
        for &x in &frontier {
            let chain = &verts[x.ball - 1..n];
            let valid = if x.ball + 1 == n {
                true // a single curve edge: max(ax, 0) < thr
            } else {
                let info = pair_cache
                    .entry((x.ball, n))
                    .or_insert_with(|| classify_pair(chain, thr));
                let xp = node_point(x);
                let ax = xp.dist(&verts[x.ball - 1]);
                link_valid(xp, ax, &verts[n - 1], 0.0, info, chain, thr)
            };
            if valid {
                // Reconstruct: x's predecessor chain, then the sink.
                let mut rev = vec![NodeId { ball: n, corner: 0 }, x];
                let mut cur = x;
                while cur.ball != 1 {
                    cur = preds[cur.ball - 2][cur.corner]
                        .expect("frontier nodes have assigned predecessors");
                    rev.push(cur);
                }
                rev.reverse();
                let points: Vec<Point> = rev.iter().map(|&nd| node_point(nd).clone()).collect();
                let ball_indices: Vec<usize> = rev.iter().map(|nd| nd.ball).collect();
                let link_count = points.len() - 1;
                debug_assert_eq!(link_count, layer + 1);
                return Ok(NonRestrictedResult {
                    points,
                    ball_indices,
                    link_count,
                });
            }
        }

        // Expand interior balls.
        let mut new_frontier: Vec<NodeId> = Vec::new();
        for tb in 2..n {
            let gi = tb - 2;
            let mut remaining: Vec<usize> = (0..grids[gi].corners.len())
                .filter(|&c| !reached[gi][c])
                .collect();
            if remaining.is_empty() {
                continue;
            }
            let mut gstart = 0;
            while gstart < frontier.len() && !remaining.is_empty() {
                let sb = frontier[gstart].ball;
                let mut gend = gstart;
                while gend < frontier.len() && frontier[gend].ball == sb {
                    gend += 1;
                }
                let group = &frontier[gstart..gend];
                gstart = gend;
                if sb >= tb {
                    continue;
                }
                let chain = &verts[sb - 1..tb];
                if sb + 1 == tb {
                    // Adjacent balls: chain is one edge, every link valid.
                    let x = group[0];
                    for &c in &remaining {
                        reached[gi][c] = true;
                        preds[gi][c] = Some(x);
                        new_frontier.push(NodeId { ball: tb, corner: c });
                    }
                    remaining.clear();
                    continue;
                }
                let info = pair_cache
                    .entry((sb, tb))
                    .or_insert_with(|| classify_pair(chain, thr));
                // One-sided Hausdorff bounds rule candidates out in O(1)
                // per pair.  Sliding one endpoint of a segment by r moves
                // every point of it by at most r (the other endpoint is
                // fixed and interpolation is linear), so with hx = max
                // distance of the interior chain vertices to seg(x,
                // t-center) and hy = the same to seg(s-center, y):
                //
                //   frechet(seg(x, y), chain) >= hx - by  and  >= hy - ax.
                //
                // A source with hx > 2*thr can never beat by < thr and is
                // dropped for the whole target ball; the per-pair forms
                // are checked in the scan below.  The small margin keeps
                // every cut strictly sound against the epsilon slack
                // inside the decision procedure, so the pruned search
                // resolves every link exactly like the unpruned graph.
                let guard = 1e-7 * (1.0 + thr);
                let filter_cut = 2.0 * thr + guard;
                let tcenter = &verts[tb - 1];
                let sources: Vec<(NodeId, f64, f64)> = group
                    .iter()
                    .filter_map(|&x| {
                        let xp = node_point(x);
                        let hx = chain[1..chain.len() - 1]
                            .iter()
                            .map(|q| {
                                point_segment_distance(
                                    q.as_slice(),
                                    xp.as_slice(),
                                    tcenter.as_slice(),
                                )
                            })
                            .fold(0.0f64, f64::max);
                        (hx <= filter_cut).then(|| (x, xp.dist(&verts[sb - 1]), hx))
                    })
                    .collect();
                if sources.is_empty() {
                    continue;
                }
                let scenter = &verts[sb - 1];
                remaining.retain(|&c| {
                    let yp = &grids[gi].corners[c];
                    // Symmetric per-target bound.
                    let hy = chain[1..chain.len() - 1]
                        .iter()
                        .map(|q| {
                            point_segment_distance(q.as_slice(), scenter.as_slice(), yp.as_slice())
                        })
                        .fold(0.0f64, f64::max);
                    if hy > filter_cut {
                        return true; // keep for later source balls
                    }
                    let by = yp.dist(tcenter);
                    for &(x, ax, hx) in &sources {
                        if hx - by > thr + guard || hy - ax > thr + guard {
                            continue;
                        }
                        if link_valid(node_point(x), ax, yp, by, info, chain, thr) {
                            reached[gi][c] = true;
                            preds[gi][c] = Some(x);
                            new_frontier.push(NodeId { ball: tb, corner: c });
                            return false;
                        }
                    }
                    true
                });
            }
        }
        if new_frontier.is_empty() {
            return Err(Error::Infeasible(
                "candidate search exhausted without reaching the end vertex".into(),
            ));
        }
        new_frontier.sort_unstable();
        frontier = new_frontier;
    }
    Err(Error::Infeasible(
        "candidate search exceeded its layer bound".into(),
    ))
}

/// The fully materialised candidate graph (for auditing the lazy search on
/// small instances): every node and every valid edge, discovered without
/// any pruning shortcuts.
pub struct ShortcutGraph {
    pub nodes: Vec<NodeId>,
    /// `adj[i]`: indices into `nodes` of the valid successors of node `i`,
    /// ascending.
    pub adj: Vec<Vec<usize>>,
}

/// Build the unpruned candidate graph by testing every forward node pair
/// with the exact decision procedure.
pub fn build_full_graph(p: &PolyCurve, delta: f64, eps: f64) -> (ShortcutGraph, Vec<BallGrid>) {
    let n = p.n();
    let verts = p.vertices();
    let thr = (1.0 + 0.5 * eps) * delta;
    let grids: Vec<BallGrid> = (2..n)
        .map(|i| ball_grid_corners(&verts[i - 1], delta, eps))
        .collect();
    let mut nodes = vec![NodeId { ball: 1, corner: 0 }];
    for (gi, g) in grids.iter().enumerate() {
        for c in 0..g.corners.len() {
            nodes.push(NodeId {
                ball: gi + 2,
                corner: c,
            });
        }
    }
    nodes.push(NodeId { ball: n, corner: 0 });
    let point = |nd: NodeId| -> &Point {
        match nd.ball {
            1 => &verts[0],
            b if b == n => &verts[n - 1],
            b => &grids[b - 2].corners[nd.corner],
        }
    };
    let adj = nodes
        .iter()
        .map(|&a| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(_, &b)| {
                    b.ball > a.ball
                        && decide_frechet_segment(
                            &Segment::new(point(a).clone(), point(b).clone()),
                            &verts[a.ball - 1..b.ball],
                            thr,
                        )
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    (ShortcutGraph { nodes, adj }, grids)
}

/// Breadth-first search over the full graph, breaking ties exactly like the
/// lazy search: each node's predecessor is its lexicographically smallest
/// discoverer in the earliest layer.  Returns the node path from source to
/// sink.
pub fn bfs_full(g: &ShortcutGraph) -> Option<Vec<NodeId>> {
    let n_nodes = g.nodes.len();
    let sink = n_nodes - 1;
    let mut pred: Vec<Option<usize>> = vec![None; n_nodes];
    let mut seen = vec![false; n_nodes];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &j in &g.adj[i] {
            if !seen[j] {
                seen[j] = true;
                pred[j] = Some(i);
                if j == sink {
                    let mut path = vec![g.nodes[j]];
                    let mut cur = j;
                    while let Some(u) = pred[cur] {
                        path.push(g.nodes[u]);
                        cur = u;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(j);
            }
        }
    }
    None
}
