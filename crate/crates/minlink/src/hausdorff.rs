//! Vertex-restricted min-link simplification under the directed Hausdorff
//! distance (from the simplification to the input curve).
//!
//! A link `p_i -> p_j` is *valid* when the whole segment lies inside the
//! closed `delta`-tube around the input curve — equivalently, when every
//! point of the segment is within `delta` of some curve point.  Validity of
//! a link is independent of the rest of the simplification (the measure
//! carries no monotone traversal), so the minimum-link simplification is a
//! shortest path in the DAG of valid shortcuts, found by breadth-first
//! search.

use crate::frechet::segment_in_tube;
use crate::geom::{PolyCurve, Segment};
use crate::vr_frechet::SimplificationResult;
use crate::{Error, Result};

/// Is the shortcut `p_i -> p_j` (1-based, `i < j`) within the `delta`-tube?
pub fn valid_shortcut_hd(p: &PolyCurve, i: usize, j: usize, delta: f64) -> bool {
    let seg = Segment::new(p.vertex(i).clone(), p.vertex(j).clone());
    segment_in_tube(&seg, p, delta)
}

/// Validity of every forward shortcut `i < j` (1-based indices).
#[derive(Clone, Debug)]
pub struct ShortcutValidityMatrix {
    pub n: usize,
    valid: Vec<bool>,
}

impl ShortcutValidityMatrix {
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(1 <= i && i < j && j <= self.n);
        self.valid[(i - 1) * self.n + (j - 1)]
    }
}

/// Compute the full shortcut validity matrix.  Consecutive-vertex shortcuts
/// are curve edges and are always valid.
pub fn compute_validity(p: &PolyCurve, delta: f64) -> ShortcutValidityMatrix {
    let n = p.n();
    let mut valid = vec![false; n * n];
    for i in 1..n {
        for j in i + 1..=n {
            valid[(i - 1) * n + (j - 1)] =
                j == i + 1 || valid_shortcut_hd(p, i, j, delta);
        }
    }
    ShortcutValidityMatrix { n, valid }
}

/// Minimum-link vertex-restricted simplification under the directed
/// Hausdorff distance with tolerance `delta`.
///
/// Ties are broken deterministically: within each BFS layer the smallest
/// predecessor index wins, so the returned index sequence is the
/// lexicographically smallest among the layer-optimal paths.
pub fn simplify_vr_hausdorff(p: &PolyCurve, delta: f64) -> Result<SimplificationResult> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be a finite non-negative number, got {delta}"
        )));
    }
    let n = p.n();
    let matrix = compute_validity(p, delta);
    let mut pred: Vec<Option<usize>> = vec![None; n + 1];
    let mut seen = vec![false; n + 1];
    seen[1] = true;
    let mut frontier = vec![1usize];
    'bfs: while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for j in i + 1..=n {
                if !seen[j] && matrix.get(i, j) {
                    seen[j] = true;
                    pred[j] = Some(i);
                    if j == n {
                        break 'bfs;
                    }
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        frontier = next;
    }
    // The chain of curve edges is always valid, so vertex n is reached.
    assert!(seen[n], "the identity simplification reaches the end vertex");
    let mut indices = vec![n];
    let mut cur = n;
    while let Some(u) = pred[cur] {
        indices.push(u);
        cur = u;
    }
    indices.reverse();
    let link_count = indices.len() - 1;
    Ok(SimplificationResult {
        indices,
        link_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;
    use crate::oracle::{brute_vr_hausdorff, OracleBudget};

    fn curve(pts: &[&[f64]]) -> PolyCurve {
        PolyCurve::new(pts.iter().map(|c| Point::new(c.to_vec())).collect()).unwrap()
    }

    #[test]
    fn hausdorff_ignores_traversal_order() {
        // A switchback: the chord (0,0)-(0,3) runs straight up while the
        // curve makes a long excursion to x=3, so as a Fréchet link it
        // would need delta ~ 3.  Its farthest point from the curve is
        // (0, 0.75), at distance 0.75 from both horizontal pieces, so the
        // directed Hausdorff variant accepts it just above 0.75.
        let p = curve(&[
            &[0.0, 0.0],
            &[3.0, 0.0],
            &[3.0, 1.5],
            &[0.0, 1.5],
            &[0.0, 3.0],
        ]);
        assert!(valid_shortcut_hd(&p, 1, 5, 0.76));
        let r = simplify_vr_hausdorff(&p, 0.76).unwrap();
        assert_eq!(r.indices, vec![1, 5]);
        assert!(!valid_shortcut_hd(&p, 1, 5, 0.7));
        // The Fréchet variant indeed refuses this shortcut at that scale.
        let q = curve(&[&[0.0, 0.0], &[0.0, 3.0]]);
        assert!(!crate::frechet::decide_frechet(&p, &q, 0.76));
    }

    #[test]
    fn peak_frozen() {
        let p = curve(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 0.0]]);
        // The chord (0,0)-(2,0) lies on the curve's baseline; its most
        // distant point from the curve is the midpoint at distance
        // 1/sqrt(2) from the nearer slanted edge.
        let t = 0.5f64.sqrt();
        assert_eq!(
            simplify_vr_hausdorff(&p, t + 1e-9).unwrap().indices,
            vec![1, 3]
        );
        assert_eq!(
            simplify_vr_hausdorff(&p, t - 1e-3).unwrap().indices,
            vec![1, 2, 3]
        );
    }

    #[test]
    fn matches_the_brute_oracle() {
        let p = curve(&[
            &[0.0, 0.0],
            &[1.0, 0.9],
            &[2.1, -0.4],
            &[3.0, 0.6],
            &[4.2, -0.1],
            &[5.0, 0.8],
            &[6.0, 0.0],
        ]);
        for delta in [0.1, 0.3, 0.55, 0.8, 1.5, 4.0] {
            let fast = simplify_vr_hausdorff(&p, delta).unwrap();
            let slow = brute_vr_hausdorff(&p, delta, &OracleBudget::default()).unwrap();
            assert_eq!(
                fast.link_count, slow.link_count,
                "delta={delta}: BFS and oracle disagree"
            );
        }
    }

    #[test]
    fn validity_matrix_marks_edges_valid_at_zero() {
        let p = curve(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 0.0], &[3.0, 1.0]]);
        let m = compute_validity(&p, 0.0);
        assert!(m.get(1, 2) && m.get(2, 3) && m.get(3, 4));
        assert!(!m.get(1, 3));
        assert!(!m.get(1, 4));
    }
}
