//! Brute-force reference implementations ("oracles").
//!
//! These are deliberately simple and slow: they enumerate candidate
//! simplifications outright and validate each one with the decision
//! procedures.  They exist so that the production algorithms can be checked
//! against an independent ground truth on small instances, and they guard
//! themselves against combinatorial blow-up with an explicit budget.

use crate::frechet::{decide_frechet, segment_in_tube};
use crate::geom::{dist, Point, PolyCurve, Segment};
use crate::vr_frechet::SimplificationResult;
use crate::{Error, Result};

/// Size guard for the exponential oracles.
#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    /// Maximum number of curve vertices accepted by the subsequence oracles.
    pub max_n: usize,
    /// Maximum number of items accepted by the subset-sum oracle.
    pub max_items: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 9,
            max_items: 20,
        }
    }
}

fn check_budget(n: usize, budget: &OracleBudget) -> Result<()> {
    if n > budget.max_n {
        return Err(Error::OracleBudget(format!(
            "oracle accepts at most {} vertices, got {n}",
            budget.max_n
        )));
    }
    Ok(())
}

/// All `k`-element subsets of `0..m` in lexicographic order.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(m, k, 0, &mut cur, &mut out);
    out
}

fn subsequence(p: &PolyCurve, indices: &[usize]) -> PolyCurve {
    let verts: Vec<Point> = indices.iter().map(|&i| p.vertex(i).clone()).collect();
    PolyCurve::new(verts).expect("a vertex subsequence of a valid curve is a valid curve")
}

/// Candidate index sequences (1-based, always containing 1 and n) ordered by
/// increasing link count, then lexicographically.
fn candidates_by_link_count(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.saturating_sub(1)).flat_map(move |k| {
        combinations(n - 2, k).into_iter().map(move |interior| {
            let mut idx = Vec::with_capacity(k + 2);
            idx.push(1);
            idx.extend(interior.iter().map(|i| i + 2));
            idx.push(n);
            idx
        })
    })
}

/// Brute-force vertex-restricted min-link simplification under the Fréchet
/// distance: try every subsequence by increasing link count and return the
/// first one within tolerance.  Ties go to the lexicographically smallest
/// index sequence.
pub fn brute_vr_frechet(
    p: &PolyCurve,
    delta: f64,
    budget: &OracleBudget,
) -> Result<SimplificationResult> {
    check_budget(p.n(), budget)?;
    brute_vr(p, |q| decide_frechet(p, q, delta))
}

/// Brute-force vertex-restricted min-link simplification under the directed
/// Hausdorff distance (simplification to curve): a candidate is valid when
/// every link segment lies inside the `delta`-tube of the input curve.
pub fn brute_vr_hausdorff(
    p: &PolyCurve,
    delta: f64,
    budget: &OracleBudget,
) -> Result<SimplificationResult> {
    check_budget(p.n(), budget)?;
    brute_vr(p, |q| {
        let v = q.vertices();
        v.windows(2)
            .all(|w| segment_in_tube(&Segment::new(w[0].clone(), w[1].clone()), p, delta))
    })
}

fn brute_vr(p: &PolyCurve, valid: impl Fn(&PolyCurve) -> bool) -> Result<SimplificationResult> {
    let n = p.n();
    for indices in candidates_by_link_count(n) {
        let q = subsequence(p, &indices);
        if valid(&q) {
            let link_count = indices.len() - 1;
            return Ok(SimplificationResult {
                indices,
                link_count,
            });
        }
    }
    // Keeping every vertex gives distance 0, so the loop always returns for
    // any delta >= 0.
    unreachable!("the identity simplification is always valid");
}

/// Full-scan variant of [`brute_vr_frechet`]: inspects *every* subsequence
/// and keeps the best (fewest links, then lexicographically smallest), so it
/// exercises a different enumeration order than the increasing-size scan.
pub fn brute_vr_frechet_full_scan(
    p: &PolyCurve,
    delta: f64,
    budget: &OracleBudget,
) -> Result<SimplificationResult> {
    check_budget(p.n(), budget)?;
    let n = p.n();
    let interior = n - 2;
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u64..(1u64 << interior) {
        let mut indices = Vec::with_capacity(n);
        indices.push(1);
        for b in 0..interior {
            if mask & (1 << b) != 0 {
                indices.push(b + 2);
            }
        }
        indices.push(n);
        let better = match &best {
            Some(cur) => (indices.len(), &indices) < (cur.len(), cur),
            None => true,
        };
        if better && decide_frechet(p, &subsequence(p, &indices), delta) {
            best = Some(indices);
        }
    }
    let indices = best.expect("the identity simplification is always valid");
    let link_count = indices.len() - 1;
    Ok(SimplificationResult {
        indices,
        link_count,
    })
}

/// Discrete Fréchet distance between the vertex sequences of two curves
/// (coupling distance).  Upper-bounds the continuous Fréchet distance and
/// differs from it by at most the longer edge length.
pub fn discrete_frechet(p: &PolyCurve, q: &PolyCurve) -> f64 {
    let (a, b) = (p.vertices(), q.vertices());
    let (n, m) = (a.len(), b.len());
    let mut dp = vec![f64::INFINITY; n * m];
    for i in 0..n {
        for j in 0..m {
            let d = dist(a[i].as_slice(), b[j].as_slice());
            let reach = if i == 0 && j == 0 {
                0.0
            } else {
                let mut r = f64::INFINITY;
                if i > 0 {
                    r = r.min(dp[(i - 1) * m + j]);
                }
                if j > 0 {
                    r = r.min(dp[i * m + j - 1]);
                }
                if i > 0 && j > 0 {
                    r = r.min(dp[(i - 1) * m + j - 1]);
                }
                r
            };
            dp[i * m + j] = reach.max(d);
        }
    }
    dp[n * m - 1]
}

/// Insert vertices so that no edge of the result is longer than `step`.
/// The result traces exactly the same polyline.
pub fn densify(p: &PolyCurve, step: f64) -> PolyCurve {
    assert!(step > 0.0, "densification step must be positive");
    let verts = p.vertices();
    let mut out: Vec<Point> = vec![verts[0].clone()];
    for w in verts.windows(2) {
        let len = w[0].dist(&w[1]);
        let pieces = (len / step).ceil().max(1.0) as usize;
        for s in 1..=pieces {
            let t = s as f64 / pieces as f64;
            let coords: Vec<f64> = w[0]
                .as_slice()
                .iter()
                .zip(w[1].as_slice())
                .map(|(a, b)| a + t * (b - a))
                .collect();
            out.push(Point::new(coords));
        }
    }
    PolyCurve::new(out).expect("densified curve keeps at least two distinct vertices")
}

/// Exhaustive subset-sum: the lexicographically smallest (as a bitmask)
/// subset of `values` summing exactly to `target`, if one exists.
/// Bit `i` of the result selects `values[i]`.
pub fn subset_sum_brute(values: &[u64], target: u64, budget: &OracleBudget) -> Result<Option<u64>> {
    if values.len() > budget.max_items {
        return Err(Error::OracleBudget(format!(
            "subset-sum oracle accepts at most {} items, got {}",
            budget.max_items,
            values.len()
        )));
    }
    for mask in 0u64..(1u64 << values.len()) {
        let sum: u64 = values
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, v)| *v)
            .sum();
        if sum == target {
            return Ok(Some(mask));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(pts: &[&[f64]]) -> PolyCurve {
        PolyCurve::new(pts.iter().map(|c| Point::new(c.to_vec())).collect()).unwrap()
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let c = combinations(4, 2);
        assert_eq!(
            c,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn brute_frechet_peak_frozen() {
        let p = curve(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 0.0]]);
        let r = brute_vr_frechet(&p, 1.0, &OracleBudget::default()).unwrap();
        assert_eq!(r.indices, vec![1, 3]);
        let r = brute_vr_frechet(&p, 0.9, &OracleBudget::default()).unwrap();
        assert_eq!(r.indices, vec![1, 2, 3]);
    }

    #[test]
    fn both_enumeration_orders_agree() {
        let p = curve(&[
            &[0.0, 0.0],
            &[1.0, 0.9],
            &[2.0, -0.4],
            &[3.0, 0.7],
            &[4.0, 0.0],
        ]);
        for delta in [0.2, 0.5, 0.95, 2.0] {
            let a = brute_vr_frechet(&p, delta, &OracleBudget::default()).unwrap();
            let b = brute_vr_frechet_full_scan(&p, delta, &OracleBudget::default()).unwrap();
            assert_eq!(a, b, "delta={delta}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let verts: Vec<&[f64]> = vec![
            &[0.0, 0.0],
            &[1.0, 0.0],
            &[2.0, 0.0],
            &[3.0, 0.0],
            &[4.0, 0.0],
            &[5.0, 0.0],
            &[6.0, 0.0],
            &[7.0, 0.0],
            &[8.0, 0.0],
            &[9.0, 0.0],
        ];
        let p = curve(&verts);
        assert!(matches!(
            brute_vr_frechet(&p, 1.0, &OracleBudget::default()),
            Err(Error::OracleBudget(_))
        ));
    }

    #[test]
    fn discrete_frechet_frozen() {
        let p = curve(&[&[0.0, 0.0], &[2.0, 0.0]]);
        let q = curve(&[&[0.0, 1.0], &[1.0, 2.0], &[2.0, 1.0]]);
        // Every coupling pairs endpoints (distance 1 each) and must pair the
        // middle vertex (1,2) with one of p's endpoints, both at distance
        // sqrt(5), so the discrete Fréchet distance is exactly sqrt(5).
        assert!((discrete_frechet(&p, &q) - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(discrete_frechet(&p, &p), 0.0);
    }

    #[test]
    fn densify_preserves_endpoints_and_shortens_edges() {
        let p = curve(&[&[0.0, 0.0], &[3.0, 0.0], &[3.0, 2.0]]);
        let d = densify(&p, 0.5);
        let v = d.vertices();
        assert_eq!(v[0].as_slice(), &[0.0, 0.0]);
        assert_eq!(v[v.len() - 1].as_slice(), &[3.0, 2.0]);
        for w in v.windows(2) {
            assert!(w[0].dist(&w[1]) <= 0.5 + 1e-12);
        }
        assert_eq!(v.len(), 1 + 6 + 4);
    }

    #[test]
    fn subset_sum_brute_frozen() {
        let b = OracleBudget::default();
        assert_eq!(subset_sum_brute(&[1, 2, 4], 6, &b).unwrap(), Some(0b110));
        assert_eq!(subset_sum_brute(&[1, 2, 4], 7, &b).unwrap(), Some(0b111));
        assert_eq!(subset_sum_brute(&[1, 2, 4], 8, &b).unwrap(), None);
        assert_eq!(subset_sum_brute(&[], 0, &b).unwrap(), Some(0));
        assert_eq!(subset_sum_brute(&[5, 5], 5, &b).unwrap(), Some(0b01));
    }
}
