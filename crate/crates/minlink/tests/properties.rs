//! Randomized invariants checked with proptest.  These complement the
//! frozen-value unit tests: they assert relationships that must hold on
//! *every* input (optimum equality with brute force, approximation
//! guarantees, envelope semantics, exact round-trips) rather than specific
//! outputs on specific curves.

use minlink::corpus::{pairwise_distance_quantile, random_curve, random_subset_sum_for_gadget, seeded_rng};
use minlink::curve1d::simplify_curve_restricted_1d;
use minlink::frechet::{
    decide_frechet, frechet_distance, reach_through_strip, reach_through_strip_naive,
    segment_in_tube, FreeSpaceRow,
};
use minlink::gadget::{generate_gadget, solve_gadget, GadgetParams, SubsetSumInstance};
use minlink::geom::{ball_edge_free_interval, ParamInterval};
use minlink::hausdorff::simplify_vr_hausdorff;
use minlink::io::{curve_from_csv_str, curve_from_json_str, curve_to_csv_string, curve_to_json_string};
use minlink::nonrestricted::simplify_nonrestricted;
use minlink::oracle::{brute_vr_frechet, brute_vr_hausdorff, subset_sum_brute, OracleBudget};
use minlink::vr_frechet::{min_link_simplify_vr, restricted_curve, subdivide};
use minlink::{Error, Point, PolyCurve, Segment};
use proptest::prelude::*;

fn curve_from_values(values: &[f64]) -> PolyCurve {
    PolyCurve::new(values.iter().map(|&v| Point::new(vec![v])).collect()).unwrap()
}

/// Strategy for a vertex list with no two consecutive points equal, as
/// `PolyCurve` requires.
fn raw_vertices(dim: usize, max_n: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(
        prop::collection::vec(-50.0..50.0f64, dim..=dim),
        2..=max_n,
    )
    .prop_filter("no consecutive duplicates", |vs| {
        vs.windows(2).all(|w| w[0] != w[1])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// JSON serialization round-trips every vertex bit-for-bit.
    #[test]
    fn json_round_trip_is_exact(dim in 1usize..=3, verts in raw_vertices(2, 10)) {
        let verts: Vec<Vec<f64>> = verts
            .into_iter()
            .map(|v| v.into_iter().cycle().take(dim).collect())
            .collect();
        prop_assume!(verts.windows(2).all(|w| w[0] != w[1]));
        let curve = PolyCurve::new(verts.iter().map(|v| Point::new(v.clone())).collect()).unwrap();
        let text = curve_to_json_string(&curve);
        let parsed = curve_from_json_str(&text).unwrap();
        prop_assert!(parsed.warnings.is_empty());
        prop_assert_eq!(parsed.curve.n(), curve.n());
        for (a, b) in parsed.curve.vertices().iter().zip(curve.vertices()) {
            for (x, y) in a.0.iter().zip(&b.0) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    /// CSV serialization round-trips every vertex bit-for-bit (the writer
    /// uses the shortest representation that parses back to the same
    /// double).
    #[test]
    fn csv_round_trip_is_exact(verts in raw_vertices(2, 10)) {
        let curve = PolyCurve::new(verts.iter().map(|v| Point::new(v.clone())).collect()).unwrap();
        let text = curve_to_csv_string(&curve);
        let parsed = curve_from_csv_str(&text).unwrap();
        prop_assert!(parsed.warnings.is_empty());
        prop_assert_eq!(parsed.curve.n(), curve.n());
        for (a, b) in parsed.curve.vertices().iter().zip(curve.vertices()) {
            for (x, y) in a.0.iter().zip(&b.0) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }

    /// Consecutive duplicate vertices are collapsed with a warning, never
    /// silently kept and never fatal.
    #[test]
    fn duplicate_vertices_collapse_with_warning(
        verts in raw_vertices(2, 8),
        dup_at in 0usize..8,
    ) {
        let dup_at = dup_at % verts.len();
        let mut with_dup = verts.clone();
        with_dup.insert(dup_at, verts[dup_at].clone());
        // A duplicate of the last vertex inserted before it can make
        // first == last for 2-vertex inputs; that case is a closed curve
        // and is rejected elsewhere, so skip it here.
        prop_assume!(with_dup.first() != with_dup.last());
        let doc = serde_json::json!({ "dim": 2, "vertices": with_dup });
        let parsed = curve_from_json_str(&doc.to_string()).unwrap();
        prop_assert_eq!(parsed.curve.n(), verts.len());
        prop_assert_eq!(parsed.warnings.len(), 1);
        prop_assert!(parsed.warnings[0].contains("duplicate"));
    }

    /// `subdivide` computes the pointwise lower envelope: disjoint sorted
    /// pieces covering the union of the inputs, with the minimum covering
    /// label at each point.
    #[test]
    fn subdivide_is_lower_envelope(
        raw in prop::collection::vec((0.0..30.0f64, 0.01..10.0f64, 0u32..6), 1..12),
    ) {
        let pieces: Vec<(ParamInterval, u32)> = raw
            .iter()
            .map(|&(lo, w, l)| (ParamInterval::closed(lo, lo + w), l))
            .collect();
        let env = subdivide(&pieces);
        // Sorted and non-overlapping (interiors disjoint).
        for w in env.windows(2) {
            prop_assert!(w[0].0.hi <= w[1].0.lo + 1e-12);
        }
        // Interior points carry the minimum covering input label.
        for &(iv, label) in &env {
            if iv.width() < 1e-9 {
                continue;
            }
            let t = 0.5 * (iv.lo + iv.hi);
            let want = pieces
                .iter()
                .filter(|(p, _)| p.lo <= t && t <= p.hi)
                .map(|&(_, l)| l)
                .min();
            prop_assert_eq!(want, Some(label));
        }
        // Every input interval's midpoint is covered by some output piece.
        for &(iv, _) in &pieces {
            let t = 0.5 * (iv.lo + iv.hi);
            prop_assert!(
                env.iter().any(|(p, _)| p.lo - 1e-12 <= t && t <= p.hi + 1e-12),
                "midpoint {} of input not covered", t
            );
        }
    }

    /// The ball/edge free interval agrees with dense sampling of the
    /// distance function: sampled points strictly inside the ball land in
    /// the interval, and the interval's own points are inside the
    /// (epsilon-inflated) ball.
    #[test]
    fn ball_interval_matches_sampling(
        cx in -5.0..5.0f64, cy in -5.0..5.0f64,
        ax in -5.0..5.0f64, ay in -5.0..5.0f64,
        bx in -5.0..5.0f64, by in -5.0..5.0f64,
        r in 0.0..4.0f64,
    ) {
        prop_assume!((ax, ay) != (bx, by));
        let c = Point::new(vec![cx, cy]);
        let seg = Segment::new(Point::new(vec![ax, ay]), Point::new(vec![bx, by]));
        let iv = ball_edge_free_interval(&c, r, &seg);
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            let d = seg.eval(t).dist(&c);
            if d < r - 1e-7 {
                match iv {
                    None => prop_assert!(false, "t = {t} inside ball but interval empty"),
                    Some(iv) => prop_assert!(
                        iv.lo - 1e-7 <= t && t <= iv.hi + 1e-7,
                        "t = {t} (distance {d}) outside [{}, {}]", iv.lo, iv.hi
                    ),
                }
            }
        }
        if let Some(iv) = iv {
            for t in [iv.lo, 0.5 * (iv.lo + iv.hi), iv.hi] {
                let d = seg.eval(t).dist(&c);
                prop_assert!(d <= r + 1e-6, "interval point t = {t} at distance {d} > {r}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The free-space dynamic program returns exactly the brute-force
    /// optimum, and its output is certified feasible by the global
    /// Fréchet decision procedure.
    #[test]
    fn vr_frechet_dp_matches_oracle(seed in any::<u64>(), n in 4usize..=8, dim in 1usize..=3, qi in 0usize..3) {
        let mut rng = seeded_rng(seed);
        let p = random_curve(&mut rng, n, dim, 10.0);
        let delta = pairwise_distance_quantile(&p, [0.25, 0.5, 0.75][qi]);
        let dp = min_link_simplify_vr(&p, delta).unwrap();
        let brute = brute_vr_frechet(&p, delta, &OracleBudget::default()).unwrap();
        prop_assert_eq!(dp.link_count, brute.link_count);
        let simplified = restricted_curve(&p, &dp.indices).unwrap();
        prop_assert!(decide_frechet(&simplified, &p, delta + 1e-7 * (1.0 + delta)));
    }

    /// Increasing the tolerance never increases the optimal link count.
    #[test]
    fn vr_frechet_is_monotone_in_delta(seed in any::<u64>(), n in 4usize..=12, dim in 1usize..=3) {
        let mut rng = seeded_rng(seed);
        let p = random_curve(&mut rng, n, dim, 10.0);
        let d1 = pairwise_distance_quantile(&p, 0.25);
        let d2 = pairwise_distance_quantile(&p, 0.75);
        prop_assume!(d1 < d2);
        let m1 = min_link_simplify_vr(&p, d1).unwrap().link_count;
        let m2 = min_link_simplify_vr(&p, d2).unwrap().link_count;
        prop_assert!(m2 <= m1, "links grew from {m1} to {m2} as delta grew");
    }

    /// The directed-Hausdorff shortcut solver matches brute force, and
    /// every chosen link stays inside the tube around the whole curve.
    #[test]
    fn hausdorff_matches_oracle(seed in any::<u64>(), n in 4usize..=8, dim in 1usize..=3, qi in 0usize..3) {
        let mut rng = seeded_rng(seed);
        let p = random_curve(&mut rng, n, dim, 10.0);
        let delta = pairwise_distance_quantile(&p, [0.25, 0.5, 0.75][qi]);
        let got = simplify_vr_hausdorff(&p, delta).unwrap();
        let brute = brute_vr_hausdorff(&p, delta, &OracleBudget::default()).unwrap();
        prop_assert_eq!(got.link_count, brute.link_count);
        let verts = p.vertices();
        for w in got.indices.windows(2) {
            let seg = Segment::new(verts[w[0] - 1].clone(), verts[w[1] - 1].clone());
            prop_assert!(segment_in_tube(&seg, &p, delta));
        }
    }

    /// The computed Fréchet distance is symmetric, zero on identical
    /// curves, and consistent with the decision procedure on both sides.
    #[test]
    fn frechet_distance_consistent_with_decide(seed in any::<u64>(), n in 3usize..=8, m in 3usize..=8) {
        let mut rng = seeded_rng(seed);
        let p = random_curve(&mut rng, n, 2, 10.0);
        let q = random_curve(&mut rng, m, 2, 10.0);
        prop_assert_eq!(frechet_distance(&p, &p, 1e-9), 0.0);
        let d_pq = frechet_distance(&p, &q, 1e-9);
        let d_qp = frechet_distance(&q, &p, 1e-9);
        prop_assert!((d_pq - d_qp).abs() <= 1e-8 * (1.0 + d_pq));
        prop_assert!(decide_frechet(&p, &q, d_pq + 1e-6));
        if d_pq > 1e-5 {
            prop_assert!(!decide_frechet(&p, &q, d_pq - 1e-5));
        }
    }

    /// If a segment is accepted as lying in the delta-tube of a curve,
    /// densely sampled points of the segment really are within delta of
    /// the curve (up to the shared geometric epsilon).
    #[test]
    fn tube_acceptance_is_sound_under_sampling(seed in any::<u64>(), n in 3usize..=9, qi in 0usize..3) {
        let mut rng = seeded_rng(seed);
        let p = random_curve(&mut rng, n, 2, 10.0);
        let delta = pairwise_distance_quantile(&p, [0.25, 0.5, 0.75][qi]);
        let verts = p.vertices();
        let seg = Segment::new(verts[0].clone(), verts[n - 1].clone());
        prop_assume!(seg.length() > 0.0);
        if segment_in_tube(&seg, &p, delta) {
            for k in 0..=200 {
                let t = k as f64 / 200.0;
                let pt = seg.eval(t);
                let d = (0..n - 1)
                    .map(|i| {
                        minlink::geom::point_segment_distance(
                            pt.as_slice(),
                            verts[i].as_slice(),
                            verts[i + 1].as_slice(),
                        )
                    })
                    .fold(f64::INFINITY, f64::min);
                prop_assert!(d <= delta + 1e-6, "sampled point at distance {d} > delta = {delta}");
            }
        }
    }

    /// Batched strip reachability agrees with the single-entry reference
    /// walk: same covered top-side set, and the envelope label at any
    /// interior point is the best label whose own walk reaches it.
    #[test]
    fn strip_sweep_matches_naive_reference(seed in any::<u64>(), n in 3usize..=10, qi in 0usize..3) {
        let mut rng = seeded_rng(seed);
        let p = random_curve(&mut rng, n, 2, 10.0);
        let delta = pairwise_distance_quantile(&p, [0.25, 0.5, 0.75][qi]);
        let verts = p.vertices();
        let seg = Segment::new(verts[0].clone(), verts[n - 1].clone());
        let row = FreeSpaceRow::new(&p, &seg, delta);
        // Entries: the nonempty bottom free intervals, labeled by index.
        let entries: Vec<(ParamInterval, u32)> = row
            .bottom
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, iv)| (*iv, i as u32))
            .collect();
        prop_assume!(!entries.is_empty());
        let frontier = reach_through_strip(&row, &entries);
        let naive: Vec<Vec<ParamInterval>> = entries
            .iter()
            .map(|(iv, _)| reach_through_strip_naive(&row, iv))
            .collect();
        // Each frontier piece's interior points are reached by the entry
        // with the piece's label and by no smaller-labeled entry.
        for &(iv, label) in &frontier.pieces {
            if iv.width() < 3e-6 {
                continue;
            }
            let t = 0.5 * (iv.lo + iv.hi);
            let covering: Vec<u32> = entries
                .iter()
                .zip(&naive)
                .filter(|(_, ivs)| ivs.iter().any(|r| r.lo - 1e-7 <= t && t <= r.hi + 1e-7))
                .map(|((_, l), _)| *l)
                .collect();
            prop_assert_eq!(covering.iter().min(), Some(&label), "at t = {}", t);
        }
        // Conversely every naively reached point is on the frontier.
        for ivs in &naive {
            for r in ivs {
                if r.width() < 3e-6 {
                    continue;
                }
                let t = 0.5 * (r.lo + r.hi);
                prop_assert!(
                    frontier.pieces.iter().any(|(f, _)| f.lo - 1e-7 <= t && t <= f.hi + 1e-7),
                    "naively reached t = {} missing from frontier", t
                );
            }
        }
    }

    /// The 1D curve-restricted simplification is feasible, lies on the
    /// input curve with strictly increasing parameters, never beats the
    /// vertex-restricted optimum backwards (curve-restricted is at least
    /// as powerful), and does linear work.
    #[test]
    fn curve1d_invariants(values in prop::collection::vec(-10.0..10.0f64, 2..=12), f in 0.0..1.0f64) {
        prop_assume!(values.windows(2).all(|w| w[0] != w[1]));
        let p = curve_from_values(&values);
        let spread = values.iter().cloned().fold(f64::MIN, f64::max)
            - values.iter().cloned().fold(f64::MAX, f64::min);
        let delta = if f < 0.15 { 0.0 } else { f * spread * 0.5 };
        let sim = simplify_curve_restricted_1d(&p, delta).unwrap();
        let n = p.n();
        // Strictly increasing parameters from 1 to n, points on the curve.
        prop_assert_eq!(sim.vertices.first().map(|v| v.0), Some(1.0));
        prop_assert_eq!(sim.vertices.last().map(|v| v.0), Some(n as f64));
        prop_assert!(sim.vertices.windows(2).all(|w| w[0].0 < w[1].0));
        for &(t, v) in &sim.vertices {
            let on_curve = p.eval(t).unwrap().0[0];
            prop_assert!((on_curve - v).abs() <= 1e-9 * (1.0 + v.abs()));
        }
        // Feasible under the global Fréchet measure.
        let vp = sim.value_polyline().unwrap();
        prop_assert!(decide_frechet(&vp, &p, delta + 1e-7 * (1.0 + delta)));
        // Never worse than the vertex-restricted optimum, and linear work.
        let m_vr = min_link_simplify_vr(&p, delta).unwrap().link_count;
        prop_assert!(sim.link_count <= m_vr, "curve-restricted {} > vertex-restricted {}", sim.link_count, m_vr);
        prop_assert!(sim.visits <= 4 * n, "visits {} exceed 4n = {}", sim.visits, 4 * n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The ball-grid approximation keeps its promises: every link is
    /// within (1 + eps) * delta of its subcurve under the Fréchet
    /// distance, and the link count is at most 2 m + 1 for the
    /// vertex-restricted optimum m.
    #[test]
    fn nonrestricted_guarantee(seed in any::<u64>(), n in 4usize..=7, ei in 0usize..3) {
        let mut rng = seeded_rng(seed);
        let p = random_curve(&mut rng, n, 2, 10.0);
        let delta = pairwise_distance_quantile(&p, 0.5);
        let eps = [0.25, 0.5, 1.0][ei];
        let res = match simplify_nonrestricted(&p, delta, eps) {
            Ok(r) => r,
            Err(Error::Infeasible(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        let bound = (1.0 + eps) * delta + 1e-6;
        for w in res.points.windows(2).zip(res.ball_indices.windows(2)) {
            let (pts, balls) = w;
            let link = PolyCurve::new(vec![pts[0].clone(), pts[1].clone()]).unwrap();
            let sub = p.subcurve(balls[0] as f64, balls[1] as f64).unwrap();
            let d = frechet_distance(&link, &sub, 1e-9);
            prop_assert!(d <= bound, "link Fréchet {d} exceeds bound {bound}");
        }
        let m_vr = min_link_simplify_vr(&p, delta).unwrap().link_count;
        prop_assert!(res.link_count <= 2 * m_vr + 1, "{} > 2 * {} + 1", res.link_count, m_vr);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    /// The reduction gadget decides Subset Sum: the geometric solver finds
    /// a (2n - 1)-link simplification exactly when a subset with the
    /// target sum exists, and its reported path passes the exact verifier.
    #[test]
    fn gadget_agrees_with_subset_sum(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = seeded_rng(seed);
        let (values, target) = random_subset_sum_for_gadget(&mut rng, n, 12);
        let inst = SubsetSumInstance::new(values.clone(), target).unwrap();
        let params = GadgetParams::default_for(&inst);
        let gadget = generate_gadget(&inst, &params).unwrap();
        let solved = solve_gadget(&gadget).unwrap();
        let brute = subset_sum_brute(&values, target, &OracleBudget::default()).unwrap();
        prop_assert_eq!(solved.is_some(), brute.is_some());
        if let Some(path) = solved {
            let sum: u64 = path.chosen_values(&inst).iter().sum();
            prop_assert_eq!(sum, target);
        }
    }
}
