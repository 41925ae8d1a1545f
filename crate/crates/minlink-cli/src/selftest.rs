//! Seeded end-to-end self-checks: every solver against the bundled
//! brute-force oracles on small random corpora, plus the reduction-curve
//! round trip.  One line per check; any failure exits nonzero.

use std::time::Instant;

use minlink::corpus::{
    pairwise_distance_quantile, random_curve, random_subset_sum_for_gadget, seeded_rng,
};
use minlink::curve1d::simplify_curve_restricted_1d;
use minlink::frechet::{decide_frechet, frechet_distance, segment_in_tube};
use minlink::gadget::{
    generate_gadget, solve_gadget, verify_simplification, GadgetParams, SubsetSumInstance,
};
use minlink::hausdorff::simplify_vr_hausdorff;
use minlink::io::{curve_from_csv_str, curve_from_json_str, curve_to_csv_string, curve_to_json_string};
use minlink::nonrestricted::simplify_nonrestricted;
use minlink::oracle::{brute_vr_frechet, brute_vr_hausdorff, subset_sum_brute, OracleBudget};
use minlink::vr_frechet::{link_segment, min_link_simplify_vr, restricted_curve};
use minlink::{Error, Result};

pub fn run(seed: u64) -> Result<()> {
    let checks: &[(&str, fn(u64) -> std::result::Result<(), String>)] = &[
        ("vertex-frechet matches the brute-force oracle", check_vertex_frechet),
        ("vertex-hausdorff matches the brute-force oracle", check_hausdorff),
        ("nonrestricted links respect the (1+eps) guarantee", check_nonrestricted),
        ("curve-restricted 1D greedy is feasible and linear", check_curve1d),
        ("reduction gadget decides Subset Sum", check_gadget),
        ("curve JSON and CSV round-trip", check_io),
    ];
    let mut failures = 0;
    for (name, check) in checks {
        let started = Instant::now();
        match check(seed) {
            Ok(()) => {
                println!("ok   {name} ({:.0} ms)", started.elapsed().as_secs_f64() * 1e3);
            }
            Err(detail) => {
                failures += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failures > 0 {
        Err(Error::InvalidInput(format!(
            "{failures} of {} self-test checks failed",
            checks.len()
        )))
    } else {
        println!("all {} self-test checks passed", checks.len());
        Ok(())
    }
}

fn check_vertex_frechet(seed: u64) -> std::result::Result<(), String> {
    let mut rng = seeded_rng(seed.wrapping_add(1));
    let budget = OracleBudget::default();
    for case in 0..18 {
        let dim = 1 + case % 3;
        let n = 4 + case % 5;
        let p = random_curve(&mut rng, n, dim, 10.0);
        let delta = pairwise_distance_quantile(&p, 0.5);
        let got = min_link_simplify_vr(&p, delta).map_err(|e| e.to_string())?;
        let want = brute_vr_frechet(&p, delta, &budget).map_err(|e| e.to_string())?;
        if got.link_count != want.link_count {
            return Err(format!(
                "case {case}: solver found {} links, oracle {}",
                got.link_count, want.link_count
            ));
        }
        let q = restricted_curve(&p, &got.indices).map_err(|e| e.to_string())?;
        if !decide_frechet(&p, &q, delta + 1e-7 * (1.0 + delta)) {
            return Err(format!("case {case}: output is not within delta"));
        }
    }
    Ok(())
}

fn check_hausdorff(seed: u64) -> std::result::Result<(), String> {
    let mut rng = seeded_rng(seed.wrapping_add(2));
    let budget = OracleBudget::default();
    for case in 0..18 {
        let dim = 1 + case % 3;
        let n = 4 + case % 5;
        let p = random_curve(&mut rng, n, dim, 10.0);
        let delta = pairwise_distance_quantile(&p, 0.5);
        let got = simplify_vr_hausdorff(&p, delta).map_err(|e| e.to_string())?;
        let want = brute_vr_hausdorff(&p, delta, &budget).map_err(|e| e.to_string())?;
        if got.link_count != want.link_count {
            return Err(format!(
                "case {case}: solver found {} links, oracle {}",
                got.link_count, want.link_count
            ));
        }
        for w in got.indices.windows(2) {
            if !segment_in_tube(&link_segment(&p, w[0], w[1]), &p, delta) {
                return Err(format!("case {case}: link {}-{} leaves the tube", w[0], w[1]));
            }
        }
    }
    Ok(())
}

fn check_nonrestricted(seed: u64) -> std::result::Result<(), String> {
    let mut rng = seeded_rng(seed.wrapping_add(3));
    let budget = OracleBudget::default();
    let eps = 0.5;
    for case in 0..8 {
        let dim = 1 + case % 3;
        let n = 4 + case % 4;
        let p = random_curve(&mut rng, n, dim, 10.0);
        let delta = pairwise_distance_quantile(&p, 0.5);
        let r = match simplify_nonrestricted(&p, delta, eps) {
            Ok(r) => r,
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let bound = (1.0 + eps) * delta + 1e-6;
        for k in 0..r.link_count {
            let link = minlink::Segment::new(r.points[k].clone(), r.points[k + 1].clone());
            let sub = p
                .subcurve(r.ball_indices[k] as f64, r.ball_indices[k + 1] as f64)
                .map_err(|e| e.to_string())?;
            let d = frechet_distance(&link.to_curve(), &sub, 1e-9);
            if d > bound {
                return Err(format!(
                    "case {case}: link {k} at distance {d:.6} exceeds the bound {bound:.6}"
                ));
            }
        }
        let m_vr = brute_vr_frechet(&p, delta, &budget).map_err(|e| e.to_string())?.link_count;
        if r.link_count > 2 * m_vr + 1 {
            return Err(format!(
                "case {case}: {} links exceeds 2*{m_vr}+1",
                r.link_count
            ));
        }
    }
    Ok(())
}

fn check_curve1d(seed: u64) -> std::result::Result<(), String> {
    let mut rng = seeded_rng(seed.wrapping_add(4));
    let budget = OracleBudget::default();
    for case in 0..20 {
        let n = 3 + case % 7;
        let p = random_curve(&mut rng, n, 1, 5.0);
        let delta = if case % 4 == 0 { 0.0 } else { pairwise_distance_quantile(&p, 0.4) };
        let r = simplify_curve_restricted_1d(&p, delta).map_err(|e| e.to_string())?;
        if !r.vertices.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(format!("case {case}: parameters are not strictly increasing"));
        }
        let q = r.value_polyline().map_err(|e| e.to_string())?;
        if !decide_frechet(&p, &q, delta + 1e-7 * (1.0 + delta)) {
            return Err(format!("case {case}: output is not within delta"));
        }
        let m_vr = brute_vr_frechet(&p, delta, &budget).map_err(|e| e.to_string())?.link_count;
        if r.link_count > m_vr {
            return Err(format!(
                "case {case}: curve-restricted used {} links, vertex-restricted needs {m_vr}",
                r.link_count
            ));
        }
        if r.visits > 4 * n {
            return Err(format!("case {case}: {} visits on {n} vertices", r.visits));
        }
    }
    Ok(())
}

fn check_gadget(seed: u64) -> std::result::Result<(), String> {
    let budget = OracleBudget::default();
    // The reference instance, both hole variants.
    let inst = SubsetSumInstance::new(vec![1, 2, 4], 6).map_err(|e| e.to_string())?;
    for nondegenerate in [false, true] {
        let mut params = GadgetParams::default_for(&inst);
        if nondegenerate {
            params = params.with_nondegenerate_zeta();
        }
        let curve = generate_gadget(&inst, &params).map_err(|e| e.to_string())?;
        let path = solve_gadget(&curve)
            .map_err(|e| e.to_string())?
            .ok_or("reference instance must be solvable")?;
        if path.chosen_values(&curve.inst) != vec![2, 4] {
            return Err("reference instance chose the wrong subset".into());
        }
        let report = verify_simplification(&curve, &path);
        if !report.ok {
            return Err(format!("reference path failed verification: {:?}", report.violations));
        }
    }
    // Random small instances agree with the combinatorial oracle.
    let mut rng = seeded_rng(seed.wrapping_add(5));
    for case in 0..8 {
        let (values, target) = random_subset_sum_for_gadget(&mut rng, 2 + case % 4, 12);
        let inst = SubsetSumInstance::new(values.clone(), target).map_err(|e| e.to_string())?;
        let curve = generate_gadget(&inst, &GadgetParams::default_for(&inst))
            .map_err(|e| e.to_string())?;
        let geometric = solve_gadget(&curve).map_err(|e| e.to_string())?;
        let combinatorial =
            subset_sum_brute(&values, target, &budget).map_err(|e| e.to_string())?;
        if geometric.is_some() != combinatorial.is_some() {
            return Err(format!(
                "case {case}: A={values:?}, B={target}: geometric says {}, oracle says {}",
                geometric.is_some(),
                combinatorial.is_some()
            ));
        }
    }
    Ok(())
}

fn check_io(seed: u64) -> std::result::Result<(), String> {
    let mut rng = seeded_rng(seed.wrapping_add(6));
    for case in 0..6 {
        let p = random_curve(&mut rng, 5 + case, 1 + case % 3, 100.0);
        let via_json = curve_from_json_str(&curve_to_json_string(&p))
            .map_err(|e| e.to_string())?
            .curve;
        if via_json != p {
            let diff = p
                .vertices()
                .iter()
                .zip(via_json.vertices())
                .enumerate()
                .find(|(_, (a, b))| a != b)
                .map(|(i, (a, b))| format!("vertex {}: {:?} became {:?}", i + 1, a.0, b.0))
                .unwrap_or_else(|| {
                    format!("vertex count {} became {}", p.n(), via_json.n())
                });
            return Err(format!("case {case}: JSON round-trip changed the curve: {diff}"));
        }
        let via_csv = curve_from_csv_str(&curve_to_csv_string(&p))
            .map_err(|e| e.to_string())?
            .curve;
        if via_csv != p {
            return Err(format!("case {case}: CSV round-trip changed the curve"));
        }
    }
    Ok(())
}
