//! Deterministic random test corpora.
//!
//! Everything here is seeded; the same seed always yields the same curves
//! and instances, on every platform, so test expectations stay stable.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{Point, PolyCurve};

/// The project-wide seeded RNG.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random curve with `n` vertices drawn uniformly from `[0, scale]^dim`.
/// Consecutive duplicate vertices are resampled (vanishingly rare).
pub fn random_curve(rng: &mut ChaCha8Rng, n: usize, dim: usize, scale: f64) -> PolyCurve {
    assert!(n >= 2 && dim >= 1 && scale > 0.0);
    let mut verts: Vec<Point> = Vec::with_capacity(n);
    while verts.len() < n {
        let p = Point::new((0..dim).map(|_| rng.gen_range(0.0..scale)).collect());
        if verts.last().map_or(true, |q: &Point| q != &p) {
            verts.push(p);
        }
    }
    PolyCurve::new(verts).expect("sampled vertices form a valid curve")
}

/// The `q`-quantile (0 <= q <= 1) of all pairwise vertex distances of `p`.
/// Used to pick tolerance values that are neither trivial nor impossible
/// for a given curve.
pub fn pairwise_distance_quantile(p: &PolyCurve, q: f64) -> f64 {
    assert!((0.0..=1.0).contains(&q));
    let v = p.vertices();
    let mut d: Vec<f64> = Vec::with_capacity(v.len() * (v.len() - 1) / 2);
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            d.push(v[i].dist(&v[j]));
        }
    }
    d.sort_by(f64::total_cmp);
    let idx = ((d.len() - 1) as f64 * q).round() as usize;
    d[idx]
}

/// A random subset-sum instance: `n` values in `1..=max_value` and a target.
/// Half of the instances take the target as the sum of a random subset (so
/// they are solvable by construction); the other half draw a uniform target,
/// which may or may not be attainable.
pub fn random_subset_sum(rng: &mut ChaCha8Rng, n: usize, max_value: u64) -> (Vec<u64>, u64) {
    assert!(n >= 1 && max_value >= 1);
    let values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_value)).collect();
    let total: u64 = values.iter().sum();
    let target = if rng.gen_bool(0.5) {
        values.iter().filter(|_| rng.gen_bool(0.5)).sum()
    } else {
        rng.gen_range(0..=total)
    };
    (values, target)
}

/// Like [`random_subset_sum`], but constrained so the reduction gadget's
/// precondition `2 * target > max(values)` holds (resampling the target as
/// needed).  The values are also returned sorted ascending, matching the
/// gadget's expected input order.
pub fn random_subset_sum_for_gadget(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_value: u64,
) -> (Vec<u64>, u64) {
    loop {
        let (mut values, target) = random_subset_sum(rng, n, max_value);
        values.sort_unstable();
        let max = *values.last().unwrap();
        if 2 * target > max {
            return (values, target);
        }
    }
}
