//! Subset-Sum reduction curves: exact construction, hole algebra, a
//! desk-scale solver, and an exact-rational verifier.
//!
//! Curve-restricted min-# simplification under the directed Hausdorff
//! measure is NP-hard. This module makes the reduction executable: from a
//! Subset-Sum instance `(A = {a_1..a_n}, B)` it builds a polygonal curve
//! `P` with `delta = max a_i` such that a curve-restricted simplification
//! with `k = 2n - 1` links, staying inside the closed `delta`-tube of `P`,
//! exists iff some subset of `A` sums to `B`.
//!
//! # Geometry
//!
//! The curve stacks `2n` horizontal **levels**, alternating rightward
//! (`r^0, r^1, ..., r^{n-1}`) and leftward (`l^1, ..., l^{n-1}`, and the
//! tail of the closing block `t`), each `2*delta + gamma` above the last
//! and joined by connectors far outside the central region. Because
//! consecutive levels are more than `2*delta` apart, a link of the
//! simplification can pass from one level's tube to the next only where
//! facing `gamma`-spikes pinch the gap to exactly `2*delta`: these pinch
//! points are the **holes**. Gaps above an `r`-level have two holes, at
//! `x = gamma/2` and `x = a_i/2 + gamma/2` (the element choice); gaps
//! above an `l`-level have one hole at `x = 0`. A hole sits exactly midway
//! between its levels, so a link through it reflects the x-coordinate:
//! `x' = 2*h - x`. Starting from `(0, 0)`, choosing the right-hand hole of
//! the `i`-th two-hole gap adds `a_i`, and every gap adds `gamma`; after
//! all `2n - 1` gaps the reachable x-coordinates on the tail level are
//! exactly `{n*gamma + sum(A') : A' subset of A}`. The curve ends at
//! `x = B + n*gamma`, so a `2n - 1`-link simplification exists iff a
//! subset sums to `B`.
//!
//! With the default `zeta = 0` the spike tips face each other at exactly
//! `2*delta` and every hole is a single point of closed tangency — which
//! is why construction and verification run in exact rational arithmetic
//! ([`crate::exact`]). A positive `zeta` lowers each downward tip and
//! raises each upward tip by `zeta`, opening every hole into a small lens
//! and making the same reflection path strictly interior.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::exact::{
    point_on_polyline_exact, rat, rat_int, rat_pow2_inv, segment_in_tube_exact, Rat, RatPoint2,
};
use crate::{Error, Result};

/// A Subset-Sum instance: positive integers `a_1..a_n` and a positive
/// target `B`.
///
/// The element listed **last** is the one encoded on the closing level,
/// which ends at `x = B + n*gamma`; its spike pair sits before that end
/// iff `a_n <= 2B` (the `gamma` terms supply the slack at equality), so
/// construction requires `a_n <= 2B`. Any set with some element at most
/// `2B` can be reordered to satisfy this, and elements larger than `2B`
/// can never participate in a solution anyway.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    /// The elements, in encoding order.
    pub a: Vec<u64>,
    /// The target sum.
    pub b: u64,
}

impl SubsetSumInstance {
    /// Validate and build an instance. Errors if the set is empty, any
    /// element or the target is zero, or the last element exceeds `2B`.
    pub fn new(a: Vec<u64>, b: u64) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInput(
                "subset-sum instance needs at least one element".into(),
            ));
        }
        if a.iter().any(|&x| x == 0) {
            return Err(Error::InvalidInput(
                "subset-sum elements must be positive".into(),
            ));
        }
        if b == 0 {
            return Err(Error::InvalidInput("subset-sum target must be positive".into()));
        }
        let last = *a.last().expect("non-empty");
        if (last as u128) > 2 * (b as u128) {
            return Err(Error::InvalidInput(format!(
                "the element encoded last must satisfy a_n <= 2B so the closing level \
                 ends after its spike pair (a_n = {last}, B = {b}); reorder the set or \
                 raise the target"
            )));
        }
        Ok(SubsetSumInstance { a, b })
    }

    /// Number of elements.
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// The tube radius of the generated curve: `max a_i`.
    pub fn delta(&self) -> u64 {
        *self.a.iter().max().expect("non-empty")
    }
}

/// Construction scales: the spike size `gamma` and the non-degeneracy
/// offset `zeta`. Well-formedness requires `0 < gamma <= delta / 2^20` and
/// `0 <= zeta <= gamma / 2^20`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetParams {
    /// Spike height scale; also the per-gap x-offset of the encoding.
    pub gamma: Rat,
    /// Vertical tip offset opening each hole into a lens; `0` keeps the
    /// degenerate point-tangency holes.
    pub zeta: Rat,
}

impl GadgetParams {
    /// Defaults: `gamma = delta / 2^20`, `zeta = 0`.
    pub fn default_for(inst: &SubsetSumInstance) -> Self {
        GadgetParams {
            gamma: rat_int(inst.delta() as i64) * rat_pow2_inv(20),
            zeta: Rat::zero(),
        }
    }

    /// The non-degenerate variant: `zeta = gamma / 2^40`.
    pub fn with_nondegenerate_zeta(mut self) -> Self {
        self.zeta = &self.gamma * rat_pow2_inv(40);
        self
    }

    fn validate(&self, inst: &SubsetSumInstance) -> Result<()> {
        let delta = rat_int(inst.delta() as i64);
        if !self.gamma.is_positive() || self.gamma > delta * rat_pow2_inv(20) {
            return Err(Error::InvalidInput(
                "gamma must satisfy 0 < gamma <= delta / 2^20".into(),
            ));
        }
        if self.zeta.is_negative() || self.zeta > &self.gamma * rat_pow2_inv(20) {
            return Err(Error::InvalidInput(
                "zeta must satisfy 0 <= zeta <= gamma / 2^20".into(),
            ));
        }
        Ok(())
    }
}

/// Which level a metadata entry describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LevelKind {
    /// Rightward level `r^i` (`r^0` carries the start vertex).
    R(usize),
    /// Leftward level `l^i`, `1 <= i <= n-1`.
    L(usize),
    /// The tail of the closing block (a leftward-style level ending at the
    /// curve's last vertex).
    T,
}

impl LevelKind {
    /// Short label, e.g. `"r0"`, `"l2"`, `"t"`.
    pub fn label(&self) -> String {
        match self {
            LevelKind::R(i) => format!("r{i}"),
            LevelKind::L(i) => format!("l{i}"),
            LevelKind::T => "t".into(),
        }
    }
}

/// One horizontal level of the gadget: its vertex span in the curve and
/// the y-coordinate of its base line.
#[derive(Clone, Debug)]
pub struct LevelInfo {
    pub kind: LevelKind,
    /// First vertex index of the level's subcurve (0-based, inclusive).
    pub first: usize,
    /// Last vertex index of the level's subcurve (inclusive).
    pub last: usize,
    /// y-coordinate of the level's base line (spike tips excepted).
    pub y: Rat,
}

/// The generated reduction curve with its hole and level metadata.
#[derive(Clone, Debug)]
pub struct GadgetCurve {
    /// The encoded instance.
    pub inst: SubsetSumInstance,
    /// The scales used.
    pub params: GadgetParams,
    /// Tube radius, `max a_i`, as an exact rational.
    pub delta: Rat,
    /// The link budget of the reduction: `2n - 1`.
    pub k: usize,
    /// All curve vertices, in traversal order, exact.
    pub vertices: Vec<RatPoint2>,
    /// The `2n` levels bottom-to-top (which is also traversal order).
    pub levels: Vec<LevelInfo>,
    /// Hole x-coordinates per inter-level gap (`2n - 1` gaps; two holes
    /// above `r`-levels ordered left-to-right, one above `l`-levels).
    pub holes: Vec<Vec<Rat>>,
}

impl GadgetCurve {
    /// Nearest-double rendering of the vertices, for plotting and reports.
    pub fn vertices_f64(&self) -> Vec<(f64, f64)> {
        self.vertices.iter().map(|p| p.to_f64()).collect()
    }

    /// Y-coordinate of the gap between level `j` and level `j + 1`
    /// (exactly midway, where the holes sit).
    pub fn gap_y(&self, j: usize) -> Rat {
        let step = rat_int(self.inst.delta() as i64) + rat(1, 2) * &self.params.gamma;
        &self.levels[j].y + step
    }
}

/// Which hole a traversal step chose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoleChoice {
    /// The single hole of an `l -> r` gap.
    Only,
    /// The `gamma`-only (left) hole of an `r -> l` gap: element excluded.
    Left,
    /// The element-shifted (right) hole of an `r -> l` gap: element
    /// included.
    Right,
}

/// A candidate simplification described by its hole choices: one vertex
/// per level, consecutive vertices linked through the chosen holes by the
/// reflection rule `x' = 2h - x`.
#[derive(Clone, Debug)]
pub struct HolePath {
    /// One choice per gap (`2n - 1` entries).
    pub choices: Vec<HoleChoice>,
    /// The induced vertices with their host level indices (`2n` entries).
    pub vertices: Vec<(RatPoint2, usize)>,
}

impl HolePath {
    /// The subset encoded by the right-hole choices, as element values in
    /// encoding order.
    pub fn chosen_values(&self, inst: &SubsetSumInstance) -> Vec<u64> {
        self.choices
            .iter()
            .enumerate()
            .filter(|(j, c)| j % 2 == 0 && **c == HoleChoice::Right)
            .map(|(j, _)| inst.a[j / 2])
            .collect()
    }
}

/// Outcome of [`verify_simplification`]: `ok` plus human-readable
/// violation records (each prefixed with a machine-greppable tag:
/// `link-count`, `endpoint`, `host-order`, `off-curve`, `tube`).
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Build the reduction curve for `inst` at scales `params`.
///
/// The curve concatenates blocks `r^0, m^0, [l^i, f^i, r^i, m^i for
/// i = 1..n-1], t`, where `m`/`f` are two-vertex connectors routing the
/// curve between levels far outside the central region. Every coordinate
/// is an exact rational in `delta = max a_i`, `gamma`, `zeta`, and the
/// elements. Vertex count is asserted to equal
/// `8 + 2 + (n-1)*(9 + 2 + 9 + 2) + 10 = 22n - 2`.
pub fn generate_gadget(inst: &SubsetSumInstance, params: &GadgetParams) -> Result<GadgetCurve> {
    params.validate(inst)?;
    let n = inst.n();
    let ni = n as i64;
    let delta = rat_int(inst.delta() as i64);
    let g = &params.gamma;
    let z = &params.zeta;
    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let three_quarters = rat(3, 4);
    let a_r: Vec<Rat> = inst.a.iter().map(|&x| rat_int(x as i64)).collect();

    let spike_up = |y: &Rat| y + &half * g + z;
    let spike_dn = |y: &Rat| y - &half * g - z;
    let y_r = |i: i64| rat_int(4 * i) * &delta + rat_int(2 * i) * g;
    let y_l = |i: i64| rat_int(4 * i - 2) * &delta + rat_int(2 * i - 1) * g;
    let y_m = |i: i64| rat_int(4 * i - 1) * &delta + (rat_int(2 * i) - &half) * g;
    let y_f = |i: i64| rat_int(4 * i - 3) * &delta + (rat_int(2 * i) - rat(3, 2)) * g;

    let mut vertices: Vec<RatPoint2> = Vec::with_capacity(22 * n - 2);
    let mut levels: Vec<LevelInfo> = Vec::with_capacity(2 * n);
    let push = |vs: &mut Vec<RatPoint2>, x: Rat, y: Rat| vs.push(RatPoint2::new(x, y));

    // r^0: the bottom rightward level, carrying the start vertex (0, 0)
    // and the upward spike pair encoding a_1.
    {
        let y0 = Rat::zero();
        let first = vertices.len();
        push(&mut vertices, Rat::zero(), y0.clone());
        push(&mut vertices, &quarter * g, y0.clone());
        push(&mut vertices, &half * g, spike_up(&y0));
        push(&mut vertices, &three_quarters * g, y0.clone());
        push(&mut vertices, &half * &a_r[0] + &quarter * g, y0.clone());
        push(&mut vertices, &half * &a_r[0] + &half * g, spike_up(&y0));
        push(&mut vertices, &half * &a_r[0] + &three_quarters * g, y0.clone());
        push(&mut vertices, delta.clone(), y0.clone());
        levels.push(LevelInfo { kind: LevelKind::R(0), first, last: vertices.len() - 1, y: y0 });
    }

    // m^i: rightward connector below the next leftward level.
    let push_m = |vs: &mut Vec<RatPoint2>, i: i64| {
        let y = y_m(i);
        vs.push(RatPoint2::new(rat_int(4 * i + 1) * &delta, y.clone()));
        vs.push(RatPoint2::new(rat_int(4 * i + 3) * &delta + g, y));
    };
    push_m(&mut vertices, 0);

    for i in 1..n {
        let ii = i as i64;

        // l^i: leftward level with downward spikes over the a_i holes
        // below it and the upward spike opening the single hole above it.
        {
            let yl = y_l(ii);
            let first = vertices.len();
            push(&mut vertices, rat_int(4 * ii - 1) * &delta + g, yl.clone());
            push(&mut vertices, &half * &a_r[i - 1] + &three_quarters * g, yl.clone());
            push(&mut vertices, &half * &a_r[i - 1] + &half * g, spike_dn(&yl));
            push(&mut vertices, &half * &a_r[i - 1] + &quarter * g, yl.clone());
            push(&mut vertices, &three_quarters * g, yl.clone());
            push(&mut vertices, &half * g, spike_dn(&yl));
            push(&mut vertices, Rat::zero(), spike_up(&yl));
            push(&mut vertices, -(&quarter * g), yl.clone());
            push(&mut vertices, rat_int(-4 * ii + 2) * &delta, yl.clone());
            levels.push(LevelInfo { kind: LevelKind::L(i), first, last: vertices.len() - 1, y: yl });
        }

        // f^i: leftward connector below the next rightward level.
        {
            let yf = y_f(ii);
            push(&mut vertices, rat_int(-4 * ii + 2) * &delta, yf.clone());
            push(&mut vertices, rat_int(-4 * ii) * &delta - g, yf);
        }

        // r^i: rightward level; downward spike over the hole below it,
        // upward spike pair encoding a_{i+1}.
        {
            let yr = y_r(ii);
            let first = vertices.len();
            push(&mut vertices, rat_int(-4 * ii) * &delta - g, yr.clone());
            push(&mut vertices, -(&quarter * g), yr.clone());
            push(&mut vertices, Rat::zero(), spike_dn(&yr));
            push(&mut vertices, &half * g, spike_up(&yr));
            push(&mut vertices, &three_quarters * g, yr.clone());
            push(&mut vertices, &half * &a_r[i] + &quarter * g, yr.clone());
            push(&mut vertices, &half * &a_r[i] + &half * g, spike_up(&yr));
            push(&mut vertices, &half * &a_r[i] + &three_quarters * g, yr.clone());
            push(&mut vertices, rat_int(4 * ii + 1) * &delta, yr.clone());
            levels.push(LevelInfo { kind: LevelKind::R(i), first, last: vertices.len() - 1, y: yr });
        }

        push_m(&mut vertices, ii);
    }

    // t: top bar plus the closing leftward-style level (t_2..t_9), with
    // downward spikes over the a_n holes and the end vertex at B + n*gamma.
    {
        let y_top = y_m(ni);
        let yt = y_l(ni);
        push(&mut vertices, rat_int(4 * ni - 1) * &delta + g, y_top.clone());
        push(&mut vertices, rat_int(-4 * ni + 4) * &delta - g, y_top);
        let first = vertices.len();
        push(&mut vertices, rat_int(-4 * ni + 4) * &delta - g, yt.clone());
        push(&mut vertices, &quarter * g, yt.clone());
        push(&mut vertices, &half * g, spike_dn(&yt));
        push(&mut vertices, &three_quarters * g, yt.clone());
        push(&mut vertices, &half * &a_r[n - 1] + &quarter * g, yt.clone());
        push(&mut vertices, &half * &a_r[n - 1] + &half * g, spike_dn(&yt));
        push(&mut vertices, &half * &a_r[n - 1] + &three_quarters * g, yt.clone());
        push(&mut vertices, rat_int(inst.b as i64) + rat_int(ni) * g, yt.clone());
        levels.push(LevelInfo { kind: LevelKind::T, first, last: vertices.len() - 1, y: yt });
    }

    assert_eq!(
        vertices.len(),
        8 + 2 + (n - 1) * (9 + 2 + 9 + 2) + 10,
        "block assembly must produce 22n - 2 vertices"
    );
    assert_eq!(levels.len(), 2 * n);
    assert_eq!(vertices[0], RatPoint2::new(Rat::zero(), Rat::zero()));

    // Hole x-coordinates per gap: the two-hole gaps above r-levels encode
    // element i+1; the one-hole gaps above l-levels reflect through 0.
    let mut holes: Vec<Vec<Rat>> = Vec::with_capacity(2 * n - 1);
    for j in 0..(2 * n - 1) {
        if j % 2 == 0 {
            let i = j / 2;
            holes.push(vec![&half * g, &half * &a_r[i] + &half * g]);
        } else {
            holes.push(vec![Rat::zero()]);
        }
    }

    Ok(GadgetCurve {
        inst: inst.clone(),
        params: params.clone(),
        delta,
        k: 2 * n - 1,
        vertices,
        levels,
        holes,
    })
}

/// Decide the instance geometrically: enumerate the `2^n` hole-choice
/// sequences in ascending bitmask order (bit `i` = include `a_{i+1}`),
/// apply the reflection rule from `(0, 0)`, and return the first path
/// whose terminal x-coordinate hits the curve's last vertex — after the
/// exact verifier has re-checked it ([`verify_simplification`]), so the
/// combinatorial shortcut is audited, never trusted. Returns `None` when
/// no subset of `A` sums to `B`.
pub fn solve_gadget(curve: &GadgetCurve) -> Result<Option<HolePath>> {
    let n = curve.inst.n();
    if n > 30 {
        return Err(Error::InvalidInput(format!(
            "solve_gadget enumerates 2^n hole sequences and accepts n <= 30, got {n}"
        )));
    }
    if curve.holes.len() != 2 * n - 1 || curve.levels.len() != 2 * n {
        return Err(Error::InvalidInput(
            "malformed gadget metadata: expected 2n-1 gaps and 2n levels".into(),
        ));
    }
    let target_x = &curve.vertices.last().expect("curve has vertices").x;
    for mask in 0u64..(1u64 << n) {
        let mut x = Rat::zero();
        let mut choices = Vec::with_capacity(2 * n - 1);
        for (j, hole) in curve.holes.iter().enumerate() {
            let (h, choice) = if hole.len() == 1 {
                (&hole[0], HoleChoice::Only)
            } else if (mask >> (j / 2)) & 1 == 1 {
                (&hole[1], HoleChoice::Right)
            } else {
                (&hole[0], HoleChoice::Left)
            };
            x = rat_int(2) * h - x;
            choices.push(choice);
        }
        if &x == target_x {
            let path = path_from_choices(curve, &choices);
            let report = verify_simplification(curve, &path);
            debug_assert!(
                report.ok,
                "reflection path reached the end vertex but failed geometric audit: {:?}",
                report.violations
            );
            if report.ok {
                return Ok(Some(path));
            }
        }
    }
    Ok(None)
}

/// Materialize the path a choice sequence induces: start at the curve's
/// first vertex and reflect through the chosen hole of each gap.
fn path_from_choices(curve: &GadgetCurve, choices: &[HoleChoice]) -> HolePath {
    let mut verts = vec![(curve.vertices[0].clone(), 0usize)];
    let mut x = Rat::zero();
    for (j, choice) in choices.iter().enumerate() {
        let hole = &curve.holes[j];
        let h = match choice {
            HoleChoice::Right => &hole[1],
            _ => &hole[0],
        };
        x = rat_int(2) * h - x;
        verts.push((RatPoint2::new(x.clone(), curve.levels[j + 1].y.clone()), j + 1));
    }
    HolePath { choices: choices.to_vec(), vertices: verts }
}

/// Exact-rational verification that `path` is a valid `2n - 1`-link
/// curve-restricted simplification of `curve` within its `delta`-tube:
///
/// (a) exactly `2n - 1` links; (b) endpoints equal the curve's first and
/// last vertices; (c) every vertex lies ON its host level's subcurve and
/// hosts strictly advance (curve-restricted order); (d) every link lies in
/// the closed `delta`-tube of the whole curve — with `zeta = 0` the hole
/// passages are point tangencies and must still verify, which the exact
/// closed-cover sweep guarantees.
pub fn verify_simplification(curve: &GadgetCurve, path: &HolePath) -> VerifyReport {
    let mut violations = Vec::new();
    let n = curve.inst.n();
    let want_links = 2 * n - 1;
    let got_links = path.vertices.len().saturating_sub(1);
    if got_links != want_links {
        violations.push(format!("link-count: expected {want_links} links, got {got_links}"));
    }
    if let Some((first, _)) = path.vertices.first() {
        if first != &curve.vertices[0] {
            violations.push("endpoint: path does not start at the curve's first vertex".into());
        }
    }
    if let Some((last, _)) = path.vertices.last() {
        if Some(last) != curve.vertices.last() {
            violations.push("endpoint: path does not end at the curve's last vertex".into());
        }
    }
    let mut prev_host: Option<usize> = None;
    for (idx, (pt, host)) in path.vertices.iter().enumerate() {
        if *host >= curve.levels.len() {
            violations.push(format!(
                "host-order: vertex {idx} names level {host}, but the curve has only {}",
                curve.levels.len()
            ));
            continue;
        }
        if let Some(ph) = prev_host {
            if *host <= ph {
                violations.push(format!(
                    "host-order: vertex {idx} on level {host} does not advance past level {ph}"
                ));
            }
        }
        prev_host = Some(*host);
        let lv = &curve.levels[*host];
        if !point_on_polyline_exact(pt, &curve.vertices[lv.first..=lv.last]) {
            violations.push(format!(
                "off-curve: vertex {idx} does not lie on its host level {}",
                lv.kind.label()
            ));
        }
    }
    for (kk, w) in path.vertices.windows(2).enumerate() {
        if !segment_in_tube_exact(&w[0].0, &w[1].0, &curve.vertices, &curve.delta) {
            violations.push(format!("tube: link {} leaves the delta-tube", kk + 1));
        }
    }
    VerifyReport { ok: violations.is_empty(), violations }
}

/// A level that could, hypothetically, be skipped by a single link passing
/// through the hole below it and the hole above it.
#[derive(Clone, Copy, Debug)]
pub enum SkipLevel {
    /// Skip `l^i` (`1 <= i <= n-1`); the skip vertex sits on `r^{i-1}`.
    L(usize),
    /// Skip `r^i` (`1 <= i <= n-1`); the skip vertex sits on `l^i`.
    R(usize),
}

/// Which hole of the two-hole gap the skip line uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoleSide {
    Left,
    Right,
}

/// x-coordinate where the line through both holes around `level`
/// intersects the adjacent line.
fn line_x_at_y(p1: &RatPoint2, p2: &RatPoint2, y: &Rat) -> Rat {
    &p1.x + (&p2.x - &p1.x) * (y - &p1.y) / (&p2.y - &p1.y)
}

/// The x-coordinate a vertex must have for one link to skip `level`
/// entirely, passing through the holes on both sides of it.
///
/// Computed by intersecting the rational line through the two holes with
/// the previous level's base line, then asserted equal to the closed
/// forms: `3*gamma/4` / `3*gamma/4 + 3*a_i/4` when skipping `l^i`, and
/// `-gamma/4` / `-gamma/4 - a_{i+1}/4` when skipping `r^i`. None of these
/// lie in any reachable set `{±(i*gamma + sum)}` — the fractional `gamma`
/// coefficient propagates and can never cancel — which is why skipping
/// never beats the `2n - 1`-link hole paths.
pub fn skip_vertex_x(
    inst: &SubsetSumInstance,
    params: &GadgetParams,
    level: SkipLevel,
    side: HoleSide,
) -> Rat {
    let n = inst.n();
    let g = &params.gamma;
    let delta = rat_int(inst.delta() as i64);
    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let three_quarters = rat(3, 4);
    match level {
        SkipLevel::L(i) => {
            assert!(1 <= i && i < n, "skippable l-levels are l^1..l^(n-1)");
            let ii = i as i64;
            let ai = rat_int(inst.a[i - 1] as i64);
            let below_x = match side {
                HoleSide::Left => &half * g,
                HoleSide::Right => &half * &ai + &half * g,
            };
            let below = RatPoint2::new(
                below_x,
                rat_int(4 * ii - 3) * &delta + (rat_int(2 * ii) - rat(3, 2)) * g,
            );
            let above = RatPoint2::new(
                Rat::zero(),
                rat_int(4 * ii - 1) * &delta + (rat_int(2 * ii) - &half) * g,
            );
            let y_prev = rat_int(4 * ii - 4) * &delta + rat_int(2 * ii - 2) * g;
            let x = line_x_at_y(&below, &above, &y_prev);
            let closed = match side {
                HoleSide::Left => &three_quarters * g,
                HoleSide::Right => &three_quarters * g + &three_quarters * &ai,
            };
            assert_eq!(x, closed, "skip-vertex intersection must match the closed form");
            x
        }
        SkipLevel::R(i) => {
            assert!(1 <= i && i < n, "skippable r-levels are r^1..r^(n-1)");
            let ii = i as i64;
            let a_next = rat_int(inst.a[i] as i64);
            let below = RatPoint2::new(
                Rat::zero(),
                rat_int(4 * ii - 1) * &delta + (rat_int(2 * ii) - &half) * g,
            );
            let above_x = match side {
                HoleSide::Left => &half * g,
                HoleSide::Right => &half * &a_next + &half * g,
            };
            let above = RatPoint2::new(
                above_x,
                rat_int(4 * ii + 1) * &delta + (rat_int(2 * ii) + &half) * g,
            );
            let y_prev = rat_int(4 * ii - 2) * &delta + rat_int(2 * ii - 1) * g;
            let x = line_x_at_y(&below, &above, &y_prev);
            let closed = match side {
                HoleSide::Left => -(&quarter * g),
                HoleSide::Right => -(&quarter * g) - &quarter * &a_next,
            };
            assert_eq!(x, closed, "skip-vertex intersection must match the closed form");
            x
        }
    }
}

/// The x-coordinates reachable on the `i`-th leftward level (`l^i`, with
/// `i = n` read as the closing level) by hole paths from the start:
/// `{i*gamma + sum(A') : A' subset of {a_1..a_i}}`.
pub fn reachable_x_set(inst: &SubsetSumInstance, params: &GadgetParams, i: usize) -> BTreeSet<Rat> {
    assert!(1 <= i && i <= inst.n(), "level index must be in 1..=n");
    assert!(i <= 30, "reachable sets are enumerated exhaustively; i <= 30");
    let ig = rat_int(i as i64) * &params.gamma;
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << i) {
        let sum: u64 = (0..i).filter(|&k| (mask >> k) & 1 == 1).map(|k| inst.a[k]).sum();
        out.insert(&ig + rat_int(sum as i64));
    }
    out
}
