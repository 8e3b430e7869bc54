use serde::{Deserialize, Serialize};

use super::corner::CornerSpec;
use super::formula::{validate_b2, Assignment, Formula};
use super::ring::{build_clause_ring, ClauseRing, Strip};
use super::validate::validate_geometry;
use super::{cross, perp, to_point, unit, ReductionError, Vec2};
use crate::cpsm::{Instance, Variant, Witness};
use crate::geometry::PolyCurve;

/// Corners per gadget, all between the two chords.
pub const GADGET_CORNERS: usize = 5;

const MIN_LEG: f64 = 30.0;
const SPLIT_OFFSET: f64 = 4.0;
const JOINT_GAP: f64 = 20.0;
const ENTRY_GAP: f64 = 30.0;
const CHAIN_GAP: f64 = 40.0;
const RADIAL_STEP: f64 = 10.0;
const RADIAL_TRIES: usize = 400;
const STRIP_MARGIN: f64 = 1.0;
const HULL_MARGIN: f64 = 10.0;
const LEG_FACTORS: [f64; 10] = [0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.55, 0.7, 0.9, 1.2];
const OUTER_TURNS: [f64; 5] = [1.0, 0.9, 0.8, 0.7, 0.6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    ClausePoint(usize),
    CornerOuter,
    CornerInner,
    SplitPoint,
    Joint,
}

/// Which clause strips a point may lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StripRule {
    Any,
    Only(usize, usize),
    Outside,
}

/// Directed line through two clause points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub clauses: (usize, usize),
    pub foot: Vec2,
    pub dir: Vec2,
}

impl Chord {
    fn new(ring: &ClauseRing, i: usize, j: usize, forward: bool) -> Self {
        let (a, b) = (ring.points[i], ring.points[j]);
        let mut dir = (b - a).normalize();
        if !forward {
            dir = -dir;
        }
        let foot = a - a.dot(&dir) * dir;
        Self { clauses: (i.min(j), i.max(j)), foot, dir }
    }

    /// Point of the line at distance `rho` from the origin, before the ring
    /// (`exit = false`) or after it.
    fn at_radius(&self, rho: f64, exit: bool) -> Vec2 {
        let t = (rho * rho - self.foot.norm_squared()).max(0.0).sqrt();
        self.foot + if exit { t } else { -t } * self.dir
    }

    fn rule(&self) -> StripRule {
        StripRule::Only(self.clauses.0, self.clauses.1)
    }
}

/// Indices of one corner's points: `b, c, d, g, h` in `P`, `k, l, g, h` in `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerPoints {
    pub p_b: usize,
    pub p_c: usize,
    pub p_d: usize,
    pub p_g: usize,
    pub p_h: usize,
    pub s_k: usize,
    pub s_l: usize,
    pub s_g: usize,
    pub s_h: usize,
}

/// Indices into `S`. A witness for one gadget is `prefix`, then one of the
/// alternatives, then `suffix`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetPaths {
    pub prefix: Vec<usize>,
    pub true_path: Vec<usize>,
    pub false_path: Vec<usize>,
    pub suffix: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gadget {
    /// 1-based.
    pub variable: usize,
    pub positive: Chord,
    pub negative: Chord,
    pub corners: Vec<CornerSpec>,
    pub corner_points: Vec<CornerPoints>,
    pub corner_rules: Vec<StripRule>,
    pub paths: GadgetPaths,
    /// `P` segments through the ring: the positive and negative chord pieces.
    pub chord_segments: [usize; 2],
    /// `P` segments that must keep clear of the hull of earlier points.
    pub checked_segments: Vec<usize>,
    /// Number of points of `S` placed before this gadget's corners.
    pub placed_before: usize,
    pub joint_radius: f64,
    pub entry_radius: f64,
    pub exit_radius: f64,
    pub chain_radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionParams {
    pub eps: f64,
    pub ring_radius: f64,
    pub split_offset: f64,
    pub min_leg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionMeta {
    pub formula: Formula,
    pub params: ReductionParams,
    pub ring: ClauseRing,
    pub roles: Vec<Role>,
    pub strip_rules: Vec<StripRule>,
    pub gadgets: Vec<Gadget>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub meta: ReductionMeta,
}

impl ReductionOutput {
    pub fn s_points(&self) -> Vec<Vec2> {
        self.instance.points().iter().map(|p| Vec2::new(p.x(), p.y())).collect()
    }

    pub fn p_vertices(&self) -> Vec<Vec2> {
        self.instance.curve().vertices().iter().map(|p| Vec2::new(p.x(), p.y())).collect()
    }
}

struct Builder {
    eps: f64,
    strips: Vec<((usize, usize), Strip)>,
    p: Vec<Vec2>,
    s: Vec<Vec2>,
    roles: Vec<Role>,
    rules: Vec<StripRule>,
}

impl Builder {
    fn add_s(&mut self, v: Vec2, role: Role, rule: StripRule) -> usize {
        self.s.push(v);
        self.roles.push(role);
        self.rules.push(rule);
        self.s.len() - 1
    }

    fn add_p(&mut self, v: Vec2) -> usize {
        self.p.push(v);
        self.p.len() - 1
    }

    fn max_radius(&self) -> f64 {
        self.p.iter().chain(self.s.iter()).map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn strips_hit(&self, v: Vec2, margin: f64) -> Vec<(usize, usize)> {
        self.strips
            .iter()
            .filter(|(_, s)| s.distance(v) <= s.half_width + margin)
            .map(|(k, _)| *k)
            .collect()
    }

    fn obeys(&self, v: Vec2, rule: StripRule) -> bool {
        let hit = self.strips_hit(v, STRIP_MARGIN * self.eps);
        match rule {
            StripRule::Any => true,
            StripRule::Outside => hit.is_empty(),
            StripRule::Only(i, j) => hit.iter().all(|&k| k == (i, j)),
        }
    }

    /// Smallest radius from `start` on, in steps, where the chord point and
    /// the given offsets from it lie in no strip but the chord's own.
    fn clear_radius(&self, chord: &Chord, exit: bool, start: f64, offsets: &[Vec2]) -> Result<f64, ReductionError> {
        for step in 0..RADIAL_TRIES {
            let rho = start + step as f64 * RADIAL_STEP * self.eps;
            let v = chord.at_radius(rho, exit);
            if std::iter::once(v).chain(offsets.iter().map(|o| v + o)).all(|q| self.obeys(q, chord.rule())) {
                return Ok(rho);
            }
        }
        Err(ReductionError::Placement(format!("no clear stretch on chord {:?}", chord.clauses)))
    }

    /// Point on the circle of radius `rho` nearest to angle `theta` that lies
    /// outside every strip.
    fn free_on_circle(&self, rho: f64, theta: f64) -> Result<Vec2, ReductionError> {
        let step = 0.5 * self.eps / rho;
        let limit = (std::f64::consts::PI / step) as i64;
        for k in 0..=limit {
            for sign in [1.0, -1.0] {
                let v = rho * unit(theta + sign * k as f64 * step);
                if self.obeys(v, StripRule::Outside) {
                    return Ok(v);
                }
            }
        }
        Err(ReductionError::Placement(format!("no strip-free joint on radius {rho}")))
    }
}

struct Chain {
    radius: f64,
    vertices: [Vec2; GADGET_CORNERS],
    corners: Vec<CornerSpec>,
}

fn seg_dist_origin(a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    let t = (-a.dot(&d) / d.norm_squared()).clamp(0.0, 1.0);
    (a + t * d).norm()
}

/// Picks chord directions so the left-turning chain from `pos` to `neg`
/// turns by a total `tau` as close to `2 pi` as possible.
fn orient(ring: &ClauseRing, pos: [usize; 2], neg: [usize; 2]) -> (Chord, Chord, f64) {
    use std::f64::consts::{PI, TAU};
    let mut best: Option<(Chord, Chord, f64)> = None;
    for fp in [true, false] {
        for fn_ in [true, false] {
            let cp = Chord::new(ring, pos[0], pos[1], fp);
            let cn = Chord::new(ring, neg[0], neg[1], fn_);
            let ap = cp.dir.y.atan2(cp.dir.x);
            let an = (-cn.dir).y.atan2((-cn.dir).x);
            let delta = (an - ap).rem_euclid(TAU);
            if best.as_ref().is_none_or(|b| (delta - PI).abs() < (b.2 - PI).abs() - 1e-12) {
                best = Some((cp, cn, delta));
            }
        }
    }
    let (cp, cn, delta) = best.unwrap();
    (cp, cn, delta + PI)
}

fn plan_chain(
    b: &Builder,
    pos: &Chord,
    neg: &Chord,
    tau: f64,
    entry_radius: f64,
    hull_radius: f64,
) -> Result<Chain, ReductionError> {
    use std::f64::consts::FRAC_PI_2;
    let eps = b.eps;
    let a0p = pos.dir.y.atan2(pos.dir.x);
    let rules = corner_rules(pos, neg);
    for step in 0..RADIAL_TRIES {
        let radius = entry_radius + CHAIN_GAP * eps + step as f64 * RADIAL_STEP * eps;
        let v2 = pos.at_radius(radius, true);
        let v6 = neg.at_radius(radius, false);
        let mut best: Option<(f64, Chain)> = None;
        for outer in OUTER_TURNS {
            let beta = outer * FRAC_PI_2;
            let middle = (tau - 2.0 * beta) / 3.0;
            if !(middle > 0.05 && middle <= FRAC_PI_2) {
                continue;
            }
            let turns = [beta, middle, middle, middle, beta];
            let mut acc = [a0p; GADGET_CORNERS + 1];
            for k in 0..GADGET_CORNERS {
                acc[k + 1] = acc[k] + turns[k];
            }
            let heading = |k: usize| unit(acc[k]);
            let det = cross(heading(2), heading(3));
            for (f1, f4) in LEG_FACTORS.iter().flat_map(|&x| LEG_FACTORS.iter().map(move |&y| (x, y))) {
                let (l1, l4) = (radius * f1, radius * f4);
                let w = v6 - v2 - l1 * heading(1) - l4 * heading(4);
                let l2 = cross(w, heading(3)) / det;
                let l3 = cross(heading(2), w) / det;
                if [l1, l2, l3, l4].iter().any(|&l| l < MIN_LEG * eps) {
                    continue;
                }
                let v3 = v2 + l1 * heading(1);
                let v4 = v3 + l2 * heading(2);
                let v5 = v4 + l3 * heading(3);
                let vertices = [v2, v3, v4, v5, v6];
                let clear = vertices
                    .windows(2)
                    .all(|w| seg_dist_origin(w[0], w[1]) > hull_radius + HULL_MARGIN * eps);
                let reach = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
                if !clear || best.as_ref().is_some_and(|(r, _)| *r <= reach) {
                    continue;
                }
                let mut corners = Vec::with_capacity(GADGET_CORNERS);
                for (k, &x) in vertices.iter().enumerate() {
                    corners.push(CornerSpec::at_vertex(x, heading(k), heading(k + 1), eps)?);
                }
                let placed = corners.iter().zip(&rules).all(|(c, &rule)| {
                    c.named_points().iter().all(|&(_, p)| b.obeys(p, rule))
                });
                if placed {
                    best = Some((reach, Chain { radius, vertices, corners }));
                }
            }
        }
        if let Some((_, chain)) = best {
            return Ok(chain);
        }
    }
    Err(ReductionError::Placement(format!(
        "no corner chain from clauses {:?} to {:?}",
        pos.clauses, neg.clauses
    )))
}

fn corner_rules(pos: &Chord, neg: &Chord) -> Vec<StripRule> {
    (0..GADGET_CORNERS)
        .map(|k| match k {
            0 => pos.rule(),
            k if k == GADGET_CORNERS - 1 => neg.rule(),
            _ => StripRule::Outside,
        })
        .collect()
}

/// Largest step along a circle of radius `rho` whose chord dips at most
/// `10 eps` inside it.
fn joint_step(rho: f64, eps: f64) -> f64 {
    let dip = (1.0 - 10.0 * eps / rho).clamp(-1.0, 1.0);
    (2.0 * dip.acos()).min(std::f64::consts::FRAC_PI_3)
}

fn sorted_along(ring: &ClauseRing, clauses: [usize; 2], dir: Vec2) -> Vec<usize> {
    let mut c = clauses.to_vec();
    c.sort_by(|&i, &j| ring.points[i].dot(&dir).total_cmp(&ring.points[j].dot(&dir)));
    c
}

/// Builds the non-unique all-points instance for a (3,B2) formula.
pub fn build_reduction(formula: &Formula, eps: f64) -> Result<ReductionOutput, ReductionError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(ReductionError::BadEpsilon(eps));
    }
    let report = validate_b2(formula);
    if !report.is_valid() {
        return Err(ReductionError::NotB2(report));
    }
    if formula.variable_count() == 0 || formula.clause_count() == 0 {
        return Err(ReductionError::Generation("formula has no variables".into()));
    }
    let n = formula.clause_count();
    let ring = build_clause_ring(n, eps)?;
    let mut b = Builder {
        eps,
        strips: ring.strips(),
        p: Vec::new(),
        s: Vec::new(),
        roles: Vec::new(),
        rules: Vec::new(),
    };
    for (j, &c) in ring.points.iter().enumerate() {
        b.add_s(c, Role::ClausePoint(j), StripRule::Any);
    }

    let mut gadgets = Vec::with_capacity(formula.variable_count());
    let first_radius = 4.5 * ring.radius.max((n * n) as f64 * eps);
    let mut prev_ret: Option<Vec2> = None;
    for var in 1..=formula.variable_count() {
        let occ = |l: i32| -> Result<[usize; 2], ReductionError> {
            let o = formula.occurrences(l);
            <[usize; 2]>::try_from(o.as_slice()).map_err(|_| {
                ReductionError::Generation(format!("literal {l} does not occur exactly twice"))
            })
        };
        let (pos_c, neg_c) = (occ(var as i32)?, occ(-(var as i32))?);
        let (pos, neg, tau) = orient(&ring, pos_c, neg_c);

        let left_p = perp(pos.dir);
        let left_n = perp(neg.dir);
        let joint_radius = if prev_ret.is_some() { b.max_radius() + JOINT_GAP * eps } else { 0.0 };
        let start_radius = if prev_ret.is_some() { joint_radius + ENTRY_GAP * eps } else { first_radius };
        let entry_radius = b.clear_radius(&pos, false, start_radius, &[
            SPLIT_OFFSET * eps * pos.dir + eps * left_p,
            -2.0 * eps * left_p,
        ])?;
        let exit_radius = b.clear_radius(&neg, true, start_radius, &[eps * left_n, -2.0 * eps * left_n])?;
        let p0 = pos.at_radius(entry_radius, false);
        let mut prefix = Vec::new();
        let mut checked = Vec::new();
        if let Some(ret) = prev_ret {
            let start = ret.y.atan2(ret.x);
            let end = p0.y.atan2(p0.x);
            let sweep = (end - start + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU)
                - std::f64::consts::PI;
            let pieces = (sweep.abs() / joint_step(joint_radius, eps)).ceil().max(1.0) as usize;
            for k in 0..=pieces {
                let theta = start + sweep * k as f64 / pieces as f64;
                let v = b.free_on_circle(joint_radius, theta)?;
                if b.p.last().is_some_and(|&q| (q - v).norm() < 1e-9 * eps) {
                    continue;
                }
                b.add_p(v);
                prefix.push(b.add_s(v, Role::Joint, StripRule::Outside));
            }
        }

        b.add_p(p0);
        prefix.push(b.add_s(p0, Role::Joint, pos.rule()));
        let s0 = p0 + SPLIT_OFFSET * eps * pos.dir + eps * left_p;
        prefix.push(b.add_s(s0, Role::SplitPoint, pos.rule()));

        let placed_before = b.s.len();
        let hull_radius = b.s.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let chain = plan_chain(&b, &pos, &neg, tau, entry_radius.max(exit_radius), hull_radius)?;

        let mut corner_points = Vec::with_capacity(GADGET_CORNERS);
        let chord_in = b.p.len() - 1;
        for c in &chain.corners {
            let (p_b, p_c, p_d) = (b.add_p(c.b), b.add_p(c.c), b.add_p(c.d));
            corner_points.push(CornerPoints { p_b, p_c, p_d, p_g: 0, p_h: 0, s_k: 0, s_l: 0, s_g: 0, s_h: 0 });
        }
        let e_end = neg.at_radius(exit_radius, true);
        let chord_out = b.p.len() - 1;
        b.add_p(e_end);
        let r_cap = e_end - 2.0 * eps * left_n;
        b.add_p(r_cap);
        for k in (0..GADGET_CORNERS).rev() {
            corner_points[k].p_g = b.add_p(chain.corners[k].g);
            corner_points[k].p_h = b.add_p(chain.corners[k].h);
        }
        let ret_end = p0 - 2.0 * eps * left_p;
        b.add_p(ret_end);

        let rules = corner_rules(&pos, &neg);
        for (k, c) in chain.corners.iter().enumerate() {
            let cp = &mut corner_points[k];
            cp.s_k = b.add_s(c.k, Role::CornerInner, rules[k]);
            cp.s_l = b.add_s(c.l, Role::CornerInner, rules[k]);
            cp.s_g = b.add_s(c.g, Role::CornerOuter, rules[k]);
            cp.s_h = b.add_s(c.h, Role::CornerOuter, rules[k]);
        }
        let x_end = b.add_s(e_end + eps * left_n, Role::SplitPoint, neg.rule());
        let cap = b.add_s(r_cap, Role::Joint, neg.rule());
        let ret = b.add_s(ret_end, Role::Joint, pos.rule());

        // corner bumps and the legs between corners, forward and return
        for cp in &corner_points {
            checked.extend([cp.p_b, cp.p_c]);
        }
        for cp in &corner_points[..GADGET_CORNERS - 1] {
            checked.push(cp.p_d);
        }
        for cp in &corner_points {
            checked.push(cp.p_g);
        }
        for cp in &corner_points[1..] {
            checked.push(cp.p_h);
        }
        checked.sort_unstable();

        let mut true_path = sorted_along(&ring, pos_c, pos.dir);
        let mut false_path = Vec::new();
        for (k, cp) in corner_points.iter().enumerate() {
            let (t, f) = if k % 2 == 0 { (cp.s_l, cp.s_k) } else { (cp.s_k, cp.s_l) };
            true_path.push(t);
            false_path.push(f);
        }
        false_path.extend(sorted_along(&ring, neg_c, neg.dir));
        let mut suffix = vec![x_end, cap];
        for cp in corner_points.iter().rev() {
            suffix.extend([cp.s_g, cp.s_k, cp.s_l, cp.s_h]);
        }
        suffix.push(ret);

        gadgets.push(Gadget {
            variable: var,
            positive: pos,
            negative: neg,
            corners: chain.corners,
            corner_points,
            corner_rules: rules,
            paths: GadgetPaths { prefix, true_path, false_path, suffix },
            chord_segments: [chord_in, chord_out],
            checked_segments: checked,
            placed_before,
            joint_radius,
            entry_radius,
            exit_radius,
            chain_radius: chain.radius,
        });
        debug_assert!((chain.vertices[0] - pos.at_radius(chain.radius, true)).norm() < 1e-6 * eps);
        prev_ret = Some(ret_end);
    }

    let curve = PolyCurve::new(b.p.iter().map(|&v| to_point(v)).collect())
        .map_err(|e| ReductionError::Generation(e.to_string()))?;
    let instance = Instance::new(
        curve,
        b.s.iter().map(|&v| to_point(v)).collect(),
        eps,
        Variant::NonUniqueAllPoints,
    )?;
    let out = ReductionOutput {
        instance,
        meta: ReductionMeta {
            formula: formula.clone(),
            params: ReductionParams {
                eps,
                ring_radius: ring.radius,
                split_offset: SPLIT_OFFSET * eps,
                min_leg: MIN_LEG * eps,
            },
            ring,
            roles: b.roles,
            strip_rules: b.rules,
            gadgets,
        },
    };
    let problems = validate_geometry(&out);
    if let Some(v) = problems.first() {
        return Err(ReductionError::Placement(format!("{} violations, first: {v}", problems.len())));
    }
    Ok(out)
}

/// Per variable, the TRUE or FALSE alternative between the always-visited
/// points.
pub fn witness_from_assignment(r: &ReductionOutput, a: &Assignment) -> Result<Witness, ReductionError> {
    witness_from_meta(&r.meta, a)
}

pub fn witness_from_meta(meta: &ReductionMeta, a: &Assignment) -> Result<Witness, ReductionError> {
    if a.0.len() != meta.formula.variable_count() {
        return Err(ReductionError::Assignment(format!(
            "expected {} values, got {}",
            meta.formula.variable_count(),
            a.0.len()
        )));
    }
    let mut w = Vec::new();
    for g in &meta.gadgets {
        w.extend(&g.paths.prefix);
        w.extend(if a.value(g.variable) { &g.paths.true_path } else { &g.paths.false_path });
        w.extend(&g.paths.suffix);
    }
    Ok(Witness(w))
}
