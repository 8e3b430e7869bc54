use std::fmt;

use serde::{Deserialize, Serialize};

use super::build::{witness_from_assignment, ReductionOutput, Role, StripRule};
use super::formula::{sat_bruteforce, validate_b2, BRUTEFORCE_MAX_VARS};
use super::ring::{ClauseRing, Strip, CHORD_SEPARATION, STRIP_HALF_WIDTH};
use super::{to_point, Vec2};
use crate::cpsm::verify_witness;
use crate::geometry::{convex_hull, dist_point_segment, dist_segment_convex_polygon, Segment};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ReductionViolation {
    Formula(String),
    Ring(String),
    Corner { gadget: usize, corner: usize, residual: f64 },
    CornerExtent { gadget: usize, corner: usize, extent: f64 },
    Turn { gadget: usize, corner: usize, alpha: f64 },
    Parity { gadget: usize, corners: usize },
    Orientation { gadget: usize },
    Strip { point: usize, strips: Vec<(usize, usize)> },
    CornerStrip { gadget: usize, corner: usize, strips: Vec<(usize, usize)> },
    Hull { gadget: usize, segment: usize, distance: f64 },
    Chord { gadget: usize, clause: usize, distance: f64 },
    Paths { gadget: usize, detail: String },
    Witness(String),
}

impl fmt::Display for ReductionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ReductionViolation::*;
        match self {
            Formula(m) => write!(f, "formula: {m}"),
            Ring(m) => write!(f, "clause ring: {m}"),
            Corner { gadget, corner, residual } => {
                write!(f, "gadget {gadget} corner {corner}: constraint residual {residual:.3e}")
            }
            CornerExtent { gadget, corner, extent } => {
                write!(f, "gadget {gadget} corner {corner}: reaches {extent} from its entry line")
            }
            Turn { gadget, corner, alpha } => {
                write!(f, "gadget {gadget} corner {corner}: turn {alpha} exceeds pi/2")
            }
            Parity { gadget, corners } => write!(f, "gadget {gadget}: {corners} corners, need an odd count"),
            Orientation { gadget } => write!(f, "gadget {gadget}: corners bend both ways"),
            Strip { point, strips } => write!(f, "point {point} lies in strips {strips:?}"),
            CornerStrip { gadget, corner, strips } => {
                write!(f, "gadget {gadget} corner {corner} lies in strips {strips:?}")
            }
            Hull { gadget, segment, distance } => {
                write!(f, "gadget {gadget}: segment {segment} is {distance} from the earlier hull")
            }
            Chord { gadget, clause, distance } => {
                write!(f, "gadget {gadget}: clause point {clause} is {distance} off its chord")
            }
            Paths { gadget, detail } => write!(f, "gadget {gadget}: {detail}"),
            Witness(m) => write!(f, "witness: {m}"),
        }
    }
}

/// Every check, including the witness of the first satisfying assignment
/// when the formula is small enough to brute force.
pub fn validate_reduction(r: &ReductionOutput) -> Vec<ReductionViolation> {
    let mut out = validate_geometry(r);
    let f = &r.meta.formula;
    if f.variable_count() > BRUTEFORCE_MAX_VARS {
        return out;
    }
    match sat_bruteforce(f) {
        Ok(Some(a)) => match witness_from_assignment(r, &a) {
            Ok(w) => match verify_witness(&r.instance, &w) {
                Ok(rep) if rep.is_valid() => {}
                Ok(rep) => out.push(ReductionViolation::Witness(format!(
                    "assignment {a}: {}",
                    rep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
                ))),
                Err(e) => out.push(ReductionViolation::Witness(e.to_string())),
            },
            Err(e) => out.push(ReductionViolation::Witness(e.to_string())),
        },
        Ok(None) => {}
        Err(e) => out.push(ReductionViolation::Witness(e.to_string())),
    }
    out
}

/// The structural checks, without any Fréchet computation.
pub fn validate_geometry(r: &ReductionOutput) -> Vec<ReductionViolation> {
    use ReductionViolation as V;
    let mut out = Vec::new();
    let meta = &r.meta;
    let eps = meta.params.eps;
    let s = r.s_points();
    let p = r.p_vertices();
    let n = meta.formula.clause_count();

    let report = validate_b2(&meta.formula);
    if !report.is_valid() {
        out.push(V::Formula(report.to_string()));
    }
    if meta.roles.len() != s.len() || meta.strip_rules.len() != s.len() {
        out.push(V::Formula(format!("{} points but {} roles", s.len(), meta.roles.len())));
        return out;
    }
    let clause_idx: Vec<usize> = (0..s.len())
        .filter(|&i| matches!(meta.roles[i], Role::ClausePoint(_)))
        .collect();
    if clause_idx != (0..n).collect::<Vec<_>>()
        || clause_idx.iter().any(|&i| meta.roles[i] != Role::ClausePoint(i))
    {
        out.push(V::Ring("clause points must be the first points, one per clause".into()));
        return out;
    }

    let ring = ClauseRing { eps, radius: s.first().map_or(0.0, |c| c.norm()), points: s[..n].to_vec() };
    check_ring(&ring, n, eps, &mut out);
    let strips = ring.strips();
    let hits = |v: Vec2| -> Vec<(usize, usize)> {
        strips.iter().filter(|(_, st): &&(_, Strip)| st.contains(v)).map(|(k, _)| *k).collect()
    };
    let obeys = |h: &[(usize, usize)], rule: StripRule| match rule {
        StripRule::Any => true,
        StripRule::Outside => h.is_empty(),
        StripRule::Only(i, j) => h.iter().all(|&k| k == (i, j)),
    };
    for (i, &v) in s.iter().enumerate() {
        let h = hits(v);
        if !obeys(&h, meta.strip_rules[i]) {
            out.push(V::Strip { point: i, strips: h });
        }
    }

    let tol = 1e-9 * eps;
    for (gi, g) in meta.gadgets.iter().enumerate() {
        let gn = gi + 1;
        if g.corners.len() % 2 == 0 {
            out.push(V::Parity { gadget: gn, corners: g.corners.len() });
        }
        if g.corners.iter().any(|c| c.frame.left != g.corners[0].frame.left) {
            out.push(V::Orientation { gadget: gn });
        }
        for (ci, (spec, idx)) in g.corners.iter().zip(&g.corner_points).enumerate() {
            let get = |v: &[Vec2], i: usize| v.get(i).copied().unwrap_or(Vec2::new(f64::NAN, f64::NAN));
            let mut c = spec.clone();
            c.b = get(&p, idx.p_b);
            c.c = get(&p, idx.p_c);
            c.d = get(&p, idx.p_d);
            c.g = get(&p, idx.p_g);
            c.h = get(&p, idx.p_h);
            c.k = get(&s, idx.s_k);
            c.l = get(&s, idx.s_l);
            let sg = get(&s, idx.s_g);
            let sh = get(&s, idx.s_h);
            let res = c.residuals().max().max((sg - c.g).norm()).max((sh - c.h).norm());
            if !(res <= tol) {
                out.push(V::Corner { gadget: gn, corner: ci + 1, residual: res });
            }
            let extent = c.strip_extent();
            if !(extent <= STRIP_HALF_WIDTH * eps * (1.0 + 1e-9)) {
                out.push(V::CornerExtent { gadget: gn, corner: ci + 1, extent });
            }
            if c.alpha > std::f64::consts::FRAC_PI_2 + 1e-12 {
                out.push(V::Turn { gadget: gn, corner: ci + 1, alpha: c.alpha });
            }
            let rule = g.corner_rules.get(ci).copied().unwrap_or(StripRule::Outside);
            let mut bad: Vec<(usize, usize)> = Vec::new();
            for v in [c.b, c.c, c.d, c.g, c.h, c.k, c.l] {
                let h = hits(v);
                if !obeys(&h, rule) {
                    bad.extend(h);
                }
            }
            if !bad.is_empty() {
                bad.sort_unstable();
                bad.dedup();
                out.push(V::CornerStrip { gadget: gn, corner: ci + 1, strips: bad });
            }
        }

        let earlier: Vec<_> = s[..g.placed_before.min(s.len())].iter().map(|&v| to_point(v)).collect();
        match convex_hull(&earlier) {
            Ok(hull) => {
                for &i in &g.checked_segments {
                    if i + 1 >= p.len() {
                        out.push(V::Hull { gadget: gn, segment: i, distance: f64::NAN });
                        continue;
                    }
                    let seg = Segment { start: to_point(p[i]), end: to_point(p[i + 1]) };
                    let d = dist_segment_convex_polygon(&seg, &hull);
                    if !(d > eps) {
                        out.push(V::Hull { gadget: gn, segment: i, distance: d });
                    }
                }
            }
            Err(e) => out.push(V::Formula(e.to_string())),
        }

        let clause_on_chord = |clause: usize, seg: usize, out: &mut Vec<ReductionViolation>| {
            let d = if seg + 1 < p.len() {
                let sg = Segment { start: to_point(p[seg]), end: to_point(p[seg + 1]) };
                dist_point_segment(&to_point(s[clause]), &sg).0
            } else {
                f64::INFINITY
            };
            if !(d <= 1e-9 * eps * (1.0 + s[clause].norm())) {
                out.push(V::Chord { gadget: gn, clause: clause + 1, distance: d });
            }
        };
        let lits = [g.variable as i32, -(g.variable as i32)];
        for (side, &lit) in lits.iter().enumerate() {
            let mut want = meta.formula.occurrences(lit);
            for &c in &want {
                clause_on_chord(c, g.chord_segments[side], &mut out);
            }
            let path = if side == 0 { &g.paths.true_path } else { &g.paths.false_path };
            let mut got: Vec<usize> = path.iter().copied().filter(|&i| i < n).collect();
            got.sort_unstable();
            want.sort_unstable();
            if got != want {
                out.push(V::Paths {
                    gadget: gn,
                    detail: format!("alternative {side} visits clauses {got:?}, expected {want:?}"),
                });
            }
        }
    }
    out
}

fn check_ring(ring: &ClauseRing, n: usize, eps: f64, out: &mut Vec<ReductionViolation>) {
    use ReductionViolation as V;
    let radius = ring.radius;
    let tol = 1e-9 * radius.max(eps);
    if radius < (n * n) as f64 * eps - tol {
        out.push(V::Ring(format!("radius {radius} below {}", (n * n) as f64 * eps)));
    }
    let base = ring.points[0].y.atan2(ring.points[0].x);
    for (j, c) in ring.points.iter().enumerate() {
        if (c.norm() - radius).abs() > tol {
            out.push(V::Ring(format!("clause point {} at radius {}, not {radius}", j + 1, c.norm())));
        }
        let want = radius * super::unit(base + std::f64::consts::TAU * j as f64 / n as f64);
        if (c - want).norm() > tol {
            out.push(V::Ring(format!("clause point {} is not equally spaced", j + 1)));
        }
    }
    if let Some(sep) = ring.min_parallel_separation() {
        if sep < CHORD_SEPARATION * eps * (1.0 - 1e-9) {
            out.push(V::Ring(format!("parallel chords {sep} apart, need {}", CHORD_SEPARATION * eps)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpsm::Instance;
    use crate::geometry::Point;
    use crate::reduction::{build_reduction, Formula};

    fn with_points(r: &ReductionOutput, f: impl Fn(usize, &Point) -> Point) -> ReductionOutput {
        let pts = r.instance.points().iter().enumerate().map(|(i, p)| f(i, p)).collect();
        let inst = Instance::new(r.instance.curve().clone(), pts, r.instance.epsilon(), r.instance.variant())
            .unwrap();
        ReductionOutput { instance: inst, meta: r.meta.clone() }
    }

    #[test]
    fn example_is_clean() {
        let r = build_reduction(&Formula::example(), 1.0).unwrap();
        assert_eq!(validate_reduction(&r), vec![]);
    }

    #[test]
    fn perturbed_corner_is_reported() {
        let r = build_reduction(&Formula::example(), 1.0).unwrap();
        let k = r.meta.gadgets[1].corner_points[2].s_k;
        let bad = with_points(&r, |i, p| if i == k { Point::xy(p.x() + 0.1, p.y()) } else { p.clone() });
        let v = validate_geometry(&bad);
        assert!(
            v.iter().any(|x| matches!(x, ReductionViolation::Corner { gadget: 2, corner: 3, residual } if *residual > 0.01)),
            "{v:?}"
        );
    }

    #[test]
    fn halved_ring_is_reported() {
        let r = build_reduction(&Formula::example(), 1.0).unwrap();
        let bad = with_points(&r, |i, p| if i < 4 { Point::xy(p.x() / 2.0, p.y() / 2.0) } else { p.clone() });
        let v = validate_geometry(&bad);
        let ring: Vec<String> = v
            .iter()
            .filter_map(|x| match x {
                ReductionViolation::Ring(m) => Some(m.clone()),
                _ => None,
            })
            .collect();
        assert!(ring.iter().any(|m| m.contains("parallel chords")), "{ring:?}");
        assert!(ring.iter().any(|m| m.contains("radius 8")), "{ring:?}");
    }

    #[test]
    fn joint_in_strip_is_reported() {
        let r = build_reduction(&Formula::example(), 1.0).unwrap();
        let j = r.meta.gadgets[1].paths.prefix[0];
        let bad = with_points(&r, |i, p| if i == j { Point::xy(200.0, 11.5) } else { p.clone() });
        assert!(validate_geometry(&bad)
            .iter()
            .any(|x| matches!(x, ReductionViolation::Strip { point, .. } if *point == j)));
    }

    #[test]
    fn broken_witness_is_reported() {
        let r = build_reduction(&Formula::example(), 1.0).unwrap();
        // x1 = x2 = F, x3 = T satisfies; nudge a point only the witness uses
        let g = &r.meta.gadgets[0];
        let s0 = g.paths.prefix[g.paths.prefix.len() - 1];
        let bad = with_points(&r, |i, p| {
            if i == s0 {
                let d = r.meta.gadgets[0].positive.dir;
                Point::xy(p.x() - 0.5 * d.y, p.y() + 0.5 * d.x)
            } else {
                p.clone()
            }
        });
        assert!(validate_reduction(&bad).iter().any(|x| matches!(x, ReductionViolation::Witness(_))));
    }
}
