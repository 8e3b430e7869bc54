//! Polynomial solver for non-unique all-points instances in which every point
//! meets the curve in a single window.
//!
//! Segments `i < j` of `P` are *connectable* via points `(s, t)` when no point
//! is stranded in an intermediate cylinder, the piece of `P` between `r(s)`
//! and `l(t)` is within epsilon of the segment `s→t`, and no point of
//! `S_i ∪ S_j` has to be visited strictly between `s` and `t`. A path from the
//! first to the last segment in the resulting graph yields a witness.

use std::collections::{BTreeSet, VecDeque};

use super::cylinder::{build_cylinder_index, check_restriction, CylinderIndex};
use super::{CpsmError, Instance, Variant, Witness};
use crate::frechet::{decide_subcurve_vs_segment, slackened, ReachFront};
use crate::geometry::{dist_point_segment, segment_ball_window, ParamPoint, Point, PolyCurve};

/// Directed graph on segments `1..=n`; each edge stores the smallest
/// connecting pair `(s, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityGraph {
    n: usize,
    edges: Vec<Vec<(usize, usize, usize)>>,
}

impl ConnectivityGraph {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Outgoing edges of segment `i` as `(j, s, t)`, sorted by `j`.
    pub fn edges_from(&self, i: usize) -> &[(usize, usize, usize)] {
        &self.edges[i - 1]
    }

    pub fn edge(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        self.edges_from(i).iter().find(|e| e.0 == j).map(|e| (e.1, e.2))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Fewest-edge path from segment 1 to segment `n`.
    pub fn shortest_path(&self) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n + 1];
        parent[1] = 0;
        let mut queue = VecDeque::from([1]);
        while let Some(i) = queue.pop_front() {
            if i == self.n {
                break;
            }
            for &(j, _, _) in self.edges_from(i) {
                if parent[j] == usize::MAX {
                    parent[j] = i;
                    queue.push_back(j);
                }
            }
        }
        if parent[self.n] == usize::MAX {
            return None;
        }
        let mut path = vec![self.n];
        while *path.last().unwrap() != 1 {
            path.push(parent[*path.last().unwrap()]);
        }
        path.reverse();
        Some(path)
    }
}

/// Whether segments `i < j` are connectable via `(s, t)`.
pub fn connectable(
    idx: &CylinderIndex<'_>,
    i: usize,
    j: usize,
    s: usize,
    t: usize,
) -> Result<bool, CpsmError> {
    let n = idx.segment_count();
    if !(1 <= i && i < j && j <= n) {
        return Err(CpsmError::BadSegmentPair(i, j));
    }
    if !idx.contains(i, s) {
        return Err(CpsmError::NotInCylinder { point: s, cylinder: i });
    }
    if !idx.contains(j, t) {
        return Err(CpsmError::NotInCylinder { point: t, cylinder: j });
    }
    // 1: nothing stranded strictly between the two cylinders
    for k in i + 1..j {
        if idx.set(k).iter().any(|&v| !idx.contains(i, v) && !idx.contains(j, v)) {
            return Ok(false);
        }
    }
    let (Some(rs), Some(lt)) = (idx.r(s), idx.l(t)) else {
        return Ok(false);
    };
    // 3: every point of S_i ∪ S_j can go before s or after t
    let union: BTreeSet<usize> = idx.set(i).iter().chain(idx.set(j)).copied().collect();
    for v in union {
        let (Some(lv), Some(rv)) = (idx.l(v), idx.r(v)) else { continue };
        if !(lv <= rs || lt <= rv) {
            return Ok(false);
        }
    }
    // 2: the hop s→t shadows P between r(s) and l(t)
    let inst = idx.instance();
    if rs <= lt {
        let pts = inst.points();
        // window ends already sit on the slackened boundary
        let eps = slackened(inst.epsilon());
        Ok(decide_subcurve_vs_segment(inst.curve(), rs, lt, &pts[s], &pts[t], eps)?)
    } else {
        // overlapping windows: P can pause at a common position while Q hops
        let (Some(ws), Some(wt)) = (idx.span(s), idx.span(t)) else {
            return Ok(false);
        };
        Ok(ws.intersects(&wt))
    }
}

pub fn build_graph(idx: &CylinderIndex<'_>) -> Result<ConnectivityGraph, CpsmError> {
    let n = idx.segment_count();
    let mut edges = vec![Vec::new(); n];
    for i in 1..=n {
        for j in i + 1..=n {
            'pairs: for &s in idx.set(i) {
                for &t in idx.set(j) {
                    if connectable(idx, i, j, s, t)? {
                        edges[i - 1].push((j, s, t));
                        break 'pairs;
                    }
                }
            }
        }
    }
    Ok(ConnectivityGraph { n, edges })
}

/// Points emitted while `Q` shadows one segment of the chosen path.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentVisit {
    pub segment: usize,
    /// Emitted points, entry point first and exit point last.
    pub points: Vec<usize>,
    /// Matched position on `P` for each emitted point.
    pub positions: Vec<ParamPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedSolution {
    pub path: Vec<usize>,
    pub visits: Vec<SegmentVisit>,
    /// Points the segment visits missed, spliced in afterwards as
    /// out-and-back excursions from an already matched vertex.
    pub detours: Vec<usize>,
    pub witness: Witness,
}

/// Decides the instance and, when the answer is yes, constructs `Q`.
pub fn solve_restricted(inst: &Instance) -> Result<Option<Witness>, CpsmError> {
    Ok(solve_restricted_detailed(inst)?.map(|s| s.witness))
}

pub fn solve_restricted_detailed(inst: &Instance) -> Result<Option<RestrictedSolution>, CpsmError> {
    if inst.variant() != Variant::NonUniqueAllPoints {
        return Err(CpsmError::VariantMismatch {
            expected: Variant::NonUniqueAllPoints,
            found: inst.variant(),
        });
    }
    let report = check_restriction(inst);
    if !report.holds() {
        return Err(CpsmError::RestrictionViolated(report));
    }
    let idx = build_cylinder_index(inst);
    let n = idx.segment_count();
    let first = *idx.set(0).first().ok_or(CpsmError::EmptyStartBall)?;
    let last = *idx.set(n + 1).first().ok_or(CpsmError::EmptyEndBall)?;
    let graph = build_graph(&idx)?;
    let Some(path) = graph.shortest_path() else {
        return Ok(None);
    };

    // entry (t_i) and exit (s_i) point of every visited segment
    let m = path.len();
    let mut entry = vec![first; m];
    let mut exit = vec![last; m];
    for k in 0..m - 1 {
        let (s, t) = graph.edge(path[k], path[k + 1]).expect("path edge");
        exit[k] = s;
        entry[k + 1] = t;
    }

    let curve = inst.curve();
    let mut visits = Vec::with_capacity(m);
    let mut seq: Vec<usize> = Vec::new();
    for k in 0..m {
        let a = path[k];
        let (t, s) = (entry[k], exit[k]);
        let (lt, rs) = (idx.l(t).unwrap(), idx.r(s).unwrap());
        let seg = curve.segment(a);
        let mut inner: Vec<(f64, usize)> = idx
            .set(a)
            .iter()
            .copied()
            .filter(|&v| v != s && v != t)
            .filter(|&v| lt <= idx.r(v).unwrap() && idx.l(v).unwrap() <= rs)
            .map(|v| (dist_point_segment(&inst.points()[v], &seg).1, v))
            .collect();
        inner.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));

        let mut points = vec![t];
        let mut positions = vec![lt];
        let lo = if lt.segment == a { lt.t } else if lt.segment < a { 0.0 } else { 1.0 };
        let hi = if rs.segment == a { rs.t } else if rs.segment > a { 1.0 } else { 0.0 };
        for &(proj, v) in &inner {
            points.push(v);
            positions.push(curve.normalize(ParamPoint::new(a, proj.clamp(lo, hi.max(lo)))));
        }
        points.push(s);
        positions.push(rs);
        for &v in &points {
            if seq.last() != Some(&v) {
                seq.push(v);
            }
        }
        visits.push(SegmentVisit { segment: a, points, positions });
    }

    let mut detours = Vec::new();
    let emitted: BTreeSet<usize> = seq.iter().copied().collect();
    for v in (0..inst.points().len()).filter(|v| !emitted.contains(v)) {
        if !insert_detour(inst, &mut seq, v) {
            return Err(CpsmError::Construction(format!(
                "path {path:?} leaves point {v} unvisited"
            )));
        }
        detours.push(v);
    }
    Ok(Some(RestrictedSolution { path, visits, detours, witness: Witness(seq) }))
}

/// Inserts `q_j → v → q_j` at the first vertex `q_j` of `seq` that some
/// matching can pair with a position of `P` inside the ball around `v`.
fn insert_detour(inst: &Instance, seq: &mut Vec<usize>, v: usize) -> bool {
    let eps = slackened(inst.epsilon());
    let curve = inst.curve();
    let pts = inst.points();
    let q: Vec<&Point> = seq.iter().map(|&i| &pts[i]).collect();
    let forward = fronts(curve, &q, eps);
    let rev_curve = PolyCurve::new(curve.vertices().iter().rev().cloned().collect())
        .expect("reversed curve is valid");
    let rev_q: Vec<&Point> = q.iter().rev().copied().collect();
    let backward = fronts(&rev_curve, &rev_q, eps);
    let n = curve.segment_count();
    let m = q.len();
    for j in 0..m {
        let fw = forward[j].windows();
        let bw = backward[m - 1 - j].windows();
        for (i, seg) in curve.segments().enumerate() {
            let (Some(f), Some(b), Some(ball)) =
                (fw[i], bw[n - 1 - i], segment_ball_window(&seg, &pts[v], eps))
            else {
                continue;
            };
            let lo = f.lo.max(1.0 - b.hi).max(ball.lo);
            let hi = f.hi.min(1.0 - b.lo).min(ball.hi);
            if lo <= hi {
                seq.splice(j + 1..j + 1, [v, seq[j]]);
                return true;
            }
        }
    }
    false
}

fn fronts(curve: &PolyCurve, q: &[&Point], eps: f64) -> Vec<ReachFront> {
    let mut out = vec![ReachFront::start(curve, q[0], eps)];
    for w in q.windows(2) {
        let next = out.last().unwrap().advance(curve, w[0], w[1], eps);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpsm::{verify_witness, Instance, Variant};

    fn inst(curve: &[(f64, f64)], pts: &[(f64, f64)], eps: f64) -> Instance {
        Instance::new(
            PolyCurve::from_xy(curve).unwrap(),
            pts.iter().map(|&(x, y)| Point::xy(x, y)).collect(),
            eps,
            Variant::NonUniqueAllPoints,
        )
        .unwrap()
    }

    #[test]
    fn single_segment() {
        let i = inst(&[(0.0, 0.0), (10.0, 0.0)], &[(0.5, 0.5), (9.5, -0.5)], 1.0);
        let w = solve_restricted(&i).unwrap().unwrap();
        assert_eq!(w, Witness(vec![0, 1]));
        assert!(verify_witness(&i, &w).unwrap().is_valid());
        let g = build_graph(&build_cylinder_index(&i)).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.shortest_path(), Some(vec![1]));
    }

    #[test]
    fn axis_points_in_order() {
        let i = inst(
            &[(0.0, 0.0), (10.0, 0.0)],
            &[(8.0, 0.0), (0.0, 0.0), (4.0, 0.0), (10.0, 0.0), (2.0, 0.0)],
            1.0,
        );
        let w = solve_restricted(&i).unwrap().unwrap();
        assert_eq!(w, Witness(vec![1, 4, 2, 0, 3]));
    }

    #[test]
    fn shared_point_connects_collinear_segments() {
        let i = inst(&[(0.0, 0.0), (5.0, 0.0), (10.0, 0.0)], &[(0.0, 0.0), (5.0, 0.5), (10.0, 0.0)], 1.0);
        let idx = build_cylinder_index(&i);
        assert!(connectable(&idx, 1, 2, 1, 1).unwrap());
        let w = solve_restricted(&i).unwrap().unwrap();
        assert!(verify_witness(&i, &w).unwrap().is_valid());
    }

    #[test]
    fn stranded_point_blocks_edge() {
        // the point (5, 4.5) only lives in the middle cylinder
        let i = inst(
            &[(0.0, 0.0), (5.0, 0.0), (5.0, 5.0), (10.0, 5.0)],
            &[(0.0, 0.0), (4.5, 0.5), (5.5, 2.5), (5.5, 4.5), (10.0, 5.0)],
            1.0,
        );
        let idx = build_cylinder_index(&i);
        assert_eq!(idx.set(2), &[1, 2, 3]);
        assert!(!idx.contains(1, 2) && !idx.contains(3, 2));
        for &s in idx.set(1) {
            for &t in idx.set(3) {
                assert!(!connectable(&idx, 1, 3, s, t).unwrap());
            }
        }
        let g = build_graph(&idx).unwrap();
        assert!(g.edge(1, 3).is_none());
    }

    #[test]
    fn skipped_point_blocks_hop() {
        // v = 1 sits strictly between the windows of s = 0 and t = 2
        let i = inst(&[(0.0, 0.0), (10.0, 0.0), (20.0, 0.0)], &[(0.0, 0.5), (9.0, 0.5), (20.0, 0.5)], 1.0);
        let idx = build_cylinder_index(&i);
        assert!(idx.r(0).unwrap() < idx.l(1).unwrap());
        assert!(idx.r(1).unwrap() < idx.l(2).unwrap());
        assert!(!connectable(&idx, 1, 2, 0, 2).unwrap());
        assert!(connectable(&idx, 1, 2, 1, 2).unwrap());
    }

    #[test]
    fn errors() {
        let i = inst(&[(0.0, 0.0), (10.0, 0.0)], &[(5.0, 0.0)], 1.0);
        assert_eq!(solve_restricted(&i), Err(CpsmError::EmptyStartBall));
        let i2 = inst(&[(0.0, 0.0), (10.0, 0.0)], &[(0.0, 0.0)], 1.0);
        assert_eq!(solve_restricted(&i2), Err(CpsmError::EmptyEndBall));
        assert!(matches!(
            solve_restricted(&i.with_variant(Variant::UniqueAllPoints)),
            Err(CpsmError::VariantMismatch { .. })
        ));
        let u = inst(&[(0.0, 0.0), (6.0, 0.0), (6.0, 3.0), (0.0, 3.0)], &[(0.0, 0.0), (2.0, 1.5), (0.0, 3.0)], 1.6);
        assert!(matches!(solve_restricted(&u), Err(CpsmError::RestrictionViolated(_))));
        let idx = build_cylinder_index(&i);
        assert!(matches!(connectable(&idx, 1, 1, 0, 0), Err(CpsmError::BadSegmentPair(1, 1))));
    }
}
