use std::fmt;

use serde::{Deserialize, Serialize};

use super::Instance;
use crate::frechet::slackened;
use crate::geometry::{curve_ball_windows, dist_point_segment, ParamInterval, ParamPoint};

/// Cylinder membership `S_0..=S_{n+1}` and ball windows of every point.
///
/// `S_0` and `S_{n+1}` are the balls around the curve's endpoints; `S_i` for
/// `1 <= i <= n` holds the points within epsilon of segment `i`.
#[derive(Debug, Clone)]
pub struct CylinderIndex<'a> {
    inst: &'a Instance,
    sets: Vec<Vec<usize>>,
    windows: Vec<Vec<ParamInterval>>,
}

impl<'a> CylinderIndex<'a> {
    pub fn instance(&self) -> &'a Instance {
        self.inst
    }

    pub fn segment_count(&self) -> usize {
        self.sets.len() - 2
    }

    /// `S_i` for `0 <= i <= n + 1`, sorted by point index.
    pub fn set(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn contains(&self, i: usize, s: usize) -> bool {
        self.sets[i].binary_search(&s).is_ok()
    }

    pub fn windows(&self, s: usize) -> &[ParamInterval] {
        &self.windows[s]
    }

    /// Earliest curve position within epsilon of point `s`.
    pub fn l(&self, s: usize) -> Option<ParamPoint> {
        self.windows[s].first().map(|w| w.lo)
    }

    /// Latest curve position within epsilon of point `s`.
    pub fn r(&self, s: usize) -> Option<ParamPoint> {
        self.windows[s].last().map(|w| w.hi)
    }

    /// `[l(s), r(s)]` as one interval.
    pub fn span(&self, s: usize) -> Option<ParamInterval> {
        Some(ParamInterval { lo: self.l(s)?, hi: self.r(s)? })
    }
}

pub fn build_cylinder_index(inst: &Instance) -> CylinderIndex<'_> {
    let curve = inst.curve();
    let n = curve.segment_count();
    let eps = slackened(inst.epsilon());
    let mut sets = vec![Vec::new(); n + 2];
    for (s, p) in inst.points().iter().enumerate() {
        if p.dist(curve.start()) <= eps {
            sets[0].push(s);
        }
        if p.dist(curve.end()) <= eps {
            sets[n + 1].push(s);
        }
        for (i, seg) in curve.segments().enumerate() {
            if dist_point_segment(p, &seg).0 <= eps {
                sets[i + 1].push(s);
            }
        }
    }
    let windows = inst.points().iter().map(|p| curve_ball_windows(curve, p, eps)).collect();
    CylinderIndex { inst, sets, windows }
}

/// Outcome of the one-window check.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RestrictionReport {
    /// Points whose epsilon-ball meets the curve in more than one window,
    /// with the window count.
    pub multi_window: Vec<(usize, usize)>,
    /// Points farther than epsilon from the whole curve.
    pub uncovered: Vec<usize>,
}

impl RestrictionReport {
    pub fn holds(&self) -> bool {
        self.multi_window.is_empty() && self.uncovered.is_empty()
    }
}

impl fmt::Display for RestrictionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            return write!(f, "restriction holds");
        }
        let mut parts = Vec::new();
        for (s, k) in &self.multi_window {
            parts.push(format!("point {s} meets the curve in {k} windows"));
        }
        for s in &self.uncovered {
            parts.push(format!("point {s} is in no cylinder"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

/// Every point must see the curve in exactly one connected window.
pub fn check_restriction(inst: &Instance) -> RestrictionReport {
    let idx = build_cylinder_index(inst);
    let mut report = RestrictionReport::default();
    for s in 0..inst.points().len() {
        match idx.windows(s).len() {
            0 => report.uncovered.push(s),
            1 => {}
            k => report.multi_window.push((s, k)),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpsm::Variant;
    use crate::geometry::{Point, PolyCurve};
    use approx::assert_abs_diff_eq;

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
    fn single_segment_windows() {
        let i = inst(&[(0.0, 0.0), (10.0, 0.0)], &[(5.0, 0.0)], 1.0);
        let idx = build_cylinder_index(&i);
        assert_eq!(idx.set(1), &[0]);
        assert!(idx.set(0).is_empty() && idx.set(2).is_empty());
        assert_eq!(idx.l(0).unwrap().segment, 1);
        assert_abs_diff_eq!(idx.l(0).unwrap().t, 0.4, epsilon = 1e-9);
        assert_abs_diff_eq!(idx.r(0).unwrap().t, 0.6, epsilon = 1e-9);
    }

    #[test]
    fn staircase_membership() {
        let i = inst(
            &[(0.0, 5.0), (0.0, 2.0), (2.0, 2.0), (2.0, 0.0), (5.0, 0.0)],
            &[(1.0, 5.0), (0.0, 1.0), (1.0, 0.0), (5.0, 1.0)],
            1.0,
        );
        let idx = build_cylinder_index(&i);
        assert_eq!(idx.set(0), &[0]);
        assert_eq!(idx.set(5), &[3]);
        assert!(idx.set(4).contains(&3));
        assert_eq!(idx.set(1), &[0, 1]);
        assert_eq!(idx.set(2), &[1]);
        assert_eq!(idx.set(3), &[2]);
        assert_eq!(idx.set(4), &[2, 3]);
        assert!(check_restriction(&i).holds());
    }

    #[test]
    fn empty_point_set() {
        let i = inst(&[(0.0, 0.0), (1.0, 0.0), (2.0, 1.0)], &[], 1.0);
        let idx = build_cylinder_index(&i);
        assert!((0..4).all(|k| idx.set(k).is_empty()));
        assert!(check_restriction(&i).holds());
    }

    #[test]
    fn restriction_cases() {
        let straight = inst(&[(0.0, 0.0), (10.0, 0.0)], &[(1.0, 0.5), (5.0, -0.9), (9.0, 0.0)], 1.0);
        assert!(check_restriction(&straight).holds());

        // U-shape: (2, 1.5) is near both long arms but far from the bend
        let u = inst(&[(0.0, 0.0), (6.0, 0.0), (6.0, 3.0), (0.0, 3.0)], &[(2.0, 1.5), (6.0, 1.5)], 1.6);
        let r = check_restriction(&u);
        assert_eq!(r.multi_window, vec![(0, 2)]);
        assert!(r.uncovered.is_empty());

        let far = inst(&[(0.0, 0.0), (1.0, 0.0)], &[(5.0, 5.0)], 1.0);
        let r = check_restriction(&far);
        assert_eq!(r.uncovered, vec![0]);
        assert!(!r.holds());
    }
}
