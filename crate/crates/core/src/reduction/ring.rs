use serde::{Deserialize, Serialize};

use super::{cross, unit, ReductionError, Vec2};
use crate::frechet::slackened;

pub const STRIP_HALF_WIDTH: f64 = 7.0;
pub const CHORD_SEPARATION: f64 = 14.0;

/// Clause points equally spaced on a circle about the origin, the first at
/// angle `π / n`, then counter-clockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClauseRing {
    pub eps: f64,
    pub radius: f64,
    pub points: Vec<Vec2>,
}

impl ClauseRing {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn with_radius(clause_count: usize, eps: f64, radius: f64) -> Self {
        let n = clause_count as f64;
        let points = (0..clause_count)
            .map(|j| radius * unit(std::f64::consts::PI / n + std::f64::consts::TAU * j as f64 / n))
            .collect();
        Self { eps, radius, points }
    }

    /// All strips, one per unordered clause pair `(i, j)`, `i < j`.
    pub fn strips(&self) -> Vec<((usize, usize), Strip)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                out.push(((i, j), clause_strip(self, i, j).unwrap()));
            }
        }
        out
    }

    /// Smallest separation between two distinct parallel chords, or `None`
    /// when no two chords are parallel.
    pub fn min_parallel_separation(&self) -> Option<f64> {
        let n = self.len();
        let mut chords = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                chords.push((i, j));
            }
        }
        let mut best: Option<f64> = None;
        for (a, &(i, j)) in chords.iter().enumerate() {
            for &(k, l) in &chords[a + 1..] {
                if (i + j) % n != (k + l) % n {
                    continue;
                }
                let s = line_distance(self.points[i], self.points[j], self.points[k]);
                best = Some(best.map_or(s, |b: f64| b.min(s)));
            }
        }
        best
    }
}

/// Ring of radius `max(n² eps, r)` where `r` is 1.01 times the smallest
/// radius at which parallel chords are `14 eps` apart.
pub fn build_clause_ring(clause_count: usize, eps: f64) -> Result<ClauseRing, ReductionError> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(ReductionError::BadEpsilon(eps));
    }
    if clause_count == 0 {
        return Err(ReductionError::Generation("clause ring needs at least one clause".into()));
    }
    let base = (clause_count * clause_count) as f64 * eps;
    let unit_ring = ClauseRing::with_radius(clause_count, eps, 1.0);
    let radius = match unit_ring.min_parallel_separation() {
        Some(s) if base * s < CHORD_SEPARATION * eps => 1.01 * CHORD_SEPARATION * eps / s,
        _ => base,
    };
    let ring = ClauseRing::with_radius(clause_count, eps, radius);
    if let Some(s) = ring.min_parallel_separation() {
        if s < CHORD_SEPARATION * eps {
            return Err(ReductionError::Placement(format!(
                "parallel chords {s} apart, need {}",
                CHORD_SEPARATION * eps
            )));
        }
    }
    Ok(ring)
}

/// Closed infinite strip of half-width `half_width` about a line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub origin: Vec2,
    pub dir: Vec2,
    pub half_width: f64,
}

impl Strip {
    pub fn new(a: Vec2, b: Vec2, half_width: f64) -> Self {
        Self { origin: a, dir: (b - a).normalize(), half_width }
    }

    pub fn distance(&self, p: Vec2) -> f64 {
        cross(self.dir, p - self.origin).abs()
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.distance(p) <= slackened(self.half_width)
    }
}

/// Points within `7 eps` of the line through clause points `i` and `j`.
pub fn clause_strip(ring: &ClauseRing, i: usize, j: usize) -> Result<Strip, ReductionError> {
    if i == j || i >= ring.len() || j >= ring.len() {
        return Err(ReductionError::DegenerateStrip(i, j));
    }
    Ok(Strip::new(ring.points[i], ring.points[j], STRIP_HALF_WIDTH * ring.eps))
}

fn line_distance(a: Vec2, b: Vec2, p: Vec2) -> f64 {
    cross((b - a).normalize(), p - a).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn four_clauses() {
        let r = build_clause_ring(4, 1.0).unwrap();
        assert_eq!(r.radius, 16.0);
        for (j, p) in r.points.iter().enumerate() {
            let a = p.y.atan2(p.x).rem_euclid(2.0 * PI);
            assert_abs_diff_eq!(a, FRAC_PI_4 + j as f64 * PI / 2.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p.norm(), 16.0, epsilon = 1e-12);
        }
        // C1C2 and C3C4 are horizontal, 2 * 16 / sqrt(2) apart
        let s = r.min_parallel_separation().unwrap();
        assert_abs_diff_eq!(s, 32.0 / 2f64.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn single_clause() {
        let r = build_clause_ring(1, 1.0).unwrap();
        assert_eq!(r.points.len(), 1);
        assert!(r.min_parallel_separation().is_none());
        assert!(r.strips().is_empty());
    }

    #[test]
    fn twenty_clauses() {
        let r = build_clause_ring(20, 0.5).unwrap();
        assert_eq!(r.radius, 200.0);
        assert!(r.min_parallel_separation().unwrap() >= 7.0);
    }

    #[test]
    fn small_rings_grow() {
        // n = 2, 3 have no parallel chords; larger n never needs to grow past n² eps
        for n in 2..=24 {
            let r = build_clause_ring(n, 1.0).unwrap();
            assert!(r.radius >= (n * n) as f64);
            if let Some(s) = r.min_parallel_separation() {
                assert!(s >= 14.0, "n = {n}: {s}");
            }
        }
    }

    #[test]
    fn strip_membership() {
        let r = build_clause_ring(4, 1.0).unwrap();
        let s = clause_strip(&r, 0, 1).unwrap();
        let mid = (r.points[0] + r.points[1]) / 2.0;
        assert!(s.contains(mid));
        assert!(s.contains(mid + Vec2::new(0.0, 7.0)));
        assert!(!s.contains(mid + Vec2::new(0.0, 7.01)));
        assert!(clause_strip(&r, 2, 2).is_err());
    }

    #[test]
    fn strips_disjoint_far_out() {
        let r = build_clause_ring(4, 1.0).unwrap();
        let strips = r.strips();
        for rad in [64.5, 70.0, 100.0, 500.0] {
            for k in 0..20_000 {
                let p = rad * unit(k as f64 * std::f64::consts::TAU / 20_000.0);
                let inside = strips.iter().filter(|(_, s)| s.contains(p)).count();
                assert!(inside <= 1, "radius {rad}: {inside} strips at {p:?}");
            }
        }
    }
}
