#![allow(dead_code)]

use cpsm::cpsm::check_restriction;
use cpsm::geometry::{Point, PolyCurve};
use cpsm::{Instance, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random 2D curve with `n` segments plus `k` points scattered around it.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, k: usize, eps: f64, variant: Variant) -> Instance {
    loop {
        let mut verts = vec![(0.0, 0.0)];
        for _ in 0..n {
            let &(x, y) = verts.last().unwrap();
            let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let len: f64 = rng.gen_range(0.5..4.0);
            verts.push(((x + len * a.cos()).round_to(0.25), (y + len * a.sin()).round_to(0.25)));
        }
        let Ok(curve) = PolyCurve::from_xy(&verts) else { continue };
        let mut pts: Vec<Point> = Vec::new();
        let ends = [verts[0], verts[n]];
        for &(x, y) in &ends {
            if rng.gen_bool(0.8) {
                pts.push(jitter(rng, x, y, eps));
            }
        }
        while pts.len() < k {
            let i = rng.gen_range(0..n);
            let t: f64 = rng.gen();
            let (a, b) = (verts[i], verts[i + 1]);
            pts.push(jitter(rng, a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1), 1.3 * eps));
        }
        pts.truncate(k);
        if let Ok(inst) = Instance::new(curve, pts, eps, variant) {
            return inst;
        }
    }
}

fn jitter(rng: &mut ChaCha8Rng, x: f64, y: f64, r: f64) -> Point {
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let d: f64 = rng.gen_range(0.0..r);
    Point::xy((x + d * a.cos()).round_to(0.125), (y + d * a.sin()).round_to(0.125))
}

trait RoundTo {
    fn round_to(self, q: f64) -> f64;
}

impl RoundTo for f64 {
    fn round_to(self, q: f64) -> f64 {
        (self / q).round() * q
    }
}

/// Random instance satisfying the one-window restriction.
pub fn random_restricted(rng: &mut ChaCha8Rng, n: usize, k: usize, eps: f64) -> Instance {
    loop {
        let inst = random_instance(rng, n, k, eps, Variant::NonUniqueAllPoints);
        if check_restriction(&inst).holds() {
            return inst;
        }
    }
}

/// Discrete Fréchet distance between vertex sequences, by dynamic programming.
/// It upper-bounds the continuous distance.
pub fn discrete_frechet(p: &[Point], q: &[Point]) -> f64 {
    let (n, m) = (p.len(), q.len());
    let mut d = vec![vec![f64::INFINITY; m]; n];
    for i in 0..n {
        for j in 0..m {
            let c = p[i].dist(&q[j]);
            let prev = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => d[0][j - 1],
                (_, 0) => d[i - 1][0],
                _ => d[i - 1][j].min(d[i][j - 1]).min(d[i - 1][j - 1]),
            };
            d[i][j] = c.max(prev);
        }
    }
    d[n - 1][m - 1]
}

/// Points at parameter steps of `1/per_segment` along every segment.
pub fn densify(curve: &PolyCurve, per_segment: usize) -> Vec<Point> {
    let mut out = vec![curve.start().clone()];
    for seg in curve.segments() {
        for s in 1..=per_segment {
            out.push(seg.at(s as f64 / per_segment as f64));
        }
    }
    out
}
