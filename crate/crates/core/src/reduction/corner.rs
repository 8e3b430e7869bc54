use serde::{Deserialize, Serialize};

use super::{cross, perp, ReductionError, Vec2};

/// Placement of a corner: position of `B`, unit heading of `AB`, and the side
/// the path bends to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub origin: Vec2,
    pub heading: Vec2,
    pub left: bool,
}

impl Frame {
    /// Unit normal on the side the corner bends to.
    pub fn inner_normal(&self) -> Vec2 {
        if self.left {
            perp(self.heading)
        } else {
            -perp(self.heading)
        }
    }

    fn world(&self, x: f64, y: f64) -> Vec2 {
        self.origin + x * self.heading + y * self.inner_normal()
    }
}

/// One alpha-corner: forward path `A B C D E`, return path `F G H J`, and the
/// interior points `K`, `L`. `G, H, K, L` are points of `S`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CornerSpec {
    pub alpha: f64,
    pub eps: f64,
    pub frame: Frame,
    pub a: Vec2,
    pub b: Vec2,
    pub c: Vec2,
    pub d: Vec2,
    pub e: Vec2,
    pub f: Vec2,
    pub g: Vec2,
    pub h: Vec2,
    pub j: Vec2,
    pub k: Vec2,
    pub l: Vec2,
}

/// Worst-case deviations from the defining constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerResiduals {
    pub bl: f64,
    pub dk: f64,
    pub ab_to_k: f64,
    pub de_to_l: f64,
    pub collinear: f64,
    pub midpoint_line: f64,
}

impl CornerResiduals {
    pub fn max(&self) -> f64 {
        [self.bl, self.dk, self.ab_to_k, self.de_to_l, self.collinear, self.midpoint_line]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Builds the corner in `frame`, turning by `alpha`.
///
/// With `u` the heading and `v` the heading after the bend,
/// `‖BC‖ = ‖CD‖ = eps (1 + 1 / sin α)`, `BC ∥ v`, `CD ∥ u`, `L = B + eps u`,
/// `K = D - eps v`, `G = L + 3 (K - L)`, `H = L - 2 (K - L)`, and `A`, `E`,
/// `J`, `F` extend the four outer lines.
pub fn make_alpha_corner(frame: Frame, alpha: f64, eps: f64) -> Result<CornerSpec, ReductionError> {
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        return Err(ReductionError::BadAlpha(alpha));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(ReductionError::BadEpsilon(eps));
    }
    let (s, co) = alpha.sin_cos();
    let side = eps * (1.0 + 1.0 / s);
    let v = (co, s);
    let c = (side * v.0, side * v.1);
    let d = (c.0 + side, c.1);
    let l = (eps, 0.0);
    let k = (d.0 - eps * v.0, d.1 - eps * v.1);
    let g = (l.0 + 3.0 * (k.0 - l.0), l.1 + 3.0 * (k.1 - l.1));
    let h = (l.0 - 2.0 * (k.0 - l.0), l.1 - 2.0 * (k.1 - l.1));
    let a = (-3.0 * eps, 0.0);
    let e = (d.0 + 3.0 * eps * v.0, d.1 + 3.0 * eps * v.1);
    let j = (h.0 - 2.0 * eps / s, h.1);
    let f = (g.0 + 2.0 * eps / s * v.0, g.1 + 2.0 * eps / s * v.1);
    let w = |p: (f64, f64)| frame.world(p.0, p.1);
    Ok(CornerSpec {
        alpha,
        eps,
        frame,
        a: w(a),
        b: w((0.0, 0.0)),
        c: w(c),
        d: w(d),
        e: w(e),
        f: w(f),
        g: w(g),
        h: w(h),
        j: w(j),
        k: w(k),
        l: w(l),
    })
}

impl CornerSpec {
    /// Corner whose `AB` line arrives at `x` along `incoming` and whose `DE`
    /// line leaves `x` along `outgoing`.
    pub fn at_vertex(x: Vec2, incoming: Vec2, outgoing: Vec2, eps: f64) -> Result<Self, ReductionError> {
        let u = incoming.normalize();
        let v = outgoing.normalize();
        let alpha = cross(u, v).atan2(u.dot(&v)).abs();
        let side = eps * (1.0 + 1.0 / alpha.sin());
        let frame = Frame { origin: x - side * u, heading: u, left: cross(u, v) > 0.0 };
        make_alpha_corner(frame, alpha, eps)
    }

    /// Intersection of the `AB` and `DE` lines.
    pub fn vertex(&self) -> Vec2 {
        let side = self.eps * (1.0 + 1.0 / self.alpha.sin());
        self.b + side * self.frame.heading
    }

    pub fn outgoing(&self) -> Vec2 {
        (self.e - self.d).normalize()
    }

    /// `B, C, D`: the vertices the forward path of `P` bends at.
    pub fn forward_vertices(&self) -> [Vec2; 3] {
        [self.b, self.c, self.d]
    }

    /// The twelve named points, in the order A..L without I.
    pub fn named_points(&self) -> [(char, Vec2); 11] {
        [
            ('A', self.a),
            ('B', self.b),
            ('C', self.c),
            ('D', self.d),
            ('E', self.e),
            ('F', self.f),
            ('G', self.g),
            ('H', self.h),
            ('J', self.j),
            ('K', self.k),
            ('L', self.l),
        ]
    }

    pub fn residuals(&self) -> CornerResiduals {
        let u = self.frame.heading;
        let v = self.outgoing();
        let line_dist = |p: Vec2, o: Vec2, dir: Vec2| cross(dir, p - o).abs();
        let gh = (self.h - self.g).normalize();
        let m1 = (self.a + self.j) / 2.0;
        let m2 = (self.e + self.f) / 2.0;
        CornerResiduals {
            bl: ((self.l - self.b).norm() - self.eps).abs(),
            dk: ((self.k - self.d).norm() - self.eps).abs(),
            ab_to_k: (line_dist(self.k, self.a, u) - self.eps).abs(),
            de_to_l: (line_dist(self.l, self.d, v) - self.eps).abs(),
            collinear: line_dist(self.k, self.g, gh).max(line_dist(self.l, self.g, gh)),
            midpoint_line: line_dist(self.c, m1, (m2 - m1).normalize()),
        }
    }

    /// Largest distance of a named point from the `AB` line.
    pub fn strip_extent(&self) -> f64 {
        let u = self.frame.heading;
        self.named_points().iter().map(|&(_, p)| cross(u, p - self.b).abs()).fold(0.0, f64::max)
    }
}
