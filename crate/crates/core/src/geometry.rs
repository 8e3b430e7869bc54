//! Points, segments, polygonal curves and the curve parameterization.
//!
//! Positions on a curve are addressed by [`ParamPoint`]: a 1-based segment
//! index plus a local parameter in `[0, 1]`. Lexicographic order on that pair
//! is the "occurs before" order along the curve.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

/// Arc-length gap below which two ball windows on a curve are merged.
pub const WINDOW_MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points must have at least one coordinate")]
    ZeroDimension,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("a polygonal curve needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("segment index {index} out of range 1..={segments}")]
    SegmentOutOfRange { index: usize, segments: usize },
    #[error("local parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("operation requires 2-dimensional input, got dimension {0}")]
    NotPlanar(usize),
    #[error("empty point list")]
    Empty,
}

/// A point in R^d.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: SmallVec<[f64; 3]>,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords.as_slice())
    }
}

impl Point {
    pub fn new(coords: impl IntoIterator<Item = f64>) -> Result<Self, GeometryError> {
        let coords: SmallVec<[f64; 3]> = coords.into_iter().collect();
        if coords.is_empty() {
            return Err(GeometryError::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(Self { coords })
    }

    /// Planar point. Panics on non-finite input.
    pub fn xy(x: f64, y: f64) -> Self {
        Self::new([x, y]).expect("finite planar coordinates")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn x(&self) -> f64 {
        self.coords[0]
    }

    pub fn y(&self) -> f64 {
        self.coords.get(1).copied().unwrap_or(0.0)
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum()
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: f64) -> Point {
        Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + t * (b - a))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Point) -> SmallVec<[f64; 3]> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()
    }

    pub fn check_dim(&self, expected: usize) -> Result<(), GeometryError> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(GeometryError::DimensionMismatch { expected, found: self.dim() })
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Result<Self, GeometryError> {
        end.check_dim(start.dim())?;
        Ok(Self { start, end })
    }

    pub fn at(&self, t: f64) -> Point {
        self.start.lerp(&self.end, t)
    }

    pub fn length(&self) -> f64 {
        self.start.dist(&self.end)
    }
}

/// A polygonal curve with at least two vertices; segment `i` (1-based) joins
/// vertices `i - 1` and `i`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PolyCurve {
    vertices: Vec<Point>,
}

impl fmt::Debug for PolyCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.vertices).finish()
    }
}

impl TryFrom<Vec<Point>> for PolyCurve {
    type Error = GeometryError;
    fn try_from(v: Vec<Point>) -> Result<Self, Self::Error> {
        PolyCurve::new(v)
    }
}

impl From<PolyCurve> for Vec<Point> {
    fn from(c: PolyCurve) -> Self {
        c.vertices
    }
}

impl PolyCurve {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        if vertices.len() < 2 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        let d = vertices[0].dim();
        for v in &vertices[1..] {
            v.check_dim(d)?;
        }
        Ok(Self { vertices })
    }

    /// Builds a curve from planar coordinate pairs.
    pub fn from_xy(pts: &[(f64, f64)]) -> Result<Self, GeometryError> {
        Self::new(pts.iter().map(|&(x, y)| Point::xy(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Segment by 1-based index.
    pub fn segment(&self, index: usize) -> Segment {
        Segment { start: self.vertices[index - 1].clone(), end: self.vertices[index].clone() }
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices
            .windows(2)
            .map(|w| Segment { start: w[0].clone(), end: w[1].clone() })
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        self.vertices.last().unwrap()
    }

    pub fn start_param(&self) -> ParamPoint {
        ParamPoint { segment: 1, t: 0.0 }
    }

    pub fn end_param(&self) -> ParamPoint {
        ParamPoint { segment: self.segment_count(), t: 1.0 }
    }

    pub fn check_param(&self, p: ParamPoint) -> Result<(), GeometryError> {
        if p.segment == 0 || p.segment > self.segment_count() {
            return Err(GeometryError::SegmentOutOfRange {
                index: p.segment,
                segments: self.segment_count(),
            });
        }
        if !(0.0..=1.0).contains(&p.t) {
            return Err(GeometryError::ParameterOutOfRange(p.t));
        }
        Ok(())
    }

    /// Normalized position: `t == 1` moves to the start of the next segment
    /// except on the last segment.
    pub fn normalize(&self, p: ParamPoint) -> ParamPoint {
        if p.t >= 1.0 && p.segment < self.segment_count() {
            ParamPoint { segment: p.segment + 1, t: 0.0 }
        } else {
            p
        }
    }

    /// Uniform-per-segment global parameter in `[0, 1]`, used for serialization.
    pub fn global_param(&self, p: ParamPoint) -> f64 {
        ((p.segment - 1) as f64 + p.t) / self.segment_count() as f64
    }

    pub fn from_global_param(&self, g: f64) -> ParamPoint {
        let n = self.segment_count();
        let scaled = (g.clamp(0.0, 1.0) * n as f64).min(n as f64);
        let seg = (scaled.floor() as usize).min(n - 1);
        self.normalize(ParamPoint { segment: seg + 1, t: scaled - seg as f64 })
    }

    /// Sub-curve between two ordered positions. A degenerate range yields a
    /// two-vertex curve whose vertices coincide.
    pub fn subcurve(&self, from: ParamPoint, to: ParamPoint) -> Result<PolyCurve, GeometryError> {
        self.check_param(from)?;
        self.check_param(to)?;
        let mut verts = vec![point_at_unchecked(self, from)];
        for v in from.segment..to.segment {
            verts.push(self.vertices[v].clone());
        }
        verts.push(point_at_unchecked(self, to));
        PolyCurve::new(verts)
    }

    /// Arc length between two positions (`from ⪯ to`).
    pub fn arc_length_between(&self, from: ParamPoint, to: ParamPoint) -> f64 {
        if to <= from {
            return 0.0;
        }
        if from.segment == to.segment {
            return self.segment(from.segment).length() * (to.t - from.t);
        }
        let mut len = self.segment(from.segment).length() * (1.0 - from.t);
        for s in from.segment + 1..to.segment {
            len += self.segment(s).length();
        }
        len + self.segment(to.segment).length() * to.t
    }
}

/// A position on a polygonal curve: 1-based segment index plus local
/// parameter. Ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamPoint {
    pub segment: usize,
    pub t: f64,
}

impl ParamPoint {
    pub fn new(segment: usize, t: f64) -> Self {
        Self { segment, t }
    }
}

impl Eq for ParamPoint {}

impl PartialOrd for ParamPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ParamPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.segment.cmp(&other.segment).then(self.t.total_cmp(&other.t))
    }
}

/// Closed interval of curve positions, `lo ⪯ hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamInterval {
    pub lo: ParamPoint,
    pub hi: ParamPoint,
}

impl ParamInterval {
    pub fn contains(&self, p: ParamPoint) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn intersects(&self, other: &ParamInterval) -> bool {
        self.lo.max(other.lo) <= self.hi.min(other.hi)
    }
}

/// Closed interval of local parameters within `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

fn point_at_unchecked(curve: &PolyCurve, p: ParamPoint) -> Point {
    let a = &curve.vertices[p.segment - 1];
    let b = &curve.vertices[p.segment];
    a.lerp(b, p.t)
}

/// Evaluates the curve at a position.
pub fn point_at(curve: &PolyCurve, p: ParamPoint) -> Result<Point, GeometryError> {
    curve.check_param(p)?;
    Ok(point_at_unchecked(curve, p))
}

/// Parameters `t` in `[0, 1]` with `|seg(t) - center| <= eps`, from one
/// quadratic. Zero-length segments give `[0, 1]` or nothing.
pub fn segment_ball_window(seg: &Segment, center: &Point, eps: f64) -> Option<Window> {
    let d = seg.end.sub(&seg.start);
    let f = seg.start.sub(center);
    let a = dot(&d, &d);
    if a == 0.0 {
        return (dot(&f, &f) <= eps * eps).then_some(Window::new(0.0, 1.0));
    }
    // foot of the perpendicular, formed as a vector so far-off coordinates
    // do not cancel
    let t = -dot(&f, &d) / a;
    let h2: f64 = f.iter().zip(d.iter()).map(|(fi, di)| (fi + t * di).powi(2)).sum();
    let mut r2 = eps * eps - h2;
    if r2 < 0.0 {
        if r2 >= -1e-14 * eps * eps {
            r2 = 0.0;
        } else {
            return None;
        }
    }
    let half = (r2 / a).sqrt();
    let (t0, t1) = (t - half, t + half);
    if t1 < 0.0 || t0 > 1.0 {
        return None;
    }
    Some(Window::new(t0.max(0.0), t1.min(1.0)))
}

/// All maximal position intervals of the curve inside the closed ball,
/// sorted and disjoint. Per-segment windows separated by less than
/// [`WINDOW_MERGE_TOL`] of arc length are merged.
pub fn curve_ball_windows(curve: &PolyCurve, center: &Point, eps: f64) -> Vec<ParamInterval> {
    let mut out: Vec<ParamInterval> = Vec::new();
    for (k, seg) in curve.segments().enumerate() {
        let Some(w) = segment_ball_window(&seg, center, eps) else { continue };
        let lo = ParamPoint::new(k + 1, w.lo);
        let hi = ParamPoint::new(k + 1, w.hi);
        if let Some(last) = out.last_mut() {
            if curve.arc_length_between(last.hi, lo) <= WINDOW_MERGE_TOL {
                last.hi = hi;
                continue;
            }
        }
        out.push(ParamInterval { lo, hi });
    }
    for iv in &mut out {
        iv.lo = curve.normalize(iv.lo);
        iv.hi = curve.normalize(iv.hi);
    }
    out
}

/// Distance from `p` to the segment and the minimizing local parameter.
pub fn dist_point_segment(p: &Point, seg: &Segment) -> (f64, f64) {
    let d = seg.end.sub(&seg.start);
    let f = p.sub(&seg.start);
    let len2 = dot(&d, &d);
    let t = if len2 == 0.0 { 0.0 } else { (dot(&f, &d) / len2).clamp(0.0, 1.0) };
    (seg.at(t).dist(p), t)
}

/// 2-D cross product of `(b - a) x (c - a)`.
pub fn orient2d(a: &Point, b: &Point, c: &Point) -> f64 {
    (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x())
}

/// Counterclockwise convex hull (Andrew's monotone chain), collinear points
/// dropped.
pub fn convex_hull(points: &[Point]) -> Result<Vec<Point>, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::Empty);
    }
    for p in points {
        if p.dim() != 2 {
            return Err(GeometryError::NotPlanar(p.dim()));
        }
    }
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x().total_cmp(&b.x()).then(a.y().total_cmp(&b.y())));
    pts.dedup();
    if pts.len() < 3 {
        return Ok(pts);
    }
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && orient2d(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && orient2d(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

/// Distance from a planar point to a convex polygon (0 inside).
pub fn dist_point_convex_polygon(p: &Point, hull: &[Point]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => p.dist(&hull[0]),
        2 => dist_point_segment(p, &Segment { start: hull[0].clone(), end: hull[1].clone() }).0,
        n => {
            let inside = (0..n).all(|i| orient2d(&hull[i], &hull[(i + 1) % n], p) >= 0.0);
            if inside {
                return 0.0;
            }
            (0..n)
                .map(|i| {
                    let seg = Segment { start: hull[i].clone(), end: hull[(i + 1) % n].clone() };
                    dist_point_segment(p, &seg).0
                })
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Whether two planar segments share a point.
pub fn segments_intersect(s: &Segment, t: &Segment) -> bool {
    let (a, b, c, d) = (&s.start, &s.end, &t.start, &t.end);
    let (o1, o2) = (orient2d(a, b, c), orient2d(a, b, d));
    let (o3, o4) = (orient2d(c, d, a), orient2d(c, d, b));
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        return true;
    }
    let touches = |o: f64, p: &Point, q: &Point, r: &Point| {
        o == 0.0 && dist_point_segment(r, &Segment { start: p.clone(), end: q.clone() }).0 == 0.0
    };
    touches(o1, a, b, c) || touches(o2, a, b, d) || touches(o3, c, d, a) || touches(o4, c, d, b)
}

pub fn dist_segment_segment(s: &Segment, t: &Segment) -> f64 {
    if segments_intersect(s, t) {
        return 0.0;
    }
    [
        dist_point_segment(&s.start, t).0,
        dist_point_segment(&s.end, t).0,
        dist_point_segment(&t.start, s).0,
        dist_point_segment(&t.end, s).0,
    ]
    .into_iter()
    .fold(f64::INFINITY, f64::min)
}

/// Distance from a planar segment to a counter-clockwise convex polygon.
pub fn dist_segment_convex_polygon(s: &Segment, hull: &[Point]) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => dist_point_segment(&hull[0], s).0,
        n => {
            if n >= 3 && dist_point_convex_polygon(&s.start, hull) == 0.0 {
                return 0.0;
            }
            let edges = if n == 2 { 1 } else { n };
            (0..edges)
                .map(|i| {
                    let e = Segment { start: hull[i].clone(), end: hull[(i + 1) % n].clone() };
                    dist_segment_segment(s, &e)
                })
                .fold(f64::INFINITY, f64::min)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
        Segment::new(Point::xy(a.0, a.1), Point::xy(b.0, b.1)).unwrap()
    }

    #[test]
    fn segment_hull_distance() {
        let sq: Vec<Point> =
            [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)].iter().map(|&(x, y)| Point::xy(x, y)).collect();
        assert_abs_diff_eq!(dist_segment_convex_polygon(&seg((3.0, -5.0), (3.0, 5.0)), &sq), 1.0);
        assert_eq!(dist_segment_convex_polygon(&seg((-1.0, 1.0), (3.0, 1.0)), &sq), 0.0);
        assert_eq!(dist_segment_convex_polygon(&seg((0.5, 0.5), (1.0, 1.0)), &sq), 0.0);
        assert_abs_diff_eq!(
            dist_segment_convex_polygon(&seg((3.0, 3.0), (4.0, 4.0)), &sq),
            2f64.sqrt(),
            epsilon = 1e-12
        );
        assert!(segments_intersect(&seg((0.0, 0.0), (1.0, 0.0)), &seg((1.0, 0.0), (1.0, 1.0))));
        assert!(!segments_intersect(&seg((0.0, 0.0), (1.0, 0.0)), &seg((0.0, 1.0), (1.0, 1.0))));
    }

    #[test]
    fn point_at_examples() {
        let c = PolyCurve::from_xy(&[(0.0, 0.0), (2.0, 0.0)]).unwrap();
        assert_eq!(point_at(&c, ParamPoint::new(1, 0.5)).unwrap(), Point::xy(1.0, 0.0));
        assert_eq!(point_at(&c, ParamPoint::new(1, 0.0)).unwrap(), Point::xy(0.0, 0.0));
        let c = PolyCurve::from_xy(&[(0.0, 5.0), (0.0, 2.0), (2.0, 2.0)]).unwrap();
        assert_eq!(point_at(&c, ParamPoint::new(2, 0.5)).unwrap(), Point::xy(1.0, 2.0));
        assert!(matches!(
            point_at(&c, ParamPoint::new(3, 0.0)),
            Err(GeometryError::SegmentOutOfRange { .. })
        ));
        assert!(point_at(&c, ParamPoint::new(0, 0.0)).is_err());
    }

    #[test]
    fn ball_window_examples() {
        let s = seg((0.0, 0.0), (2.0, 0.0));
        let w = segment_ball_window(&s, &Point::xy(1.0, 0.0), 1.0).unwrap();
        assert_eq!((w.lo, w.hi), (0.0, 1.0));
        let w = segment_ball_window(&s, &Point::xy(1.0, 1.0), 1.0).unwrap();
        assert_eq!((w.lo, w.hi), (0.5, 0.5));
        assert!(segment_ball_window(&s, &Point::xy(5.0, 5.0), 1.0).is_none());
    }

    #[test]
    fn ball_window_zero_length_segment() {
        let s = seg((1.0, 1.0), (1.0, 1.0));
        assert!(segment_ball_window(&s, &Point::xy(1.0, 1.5), 1.0).is_some());
        assert!(segment_ball_window(&s, &Point::xy(3.0, 1.0), 1.0).is_none());
    }

    #[test]
    fn curve_windows_examples() {
        let c = PolyCurve::from_xy(&[(0.0, 0.0), (10.0, 0.0)]).unwrap();
        let w = curve_ball_windows(&c, &Point::xy(5.0, 0.0), 1.0);
        assert_eq!(w.len(), 1);
        assert_abs_diff_eq!(w[0].lo.t, 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(w[0].hi.t, 0.6, epsilon = 1e-12);

        let u = PolyCurve::from_xy(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0)]).unwrap();
        let w = curve_ball_windows(&u, &Point::xy(4.0, 0.0), 1.0);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].lo.segment, 1);
        assert_eq!(w[0].hi.segment, 2);
    }

    #[test]
    fn curve_windows_s_shape_two_components() {
        // goes right, up, back left: passes (2, 0.5) twice
        let c = PolyCurve::from_xy(&[(0.0, 0.0), (4.0, 0.0), (4.0, 1.0), (0.0, 1.0)]).unwrap();
        let center = Point::xy(1.0, 0.5);
        let w = curve_ball_windows(&c, &center, 0.6);
        // dense sampling oracle
        let mut comps = 0;
        let mut inside_prev = false;
        for k in 0..=30_000 {
            let g = k as f64 / 30_000.0;
            let inside = point_at(&c, c.from_global_param(g)).unwrap().dist(&center) <= 0.6;
            if inside && !inside_prev {
                comps += 1;
            }
            inside_prev = inside;
        }
        assert_eq!(comps, 2);
        assert_eq!(w.len(), 2);
    }

    #[test]
    fn dist_point_segment_examples() {
        let s = seg((0.0, 0.0), (2.0, 0.0));
        assert_eq!(dist_point_segment(&Point::xy(1.0, 1.0), &s), (1.0, 0.5));
        assert_eq!(dist_point_segment(&Point::xy(-1.0, 0.0), &s), (1.0, 0.0));
        let z = seg((0.0, 0.0), (0.0, 0.0));
        assert_eq!(dist_point_segment(&Point::xy(3.0, 4.0), &z).0, 5.0);
    }

    #[test]
    fn hull_examples() {
        let pts: Vec<Point> = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.5, 0.5)]
            .iter()
            .map(|&(x, y)| Point::xy(x, y))
            .collect();
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.len(), 4);
        assert!(!h.contains(&Point::xy(0.5, 0.5)));

        let col: Vec<Point> = (0..3).map(|i| Point::xy(i as f64, i as f64)).collect();
        let h = convex_hull(&col).unwrap();
        assert_eq!(h, vec![Point::xy(0.0, 0.0), Point::xy(2.0, 2.0)]);

        assert_eq!(
            convex_hull(&[Point::new([1.0, 2.0, 3.0]).unwrap()]),
            Err(GeometryError::NotPlanar(3))
        );
    }

    #[test]
    fn param_order_and_normalization() {
        let c = PolyCurve::from_xy(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]).unwrap();
        assert!(ParamPoint::new(1, 0.9) < ParamPoint::new(2, 0.0));
        assert_eq!(c.normalize(ParamPoint::new(1, 1.0)), ParamPoint::new(2, 0.0));
        assert_eq!(c.normalize(ParamPoint::new(2, 1.0)), ParamPoint::new(2, 1.0));
        assert_eq!(c.from_global_param(0.75), ParamPoint::new(2, 0.5));
        assert_eq!(c.global_param(ParamPoint::new(2, 0.5)), 0.75);
    }

    #[test]
    fn rejects_bad_points() {
        assert_eq!(Point::new([]), Err(GeometryError::ZeroDimension));
        assert_eq!(Point::new([f64::NAN]), Err(GeometryError::NonFinite));
        assert!(PolyCurve::from_xy(&[(0.0, 0.0)]).is_err());
        assert!(PolyCurve::new(vec![Point::xy(0.0, 0.0), Point::new([1.0]).unwrap()]).is_err());
    }
}
