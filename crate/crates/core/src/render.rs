//! Deterministic SVG drawings of planar instances: `P` solid, the witness
//! dashed, `S` as dots, and optionally the dotted epsilon-cylinder outline of
//! every segment.

use std::fmt::Write;

use thiserror::Error;

use crate::cpsm::{Instance, Witness};
use crate::geometry::Point;
use crate::reduction::Role;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("can only render planar instances, got dimension {0}")]
    NotPlanar(usize),
    #[error("witness index {0} out of range")]
    BadWitness(usize),
    #[error("{0} roles for {1} points")]
    RoleCount(usize, usize),
}

#[derive(Debug, Clone, Default)]
pub struct RenderOptions<'a> {
    pub witness: Option<&'a Witness>,
    pub cylinders: bool,
    pub roles: Option<&'a [Role]>,
}

struct View {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl View {
    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.min_x) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        MARGIN + (self.max_y - y) * self.scale
    }

    fn xy(&self, p: &Point) -> String {
        format!("{},{}", num(self.x(p.x())), num(self.y(p.y())))
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn role_class(r: Role) -> &'static str {
    match r {
        Role::ClausePoint(_) => "clause",
        Role::CornerOuter => "corner-outer",
        Role::CornerInner => "corner-inner",
        Role::SplitPoint => "split",
        Role::Joint => "joint",
    }
}

pub fn render_svg(inst: &Instance, opts: &RenderOptions<'_>) -> Result<String, RenderError> {
    let dim = inst.curve().dim();
    if dim != 2 {
        return Err(RenderError::NotPlanar(dim));
    }
    let pts = inst.points();
    if let Some(w) = opts.witness {
        if let Some(&bad) = w.indices().iter().find(|&&i| i >= pts.len()) {
            return Err(RenderError::BadWitness(bad));
        }
    }
    if let Some(roles) = opts.roles {
        if roles.len() != pts.len() {
            return Err(RenderError::RoleCount(roles.len(), pts.len()));
        }
    }
    let eps = inst.epsilon();
    let pad = if opts.cylinders { eps } else { 0.0 };
    let all = inst.curve().vertices().iter().chain(pts);
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in all {
        lo_x = lo_x.min(p.x() - pad);
        lo_y = lo_y.min(p.y() - pad);
        hi_x = hi_x.max(p.x() + pad);
        hi_y = hi_y.max(p.y() + pad);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-12);
    let view = View { min_x: lo_x, max_y: hi_y, scale: (WIDTH - 2.0 * MARGIN) / span };
    let w = num(view.x(hi_x) + MARGIN);
    let h = num(view.y(lo_y) + MARGIN);
    let dot = 3.0;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if opts.cylinders {
        let r = num(eps * view.scale);
        let _ = writeln!(s, r#"<g class="cylinders" fill="none" stroke="gray" stroke-width="0.8" stroke-dasharray="1,3">"#);
        for seg in inst.curve().segments() {
            let (a, b) = (&seg.start, &seg.end);
            let (dx, dy) = (b.x() - a.x(), b.y() - a.y());
            let len = dx.hypot(dy);
            if len == 0.0 {
                let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="{r}"/>"#, num(view.x(a.x())), num(view.y(a.y())));
                continue;
            }
            let (nx, ny) = (-dy / len * eps, dx / len * eps);
            let off = |p: &Point, k: f64| Point::xy(p.x() + k * nx, p.y() + k * ny);
            let _ = writeln!(
                s,
                r#"<path d="M{} L{} A{r},{r} 0 0 0 {} L{} A{r},{r} 0 0 0 {} Z"/>"#,
                view.xy(&off(a, 1.0)),
                view.xy(&off(b, 1.0)),
                view.xy(&off(b, -1.0)),
                view.xy(&off(a, -1.0)),
                view.xy(&off(a, 1.0)),
            );
        }
        let _ = writeln!(s, "</g>");
    }
    let line: Vec<String> = inst.curve().vertices().iter().map(|p| view.xy(p)).collect();
    let _ = writeln!(
        s,
        r#"<polyline class="curve" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        line.join(" ")
    );
    if let Some(wit) = opts.witness {
        let q: Vec<String> = wit.indices().iter().map(|&i| view.xy(&pts[i])).collect();
        let _ = writeln!(
            s,
            r#"<polyline class="witness" points="{}" fill="none" stroke="crimson" stroke-width="1.2" stroke-dasharray="6,4"/>"#,
            q.join(" ")
        );
    }
    for (i, p) in pts.iter().enumerate() {
        let class = opts.roles.map_or("point", |r| role_class(r[i]));
        let fill = if class == "clause" { "royalblue" } else { "black" };
        let r = if class == "clause" { dot * 1.6 } else { dot };
        let _ = writeln!(
            s,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}"><title>{i}</title></circle>"#,
            num(view.x(p.x())),
            num(view.y(p.y())),
            num(r)
        );
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpsm::Variant;
    use crate::geometry::PolyCurve;

    fn staircase() -> Instance {
        let curve =
            PolyCurve::from_xy(&[(0.0, 5.0), (0.0, 2.0), (2.0, 2.0), (2.0, 0.0), (5.0, 0.0)]).unwrap();
        let pts = [(1.0, 5.0), (0.0, 1.0), (1.0, 0.0), (5.0, 1.0)].map(|(x, y)| Point::xy(x, y));
        Instance::new(curve, pts.to_vec(), 1.0, Variant::NonUniqueSubset).unwrap()
    }

    #[test]
    fn element_counts() {
        let w = Witness(vec![0, 1, 3]);
        let svg = render_svg(&staircase(), &RenderOptions { witness: Some(&w), ..Default::default() }).unwrap();
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<polyline class=\"curve\"").count(), 1);
        assert_eq!(svg.matches("stroke-dasharray=\"6,4\"").count(), 1);
        let cyl = render_svg(&staircase(), &RenderOptions { cylinders: true, ..Default::default() }).unwrap();
        assert_eq!(cyl.matches("<path").count(), 4);
    }

    #[test]
    fn deterministic() {
        let w = Witness(vec![0, 1, 3]);
        let opts = RenderOptions { witness: Some(&w), cylinders: true, roles: None };
        assert_eq!(render_svg(&staircase(), &opts).unwrap(), render_svg(&staircase(), &opts).unwrap());
    }

    #[test]
    fn errors() {
        let w = Witness(vec![9]);
        assert_eq!(
            render_svg(&staircase(), &RenderOptions { witness: Some(&w), ..Default::default() }),
            Err(RenderError::BadWitness(9))
        );
        let curve = PolyCurve::new(vec![Point::new([0.0, 0.0, 0.0]).unwrap(), Point::new([1.0, 0.0, 0.0]).unwrap()])
            .unwrap();
        let inst = Instance::new(curve, vec![Point::new([0.0, 0.0, 0.0]).unwrap()], 1.0, Variant::NonUniqueSubset)
            .unwrap();
        assert_eq!(render_svg(&inst, &RenderOptions::default()), Err(RenderError::NotPlanar(3)));
    }
}
