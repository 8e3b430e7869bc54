//! Curve/point-set matching (CPSM) under the continuous Fréchet distance.
//!
//! * [`geometry`]: points, polygonal curves, ball windows, convex hulls.
//! * [`frechet`]: free-space decision procedure and bisection distance.
//! * [`cpsm`]: problem instances, the polynomial solver for instances where
//!   every point sees the curve in one connected window, an exact search
//!   oracle for all four variants, and witness verification.
//! * [`reduction`]: (3,B2)-SAT formulas and the SAT → CPSM instance generator.
//! * [`io`] and [`render`]: JSON/DIMACS file formats and SVG output.

pub mod cpsm;
pub mod frechet;
pub mod geometry;
pub mod io;
pub mod par;
pub mod reduction;
pub mod render;

pub use cpsm::{Instance, Variant, Witness};
pub use geometry::{ParamInterval, ParamPoint, Point, PolyCurve, Segment};
