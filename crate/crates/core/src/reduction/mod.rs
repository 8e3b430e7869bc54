//! (3,B2)-SAT to non-unique all-points CPSM.
//!
//! Clause points sit on a ring; every variable gets a gadget whose forward
//! path crosses the ring once through the clause points of its positive
//! literals and once through those of its negative literals, with an odd
//! chain of alpha-corners in between so that any curve within epsilon can
//! pick up only one of the two pairs.

use thiserror::Error;

use crate::cpsm::CpsmError;

mod build;
mod corner;
mod formula;
mod ring;
mod validate;

pub use build::{
    build_reduction, witness_from_assignment, witness_from_meta, Chord, CornerPoints, Gadget, GadgetPaths,
    ReductionMeta, ReductionOutput, ReductionParams, Role, StripRule, GADGET_CORNERS,
};
pub use corner::{make_alpha_corner, CornerSpec, Frame};
pub use formula::{
    all_assignments, literal_name, random_b2, sat_bruteforce, validate_b2, Assignment, B2Report,
    Formula, Literal, BRUTEFORCE_MAX_VARS,
};
pub use ring::{build_clause_ring, clause_strip, ClauseRing, Strip};
pub use validate::{validate_geometry, validate_reduction, ReductionViolation};

pub type Vec2 = nalgebra::Vector2<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("clause {clause}: {reason}")]
    InvalidClause { clause: usize, reason: String },
    #[error("brute force is limited to {max} variables, got {0}", max = BRUTEFORCE_MAX_VARS)]
    TooManyVariables(usize),
    #[error("formula is not (3,B2):\n{0}")]
    NotB2(B2Report),
    #[error("assignment: {0}")]
    Assignment(String),
    #[error("generator: {0}")]
    Generation(String),
    #[error("epsilon must be positive and finite, got {0}")]
    BadEpsilon(f64),
    #[error("alpha must lie in (0, pi), got {0}")]
    BadAlpha(f64),
    #[error("placement failed: {0}")]
    Placement(String),
    #[error("strip needs two distinct clause points, got {0} and {1}")]
    DegenerateStrip(usize, usize),
    #[error(transparent)]
    Cpsm(#[from] CpsmError),
}

/// Counter-clockwise perpendicular.
pub(crate) fn perp(v: Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

pub(crate) fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

pub(crate) fn unit(angle: f64) -> Vec2 {
    Vec2::new(angle.cos(), angle.sin())
}

pub(crate) fn to_point(v: Vec2) -> crate::geometry::Point {
    crate::geometry::Point::xy(v.x, v.y)
}
