//! Curve/point-set matching instances, solvers and witness checking.

mod cylinder;
mod exact;
mod restricted;
mod subset;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frechet::{decide_frechet, FrechetError};
use crate::geometry::{GeometryError, Point, PolyCurve};

pub use cylinder::{build_cylinder_index, check_restriction, CylinderIndex, RestrictionReport};
pub use exact::{solve_exact, solve_exact_with, ExactOutcome};
pub use restricted::{
    build_graph, connectable, solve_restricted, solve_restricted_detailed, ConnectivityGraph,
    RestrictedSolution, SegmentVisit,
};
pub use subset::decide_subset_nonunique;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CpsmError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Frechet(#[from] FrechetError),
    #[error("epsilon must be positive and finite, got {0}")]
    BadEpsilon(f64),
    #[error("point {0} duplicates point {1}")]
    DuplicatePoint(usize, usize),
    #[error("solver expects variant {expected}, instance is {found}")]
    VariantMismatch { expected: Variant, found: Variant },
    #[error("instance violates the one-window restriction: {0}")]
    RestrictionViolated(RestrictionReport),
    #[error("no point lies within epsilon of the curve start")]
    EmptyStartBall,
    #[error("no point lies within epsilon of the curve end")]
    EmptyEndBall,
    #[error("point {point} is not in cylinder {cylinder}")]
    NotInCylinder { point: usize, cylinder: usize },
    #[error("segment pair ({0}, {1}) out of range")]
    BadSegmentPair(usize, usize),
    #[error("witness index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("max_len {max_len} is below the point count {points}")]
    MaxLenTooSmall { max_len: usize, points: usize },
    #[error("exact search supports at most 64 points, got {0}")]
    TooManyPoints(usize),
    #[error("construction invariant failed: {0}")]
    Construction(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "unique-all")]
    UniqueAllPoints,
    #[serde(rename = "nonunique-all")]
    NonUniqueAllPoints,
    #[serde(rename = "unique-subset")]
    UniqueSubset,
    #[serde(rename = "nonunique-subset")]
    NonUniqueSubset,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::UniqueAllPoints,
        Variant::NonUniqueAllPoints,
        Variant::UniqueSubset,
        Variant::NonUniqueSubset,
    ];

    pub fn unique(self) -> bool {
        matches!(self, Variant::UniqueAllPoints | Variant::UniqueSubset)
    }

    pub fn all_points(self) -> bool {
        matches!(self, Variant::UniqueAllPoints | Variant::NonUniqueAllPoints)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::UniqueAllPoints => "unique-all",
            Variant::NonUniqueAllPoints => "nonunique-all",
            Variant::UniqueSubset => "unique-subset",
            Variant::NonUniqueSubset => "nonunique-subset",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant {s:?}"))
    }
}

/// A CPSM problem: curve `P`, point set `S`, distance bound and variant.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    curve: PolyCurve,
    points: Vec<Point>,
    epsilon: f64,
    variant: Variant,
}

impl Instance {
    pub fn new(
        curve: PolyCurve,
        points: Vec<Point>,
        epsilon: f64,
        variant: Variant,
    ) -> Result<Self, CpsmError> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(CpsmError::BadEpsilon(epsilon));
        }
        for p in &points {
            p.check_dim(curve.dim())?;
        }
        let mut seen: std::collections::HashMap<Vec<u64>, usize> = Default::default();
        for (i, p) in points.iter().enumerate() {
            let key: Vec<u64> = p.coords().iter().map(|c| (c + 0.0).to_bits()).collect();
            if let Some(&j) = seen.get(&key) {
                return Err(CpsmError::DuplicatePoint(i, j));
            }
            seen.insert(key, i);
        }
        Ok(Self { curve, points, epsilon, variant })
    }

    pub fn curve(&self) -> &PolyCurve {
        &self.curve
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        Self { variant, ..self.clone() }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self, CpsmError> {
        Self::new(self.curve.clone(), self.points.clone(), epsilon, self.variant)
    }

    pub fn segment_count(&self) -> usize {
        self.curve.segment_count()
    }
}

/// Vertices of a candidate curve `Q` as indices into the instance's points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness(pub Vec<usize>);

impl Witness {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The polygonal curve through the witness points. A single vertex is
    /// doubled so the result is a valid (degenerate) curve.
    pub fn to_curve(&self, inst: &Instance) -> Result<PolyCurve, CpsmError> {
        let mut verts = Vec::with_capacity(self.0.len().max(2));
        for &i in &self.0 {
            verts.push(inst.points.get(i).ok_or(CpsmError::IndexOutOfRange(i))?.clone());
        }
        if verts.len() == 1 {
            verts.push(verts[0].clone());
        }
        Ok(PolyCurve::new(verts)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    EmptyWitness,
    UncoveredPoint(usize),
    RepeatedPoint(usize),
    Frechet,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyWitness => write!(f, "empty witness"),
            Violation::UncoveredPoint(i) => write!(f, "uncovered point {i}"),
            Violation::RepeatedPoint(i) => write!(f, "repeated point {i}"),
            Violation::Frechet => write!(f, "Fréchet distance exceeds epsilon"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn uncovered(&self) -> Vec<usize> {
        self.violations
            .iter()
            .filter_map(|v| match v {
                Violation::UncoveredPoint(i) => Some(*i),
                _ => None,
            })
            .collect()
    }
}

/// Checks the variant's coverage/uniqueness constraints and the Fréchet
/// bound of the witness curve.
pub fn verify_witness(inst: &Instance, w: &Witness) -> Result<VerifyReport, CpsmError> {
    if let Some(&bad) = w.0.iter().find(|&&i| i >= inst.points.len()) {
        return Err(CpsmError::IndexOutOfRange(bad));
    }
    let mut report = VerifyReport::default();
    if w.is_empty() {
        report.violations.push(Violation::EmptyWitness);
        return Ok(report);
    }
    if inst.variant.unique() {
        let mut seen = HashSet::new();
        for &i in &w.0 {
            if !seen.insert(i) {
                report.violations.push(Violation::RepeatedPoint(i));
            }
        }
    }
    if inst.variant.all_points() {
        let visited: HashSet<usize> = w.0.iter().copied().collect();
        for i in 0..inst.points.len() {
            if !visited.contains(&i) {
                report.violations.push(Violation::UncoveredPoint(i));
            }
        }
    }
    if !decide_frechet(&inst.curve, &w.to_curve(inst)?, inst.epsilon)? {
        report.violations.push(Violation::Frechet);
    }
    Ok(report)
}

/// Keeps the first occurrence of each index.
pub fn dedupe_witness(w: &Witness) -> Witness {
    let mut seen = HashSet::new();
    Witness(w.0.iter().copied().filter(|i| seen.insert(*i)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn staircase(variant: Variant) -> Instance {
        let curve =
            PolyCurve::from_xy(&[(0.0, 5.0), (0.0, 2.0), (2.0, 2.0), (2.0, 0.0), (5.0, 0.0)]).unwrap();
        let pts = [(1.0, 5.0), (0.0, 1.0), (1.0, 0.0), (5.0, 1.0)].map(|(x, y)| Point::xy(x, y));
        Instance::new(curve, pts.to_vec(), 1.0, variant).unwrap()
    }

    #[test]
    fn dedupe_examples() {
        assert_eq!(dedupe_witness(&Witness(vec![1, 2, 1, 3])), Witness(vec![1, 2, 3]));
        assert_eq!(dedupe_witness(&Witness(vec![4, 0, 2])), Witness(vec![4, 0, 2]));
    }

    #[test]
    fn verify_reports() {
        let inst = staircase(Variant::NonUniqueSubset);
        assert!(verify_witness(&inst, &Witness(vec![0, 1, 3])).unwrap().is_valid());
        assert!(verify_witness(&inst, &Witness(vec![0, 2, 3])).unwrap().is_valid());
        assert_eq!(
            verify_witness(&inst, &Witness(vec![0, 1, 2, 3])).unwrap().violations,
            vec![Violation::Frechet]
        );
        let all = staircase(Variant::NonUniqueAllPoints);
        let r = verify_witness(&all, &Witness(vec![0, 1, 3])).unwrap();
        assert_eq!(r.violations, vec![Violation::UncoveredPoint(2)]);
        let half = inst.with_epsilon(0.5).unwrap();
        assert_eq!(
            verify_witness(&half, &Witness(vec![0, 1, 3])).unwrap().violations,
            vec![Violation::Frechet]
        );
        let uniq = staircase(Variant::UniqueSubset);
        assert!(verify_witness(&uniq, &Witness(vec![0, 1, 1, 3]))
            .unwrap()
            .violations
            .contains(&Violation::RepeatedPoint(1)));
        assert!(matches!(
            verify_witness(&inst, &Witness(vec![9])),
            Err(CpsmError::IndexOutOfRange(9))
        ));
        assert_eq!(
            verify_witness(&inst, &Witness(vec![])).unwrap().violations,
            vec![Violation::EmptyWitness]
        );
    }

    #[test]
    fn instance_validation() {
        let c = PolyCurve::from_xy(&[(0.0, 0.0), (1.0, 0.0)]).unwrap();
        assert!(matches!(
            Instance::new(c.clone(), vec![], 0.0, Variant::UniqueSubset),
            Err(CpsmError::BadEpsilon(_))
        ));
        assert!(matches!(
            Instance::new(c.clone(), vec![Point::xy(0.0, 0.0), Point::xy(0.0, 0.0)], 1.0, Variant::UniqueSubset),
            Err(CpsmError::DuplicatePoint(1, 0))
        ));
        assert!(Instance::new(c, vec![Point::new([0.0]).unwrap()], 1.0, Variant::UniqueSubset).is_err());
        assert_eq!("nonunique-all".parse::<Variant>(), Ok(Variant::NonUniqueAllPoints));
        assert!("bogus".parse::<Variant>().is_err());
    }
}
