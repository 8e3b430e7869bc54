//! File formats: JSON instances, witnesses and reduction metadata, DIMACS
//! formulas. Every write goes through a temporary file in the target
//! directory and a rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cpsm::{CpsmError, Instance, Variant, Witness};
use crate::geometry::{Point, PolyCurve};
use crate::reduction::{Formula, ReductionError, ReductionMeta, ReductionOutput};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Cpsm(#[from] CpsmError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dimension: usize,
    pub epsilon: f64,
    pub curve: Vec<Vec<f64>>,
    pub points: Vec<Vec<f64>>,
    pub variant: Variant,
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let coords = |p: &Point| p.coords().to_vec();
        Self {
            dimension: inst.curve().dim(),
            epsilon: inst.epsilon(),
            curve: inst.curve().vertices().iter().map(coords).collect(),
            points: inst.points().iter().map(coords).collect(),
            variant: inst.variant(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance, IoError> {
        if self.curve.is_empty() || self.points.is_empty() {
            return Err(IoError::Invalid("curve and points must be non-empty".into()));
        }
        let check = |what: &str, rows: &[Vec<f64>]| -> Result<Vec<Point>, IoError> {
            rows.iter()
                .enumerate()
                .map(|(i, r)| {
                    if r.len() != self.dimension {
                        return Err(IoError::Invalid(format!(
                            "{what}[{i}] has {} coordinates, dimension is {}",
                            r.len(),
                            self.dimension
                        )));
                    }
                    Point::new(r.iter().copied()).map_err(|e| IoError::Invalid(format!("{what}[{i}]: {e}")))
                })
                .collect()
        };
        let curve = PolyCurve::new(check("curve", &self.curve)?).map_err(CpsmError::from)?;
        let points = check("points", &self.points)?;
        Ok(Instance::new(curve, points, self.epsilon, self.variant)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub sequence: Vec<usize>,
}

/// A bare curve: `[[x, y], ...]` or `{"curve": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveFile {
    Bare(Vec<Vec<f64>>),
    Wrapped { curve: Vec<Vec<f64>> },
}

impl CurveFile {
    pub fn to_curve(&self) -> Result<PolyCurve, IoError> {
        let rows = match self {
            CurveFile::Bare(r) | CurveFile::Wrapped { curve: r } => r,
        };
        let pts = rows
            .iter()
            .map(|r| Point::new(r.iter().copied()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| IoError::Invalid(e.to_string()))?;
        PolyCurve::new(pts).map_err(|e| IoError::Invalid(e.to_string()))
    }
}

/// Writes `bytes` to a temporary sibling of `path`, then renames it over
/// `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    let err = |source| IoError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(bytes).map_err(err)?;
    tmp.as_file().sync_all().map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io { path: path.to_path_buf(), source })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|source| IoError::Json { path: path.to_path_buf(), source })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|source| IoError::Json { path: path.to_path_buf(), source })?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn read_instance(path: &Path) -> Result<Instance, IoError> {
    read_json::<InstanceFile>(path)?.to_instance()
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<(), IoError> {
    write_json(path, &InstanceFile::from_instance(inst))
}

pub fn read_witness(path: &Path) -> Result<Witness, IoError> {
    Ok(Witness(read_json::<WitnessFile>(path)?.sequence))
}

pub fn write_witness(path: &Path, w: &Witness) -> Result<(), IoError> {
    write_json(path, &WitnessFile { sequence: w.0.clone() })
}

pub fn read_curve(path: &Path) -> Result<PolyCurve, IoError> {
    read_json::<CurveFile>(path)?.to_curve()
}

pub fn read_formula(path: &Path) -> Result<Formula, IoError> {
    Ok(Formula::parse_dimacs(&read_text(path)?)?)
}

pub fn write_formula(path: &Path, f: &Formula) -> Result<(), IoError> {
    write_atomic(path, f.to_dimacs().as_bytes())
}

pub fn read_meta(path: &Path) -> Result<ReductionMeta, IoError> {
    read_json(path)
}

pub fn write_meta(path: &Path, meta: &ReductionMeta) -> Result<(), IoError> {
    write_json(path, meta)
}

/// Instance and metadata files back into a reduction.
pub fn read_reduction(instance: &Path, meta: &Path) -> Result<ReductionOutput, IoError> {
    Ok(ReductionOutput { instance: read_instance(instance)?, meta: read_meta(meta)? })
}

/// Seed from `CPSM_SEED`, or `default` when it is unset. A set but
/// malformed value is an error.
pub fn env_seed(default: u64) -> Result<u64, IoError> {
    match std::env::var("CPSM_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| IoError::Invalid(format!("CPSM_SEED must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}
