//! Continuous Fréchet distance: free-space diagram decision and bisection
//! distance.
//!
//! The diagram has one cell per (P-segment, Q-segment) pair. Free space inside
//! a cell is convex, so reachability only has to be tracked on cell edges.
//! All comparisons are closed (`<=`) with a tiny relative slack, see
//! [`slackened`].

use thiserror::Error;

use crate::geometry::{
    segment_ball_window, GeometryError, ParamPoint, Point, PolyCurve, Segment, Window,
};

/// Relative slack added to `eps` in every free-space test. Constructed
/// instances touch the `eps` boundary exactly; this absorbs rounding.
pub const SLACK_REL: f64 = 1e-9;

pub fn slackened(eps: f64) -> f64 {
    eps + SLACK_REL * eps.max(1.0)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrechetError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("epsilon must be finite and non-negative, got {0}")]
    BadEpsilon(f64),
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("sub-curve range is reversed")]
    ReversedRange,
}

/// Free portions of the four edges of one cell, in local parameters.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FreeSpaceCell {
    pub bottom: Option<Window>,
    pub top: Option<Window>,
    pub left: Option<Window>,
    pub right: Option<Window>,
}

/// Reachable portions of the top and right edge of one cell.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CellReach {
    pub top: Option<Window>,
    pub right: Option<Window>,
}

fn clip_from(w: Option<Window>, from: f64) -> Option<Window> {
    w.and_then(|w| (w.hi >= from).then(|| Window::new(w.lo.max(from), w.hi)))
}

/// Monotone propagation through one convex cell given the reachable parts
/// of its bottom and left edges.
pub fn propagate_cell(
    top_free: Option<Window>,
    right_free: Option<Window>,
    bottom_reach: Option<Window>,
    left_reach: Option<Window>,
) -> CellReach {
    let top = match (left_reach, bottom_reach) {
        (Some(_), _) => top_free,
        (None, Some(b)) => clip_from(top_free, b.lo),
        (None, None) => None,
    };
    let right = match (bottom_reach, left_reach) {
        (Some(_), _) => right_free,
        (None, Some(l)) => clip_from(right_free, l.lo),
        (None, None) => None,
    };
    CellReach { top, right }
}

/// Full free-space diagram of `P` (horizontal, `n` segments) against `Q`
/// (vertical, `m` segments).
#[derive(Debug, Clone)]
pub struct FreeSpaceDiagram {
    n: usize,
    m: usize,
    cells: Vec<FreeSpaceCell>,
    reach: Vec<CellReach>,
    start_ok: bool,
}

impl FreeSpaceDiagram {
    /// Builds cells and propagates reachability from the lower-left corner.
    /// `eps` is used as given (no slack).
    pub fn build(p: &PolyCurve, q: &PolyCurve, eps: f64) -> Self {
        let n = p.segment_count();
        let m = q.segment_count();
        let p_segs: Vec<Segment> = p.segments().collect();
        let q_segs: Vec<Segment> = q.segments().collect();
        let mut cells = Vec::with_capacity(n * m);
        for j in 0..m {
            for i in 0..n {
                cells.push(FreeSpaceCell {
                    bottom: segment_ball_window(&p_segs[i], &q.vertices()[j], eps),
                    top: segment_ball_window(&p_segs[i], &q.vertices()[j + 1], eps),
                    left: segment_ball_window(&q_segs[j], &p.vertices()[i], eps),
                    right: segment_ball_window(&q_segs[j], &p.vertices()[i + 1], eps),
                });
            }
        }
        let start_ok = p.start().dist(q.start()) <= eps;
        let mut reach = vec![CellReach::default(); n * m];
        // reachable bottom boundary (Q at its first vertex) and left boundary
        let mut bottom_row: Vec<Option<Window>> = vec![None; n];
        let mut carry = start_ok;
        for i in 0..n {
            let free = cells[i].bottom;
            bottom_row[i] = match free {
                Some(w) if carry && w.lo <= 0.0 => Some(w),
                _ => None,
            };
            carry = matches!(bottom_row[i], Some(w) if w.hi >= 1.0);
        }
        let mut left_col: Vec<Option<Window>> = vec![None; m];
        let mut carry = start_ok;
        for j in 0..m {
            let free = cells[j * n].left;
            left_col[j] = match free {
                Some(w) if carry && w.lo <= 0.0 => Some(w),
                _ => None,
            };
            carry = matches!(left_col[j], Some(w) if w.hi >= 1.0);
        }
        for j in 0..m {
            for i in 0..n {
                let bottom = if j == 0 { bottom_row[i] } else { reach[(j - 1) * n + i].top };
                let left = if i == 0 { left_col[j] } else { reach[j * n + i - 1].right };
                let c = &cells[j * n + i];
                reach[j * n + i] = propagate_cell(c.top, c.right, bottom, left);
            }
        }
        Self { n, m, cells, reach, start_ok }
    }

    pub fn cell(&self, i: usize, j: usize) -> &FreeSpaceCell {
        &self.cells[j * self.n + i]
    }

    pub fn reach(&self, i: usize, j: usize) -> &CellReach {
        &self.reach[j * self.n + i]
    }

    /// Whether the upper-right corner is reachable.
    pub fn end_reachable(&self) -> bool {
        if !self.start_ok {
            return false;
        }
        let r = self.reach(self.n - 1, self.m - 1);
        matches!(r.top, Some(w) if w.hi >= 1.0) || matches!(r.right, Some(w) if w.hi >= 1.0)
    }
}

fn check_eps(eps: f64) -> Result<(), FrechetError> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(FrechetError::BadEpsilon(eps))
    }
}

/// `δ_F(P, Q) <= eps` (closed, with [`SLACK_REL`]).
pub fn decide_frechet(p: &PolyCurve, q: &PolyCurve, eps: f64) -> Result<bool, FrechetError> {
    q.start().check_dim(p.dim())?;
    check_eps(eps)?;
    let e = slackened(eps);
    if p.start().dist(q.start()) > e || p.end().dist(q.end()) > e {
        return Ok(false);
    }
    Ok(FreeSpaceDiagram::build(p, q, e).end_reachable())
}

/// Fréchet distance to within `tol`, by bisection between the endpoint lower
/// bound and the largest vertex-pair distance.
pub fn frechet_distance(p: &PolyCurve, q: &PolyCurve, tol: f64) -> Result<f64, FrechetError> {
    q.start().check_dim(p.dim())?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(FrechetError::BadTolerance(tol));
    }
    let mut lo = p.start().dist(q.start()).max(p.end().dist(q.end()));
    if decide_frechet(p, q, lo)? {
        return Ok(lo);
    }
    let mut hi = p
        .vertices()
        .iter()
        .flat_map(|a| q.vertices().iter().map(move |b| a.dist(b)))
        .fold(lo, f64::max);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if decide_frechet(p, q, mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Decides `δ_F(P[from..to], a→b) <= eps`.
pub fn decide_subcurve_vs_segment(
    p: &PolyCurve,
    from: ParamPoint,
    to: ParamPoint,
    a: &Point,
    b: &Point,
    eps: f64,
) -> Result<bool, FrechetError> {
    if from > to {
        return Err(FrechetError::ReversedRange);
    }
    let sub = p.subcurve(from, to)?;
    let q = PolyCurve::new(vec![a.clone(), b.clone()])?;
    decide_frechet(&sub, &q, eps)
}

/// Reachable positions on `P` while the partner curve rests at its latest
/// vertex: one optional local-parameter window per segment of `P`.
///
/// This is one horizontal boundary of the free-space diagram; the search
/// oracles extend it one partner segment at a time.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachFront {
    windows: Vec<Option<Window>>,
}

impl ReachFront {
    /// Positions reachable when the partner curve is the single point `q`.
    pub fn start(p: &PolyCurve, q: &Point, eps: f64) -> Self {
        let mut windows = vec![None; p.segment_count()];
        let mut carry = p.start().dist(q) <= eps;
        for (i, seg) in p.segments().enumerate() {
            if !carry {
                break;
            }
            windows[i] = segment_ball_window(&seg, q, eps).filter(|w| w.lo <= 0.0);
            carry = matches!(windows[i], Some(w) if w.hi >= 1.0);
        }
        Self { windows }
    }

    /// Extends the partner curve by the segment `from → to`.
    pub fn advance(&self, p: &PolyCurve, from: &Point, to: &Point, eps: f64) -> Self {
        let qseg = Segment { start: from.clone(), end: to.clone() };
        let mut windows = vec![None; self.windows.len()];
        let mut left = match self.windows.first() {
            Some(Some(w)) if w.lo <= 0.0 => {
                segment_ball_window(&qseg, p.start(), eps).filter(|w| w.lo <= 0.0)
            }
            _ => None,
        };
        for (i, seg) in p.segments().enumerate() {
            let bottom = self.windows[i];
            if bottom.is_none() && left.is_none() {
                continue;
            }
            let top_free = segment_ball_window(&seg, to, eps);
            let right_free = segment_ball_window(&qseg, &p.vertices()[i + 1], eps);
            let r = propagate_cell(top_free, right_free, bottom, left);
            windows[i] = r.top;
            left = r.right;
        }
        Self { windows }
    }

    pub fn is_empty(&self) -> bool {
        self.windows.iter().all(Option::is_none)
    }

    /// Whether the end of `P` is reachable.
    pub fn reaches_end(&self) -> bool {
        matches!(self.windows.last(), Some(Some(w)) if w.hi >= 1.0)
    }

    pub fn windows(&self) -> &[Option<Window>] {
        &self.windows
    }

    /// Earliest reachable position.
    pub fn first(&self) -> Option<ParamPoint> {
        self.windows
            .iter()
            .enumerate()
            .find_map(|(i, w)| w.map(|w| ParamPoint::new(i + 1, w.lo)))
    }

    /// Bit-exact key for memoization.
    pub fn key(&self) -> Vec<(u32, u64, u64)> {
        self.windows
            .iter()
            .enumerate()
            .filter_map(|(i, w)| w.map(|w| (i as u32, w.lo.to_bits(), w.hi.to_bits())))
            .collect()
    }
}
