//! Exhaustive search over vertex sequences of `Q`, for every variant.
//!
//! Candidates are grown one vertex at a time while the reachable front on `P`
//! stays non-empty; states already explored with a shorter prefix are skipped.

use std::collections::HashMap;

use super::{CpsmError, Instance, Witness};
use crate::frechet::{slackened, ReachFront};
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOutcome {
    pub witness: Option<Witness>,
    pub max_len: usize,
    /// True when some branch was cut by `max_len`, so a negative answer only
    /// covers witnesses of at most `max_len` vertices.
    pub bounded: bool,
}

impl ExactOutcome {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// Default length budget `2(n + k)`.
pub fn default_max_len(inst: &Instance) -> usize {
    2 * (inst.segment_count() + inst.points().len())
}

pub fn solve_exact(inst: &Instance, max_len: Option<usize>) -> Result<ExactOutcome, CpsmError> {
    solve_exact_with(inst, max_len, Execution::default())
}

pub fn solve_exact_with(
    inst: &Instance,
    max_len: Option<usize>,
    mode: Execution,
) -> Result<ExactOutcome, CpsmError> {
    let k = inst.points().len();
    if k > 64 {
        return Err(CpsmError::TooManyPoints(k));
    }
    let variant = inst.variant();
    let max_len = max_len.unwrap_or_else(|| default_max_len(inst));
    if variant.all_points() && max_len < k {
        return Err(CpsmError::MaxLenTooSmall { max_len, points: k });
    }
    let (tasks, cut) = split_prefixes(inst, max_len);
    let results = par::map(&tasks, mode, |t| Search::new(inst, max_len).run(t.clone()));
    let bounded = cut || results.iter().any(|r| r.1);
    let witness = results.into_iter().find_map(|r| r.0);
    Ok(ExactOutcome { witness, max_len, bounded })
}


#[derive(Clone)]
struct Prefix {
    seq: Vec<usize>,
    mask: u64,
    front: ReachFront,
}

/// Viable prefixes in lexicographic order, grown level by level until there
/// are about four per worker thread. With one thread these are just the
/// roots. Both execution modes run the same list.
fn split_prefixes(inst: &Instance, max_len: usize) -> (Vec<Prefix>, bool) {
    if max_len == 0 {
        return (Vec::new(), true);
    }
    let eps = slackened(inst.epsilon());
    let pts = inst.points();
    let target = match par::threads() {
        1 => 1,
        t => 4 * t,
    };
    let probe = Search::new(inst, max_len);
    let mut tasks: Vec<Prefix> = (0..pts.len())
        .filter_map(|root| {
            let front = ReachFront::start(inst.curve(), &pts[root], eps);
            (!front.is_empty()).then(|| Prefix { seq: vec![root], mask: 1u64 << root, front })
        })
        .collect();
    for depth in 1..max_len {
        if tasks.is_empty() || tasks.len() >= target {
            break;
        }
        let mut next_level = Vec::new();
        for t in tasks {
            if t.seq.len() < depth || probe.accepts(t.mask, &t.front) {
                next_level.push(t);
                continue;
            }
            let last = *t.seq.last().unwrap();
            for next in 0..pts.len() {
                if next == last || (inst.variant().unique() && t.mask & (1u64 << next) != 0) {
                    continue;
                }
                let front = t.front.advance(inst.curve(), &pts[last], &pts[next], eps);
                if !front.is_empty() {
                    let mut seq = t.seq.clone();
                    seq.push(next);
                    next_level.push(Prefix { seq, mask: t.mask | (1u64 << next), front });
                }
            }
        }
        tasks = next_level;
    }
    (tasks, false)
}

/// Last vertex, visited mask, reachable front.
type StateKey = (usize, u64, Vec<(u32, u64, u64)>);

struct Search<'a> {
    inst: &'a Instance,
    eps: f64,
    max_len: usize,
    full: u64,
    memo: HashMap<StateKey, usize>,
    bounded: bool,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, max_len: usize) -> Self {
        let k = inst.points().len();
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        Self { inst, eps: slackened(inst.epsilon()), max_len, full, memo: HashMap::new(), bounded: false }
    }

    fn tracks_mask(&self) -> bool {
        let v = self.inst.variant();
        v.unique() || v.all_points()
    }

    fn run(mut self, p: Prefix) -> (Option<Witness>, bool) {
        let mut seq = p.seq;
        let found = self.dfs(&mut seq, p.mask, p.front);
        (found.then_some(Witness(seq)), self.bounded)
    }

    fn accepts(&self, mask: u64, front: &ReachFront) -> bool {
        front.reaches_end() && (!self.inst.variant().all_points() || mask == self.full)
    }

    fn dfs(&mut self, seq: &mut Vec<usize>, mask: u64, front: ReachFront) -> bool {
        if self.accepts(mask, &front) {
            return true;
        }
        let last = *seq.last().unwrap();
        let key_mask = if self.tracks_mask() { mask } else { 0 };
        let key = (last, key_mask, front.key());
        match self.memo.get(&key) {
            Some(&len) if len <= seq.len() => return false,
            _ => {
                self.memo.insert(key, seq.len());
            }
        }
        if seq.len() >= self.max_len {
            self.bounded = true;
            return false;
        }
        let pts = self.inst.points();
        let unique = self.inst.variant().unique();
        for next in 0..pts.len() {
            if next == last || (unique && mask & (1u64 << next) != 0) {
                continue;
            }
            let nf = front.advance(self.inst.curve(), &pts[last], &pts[next], self.eps);
            if nf.is_empty() {
                continue;
            }
            seq.push(next);
            if self.dfs(seq, mask | (1u64 << next), nf) {
                return true;
            }
            seq.pop();
        }
        false
    }
}
