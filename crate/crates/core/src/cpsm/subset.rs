//! Polynomial decision for the non-unique subset variant.
//!
//! Without uniqueness or coverage constraints the state of a partial `Q` is
//! just its last vertex and the reachable front on `P`, so a breadth-first
//! search over those states decides the instance.

use std::collections::{HashMap, VecDeque};

use super::{CpsmError, Instance, Variant, Witness};
use crate::frechet::{slackened, ReachFront};

type StateKey = (usize, Vec<(u32, u64, u64)>);

pub fn decide_subset_nonunique(inst: &Instance) -> Result<Option<Witness>, CpsmError> {
    if inst.variant() != Variant::NonUniqueSubset {
        return Err(CpsmError::VariantMismatch {
            expected: Variant::NonUniqueSubset,
            found: inst.variant(),
        });
    }
    let curve = inst.curve();
    let pts = inst.points();
    let eps = slackened(inst.epsilon());

    let mut states: Vec<(usize, ReachFront, Option<usize>)> = Vec::new();
    let mut seen: HashMap<StateKey, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for (s, p) in pts.iter().enumerate() {
        let front = ReachFront::start(curve, p, eps);
        if front.is_empty() {
            continue;
        }
        seen.insert((s, front.key()), states.len());
        queue.push_back(states.len());
        states.push((s, front, None));
    }

    while let Some(id) = queue.pop_front() {
        let (last, front) = (states[id].0, states[id].1.clone());
        if front.reaches_end() {
            let mut seq = Vec::new();
            let mut cur = Some(id);
            while let Some(c) = cur {
                seq.push(states[c].0);
                cur = states[c].2;
            }
            seq.reverse();
            return Ok(Some(Witness(seq)));
        }
        for (next, q) in pts.iter().enumerate() {
            if next == last {
                continue;
            }
            let nf = front.advance(curve, &pts[last], q, eps);
            if nf.is_empty() {
                continue;
            }
            let key = (next, nf.key());
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, states.len());
            queue.push_back(states.len());
            states.push((next, nf, Some(id)));
        }
    }
    Ok(None)
}
