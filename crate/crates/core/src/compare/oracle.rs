//! Bounded search for a common reduct.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::reduction::one_step_reducts;
use crate::term::Term;

/// Limits of the joinability search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JoinLimits {
    /// Terms kept per side.
    pub max_terms: usize,
    /// Reducts larger than this are dropped.
    pub max_size: usize,
    pub timeout: Option<Duration>,
}

impl Default for JoinLimits {
    fn default() -> JoinLimits {
        JoinLimits { max_terms: 20_000, max_size: 500, timeout: Some(Duration::from_secs(60)) }
    }
}

struct Side {
    seen: HashSet<Term>,
    frontier: Vec<Term>,
}

impl Side {
    fn new(t: &Term) -> Side {
        Side { seen: HashSet::from([t.clone()]), frontier: vec![t.clone()] }
    }
}

/// Breadth-first search from both ends for a term reachable from `a` and
/// from `b`. Finding one proves `a =β b`; finding none proves nothing.
pub fn joinable(a: &Term, b: &Term, limits: &JoinLimits) -> Option<Term> {
    if a == b {
        return Some(a.clone());
    }
    let start = Instant::now();
    let mut sides = [Side::new(a), Side::new(b)];
    loop {
        // grow the side with the smaller frontier
        let open: Vec<usize> = (0..2)
            .filter(|&i| !sides[i].frontier.is_empty() && sides[i].seen.len() < limits.max_terms)
            .collect();
        let &i = open.iter().min_by_key(|&&i| sides[i].frontier.len())?;
        let frontier = std::mem::take(&mut sides[i].frontier);
        let mut next = Vec::new();
        for t in frontier {
            if limits.timeout.is_some_and(|d| start.elapsed() > d) {
                return None;
            }
            for (_, r) in one_step_reducts(&t) {
                if r.size() > limits.max_size || sides[i].seen.contains(&r) {
                    continue;
                }
                if sides[1 - i].seen.contains(&r) {
                    return Some(r);
                }
                if sides[i].seen.len() >= limits.max_terms {
                    break;
                }
                sides[i].seen.insert(r.clone());
                next.push(r);
            }
        }
        sides[i].frontier = next;
    }
}
