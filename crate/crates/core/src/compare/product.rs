//! Synchronous walk over two trees.
//!
//! States pair a node of each tree together with how the binders free in
//! the two subtrees line up. Compact trees give finitely many states, so
//! the walk doubles as a finite graph on which "eventually" is decided.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::Relation;
use crate::trees::{BinderId, Head, NodeId, NodeKind, Tree, UnknownReason};

const MAX_STATES: usize = 20_000;

/// What the walk found at one pair of nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairStatus {
    /// Same node shape; the relation on the annotations (undefined when
    /// it does not apply to the clocks at hand).
    Compared(Option<bool>),
    BothBottom,
    /// The underlying trees differ here.
    ShapeDiff,
    /// One side is out of fuel or only assumed to be `⊥`.
    Undetermined,
    /// One side hit the depth limit.
    Frontier,
}

#[derive(Clone, Debug)]
pub struct PairState {
    pub left: NodeId,
    pub right: NodeId,
    /// Level at which the pair was first reached.
    pub level: usize,
    /// Child indices (1-based) leading to it.
    pub path: Vec<usize>,
    pub status: PairStatus,
    pub children: Vec<usize>,
}

/// Result of an eventual comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Eventually {
    pub holds: Option<bool>,
    /// Smallest level from which the relation holds.
    pub level: Option<usize>,
    /// The answer covers the whole infinite trees, not just a bounded prefix.
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Product {
    pub relation: Relation,
    pub states: Vec<PairState>,
    /// The state cap was hit; some pairs were not explored.
    pub truncated: bool,
}

type Key = (NodeId, NodeId, Vec<Option<usize>>);

fn distance(stack: &[BinderId], b: BinderId) -> Option<usize> {
    stack.iter().rposition(|&x| x == b).map(|i| stack.len() - 1 - i)
}

fn heads_match(h1: &Head, s1: &[BinderId], h2: &Head, s2: &[BinderId]) -> bool {
    match (h1, h2) {
        (Head::Free(a), Head::Free(b)) => a == b,
        (Head::Bound(a), Head::Bound(b)) => {
            let (da, db) = (distance(s1, *a), distance(s2, *b));
            da.is_some() && da == db
        }
        _ => false,
    }
}

fn push_binders(stack: &mut Vec<BinderId>, node: NodeId, kind: &NodeKind) {
    stack.extend((0..kind.binder_count()).map(|index| BinderId { node, index }));
}

impl Product {
    pub fn build(t1: &Tree, t2: &Tree, relation: Relation) -> Product {
        let mut states: Vec<PairState> = Vec::new();
        let mut index: HashMap<Key, usize> = HashMap::new();
        let mut stacks: Vec<(Vec<BinderId>, Vec<BinderId>)> = Vec::new();
        let mut queue = VecDeque::new();
        let mut truncated = false;

        let key_of = |a: NodeId, b: NodeId, s1: &[BinderId], s2: &[BinderId]| -> Key {
            let d2: Vec<Option<usize>> =
                t2.node(b).free_binders.iter().map(|&x| distance(s2, x)).collect();
            let links = t1
                .node(a)
                .free_binders
                .iter()
                .map(|&x| {
                    let d = distance(s1, x)?;
                    d2.iter().position(|&y| y == Some(d))
                })
                .collect();
            (a, b, links)
        };

        let (r1, r2) = (t1.resolve(Tree::ROOT), t2.resolve(Tree::ROOT));
        index.insert(key_of(r1, r2, &[], &[]), 0);
        states.push(PairState { left: r1, right: r2, level: 0, path: Vec::new(), status: PairStatus::Frontier, children: Vec::new() });
        stacks.push((Vec::new(), Vec::new()));
        queue.push_back(0);

        while let Some(i) = queue.pop_front() {
            let (a, b) = (states[i].left, states[i].right);
            let (mut s1, mut s2) = stacks[i].clone();
            let (n1, n2) = (t1.node(a), t2.node(b));
            push_binders(&mut s1, a, &n1.kind);
            push_binders(&mut s2, b, &n2.kind);
            let status = pair_status(t1, a, &s1, t2, b, &s2, relation);
            states[i].status = status.clone();
            if !matches!(status, PairStatus::Compared(_)) {
                continue;
            }
            let mut kids = Vec::with_capacity(n1.children.len());
            for (k, (&c1, &c2)) in n1.children.iter().zip(&n2.children).enumerate() {
                let (c1, c2) = (t1.resolve(c1), t2.resolve(c2));
                let key = key_of(c1, c2, &s1, &s2);
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None if states.len() >= MAX_STATES => {
                        truncated = true;
                        continue;
                    }
                    None => {
                        let j = states.len();
                        let mut path = states[i].path.clone();
                        path.push(k + 1);
                        states.push(PairState {
                            left: c1,
                            right: c2,
                            level: states[i].level + 1,
                            path,
                            status: PairStatus::Frontier,
                            children: Vec::new(),
                        });
                        stacks.push((s1.clone(), s2.clone()));
                        index.insert(key, j);
                        queue.push_back(j);
                        j
                    }
                };
                kids.push(j);
            }
            states[i].children = kids;
        }
        Product { relation, states, truncated }
    }

    fn any(&self, f: impl Fn(&PairStatus) -> bool) -> bool {
        self.states.iter().any(|s| f(&s.status))
    }

    /// Every pair was explored and resolved on both sides or `⊥` on both.
    pub fn is_closed(&self) -> bool {
        !self.truncated && !self.any(|s| matches!(s, PairStatus::Frontier | PairStatus::Undetermined))
    }

    /// First pair, in breadth-first order, where the trees differ.
    pub fn first_difference(&self) -> Option<&PairState> {
        self.states.iter().find(|s| s.status == PairStatus::ShapeDiff)
    }

    /// First pair where the relation fails.
    pub fn first_violation(&self) -> Option<&PairState> {
        self.states.iter().find(|s| s.status == PairStatus::Compared(Some(false)))
    }

    pub fn shape_equal(&self) -> Option<bool> {
        if self.first_difference().is_some() {
            Some(false)
        } else if self.truncated || self.any(|s| *s == PairStatus::Undetermined) {
            None
        } else {
            Some(true)
        }
    }

    pub fn globally(&self) -> Option<bool> {
        if self.first_difference().is_some() || self.first_violation().is_some() {
            return Some(false);
        }
        let unsure =
            self.truncated || self.any(|s| matches!(s, PairStatus::Undetermined | PairStatus::Compared(None)));
        if unsure {
            None
        } else {
            Some(true)
        }
    }

    pub fn eventually(&self) -> Eventually {
        if self.first_difference().is_some() {
            return Eventually { holds: Some(false), level: None, certified: true };
        }
        let bad = |s: &PairState| !matches!(s.status, PairStatus::Compared(Some(true)) | PairStatus::BothBottom);
        if !self.is_closed() {
            // bounded evidence: the relation must hold on the deepest level
            // reached, and ℓ is one past the deepest failure
            let deepest = self.states.iter().map(|s| s.level).max().unwrap_or(0);
            let failing = |s: &&PairState| matches!(s.status, PairStatus::Compared(Some(false)) | PairStatus::Compared(None) | PairStatus::Undetermined);
            let last_bad = self.states.iter().filter(failing).map(|s| s.level).max();
            let holds = match last_bad {
                Some(l) if l >= deepest => {
                    let definite = self.states.iter().any(|s| s.level == l && s.status == PairStatus::Compared(Some(false)));
                    definite.then_some(false)
                }
                _ => Some(true),
            };
            let level = match holds {
                Some(true) => Some(last_bad.map_or(0, |l| l + 1)),
                _ => None,
            };
            return Eventually { holds, level, certified: false };
        }
        let cyclic = self.cycle_reachable();
        let recurring = |st: PairStatus| self.states.iter().zip(&cyclic).any(|(s, &c)| c && s.status == st);
        if recurring(PairStatus::Compared(Some(false))) {
            return Eventually { holds: Some(false), level: None, certified: true };
        }
        if recurring(PairStatus::Compared(None)) {
            return Eventually { holds: None, level: None, certified: false };
        }
        // violations only above the cycles: their levels are bounded by the
        // longest path to them
        let depth = self.longest_paths(&cyclic);
        let level = self.states.iter().enumerate().filter(|(_, s)| bad(s)).map(|(i, _)| depth[i] + 1).max().unwrap_or(0);
        Eventually { holds: Some(true), level: Some(level), certified: true }
    }

    /// States lying on a cycle or below one; these recur at unbounded depth.
    fn cycle_reachable(&self) -> Vec<bool> {
        let on_cycle = self.on_cycle();
        let mut seen = on_cycle.clone();
        let mut stack: Vec<usize> = (0..self.states.len()).filter(|&i| on_cycle[i]).collect();
        while let Some(i) = stack.pop() {
            for &j in &self.states[i].children {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen
    }

    // Tarjan's algorithm, iterative.
    fn on_cycle(&self) -> Vec<bool> {
        let n = self.states.len();
        let mut idx = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut result = vec![false; n];
        let mut counter = 0;
        for root in 0..n {
            if idx[root] != usize::MAX {
                continue;
            }
            let mut work = vec![(root, 0usize)];
            while let Some(&mut (v, ref mut next)) = work.last_mut() {
                if *next == 0 {
                    idx[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                if let Some(&w) = self.states[v].children.get(*next) {
                    *next += 1;
                    if idx[w] == usize::MAX {
                        work.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(idx[w]);
                    }
                    continue;
                }
                work.pop();
                if let Some(&(u, _)) = work.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == idx[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    let looped = comp.len() > 1 || self.states[v].children.contains(&v);
                    if looped {
                        for w in comp {
                            result[w] = true;
                        }
                    }
                }
            }
        }
        result
    }

    // Longest path from the root to each state outside `cyclic`. Those
    // states are only reached through acyclic paths.
    fn longest_paths(&self, cyclic: &[bool]) -> Vec<usize> {
        let n = self.states.len();
        let mut indeg = vec![0usize; n];
        for (i, s) in self.states.iter().enumerate() {
            if cyclic[i] {
                continue;
            }
            for &j in &s.children {
                if !cyclic[j] {
                    indeg[j] += 1;
                }
            }
        }
        let mut depth = vec![0usize; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| !cyclic[i] && indeg[i] == 0).collect();
        while let Some(i) = queue.pop_front() {
            for &j in &self.states[i].children {
                if cyclic[j] {
                    continue;
                }
                depth[j] = depth[j].max(depth[i] + 1);
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
        depth
    }
}

fn pair_status(
    t1: &Tree,
    a: NodeId,
    s1: &[BinderId],
    t2: &Tree,
    b: NodeId,
    s2: &[BinderId],
    r: Relation,
) -> PairStatus {
    let (n1, n2) = (t1.node(a), t2.node(b));
    let unsure = |k: &NodeKind| matches!(k, NodeKind::Unknown(UnknownReason::Fuel) | NodeKind::Bottom { assumed: true });
    if unsure(&n1.kind) || unsure(&n2.kind) {
        return PairStatus::Undetermined;
    }
    if matches!(n1.kind, NodeKind::Unknown(_)) || matches!(n2.kind, NodeKind::Unknown(_)) {
        return PairStatus::Frontier;
    }
    let same = match (&n1.kind, &n2.kind) {
        (NodeKind::Bottom { .. }, NodeKind::Bottom { .. }) => return PairStatus::BothBottom,
        (NodeKind::Hnf { binders: b1, head: h1 }, NodeKind::Hnf { binders: b2, head: h2 }) => {
            b1.len() == b2.len() && heads_match(h1, s1, h2, s2)
        }
        (NodeKind::Var { head: h1 }, NodeKind::Var { head: h2 }) => heads_match(h1, s1, h2, s2),
        (NodeKind::Lam { .. }, NodeKind::Lam { .. }) | (NodeKind::App, NodeKind::App) => true,
        _ => false,
    };
    if !same || n1.children.len() != n2.children.len() {
        return PairStatus::ShapeDiff;
    }
    PairStatus::Compared(match (&n1.clock, &n2.clock) {
        (Some(x), Some(y)) => r.holds(x, y),
        (None, None) => Some(true),
        _ => None,
    })
}
