use std::collections::{BTreeSet, HashMap};

use super::{BinderId, Clock, Head, Node, NodeId, NodeKind, Semantics, Tree, TreeConfig, UnknownReason};
use crate::reduction::{head_reduce_with, HeadOptions, HeadStatus, HeadTarget};
use crate::term::{Dir, Name, Position, Term, TermKind};

/// Clocked Böhm tree to `depth` levels.
pub fn clocked_bt(t: &Term, depth: usize, fuel: usize) -> Tree {
    build_tree(t, &TreeConfig::new(Semantics::Bohm, depth, fuel))
}

/// Böhm tree annotated with the positions of the head steps.
pub fn atomic_bt(t: &Term, depth: usize, fuel: usize) -> Tree {
    build_tree(t, &TreeConfig::new(Semantics::Bohm, depth, fuel).atomic(true))
}

pub fn clocked_llt(t: &Term, depth: usize, fuel: usize) -> Tree {
    build_tree(t, &TreeConfig::new(Semantics::LevyLongo, depth, fuel))
}

pub fn clocked_bet(t: &Term, depth: usize, fuel: usize) -> Tree {
    build_tree(t, &TreeConfig::new(Semantics::Berarducci, depth, fuel))
}

/// Finite description of a tree with back edges wherever a generating term
/// repeats. `depth` still bounds the search for terms that never repeat.
pub fn compact_cyclic(t: &Term, semantics: Semantics, atomic: bool, depth: usize, fuel: usize) -> Tree {
    build_tree(t, &TreeConfig::new(semantics, depth, fuel).atomic(atomic).compact())
}

pub fn build_tree(t: &Term, cfg: &TreeConfig) -> Tree {
    let mut b = Builder { cfg: *cfg, nodes: Vec::new(), ancestors: HashMap::new(), finished: HashMap::new() };
    let mut scope = Vec::new();
    b.build(t.clone(), &mut scope, None, Position::root(), Vec::new(), 0);
    Tree { config: *cfg, nodes: b.nodes }
}

struct Builder {
    cfg: TreeConfig,
    nodes: Vec<Node>,
    ancestors: HashMap<Term, NodeId>,
    finished: HashMap<Term, NodeId>,
}

// Children still to be built: generating term, extra scope, relative position.
type Pending = Vec<(Term, Position)>;

fn binder_key(b: BinderId) -> Term {
    // not a valid identifier, so it cannot clash with user names
    Term::free(&format!("#{}.{}", b.node, b.index))
}

fn loose_indices(t: &Term) -> BTreeSet<u32> {
    fn go(t: &Term, depth: u32, acc: &mut BTreeSet<u32>) {
        if t.loose() <= depth {
            return;
        }
        match t.kind() {
            TermKind::Bound(i) => {
                acc.insert(i - depth);
            }
            TermKind::Free(_) => {}
            TermKind::Lam(_, b) => go(b, depth + 1, acc),
            TermKind::App(f, a) => {
                go(f, depth, acc);
                go(a, depth, acc);
            }
        }
    }
    let mut acc = BTreeSet::new();
    go(t, 0, &mut acc);
    acc
}

fn scope_binder(scope: &[BinderId], k: u32) -> Option<BinderId> {
    scope.len().checked_sub(k as usize + 1).map(|i| scope[i])
}

impl Builder {
    fn push(&mut self, kind: NodeKind, parent: Option<NodeId>, position: Position, path: Vec<usize>, level: usize) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(Node {
            kind,
            clock: None,
            children: Vec::new(),
            parent,
            position,
            path,
            level,
            nonsimple_step: None,
            free_binders: Vec::new(),
        });
        id
    }

    fn build(
        &mut self,
        g: Term,
        scope: &mut Vec<BinderId>,
        parent: Option<NodeId>,
        position: Position,
        path: Vec<usize>,
        level: usize,
    ) -> NodeId {
        let loose = loose_indices(&g);
        let free_binders: Vec<BinderId> = loose.iter().filter_map(|&k| scope_binder(scope, k)).collect();
        let key = if self.cfg.cycles || self.cfg.share {
            let vals: Vec<Term> = (0..g.loose())
                .map(|k| scope_binder(scope, k).map(binder_key).unwrap_or_else(|| Term::bound(k)))
                .collect();
            Some(g.open_with(&vals))
        } else {
            None
        };
        if let Some(key) = &key {
            let hit = if self.cfg.cycles { self.ancestors.get(key).map(|&t| (t, true)) } else { None };
            let hit = hit.or_else(|| if self.cfg.share { self.finished.get(key).map(|&t| (t, false)) } else { None });
            if let Some((target, cyclic)) = hit {
                let phase = self.nodes[target].position.clone();
                let period = if cyclic { position.strip_prefix(&phase) } else { None };
                let id = self.push(NodeKind::BackEdge { target, phase, period }, parent, position, path, level);
                self.nodes[id].free_binders = free_binders;
                return id;
            }
        }
        if level >= self.cfg.depth || self.nodes.len() >= self.cfg.max_nodes {
            let id = self.push(NodeKind::Unknown(UnknownReason::Depth), parent, position, path, level);
            self.nodes[id].free_binders = free_binders;
            return id;
        }

        let target = match self.cfg.semantics {
            Semantics::Bohm => HeadTarget::Hnf,
            Semantics::LevyLongo => HeadTarget::Whnf,
            Semantics::Berarducci => HeadTarget::RootStable,
        };
        let opts = HeadOptions { fuel: self.cfg.fuel, classify: self.cfg.classify, ..HeadOptions::default() };
        let out = head_reduce_with(&g, target, &opts);
        let id = self.push(NodeKind::Unknown(UnknownReason::Fuel), parent, position.clone(), path.clone(), level);
        self.nodes[id].free_binders = free_binders;
        if self.cfg.classify {
            self.nodes[id].nonsimple_step =
                out.classes.iter().zip(&out.steps).find(|(c, _)| !c.is_simple()).map(|(_, p)| p.clone());
        }
        match out.status {
            HeadStatus::Divergent => {
                self.nodes[id].kind = NodeKind::Bottom { assumed: false };
                return id;
            }
            HeadStatus::Exhausted => {
                if self.cfg.assume_bottom {
                    self.nodes[id].kind = NodeKind::Bottom { assumed: true };
                }
                return id;
            }
            HeadStatus::Resolved => {}
        }
        self.nodes[id].clock =
            Some(if self.cfg.atomic { Clock::Steps(out.steps) } else { Clock::Count(out.steps.len()) });

        let (kind, own, pending) = shape(&out.term, self.cfg.semantics, id, scope);
        self.nodes[id].kind = kind;
        if let Some(key) = &key {
            self.ancestors.insert(key.clone(), id);
        }
        let mark = scope.len();
        scope.extend((0..own).map(|index| BinderId { node: id, index }));
        let mut kids = Vec::with_capacity(pending.len());
        for (i, (child, rel)) in pending.into_iter().enumerate() {
            let mut p = path.clone();
            p.push(i + 1);
            kids.push(self.build(child, scope, Some(id), position.concat(&rel), p, level + 1));
        }
        scope.truncate(mark);
        self.nodes[id].children = kids;
        if let Some(key) = key {
            self.ancestors.remove(&key);
            self.finished.entry(key).or_insert(id);
        }
        id
    }
}

// Node shape of a resolved term, the number of binders it introduces and
// its children with their positions relative to the node.
fn shape(r: &Term, sem: Semantics, id: NodeId, scope: &[BinderId]) -> (NodeKind, usize, Pending) {
    let head_of = |h: &Term, own: usize| -> Head {
        match h.kind() {
            TermKind::Free(n) => Head::Free(n.clone()),
            TermKind::Bound(i) => {
                let i = *i as usize;
                if i < own {
                    Head::Bound(BinderId { node: id, index: own - 1 - i })
                } else {
                    match scope_binder(scope, (i - own) as u32) {
                        Some(b) => Head::Bound(b),
                        None => Head::Free(Name::from(format!("^{}", i - own - scope.len()))),
                    }
                }
            }
            _ => unreachable!("a resolved head is a variable"),
        }
    };
    match sem {
        Semantics::Bohm => {
            let (binders, body) = r.strip_lams();
            let (h, args) = body.spine();
            let n = binders.len();
            let m = args.len();
            let pending = args
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let rel = Position::root().extend_n(Dir::Body, n).extend_n(Dir::Fun, m - 1 - i).child(Dir::Arg);
                    ((*a).clone(), rel)
                })
                .collect();
            let head = head_of(h, n);
            (NodeKind::Hnf { binders, head }, n, pending)
        }
        Semantics::LevyLongo => {
            if let Some((name, body)) = r.as_lam() {
                return (
                    NodeKind::Lam { binder: name.clone() },
                    1,
                    vec![(body.clone(), Position::root().child(Dir::Body))],
                );
            }
            let (h, args) = r.spine();
            let m = args.len();
            let pending = args
                .iter()
                .enumerate()
                .map(|(i, a)| ((*a).clone(), Position::root().extend_n(Dir::Fun, m - 1 - i).child(Dir::Arg)))
                .collect();
            (NodeKind::Var { head: head_of(h, 0) }, 0, pending)
        }
        Semantics::Berarducci => match r.kind() {
            TermKind::Lam(name, body) => (
                NodeKind::Lam { binder: name.clone() },
                1,
                vec![(body.clone(), Position::root().child(Dir::Body))],
            ),
            TermKind::App(p, q) => (
                NodeKind::App,
                0,
                vec![
                    (p.clone(), Position::root().child(Dir::Fun)),
                    (q.clone(), Position::root().child(Dir::Arg)),
                ],
            ),
            _ => (NodeKind::Var { head: head_of(r, 0) }, 0, Vec::new()),
        },
    }
}
