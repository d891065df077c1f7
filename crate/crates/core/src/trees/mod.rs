//! Clocked Böhm, Lévy-Longo and Berarducci trees.
//!
//! A tree is stored as a vector of nodes. Depth-bounded trees are plain
//! trees with `Unknown` leaves at the frontier; compact trees may also
//! contain back edges that close cycles (`period` set) or share an already
//! built subtree (`period` unset).

mod build;
mod render;
mod simple;

pub use build::{atomic_bt, build_tree, clocked_bet, clocked_bt, clocked_llt, compact_cyclic};
pub use render::{to_dot, to_json, to_text};
pub use simple::{check_simple, periodicity_report, BackEdgeInfo, Simplicity};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::term::{Name, Position};

pub type NodeId = usize;

/// The three tree semantics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Semantics {
    /// Böhm trees: head normal forms.
    #[serde(rename = "bt")]
    Bohm,
    /// Lévy-Longo trees: weak head normal forms.
    #[serde(rename = "llt")]
    LevyLongo,
    /// Berarducci trees: root-stable forms.
    #[serde(rename = "bet")]
    Berarducci,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Bohm => "bt",
            Semantics::LevyLongo => "llt",
            Semantics::Berarducci => "bet",
        })
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Semantics, String> {
        match s {
            "bt" => Ok(Semantics::Bohm),
            "llt" => Ok(Semantics::LevyLongo),
            "bet" => Ok(Semantics::Berarducci),
            _ => Err(format!("unknown semantics `{s}` (expected bt, llt or bet)")),
        }
    }
}

/// A binder introduced by a node: the `index`-th λ of node `node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BinderId {
    pub node: NodeId,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Head {
    Bound(BinderId),
    Free(Name),
}

/// A node annotation: the number of head steps, or their positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Clock {
    Count(usize),
    Steps(Vec<Position>),
}

impl Clock {
    pub fn count(&self) -> usize {
        match self {
            Clock::Count(n) => *n,
            Clock::Steps(s) => s.len(),
        }
    }

    pub fn steps(&self) -> Option<&[Position]> {
        match self {
            Clock::Count(_) => None,
            Clock::Steps(s) => Some(s),
        }
    }
}

impl fmt::Display for Clock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clock::Count(n) => write!(f, "{n}"),
            Clock::Steps(s) => {
                let items: Vec<String> = s.iter().map(Position::to_string).collect();
                write!(f, "⟨{}⟩", items.join(","))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknownReason {
    /// Head reduction ran out of fuel.
    Fuel,
    /// The depth limit was reached.
    Depth,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Böhm tree node `λx̄.y` with one child per argument.
    Hnf { binders: Vec<Name>, head: Head },
    /// Abstraction node of a Lévy-Longo or Berarducci tree.
    Lam { binder: Name },
    /// Variable head of a Lévy-Longo node (children are the arguments) or a
    /// Berarducci leaf.
    Var { head: Head },
    /// Root-stable application of a Berarducci tree.
    App,
    /// `⊥`. `assumed` marks a fuel-exhausted node taken as `⊥` on request.
    Bottom { assumed: bool },
    Unknown(UnknownReason),
    /// Stands for the subtree at `target`. With a period this closes a
    /// cycle: `phase` is the target position and `period` the rest of the
    /// path down to this node. Without one it shares a subtree built
    /// elsewhere, and `phase` is that subtree's position.
    BackEdge { target: NodeId, phase: Position, period: Option<Position> },
}

impl NodeKind {
    /// Number of binders the node introduces.
    pub fn binder_count(&self) -> usize {
        match self {
            NodeKind::Hnf { binders, .. } => binders.len(),
            NodeKind::Lam { .. } => 1,
            _ => 0,
        }
    }

    pub fn is_resolved(&self) -> bool {
        matches!(
            self,
            NodeKind::Hnf { .. } | NodeKind::Lam { .. } | NodeKind::Var { .. } | NodeKind::App
        )
    }
}

#[derive(Clone, Debug)]
pub struct Node {
    pub kind: NodeKind,
    /// Present on resolved nodes unless stripped.
    pub clock: Option<Clock>,
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
    /// Applicative position in the unfolded tree.
    pub position: Position,
    /// Child indices from the root, counting from 1.
    pub path: Vec<usize>,
    pub level: usize,
    /// First head step that contracted a redex that is neither linear nor
    /// call-by-value, when classification was requested.
    pub nonsimple_step: Option<Position>,
    /// Binders above this node that its generating term refers to.
    pub(crate) free_binders: Vec<BinderId>,
}

/// Tree construction settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeConfig {
    pub semantics: Semantics,
    /// Levels below this become `Unknown(depth)`.
    pub depth: usize,
    /// Head steps allowed per node.
    pub fuel: usize,
    pub atomic: bool,
    /// Close cycles by back edges.
    pub cycles: bool,
    /// Also point to identical subtrees built elsewhere.
    pub share: bool,
    /// Take fuel exhaustion as `⊥` instead of `Unknown(fuel)`.
    pub assume_bottom: bool,
    /// Record the first non-simple head step of every node.
    pub classify: bool,
    pub max_nodes: usize,
}

impl Default for TreeConfig {
    fn default() -> TreeConfig {
        TreeConfig {
            semantics: Semantics::Bohm,
            depth: 12,
            fuel: 10_000,
            atomic: false,
            cycles: false,
            share: false,
            assume_bottom: false,
            classify: false,
            max_nodes: 200_000,
        }
    }
}

impl TreeConfig {
    pub fn new(semantics: Semantics, depth: usize, fuel: usize) -> TreeConfig {
        TreeConfig { semantics, depth, fuel, ..TreeConfig::default() }
    }

    pub fn atomic(mut self, atomic: bool) -> TreeConfig {
        self.atomic = atomic;
        self
    }

    pub fn compact(mut self) -> TreeConfig {
        self.cycles = true;
        self.share = true;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Tree {
    pub config: TreeConfig,
    pub nodes: Vec<Node>,
}

impl Tree {
    pub const ROOT: NodeId = 0;

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn root(&self) -> &Node {
        &self.nodes[Tree::ROOT]
    }

    /// No `Unknown` leaves: the tree, with its back edges, describes the whole
    /// (possibly infinite) tree.
    pub fn is_closed(&self) -> bool {
        !self.nodes.iter().any(|n| matches!(n.kind, NodeKind::Unknown(_)))
    }

    pub fn has_unknown(&self, reason: UnknownReason) -> bool {
        self.nodes.iter().any(|n| n.kind == NodeKind::Unknown(reason))
    }

    /// Follow a back edge to its target.
    pub fn resolve(&self, id: NodeId) -> NodeId {
        match self.nodes[id].kind {
            NodeKind::BackEdge { target, .. } => target,
            _ => id,
        }
    }

    /// Node reached by following 1-based child indices, through back edges.
    pub fn at_path(&self, path: &[usize]) -> Result<NodeId> {
        let mut cur = self.resolve(Tree::ROOT);
        for &i in path {
            let n = &self.nodes[cur];
            let child = i
                .checked_sub(1)
                .and_then(|k| n.children.get(k))
                .ok_or_else(|| Error::NoSuchNode(render_path(path)))?;
            cur = self.resolve(*child);
        }
        Ok(cur)
    }

    pub fn clock_at(&self, path: &[usize]) -> Option<&Clock> {
        self.at_path(path).ok().and_then(|id| self.nodes[id].clock.as_ref())
    }

    /// Clocks of the nodes `ε, i, ii, ...` (`n` of them), following child `i`.
    pub fn clocks_along(&self, i: usize, n: usize) -> Vec<Option<Clock>> {
        (0..n)
            .map(|k| {
                let path = vec![i; k];
                self.at_path(&path).ok().and_then(|id| self.nodes[id].clock.clone())
            })
            .collect()
    }

    /// Clock counts of all clocked nodes in pre-order (back edges are not followed).
    pub fn annotations(&self) -> Vec<usize> {
        self.preorder().filter_map(|id| self.nodes[id].clock.as_ref().map(Clock::count)).collect()
    }

    /// Node ids in pre-order, without following back edges.
    pub fn preorder(&self) -> impl Iterator<Item = NodeId> + '_ {
        let mut stack = vec![Tree::ROOT];
        std::iter::from_fn(move || {
            let id = stack.pop()?;
            stack.extend(self.nodes[id].children.iter().rev());
            Some(id)
        })
    }

    /// The same tree without annotations.
    pub fn strip(&self) -> Tree {
        let mut t = self.clone();
        for n in &mut t.nodes {
            n.clock = None;
        }
        t
    }

    /// Display name of a head.
    pub fn head_name(&self, h: &Head) -> String {
        match h {
            Head::Free(n) => n.to_string(),
            Head::Bound(b) => match &self.nodes[b.node].kind {
                NodeKind::Hnf { binders, .. } => binders[b.index].to_string(),
                NodeKind::Lam { binder } => binder.to_string(),
                _ => format!("?{}", b.node),
            },
        }
    }

    /// Expand back edges down to `depth` levels, giving a plain tree.
    pub fn unfold(&self, depth: usize) -> Tree {
        let mut out = Tree { config: TreeConfig { cycles: false, share: false, depth, ..self.config }, nodes: Vec::new() };
        let mut stack: Vec<(BinderId, BinderId)> = Vec::new();
        unfold_into(self, &mut out, self.resolve(Tree::ROOT), None, Position::root(), Vec::new(), 0, &mut stack);
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn unfold_into(
    src: &Tree,
    out: &mut Tree,
    id: NodeId,
    parent: Option<NodeId>,
    position: Position,
    path: Vec<usize>,
    level: usize,
    stack: &mut Vec<(BinderId, BinderId)>,
) -> NodeId {
    let new_id = out.nodes.len();
    let n = &src.nodes[id];
    let map_head = |h: &Head, stack: &[(BinderId, BinderId)]| match h {
        Head::Free(x) => Head::Free(x.clone()),
        Head::Bound(b) => {
            let mapped = stack.iter().rev().find(|(o, _)| o == b).map(|(_, m)| *m);
            Head::Bound(mapped.unwrap_or(*b))
        }
    };
    let kind = if level >= out.config.depth {
        NodeKind::Unknown(UnknownReason::Depth)
    } else {
        match &n.kind {
            NodeKind::Hnf { binders, head } => {
                let mark = stack.len();
                for i in 0..binders.len() {
                    stack.push((BinderId { node: id, index: i }, BinderId { node: new_id, index: i }));
                }
                let head = map_head(head, stack);
                stack.truncate(mark);
                NodeKind::Hnf { binders: binders.clone(), head }
            }
            NodeKind::Var { head } => NodeKind::Var { head: map_head(head, stack) },
            other => other.clone(),
        }
    };
    let resolved = kind.is_resolved();
    out.nodes.push(Node {
        kind,
        clock: if resolved { n.clock.clone() } else { None },
        children: Vec::new(),
        parent,
        position: position.clone(),
        path: path.clone(),
        level,
        nonsimple_step: n.nonsimple_step.clone(),
        free_binders: Vec::new(),
    });
    if !resolved {
        return new_id;
    }
    let mark = stack.len();
    for i in 0..n.kind.binder_count() {
        stack.push((BinderId { node: id, index: i }, BinderId { node: new_id, index: i }));
    }
    let mut kids = Vec::new();
    for (k, &c) in n.children.iter().enumerate() {
        let target = src.resolve(c);
        let rel = src.nodes[c].position.strip_prefix(&n.position).unwrap_or_default();
        let mut p = path.clone();
        p.push(k + 1);
        kids.push(unfold_into(src, out, target, Some(new_id), position.concat(&rel), p, level + 1, stack));
    }
    stack.truncate(mark);
    out.nodes[new_id].children = kids;
    new_id
}

pub(crate) fn render_path(path: &[usize]) -> String {
    if path.is_empty() {
        return "e".into();
    }
    path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
}
