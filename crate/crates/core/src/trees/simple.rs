use serde::Serialize;

use super::{build_tree, render_path, NodeId, NodeKind, Semantics, Tree, TreeConfig, UnknownReason};
use crate::term::{Position, Term};

/// Outcome of the simplicity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Simplicity {
    /// Every head reduction of the (closed) tree contracts only linear or
    /// call-by-value redexes.
    Simple,
    /// A non-simple step: the tree node's position and path, and the step's
    /// position inside the term reduced at that node.
    NotSimple { node: Position, path: String, step: Position },
    /// Neither could be established within the limits.
    Unknown { reason: UnknownReason },
}

/// Decide simplicity on the compact tree of `t`.
pub fn check_simple(t: &Term, semantics: Semantics, depth: usize, fuel: usize) -> Simplicity {
    let mut cfg = TreeConfig::new(semantics, depth, fuel).compact();
    cfg.classify = true;
    let tree = build_tree(t, &cfg);
    for id in tree.preorder() {
        let n = &tree.nodes[id];
        if !n.kind.is_resolved() {
            continue;
        }
        if let Some(step) = &n.nonsimple_step {
            return Simplicity::NotSimple { node: n.position.clone(), path: render_path(&n.path), step: step.clone() };
        }
    }
    if tree.has_unknown(UnknownReason::Fuel) {
        Simplicity::Unknown { reason: UnknownReason::Fuel }
    } else if tree.has_unknown(UnknownReason::Depth) {
        Simplicity::Unknown { reason: UnknownReason::Depth }
    } else {
        Simplicity::Simple
    }
}

/// A back edge of a compact tree. For a cycle, the node at `sigma` repeats
/// the one at `theta` and `sigma = theta · pi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BackEdgeInfo {
    pub node: NodeId,
    pub target: NodeId,
    pub sigma: Position,
    pub theta: Position,
    pub pi: Option<Position>,
    pub sigma_path: String,
    pub theta_path: String,
    pub cyclic: bool,
}

pub fn periodicity_report(tree: &Tree) -> Vec<BackEdgeInfo> {
    tree.nodes
        .iter()
        .enumerate()
        .filter_map(|(id, n)| match &n.kind {
            NodeKind::BackEdge { target, phase, period } => Some(BackEdgeInfo {
                node: id,
                target: *target,
                sigma: n.position.clone(),
                theta: phase.clone(),
                pi: period.clone(),
                sigma_path: render_path(&n.path),
                theta_path: render_path(&tree.nodes[*target].path),
                cyclic: period.is_some(),
            }),
            _ => None,
        })
        .collect()
}
