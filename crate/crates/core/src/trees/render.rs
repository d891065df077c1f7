use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::{json, Value};

use super::{render_path, Head, NodeId, NodeKind, Tree, UnknownReason};

fn targets(tree: &Tree) -> BTreeSet<NodeId> {
    tree.nodes
        .iter()
        .filter_map(|n| match n.kind {
            NodeKind::BackEdge { target, .. } => Some(target),
            _ => None,
        })
        .collect()
}

/// One-line label of a node, in hnf notation.
pub(crate) fn label(tree: &Tree, id: NodeId) -> String {
    let n = &tree.nodes[id];
    let clock = n.clock.as_ref().map(|c| format!("[{c}] ")).unwrap_or_default();
    match &n.kind {
        NodeKind::Hnf { binders, head } => {
            let h = tree.head_name(head);
            if binders.is_empty() {
                format!("{clock}{h}")
            } else {
                let bs: Vec<&str> = binders.iter().map(|b| &**b).collect();
                format!("{clock}λ{}.{h}", bs.join(" "))
            }
        }
        NodeKind::Lam { binder } => format!("{clock}λ{binder}"),
        NodeKind::Var { head } => format!("{clock}{}", tree.head_name(head)),
        NodeKind::App => format!("{clock}@"),
        NodeKind::Bottom { assumed: false } => "⊥".into(),
        NodeKind::Bottom { assumed: true } => "⊥ (assumed)".into(),
        NodeKind::Unknown(UnknownReason::Fuel) => "? (fuel)".into(),
        NodeKind::Unknown(UnknownReason::Depth) => "? (depth)".into(),
        NodeKind::BackEdge { target, phase, period: Some(p) } => {
            format!("↺ #{target} (phase {phase}, period {p})")
        }
        NodeKind::BackEdge { target, period: None, .. } => format!("→ #{target} (shared)"),
    }
}

/// Indented text rendering. Targets of back edges are tagged `#id`.
pub fn to_text(tree: &Tree) -> String {
    let marks = targets(tree);
    let mut out = String::new();
    fn go(tree: &Tree, id: NodeId, marks: &BTreeSet<NodeId>, prefix: &str, connector: &str, out: &mut String) {
        let tag = if marks.contains(&id) { format!("#{id} ") } else { String::new() };
        let _ = writeln!(out, "{prefix}{connector}{tag}{}", super::render::label(tree, id));
        let kids = &tree.nodes[id].children;
        let child_prefix = match connector {
            "" => prefix.to_string(),
            "└─ " => format!("{prefix}   "),
            _ => format!("{prefix}│  "),
        };
        for (i, &c) in kids.iter().enumerate() {
            let conn = if i + 1 == kids.len() { "└─ " } else { "├─ " };
            go(tree, c, marks, &child_prefix, conn, out);
        }
    }
    go(tree, Tree::ROOT, &marks, "", "", &mut out);
    out
}

fn head_json(tree: &Tree, h: &Head) -> Value {
    match h {
        Head::Free(n) => json!({ "name": n.to_string(), "free": true }),
        Head::Bound(b) => json!({ "name": tree.head_name(h), "free": false, "node": b.node, "index": b.index }),
    }
}

fn node_json(tree: &Tree, id: NodeId) -> Value {
    let n = &tree.nodes[id];
    let mut v = json!({
        "id": id,
        "position": n.position.to_string(),
        "path": render_path(&n.path),
    });
    let obj = v.as_object_mut().expect("object literal");
    match &n.kind {
        NodeKind::Hnf { binders, head } => {
            obj.insert("kind".into(), json!("hnf"));
            obj.insert("binders".into(), json!(binders.iter().map(|b| b.to_string()).collect::<Vec<_>>()));
            obj.insert("head".into(), head_json(tree, head));
        }
        NodeKind::Lam { binder } => {
            obj.insert("kind".into(), json!("lam"));
            obj.insert("binders".into(), json!([binder.to_string()]));
        }
        NodeKind::Var { head } => {
            obj.insert("kind".into(), json!("var"));
            obj.insert("head".into(), head_json(tree, head));
        }
        NodeKind::App => {
            obj.insert("kind".into(), json!("app"));
        }
        NodeKind::Bottom { assumed } => {
            obj.insert("kind".into(), json!("bottom"));
            obj.insert("assumed".into(), json!(assumed));
        }
        NodeKind::Unknown(r) => {
            obj.insert("kind".into(), json!("unknown"));
            obj.insert("reason".into(), json!(r));
        }
        NodeKind::BackEdge { target, phase, period } => {
            obj.insert("kind".into(), json!("back-edge"));
            obj.insert("target".into(), json!(target));
            obj.insert("phase".into(), json!(phase.to_string()));
            obj.insert("period".into(), json!(period.as_ref().map(|p| p.to_string())));
        }
    }
    if let Some(c) = &n.clock {
        let value = match c.steps() {
            None => json!(c.count()),
            Some(s) => json!(s.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        };
        obj.insert("clock".into(), value);
    }
    if n.kind.is_resolved() {
        let kids: Vec<Value> = n.children.iter().map(|&c| node_json(tree, c)).collect();
        obj.insert("children".into(), Value::Array(kids));
    }
    v
}

/// The JSON tree document. Keys are sorted, so output is byte-stable.
pub fn to_json(tree: &Tree) -> Value {
    json!({
        "semantics": tree.config.semantics,
        "atomic": tree.config.atomic,
        "depth": tree.config.depth,
        "fuel": tree.config.fuel,
        "closed": tree.is_closed(),
        "root": node_json(tree, Tree::ROOT),
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. Back edges become dashed arrows from the parent to
/// their target, labelled with phase and period.
pub fn to_dot(tree: &Tree) -> String {
    let mut out = String::from("digraph tree {\n  node [shape=plaintext];\n");
    for (id, n) in tree.nodes.iter().enumerate() {
        if matches!(n.kind, NodeKind::BackEdge { .. }) {
            continue;
        }
        let _ = writeln!(out, "  n{id} [label=\"{}\"];", dot_escape(&label(tree, id)));
    }
    for (id, n) in tree.nodes.iter().enumerate() {
        for &c in &n.children {
            match &tree.nodes[c].kind {
                NodeKind::BackEdge { target, phase, period } => {
                    let text = match period {
                        Some(p) => format!("({phase}, {p})"),
                        None => format!("({phase}, shared)"),
                    };
                    let _ = writeln!(out, "  n{id} -> n{target} [style=dashed, label=\"{}\"];", dot_escape(&text));
                }
                _ => {
                    let _ = writeln!(out, "  n{id} -> n{c};");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
