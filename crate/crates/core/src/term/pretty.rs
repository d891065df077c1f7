use std::collections::HashSet;
use std::fmt::Write;

use super::{Name, Term, TermKind};

/// Render with minimal parentheses. Binders are renamed with a numeric
/// suffix only when their hint would capture something.
pub(super) fn render(t: &Term) -> String {
    let mut out = String::new();
    let mut env = Vec::new();
    go(t, &mut env, &mut out, Ctx::Top);
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    Top,
    Head,
    Arg,
}

fn used_names(t: &Term, depth: u32, env: &[Name], acc: &mut HashSet<Name>) {
    match t.kind() {
        TermKind::Bound(i) => {
            if *i >= depth {
                let k = (*i - depth) as usize;
                if k < env.len() {
                    acc.insert(env[env.len() - 1 - k].clone());
                }
            }
        }
        TermKind::Free(n) => {
            acc.insert(n.clone());
        }
        TermKind::Lam(_, b) => used_names(b, depth + 1, env, acc),
        TermKind::App(f, a) => {
            used_names(f, depth, env, acc);
            used_names(a, depth, env, acc);
        }
    }
}

fn pick(hint: &Name, body: &Term, env: &[Name]) -> Name {
    let mut avoid = HashSet::new();
    // the binder itself is index 0 of the body, skip it
    used_names(body, 1, env, &mut avoid);
    if !avoid.contains(hint) {
        return hint.clone();
    }
    (1..)
        .map(|i| Name::from(format!("{hint}{i}")))
        .find(|c| !avoid.contains(c))
        .expect("unbounded supply of names")
}

fn go(t: &Term, env: &mut Vec<Name>, out: &mut String, ctx: Ctx) {
    match t.kind() {
        TermKind::Bound(i) => {
            let k = *i as usize;
            match env.len().checked_sub(k + 1) {
                Some(j) => out.push_str(&env[j]),
                None => {
                    let _ = write!(out, "^{}", k - env.len());
                }
            }
        }
        TermKind::Free(n) => out.push_str(n),
        TermKind::Lam(..) => {
            if ctx != Ctx::Top {
                out.push('(');
            }
            out.push('\\');
            let depth = env.len();
            let mut cur = t;
            let mut first = true;
            while let TermKind::Lam(h, b) = cur.kind() {
                let n = pick(h, b, env);
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&n);
                env.push(n);
                cur = b;
            }
            out.push('.');
            go(cur, env, out, Ctx::Top);
            env.truncate(depth);
            if ctx != Ctx::Top {
                out.push(')');
            }
        }
        TermKind::App(..) => {
            let (head, args) = t.spine();
            if ctx == Ctx::Arg {
                out.push('(');
            }
            go(head, env, out, Ctx::Head);
            for a in args {
                out.push(' ');
                go(a, env, out, Ctx::Arg);
            }
            if ctx == Ctx::Arg {
                out.push(')');
            }
        }
    }
}
