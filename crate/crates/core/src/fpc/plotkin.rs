//! Plotkin's terms `A_Y = Y(λz.fzz)` and `B_Y = Y(λx.Y(λy.fxy))`, and the
//! balancedness argument showing that no reduct of `A_Y` improves `B'_Y`.

use std::collections::BTreeSet;

use crate::compare::ReductCertificate;
use crate::reduction::{develop, redex_positions};
use crate::term::{Dir, Name, Position, Term, TermKind};
use crate::trees::{clocked_bt, NodeKind, Tree, UnknownReason};

/// A term with a designated free variable, the label, marking the
/// residuals of one particular occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTerm {
    pub term: Term,
    pub label: Name,
}

fn f_for(y: &Term) -> (Name, Term) {
    let f = Term::fresh_name("f", &[y]);
    let t = Term::free_name(f.clone());
    (f, t)
}

pub fn plotkin_a(y: &Term) -> Term {
    label_plotkin_a(y).term
}

/// `Y(λz.f★zz)` with `f★` not free in `Y`.
pub fn label_plotkin_a(y: &Term) -> LabeledTerm {
    let (label, f) = f_for(y);
    let body = Term::apps(f, [Term::bound(0), Term::bound(0)]);
    LabeledTerm { term: Term::app(y.clone(), Term::lam("z", body)), label }
}

pub fn plotkin_b(y: &Term) -> Term {
    let (_, f) = f_for(y);
    // λx.Y(λy'.f x y')
    let inner = Term::lam("y'", Term::apps(f, [Term::bound(1), Term::bound(0)]));
    Term::app(y.clone(), Term::lam("x", Term::app(y.clone(), inner)))
}

/// `Y(λx.f x (f x (Y(λy'.f x y'))))`, convertible with `B_Y`.
pub fn plotkin_bprime(y: &Term) -> Term {
    let (_, f) = f_for(y);
    let inner = Term::lam("y'", Term::apps(f.clone(), [Term::bound(1), Term::bound(0)]));
    let deep = Term::apps(f.clone(), [Term::bound(0), Term::app(y.clone(), inner)]);
    let body = Term::apps(f, [Term::bound(0), deep]);
    Term::app(y.clone(), Term::lam("x", body))
}

/// Every subterm `f★ s t` has `s ≡ t`.
pub fn is_balanced(t: &LabeledTerm) -> bool {
    fn go(t: &Term, label: &Name) -> bool {
        match t.kind() {
            TermKind::App(g, u) => {
                if let TermKind::App(h, s) = g.kind() {
                    if matches!(h.kind(), TermKind::Free(x) if x == label) && s != u {
                        return false;
                    }
                }
                go(g, label) && go(u, label)
            }
            TermKind::Lam(_, b) => go(b, label),
            _ => true,
        }
    }
    go(&t.term, &t.label)
}

// Pairs (position of s, position of t) for every subterm f★ s t.
fn twins(t: &Term, label: &Name) -> Vec<(Position, Position)> {
    fn go(t: &Term, label: &Name, here: &Position, out: &mut Vec<(Position, Position)>) {
        match t.kind() {
            TermKind::App(g, u) => {
                if let TermKind::App(h, _) = g.kind() {
                    if matches!(h.kind(), TermKind::Free(x) if x == label) {
                        out.push((here.child(Dir::Fun).child(Dir::Arg), here.child(Dir::Arg)));
                    }
                }
                go(g, label, &here.child(Dir::Fun), out);
                go(u, label, &here.child(Dir::Arg), out);
            }
            TermKind::Lam(_, b) => go(b, label, &here.child(Dir::Body), out),
            _ => {}
        }
    }
    let mut out = Vec::new();
    go(t, label, &Position::root(), &mut out);
    out
}

/// Develop the redexes picked by `choose`, together with their copies in
/// the twin argument of every `f★ s s`. Balanced terms stay balanced;
/// choosing every redex gives a Gross–Knuth step.
pub fn balanced_development(t: &LabeledTerm, mut choose: impl FnMut(&Position) -> bool) -> LabeledTerm {
    let pairs = twins(&t.term, &t.label);
    let mut set: BTreeSet<Position> = redex_positions(&t.term).into_iter().filter(|p| choose(p)).collect();
    loop {
        let mut extra = Vec::new();
        for p in &set {
            for (a, b) in &pairs {
                for (from, to) in [(a, b), (b, a)] {
                    if let Some(rest) = p.strip_prefix(from) {
                        let q = to.concat(&rest);
                        if !set.contains(&q) {
                            extra.push(q);
                        }
                    }
                }
            }
        }
        if extra.is_empty() {
            break;
        }
        set.extend(extra);
    }
    let term = develop(&t.term, &set).expect("twin positions hold the same redexes");
    LabeledTerm { term, label: t.label.clone() }
}

/// Annotations at the positions `(12)^n 2` of the clocked Böhm tree: the
/// second argument of each node on the leftmost spine, down to the depth
/// limit. `None` marks a node whose head reduction ran out of fuel.
pub fn spine_second_annotations(t: &Term, depth: usize, fuel: usize) -> Vec<(Position, Option<usize>)> {
    let tree = clocked_bt(t, depth, fuel);
    let mut out = Vec::new();
    let mut id = Tree::ROOT;
    loop {
        let n = tree.node(id);
        if !n.kind.is_resolved() || n.children.len() < 2 {
            return out;
        }
        let second = tree.node(n.children[1]);
        if second.kind == NodeKind::Unknown(UnknownReason::Depth) {
            return out;
        }
        out.push((second.position.clone(), second.clock.as_ref().map(|c| c.count())));
        id = n.children[0];
    }
}

/// First position `(12)^n 2` with a nonzero annotation.
pub fn plotkin_nonzero_witness(t: &LabeledTerm, depth: usize, fuel: usize) -> Option<Position> {
    spine_second_annotations(&t.term, depth, fuel)
        .into_iter()
        .find(|(_, c)| c.is_some_and(|c| c > 0))
        .map(|(p, _)| p)
}

/// The balancedness argument: every reduct of `A_Y` has a nonzero
/// annotation at some `(12)^n 2`, where `B'_Y` has only zeros, so no reduct
/// improves `B'_Y` globally. `covers` checks the witness on each reduct.
#[derive(Clone, Debug)]
pub struct PlotkinCertificate {
    pub label: Name,
    pub depth: usize,
    pub fuel: usize,
}

impl ReductCertificate for PlotkinCertificate {
    fn name(&self) -> &str {
        "nonzero (12)*2 annotation in every reduct of A_Y"
    }

    fn covers(&self, reduct: &Term) -> bool {
        let t = LabeledTerm { term: reduct.clone(), label: self.label.clone() };
        plotkin_nonzero_witness(&t, self.depth, self.fuel).is_some()
    }
}
