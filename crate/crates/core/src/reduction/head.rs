use std::collections::HashSet;

use super::RedexClass;
use crate::term::{Dir, Name, Position, Term};

/// What head reduction is run towards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeadTarget {
    /// `λx̄.y M̄`
    Hnf,
    /// any abstraction, or `y M̄`
    Whnf,
    /// a term that never reduces to a root redex
    RootStable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HeadStatus {
    /// The target form was reached.
    Resolved,
    /// A repeated term proves the target is never reached.
    Divergent,
    /// Out of fuel before either of the above.
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct HeadOutcome {
    pub status: HeadStatus,
    /// Positions of the contracted redexes, each relative to the term it was contracted in.
    pub steps: Vec<Position>,
    /// The last term reached; the normal form of the target when resolved.
    pub term: Term,
    /// Redex classes in step order. Empty unless requested.
    pub classes: Vec<RedexClass>,
}

impl HeadOutcome {
    pub fn resolved(&self) -> Option<&Term> {
        (self.status == HeadStatus::Resolved).then_some(&self.term)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct HeadOptions {
    pub fuel: usize,
    /// How many visited terms are remembered for loop detection.
    pub trace_cap: usize,
    pub classify: bool,
    /// A step producing a larger term counts as running out of fuel.
    pub max_size: usize,
}

impl Default for HeadOptions {
    fn default() -> HeadOptions {
        HeadOptions { fuel: 10_000, trace_cap: 10_000, classify: false, max_size: 100_000 }
    }
}

impl HeadOptions {
    pub fn with_fuel(fuel: usize) -> HeadOptions {
        HeadOptions { fuel, ..HeadOptions::default() }
    }
}

/// Position of the head redex of `λx̄.(λy.M) A1 .. Am`, namely `0^n 1^(m-1)`.
pub fn head_redex_position(t: &Term) -> Option<Position> {
    let (prefix, body) = t.strip_lams();
    let (h, args) = body.spine();
    (h.is_lam() && !args.is_empty())
        .then(|| Position::root().extend_n(Dir::Body, prefix.len()).extend_n(Dir::Fun, args.len() - 1))
}

/// One head step: the redex position and the result.
pub fn head_step(t: &Term) -> Option<(Position, Term)> {
    let (prefix, body) = t.strip_lams();
    let (pos, next, _) = spine_step(body)?;
    let p = Position::root().extend_n(Dir::Body, prefix.len()).concat(&pos);
    Some((p, Term::wrap_lams(&prefix, next)))
}

fn has_head_redex(body: &Term) -> bool {
    let (h, args) = body.spine();
    h.is_lam() && !args.is_empty()
}

// Whether contracting the head redex of the spine would exceed `max_size`.
fn too_big(body: &Term, max_size: usize) -> bool {
    let (h, args) = body.spine();
    match (h.as_lam(), args.first()) {
        (Some((_, m)), Some(a)) => {
            let rest: usize = args[1..].iter().map(|a| a.size() + 1).sum();
            m.instantiated_size(a).saturating_add(rest) > max_size
        }
        _ => false,
    }
}

// Contract the head redex of a λ-free spine.
fn spine_step(body: &Term) -> Option<(Position, Term, RedexClass)> {
    let (h, args) = body.spine();
    let (_, m) = h.as_lam()?;
    let first = args.first()?;
    let class = RedexClass::of(m, first);
    let next = Term::apps(m.instantiate(first), args[1..].iter().map(|a| (*a).clone()));
    Some((Position::root().extend_n(Dir::Fun, args.len() - 1), next, class))
}

pub fn head_reduce(t: &Term, target: HeadTarget, fuel: usize) -> HeadOutcome {
    head_reduce_with(t, target, &HeadOptions::with_fuel(fuel))
}

pub fn head_reduce_with(t: &Term, target: HeadTarget, opts: &HeadOptions) -> HeadOutcome {
    match target {
        HeadTarget::Hnf => to_hnf(t, opts),
        HeadTarget::Whnf => to_whnf(t, opts),
        HeadTarget::RootStable => {
            let mut fuel = opts.fuel;
            let mut out = HeadOutcome {
                status: HeadStatus::Resolved,
                steps: Vec::new(),
                term: t.clone(),
                classes: Vec::new(),
            };
            let r = root_stable(t, &mut fuel, opts, &mut out.steps, &mut out.classes);
            match r {
                Rs::Stable(s) => out.term = s,
                Rs::Active(last) => {
                    out.status = HeadStatus::Divergent;
                    out.term = last;
                }
                Rs::Exhausted(last) => {
                    out.status = HeadStatus::Exhausted;
                    out.term = last;
                }
            }
            out
        }
    }
}

fn to_hnf(t: &Term, opts: &HeadOptions) -> HeadOutcome {
    let (names, body) = t.strip_lams();
    let mut prefix: Vec<Name> = names;
    let mut body = body.clone();
    let mut steps = Vec::new();
    let mut classes = Vec::new();
    // Bodies seen so far. If one recurs, with whatever prefix, head
    // reduction is periodic from there on and never reaches a head variable.
    let mut seen: HashSet<Term> = HashSet::new();
    let status = loop {
        if seen.len() < opts.trace_cap && !seen.insert(body.clone()) {
            break HeadStatus::Divergent;
        }
        if !has_head_redex(&body) {
            break HeadStatus::Resolved;
        }
        if steps.len() >= opts.fuel || too_big(&body, opts.max_size) {
            break HeadStatus::Exhausted;
        }
        let (pos, next, class) = spine_step(&body).expect("head redex");
        steps.push(Position::root().extend_n(Dir::Body, prefix.len()).concat(&pos));
        if opts.classify {
            classes.push(class);
        }
        let (more, rest) = next.strip_lams();
        if more.is_empty() {
            body = next;
        } else {
            prefix.extend(more);
            body = rest.clone();
        }
    };
    HeadOutcome { status, steps, term: Term::wrap_lams(&prefix, body), classes }
}

fn to_whnf(t: &Term, opts: &HeadOptions) -> HeadOutcome {
    let mut cur = t.clone();
    let mut steps = Vec::new();
    let mut classes = Vec::new();
    let mut seen: HashSet<Term> = HashSet::new();
    let status = loop {
        if cur.is_lam() {
            break HeadStatus::Resolved;
        }
        if seen.len() < opts.trace_cap && !seen.insert(cur.clone()) {
            break HeadStatus::Divergent;
        }
        if !has_head_redex(&cur) {
            break HeadStatus::Resolved;
        }
        if steps.len() >= opts.fuel || too_big(&cur, opts.max_size) {
            break HeadStatus::Exhausted;
        }
        let (pos, next, class) = spine_step(&cur).expect("head redex");
        steps.push(pos);
        if opts.classify {
            classes.push(class);
        }
        cur = next;
    };
    HeadOutcome { status, steps, term: cur, classes }
}

enum Rs {
    Stable(Term),
    Active(Term),
    Exhausted(Term),
}

// Root-stabilise `t`: reduce the function part to a root-stable term; if
// that is an abstraction, contract at the root and repeat. A function part
// that is itself proven root-active makes the application root-stable.
fn root_stable(
    t: &Term,
    fuel: &mut usize,
    opts: &HeadOptions,
    steps: &mut Vec<Position>,
    classes: &mut Vec<RedexClass>,
) -> Rs {
    let mut cur = t.clone();
    let mut seen: HashSet<Term> = HashSet::new();
    loop {
        let Some((p, q)) = cur.as_app() else {
            return Rs::Stable(cur);
        };
        if seen.len() < opts.trace_cap && !seen.insert(cur.clone()) {
            return Rs::Active(cur);
        }
        let (p, q) = (p.clone(), q.clone());
        let mark = steps.len();
        let mut inner = Vec::new();
        match root_stable(&p, fuel, opts, &mut inner, classes) {
            Rs::Exhausted(p2) => {
                steps.extend(inner.into_iter().map(|s| Position::root().child(Dir::Fun).concat(&s)));
                return Rs::Exhausted(Term::app(p2, q));
            }
            Rs::Active(_) => {
                // the function part never stabilises; its steps are not part of this reduction
                if opts.classify {
                    classes.truncate(classes.len() - inner.len());
                }
                steps.truncate(mark);
                return Rs::Stable(cur);
            }
            Rs::Stable(p2) => {
                steps.extend(inner.into_iter().map(|s| Position::root().child(Dir::Fun).concat(&s)));
                let Some((_, m)) = p2.as_lam() else {
                    return Rs::Stable(Term::app(p2, q));
                };
                if *fuel == 0 || m.instantiated_size(&q) > opts.max_size {
                    return Rs::Exhausted(Term::app(p2, q));
                }
                *fuel -= 1;
                if opts.classify {
                    classes.push(RedexClass::of(m, &q));
                }
                steps.push(Position::root());
                cur = m.instantiate(&q);
            }
        }
    }
}

/// The `k` with `y x →h^k x (y x)` for a fresh `x`, if head reduction
/// passes through `x (y x)` within `fuel` steps.
pub fn reducing_fpc_order(y: &Term, fuel: usize) -> Option<usize> {
    let x = Term::free_name(Term::fresh_name("x", &[y]));
    let target = Term::app(x.clone(), Term::app(y.clone(), x.clone()));
    let mut cur = Term::app(y.clone(), x);
    for k in 0..=fuel {
        if cur == target {
            return Some(k);
        }
        cur = head_step(&cur)?.1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn steps(o: &HeadOutcome) -> Vec<String> {
        o.steps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn head_redex_positions() {
        assert_eq!(head_redex_position(&t("\\x.(\\y.y) x z")).unwrap().to_string(), "01");
        assert_eq!(head_redex_position(&t("(\\y.y) a")).unwrap().to_string(), "e");
        assert_eq!(head_redex_position(&t("x ((\\y.y) a)")), None);
    }

    #[test]
    fn reduces_to_hnf() {
        let o = head_reduce(&t("Y1 f"), HeadTarget::Hnf, 100);
        assert_eq!(o.status, HeadStatus::Resolved);
        assert_eq!(steps(&o), ["1", "e"]);
        assert_eq!(o.term, t("f (eta eta f)"));
        let o = head_reduce(&t("Y0 f"), HeadTarget::Hnf, 100);
        assert_eq!(o.steps.len(), 2);
    }

    #[test]
    fn detects_omega() {
        let o = head_reduce(&t("Omega"), HeadTarget::Hnf, 100);
        assert_eq!(o.status, HeadStatus::Divergent);
        assert_eq!(o.steps.len(), 1);
        let o = head_reduce(&t("Omega"), HeadTarget::RootStable, 100);
        assert_eq!(o.status, HeadStatus::Divergent);
    }

    #[test]
    fn loop_modulo_binders() {
        // P P →h λy.P P: the body recurs under a growing prefix
        let pp = t("(\\x y.x x) (\\x y.x x)");
        let o = head_reduce(&pp, HeadTarget::Hnf, 100);
        assert_eq!(o.status, HeadStatus::Divergent);
        let o = head_reduce(&pp, HeadTarget::Whnf, 100);
        assert_eq!(o.status, HeadStatus::Resolved);
        assert_eq!(o.steps.len(), 1);
    }

    #[test]
    fn fuel_runs_out_on_growing_terms() {
        let o = head_reduce(&t("(\\x.x x x) (\\x.x x x)"), HeadTarget::Hnf, 50);
        assert_eq!(o.status, HeadStatus::Exhausted);
        assert_eq!(o.steps.len(), 50);
    }

    #[test]
    fn root_stable_applications() {
        // x Ω is already root-stable
        let o = head_reduce(&t("x Omega"), HeadTarget::RootStable, 100);
        assert_eq!((o.status, o.steps.len()), (HeadStatus::Resolved, 0));
        // Ω x: the function part is root-active
        let o = head_reduce(&t("Omega x"), HeadTarget::RootStable, 100);
        assert_eq!((o.status, o.steps.len()), (HeadStatus::Resolved, 0));
        let o = head_reduce(&t("(\\a.\\b.a) x y"), HeadTarget::RootStable, 100);
        assert_eq!(steps(&o), ["1", "e"]);
        assert_eq!(o.term, t("x"));
    }

    #[test]
    fn fpc_orders() {
        assert_eq!(reducing_fpc_order(&t("Y1"), 100), Some(2));
        // Curry's combinator is not reducing
        assert_eq!(reducing_fpc_order(&t("Y0"), 100), None);
    }
}
