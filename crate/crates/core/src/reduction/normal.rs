use std::collections::HashSet;

use crate::term::{Dir, Position, Term, TermKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormalizeStatus {
    Normal,
    /// A term repeated: leftmost-outermost reduction cycles.
    Divergent,
    /// Ran out of steps, or the term grew past the size limit.
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct NormalizeOutcome {
    pub status: NormalizeStatus,
    pub term: Term,
    pub steps: usize,
}

impl NormalizeOutcome {
    pub fn normal_form(&self) -> Option<&Term> {
        (self.status == NormalizeStatus::Normal).then_some(&self.term)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NormalizeLimits {
    pub fuel: usize,
    pub max_size: usize,
    pub trace_cap: usize,
}

impl Default for NormalizeLimits {
    fn default() -> NormalizeLimits {
        NormalizeLimits { fuel: 10_000, max_size: 100_000, trace_cap: 10_000 }
    }
}

/// Leftmost-outermost normalisation with at most `fuel` steps.
pub fn normalize(t: &Term, fuel: usize) -> NormalizeOutcome {
    normalize_with(t, &NormalizeLimits { fuel, ..NormalizeLimits::default() })
}

pub fn normalize_with(t: &Term, limits: &NormalizeLimits) -> NormalizeOutcome {
    let mut cur = t.clone();
    let mut seen: HashSet<Term> = HashSet::new();
    let mut steps = 0;
    loop {
        if cur.is_normal() {
            return NormalizeOutcome { status: NormalizeStatus::Normal, term: cur, steps };
        }
        if steps >= limits.fuel || cur.size() > limits.max_size {
            return NormalizeOutcome { status: NormalizeStatus::Exhausted, term: cur, steps };
        }
        if seen.len() < limits.trace_cap && !seen.insert(cur.clone()) {
            return NormalizeOutcome { status: NormalizeStatus::Divergent, term: cur, steps };
        }
        cur = lo_step(&cur).expect("a term that is not normal has a redex");
        steps += 1;
    }
}

fn lo_step(t: &Term) -> Option<Term> {
    if t.is_normal() {
        return None;
    }
    match t.kind() {
        TermKind::App(f, a) => {
            if let Some((_, body)) = f.as_lam() {
                return Some(body.instantiate(a));
            }
            if let Some(f2) = lo_step(f) {
                return Some(Term::app(f2, a.clone()));
            }
            lo_step(a).map(|a2| Term::app(f.clone(), a2))
        }
        TermKind::Lam(n, b) => lo_step(b).map(|b2| Term::lam_named(n.clone(), b2)),
        _ => None,
    }
}

/// Position of the leftmost-outermost redex.
pub fn leftmost_outermost_redex(t: &Term) -> Option<Position> {
    let mut pos = Position::root();
    let mut cur = t;
    'outer: loop {
        if cur.is_normal() {
            return None;
        }
        match cur.kind() {
            TermKind::App(f, a) => {
                if f.is_lam() {
                    return Some(pos);
                }
                for (d, s) in [(Dir::Fun, f), (Dir::Arg, a)] {
                    if !s.is_normal() {
                        pos.push(d);
                        cur = s;
                        continue 'outer;
                    }
                }
                return None;
            }
            TermKind::Lam(_, b) => {
                pos.push(Dir::Body);
                cur = b;
            }
            _ => return None,
        }
    }
}

/// Every redex position, in pre-order.
pub fn redex_positions(t: &Term) -> Vec<Position> {
    fn go(t: &Term, here: &mut Vec<Dir>, acc: &mut Vec<Position>) {
        if t.is_normal() {
            return;
        }
        match t.kind() {
            TermKind::App(f, a) => {
                if f.is_lam() {
                    acc.push(Position::from_dirs(here.clone()));
                }
                here.push(Dir::Fun);
                go(f, here, acc);
                here.pop();
                here.push(Dir::Arg);
                go(a, here, acc);
                here.pop();
            }
            TermKind::Lam(_, b) => {
                here.push(Dir::Body);
                go(b, here, acc);
                here.pop();
            }
            _ => {}
        }
    }
    let mut acc = Vec::new();
    go(t, &mut Vec::new(), &mut acc);
    acc
}

/// All one-step reducts with the contracted position, in pre-order.
pub fn one_step_reducts(t: &Term) -> Vec<(Position, Term)> {
    if t.is_normal() {
        return Vec::new();
    }
    let under = |d: Dir, p: Position| Position::from_dirs(std::iter::once(d).chain(p.dirs().iter().copied()).collect());
    let mut out = Vec::new();
    match t.kind() {
        TermKind::App(f, a) => {
            if let Some((_, body)) = f.as_lam() {
                out.push((Position::root(), body.instantiate(a)));
            }
            for (p, f2) in one_step_reducts(f) {
                out.push((under(Dir::Fun, p), Term::app(f2, a.clone())));
            }
            for (p, a2) in one_step_reducts(a) {
                out.push((under(Dir::Arg, p), Term::app(f.clone(), a2)));
            }
        }
        TermKind::Lam(n, b) => {
            for (p, b2) in one_step_reducts(b) {
                out.push((under(Dir::Body, p), Term::lam_named(n.clone(), b2)));
            }
        }
        _ => {}
    }
    out
}
