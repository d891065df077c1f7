//! Locally nameless λ-terms.
//!
//! Bound variables are de Bruijn indices, free variables carry names and
//! every binder keeps its source name as a printing hint. Two terms compare
//! equal exactly when they are α-equivalent.

mod defs;
mod parse;
mod position;
mod pretty;

pub use defs::DefinitionTable;
pub use parse::{parse, parse_with};
pub use position::{Dir, Position};

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::Error;

/// Names of free variables and binder hints.
pub type Name = Arc<str>;

/// An immutable, cheaply clonable λ-term.
#[derive(Clone)]
pub struct Term(Arc<Node>);

struct Node {
    kind: TermKind,
    hash: u64,
    size: usize,
    // One more than the largest dangling de Bruijn index, 0 when there is none.
    loose: u32,
    normal: bool,
}

/// The shape of a term node.
#[derive(Clone)]
pub enum TermKind {
    /// De Bruijn index, 0 being the innermost enclosing λ.
    Bound(u32),
    /// A free (global) variable.
    Free(Name),
    /// Abstraction with its binder name hint.
    Lam(Name, Term),
    App(Term, Term),
}

/// Which side an iterated application nests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assoc {
    /// `F^n x = F (F (... x))`
    Right,
    /// `F x^n = F x x ... x`, left associated
    Left,
}

fn mix(a: u64, b: u64) -> u64 {
    // splitmix64 finaliser over a simple combination
    let mut z = a.rotate_left(17) ^ b.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn str_hash(s: &str) -> u64 {
    // FNV-1a, stable across runs
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

impl Term {
    fn mk(kind: TermKind) -> Term {
        let (hash, size, loose, normal) = match &kind {
            TermKind::Bound(i) => (mix(1, u64::from(*i)), 1, i + 1, true),
            TermKind::Free(n) => (mix(2, str_hash(n)), 1, 0, true),
            TermKind::Lam(_, b) => (mix(3, b.0.hash), b.0.size.saturating_add(1), b.0.loose.saturating_sub(1), b.0.normal),
            TermKind::App(f, a) => (
                mix(mix(4, f.0.hash), a.0.hash),
                f.0.size.saturating_add(a.0.size).saturating_add(1),
                f.0.loose.max(a.0.loose),
                f.0.normal && a.0.normal && !f.is_lam(),
            ),
        };
        Term(Arc::new(Node { kind, hash, size, loose, normal }))
    }

    pub fn bound(index: u32) -> Term {
        Term::mk(TermKind::Bound(index))
    }

    pub fn free(name: &str) -> Term {
        Term::mk(TermKind::Free(Name::from(name)))
    }

    pub fn free_name(name: Name) -> Term {
        Term::mk(TermKind::Free(name))
    }

    /// A λ whose body already refers to the binder as index 0.
    pub fn lam(hint: &str, body: Term) -> Term {
        Term::mk(TermKind::Lam(Name::from(hint), body))
    }

    pub fn lam_named(hint: Name, body: Term) -> Term {
        Term::mk(TermKind::Lam(hint, body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::mk(TermKind::App(f, a))
    }

    /// `f a1 ... an`
    pub fn apps<I: IntoIterator<Item = Term>>(f: Term, args: I) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    /// `λname.body`, binding every free occurrence of `name` in `body`.
    pub fn abstract_over(name: &str, body: &Term) -> Term {
        Term::lam(name, body.close(name, 0))
    }

    /// Abstract over several names, outermost first.
    pub fn abstract_many(names: &[&str], body: &Term) -> Term {
        names
            .iter()
            .rev()
            .fold(body.clone(), |acc, n| Term::abstract_over(n, &acc))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// True when the term contains no β-redex.
    pub fn is_normal(&self) -> bool {
        self.0.normal
    }

    /// True when no de Bruijn index escapes the term.
    pub fn is_locally_closed(&self) -> bool {
        self.0.loose == 0
    }

    pub(crate) fn loose(&self) -> u32 {
        self.0.loose
    }

    /// Closed: no free names and no dangling indices.
    pub fn is_closed(&self) -> bool {
        self.0.loose == 0 && self.free_vars().is_empty()
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn as_lam(&self) -> Option<(&Name, &Term)> {
        match self.kind() {
            TermKind::Lam(n, b) => Some((n, b)),
            _ => None,
        }
    }

    pub fn as_app(&self) -> Option<(&Term, &Term)> {
        match self.kind() {
            TermKind::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    pub fn is_lam(&self) -> bool {
        matches!(self.kind(), TermKind::Lam(..))
    }

    pub fn is_app(&self) -> bool {
        matches!(self.kind(), TermKind::App(..))
    }

    /// Split `h a1 .. an` into the head and its arguments.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let TermKind::App(f, a) = cur.kind() {
            args.push(a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// Split off the leading λs, returning their name hints and the body.
    pub fn strip_lams(&self) -> (Vec<Name>, &Term) {
        let mut names = Vec::new();
        let mut cur = self;
        while let TermKind::Lam(n, b) = cur.kind() {
            names.push(n.clone());
            cur = b;
        }
        (names, cur)
    }

    /// Rewrap a body with λs, outermost name first.
    pub fn wrap_lams(names: &[Name], body: Term) -> Term {
        names
            .iter()
            .rev()
            .fold(body, |acc, n| Term::lam_named(n.clone(), acc))
    }

    /// Add `d` to every index at or above `cutoff`.
    pub(crate) fn shift(&self, d: u32, cutoff: u32) -> Term {
        if d == 0 || self.0.loose <= cutoff {
            return self.clone();
        }
        match self.kind() {
            TermKind::Bound(i) => Term::bound(i + d),
            TermKind::Free(_) => self.clone(),
            TermKind::Lam(n, b) => Term::lam_named(n.clone(), b.shift(d, cutoff + 1)),
            TermKind::App(f, a) => Term::app(f.shift(d, cutoff), a.shift(d, cutoff)),
        }
    }

    /// Occurrences of index `depth`.
    pub(crate) fn occurrences(&self, depth: u32) -> usize {
        if self.0.loose <= depth {
            return 0;
        }
        match self.kind() {
            TermKind::Bound(i) => usize::from(*i == depth),
            TermKind::Free(_) => 0,
            TermKind::Lam(_, b) => b.occurrences(depth + 1),
            TermKind::App(f, a) => f.occurrences(depth).saturating_add(a.occurrences(depth)),
        }
    }

    /// Size of `self.instantiate(arg)`, without building it.
    pub(crate) fn instantiated_size(&self, arg: &Term) -> usize {
        let occ = self.occurrences(0);
        (self.size() - occ).saturating_add(occ.saturating_mul(arg.size()))
    }

    /// Substitute `arg` for index `depth`, lowering the indices above it.
    /// `arg` is expressed relative to the scope outside the removed binder.
    pub(crate) fn instantiate_at(&self, depth: u32, arg: &Term) -> Term {
        if self.0.loose <= depth {
            return self.clone();
        }
        match self.kind() {
            TermKind::Bound(i) if *i == depth => arg.shift(depth, 0),
            TermKind::Bound(i) => Term::bound(i - 1),
            TermKind::Free(_) => self.clone(),
            TermKind::Lam(n, b) => Term::lam_named(n.clone(), b.instantiate_at(depth + 1, arg)),
            TermKind::App(f, a) => Term::app(f.instantiate_at(depth, arg), a.instantiate_at(depth, arg)),
        }
    }

    /// β-contraction of a λ body: `body[0 := arg]`.
    pub fn instantiate(&self, arg: &Term) -> Term {
        self.instantiate_at(0, arg)
    }

    /// Turn free occurrences of `name` into index `depth`.
    fn close(&self, name: &str, depth: u32) -> Term {
        match self.kind() {
            TermKind::Free(n) if &**n == name => Term::bound(depth),
            TermKind::Bound(_) | TermKind::Free(_) => self.clone(),
            TermKind::Lam(h, b) => Term::lam_named(h.clone(), b.close(name, depth + 1)),
            TermKind::App(f, a) => Term::app(f.close(name, depth), a.close(name, depth)),
        }
    }

    /// Replace dangling index `k` (seen from the top) by `vals[k]`.
    pub(crate) fn open_with(&self, vals: &[Term]) -> Term {
        fn go(t: &Term, depth: u32, vals: &[Term]) -> Term {
            if t.0.loose <= depth {
                return t.clone();
            }
            match t.kind() {
                TermKind::Bound(i) => {
                    let k = (i - depth) as usize;
                    match vals.get(k) {
                        Some(v) => v.shift(depth, 0),
                        None => Term::bound(*i),
                    }
                }
                TermKind::Free(_) => t.clone(),
                TermKind::Lam(n, b) => Term::lam_named(n.clone(), go(b, depth + 1, vals)),
                TermKind::App(f, a) => Term::app(go(f, depth, vals), go(a, depth, vals)),
            }
        }
        go(self, 0, vals)
    }

    /// Capture-avoiding substitution of `s` for the free variable `x`.
    pub fn substitute(&self, x: &str, s: &Term) -> Term {
        fn go(t: &Term, depth: u32, x: &str, s: &Term) -> Term {
            match t.kind() {
                TermKind::Free(n) if &**n == x => s.shift(depth, 0),
                TermKind::Bound(_) | TermKind::Free(_) => t.clone(),
                TermKind::Lam(h, b) => Term::lam_named(h.clone(), go(b, depth + 1, x, s)),
                TermKind::App(f, a) => Term::app(go(f, depth, x, s), go(a, depth, x, s)),
            }
        }
        go(self, 0, x, s)
    }

    pub fn free_vars(&self) -> BTreeSet<Name> {
        fn go(t: &Term, acc: &mut BTreeSet<Name>) {
            match t.kind() {
                TermKind::Free(n) => {
                    acc.insert(n.clone());
                }
                TermKind::Bound(_) => {}
                TermKind::Lam(_, b) => go(b, acc),
                TermKind::App(f, a) => {
                    go(f, acc);
                    go(a, acc);
                }
            }
        }
        let mut acc = BTreeSet::new();
        go(self, &mut acc);
        acc
    }

    /// A free name based on `base` that does not occur in any of `terms`.
    pub fn fresh_name(base: &str, terms: &[&Term]) -> Name {
        let used: BTreeSet<Name> = terms.iter().flat_map(|t| t.free_vars()).collect();
        if !used.contains(base) {
            return Name::from(base);
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|c| !used.contains(c.as_str()))
            .map(Name::from)
            .expect("unbounded supply of names")
    }

    /// α-equivalence. Same as `==`.
    pub fn alpha_eq(&self, other: &Term) -> bool {
        self == other
    }

    /// Subterm at `p`, keeping dangling indices relative to `p`.
    pub fn subterm_raw(&self, p: &Position) -> Result<Term, Error> {
        let mut cur = self;
        for d in p.dirs() {
            cur = match (d, cur.kind()) {
                (Dir::Body, TermKind::Lam(_, b)) => b,
                (Dir::Fun, TermKind::App(f, _)) => f,
                (Dir::Arg, TermKind::App(_, a)) => a,
                _ => return Err(Error::UndefinedPosition(p.clone())),
            };
        }
        Ok(cur.clone())
    }

    /// Subterm at `p` as a named term: variables bound above `p` become free
    /// variables carrying their binder's name.
    pub fn subterm_at(&self, p: &Position) -> Result<Term, Error> {
        let mut cur = self;
        let mut binders: Vec<Name> = Vec::new();
        for d in p.dirs() {
            cur = match (d, cur.kind()) {
                (Dir::Body, TermKind::Lam(n, b)) => {
                    binders.push(n.clone());
                    b
                }
                (Dir::Fun, TermKind::App(f, _)) => f,
                (Dir::Arg, TermKind::App(_, a)) => a,
                _ => return Err(Error::UndefinedPosition(p.clone())),
            };
        }
        let vals: Vec<Term> = binders.iter().rev().map(|n| Term::free_name(n.clone())).collect();
        Ok(cur.open_with(&vals))
    }

    /// Replace the subterm at `p` by `s`, where `s` lives in the scope at `p`.
    pub fn replace_at(&self, p: &Position, s: Term) -> Result<Term, Error> {
        fn go(t: &Term, dirs: &[Dir], s: Term, p: &Position) -> Result<Term, Error> {
            let Some((d, rest)) = dirs.split_first() else {
                return Ok(s);
            };
            match (d, t.kind()) {
                (Dir::Body, TermKind::Lam(n, b)) => Ok(Term::lam_named(n.clone(), go(b, rest, s, p)?)),
                (Dir::Fun, TermKind::App(f, a)) => Ok(Term::app(go(f, rest, s, p)?, a.clone())),
                (Dir::Arg, TermKind::App(f, a)) => Ok(Term::app(f.clone(), go(a, rest, s, p)?)),
                _ => Err(Error::UndefinedPosition(p.clone())),
            }
        }
        go(self, p.dirs(), s, p)
    }

    /// All positions of the term.
    pub fn positions(&self) -> BTreeSet<Position> {
        fn go(t: &Term, here: &mut Vec<Dir>, acc: &mut BTreeSet<Position>) {
            acc.insert(Position::from_dirs(here.clone()));
            match t.kind() {
                TermKind::Lam(_, b) => {
                    here.push(Dir::Body);
                    go(b, here, acc);
                    here.pop();
                }
                TermKind::App(f, a) => {
                    here.push(Dir::Fun);
                    go(f, here, acc);
                    here.pop();
                    here.push(Dir::Arg);
                    go(a, here, acc);
                    here.pop();
                }
                _ => {}
            }
        }
        let mut acc = BTreeSet::new();
        go(self, &mut Vec::new(), &mut acc);
        acc
    }

    /// `n`-fold iteration: `f (f (.. x))` or `f x x .. x`.
    pub fn iterate(f: &Term, n: usize, x: &Term, assoc: Assoc) -> Term {
        match assoc {
            Assoc::Right => (0..n).fold(x.clone(), |acc, _| Term::app(f.clone(), acc)),
            Assoc::Left => (0..n).fold(f.clone(), |acc, _| Term::app(acc, x.clone())),
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.size != other.0.size {
            return false;
        }
        match (self.kind(), other.kind()) {
            (TermKind::Bound(i), TermKind::Bound(j)) => i == j,
            (TermKind::Free(a), TermKind::Free(b)) => a == b,
            (TermKind::Lam(_, a), TermKind::Lam(_, b)) => a == b,
            (TermKind::App(f, a), TermKind::App(g, b)) => f == g && a == b,
            _ => false,
        }
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty::render(self))
    }
}

impl std::str::FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term, Error> {
        parse(s)
    }
}
