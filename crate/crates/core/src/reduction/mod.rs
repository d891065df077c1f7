//! β-reduction: single contractions, head reduction towards the three
//! kinds of head normal form, complete developments and normalisation.

mod develop;
mod head;
mod normal;

pub use develop::{develop, gross_knuth};
pub use head::{
    head_reduce, head_reduce_with, head_redex_position, head_step, reducing_fpc_order, HeadOptions,
    HeadOutcome, HeadStatus, HeadTarget,
};
pub use normal::{
    leftmost_outermost_redex, normalize, normalize_with, one_step_reducts, redex_positions, NormalizeLimits,
    NormalizeOutcome, NormalizeStatus,
};

use crate::error::{Error, Result};
use crate::term::{Position, Term, TermKind};

/// Syntactic class of a redex `(λx.M) N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct RedexClass {
    /// `x` occurs at most once in `M`.
    pub linear: bool,
    /// `N` is in normal form.
    pub call_by_value: bool,
}

impl RedexClass {
    /// Linear or call-by-value.
    pub fn is_simple(self) -> bool {
        self.linear || self.call_by_value
    }

    pub(crate) fn of(body: &Term, arg: &Term) -> RedexClass {
        RedexClass { linear: occurrences(body, 0, 2) <= 1, call_by_value: arg.is_normal() }
    }
}

/// Occurrences of index `k` in `t`, counting no further than `limit`.
pub(crate) fn occurrences(t: &Term, k: u32, limit: usize) -> usize {
    fn go(t: &Term, k: u32, limit: usize, n: &mut usize) {
        if *n >= limit || t.loose() <= k {
            return;
        }
        match t.kind() {
            TermKind::Bound(i) if *i == k => *n += 1,
            TermKind::Bound(_) | TermKind::Free(_) => {}
            TermKind::Lam(_, b) => go(b, k + 1, limit, n),
            TermKind::App(f, a) => {
                go(f, k, limit, n);
                go(a, k, limit, n);
            }
        }
    }
    let mut n = 0;
    go(t, k, limit, &mut n);
    n
}

/// The redex at `p` as `(body, argument)`, if there is one.
fn redex_at(t: &Term, p: &Position) -> Result<(Term, Term)> {
    let s = t.subterm_raw(p)?;
    match s.kind() {
        TermKind::App(f, a) => match f.kind() {
            TermKind::Lam(_, body) => Ok((body.clone(), a.clone())),
            _ => Err(Error::NotARedex(p.clone())),
        },
        _ => Err(Error::NotARedex(p.clone())),
    }
}

/// Contract the redex at `p`.
pub fn contract_at(t: &Term, p: &Position) -> Result<Term> {
    let (body, arg) = redex_at(t, p)?;
    t.replace_at(p, body.instantiate(&arg))
}

/// Classify the redex at `p`.
pub fn classify_redex(t: &Term, p: &Position) -> Result<RedexClass> {
    let (body, arg) = redex_at(t, p)?;
    Ok(RedexClass::of(&body, &arg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn p(s: &str) -> Position {
        s.parse().unwrap()
    }

    #[test]
    fn contraction() {
        assert_eq!(contract_at(&t("(\\x.x) y"), &p("e")).unwrap(), t("y"));
        assert_eq!(contract_at(&t("\\z.(\\x.x x) z"), &p("0")).unwrap(), t("\\z.z z"));
        assert_eq!(contract_at(&t("x y"), &p("e")), Err(Error::NotARedex(p("e"))));
        assert!(matches!(contract_at(&t("x"), &p("1")), Err(Error::UndefinedPosition(_))));
    }

    #[test]
    fn classification() {
        let c = classify_redex(&t("(\\x.x x) y"), &p("e")).unwrap();
        assert_eq!(c, RedexClass { linear: false, call_by_value: true });
        let c = classify_redex(&t("(\\x.x x) ((\\z.z) y)"), &p("e")).unwrap();
        assert!(!c.is_simple());
        let c = classify_redex(&t("(\\x.f x) ((\\z.z) y)"), &p("e")).unwrap();
        assert!(c.linear && !c.call_by_value);
        let c = classify_redex(&t("(\\x.f) Omega"), &p("e")).unwrap();
        assert!(c.linear);
    }
}
