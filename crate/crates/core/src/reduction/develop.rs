use std::collections::BTreeSet;

use super::redex_at;
use crate::error::Result;
use crate::term::{Dir, Position, Term, TermKind};

/// Complete development of the redexes at `set`.
///
/// Every position must be a redex of `t`. Residuals of the marked redexes
/// are contracted; redexes created along the way are left alone.
pub fn develop(t: &Term, set: &BTreeSet<Position>) -> Result<Term> {
    for p in set {
        redex_at(t, p)?;
    }
    let mut here = Vec::new();
    Ok(dev(t, &mut here, set))
}

fn has_below(here: &[Dir], set: &BTreeSet<Position>) -> bool {
    let start = Position::from_dirs(here.to_vec());
    set.range(start.clone()..).next().is_some_and(|p| start.is_prefix_of(p))
}

fn dev(t: &Term, here: &mut Vec<Dir>, set: &BTreeSet<Position>) -> Term {
    if !has_below(here, set) {
        return t.clone();
    }
    let at = |here: &mut Vec<Dir>, ds: &[Dir], s: &Term| {
        let mark = here.len();
        here.extend_from_slice(ds);
        let r = dev(s, here, set);
        here.truncate(mark);
        r
    };
    match t.kind() {
        TermKind::App(f, a) => {
            let marked = set.contains(&Position::from_dirs(here.clone()));
            match f.kind() {
                TermKind::Lam(_, m) if marked => {
                    let m2 = at(here, &[Dir::Fun, Dir::Body], m);
                    let a2 = at(here, &[Dir::Arg], a);
                    m2.instantiate(&a2)
                }
                _ => Term::app(at(here, &[Dir::Fun], f), at(here, &[Dir::Arg], a)),
            }
        }
        TermKind::Lam(n, b) => Term::lam_named(n.clone(), at(here, &[Dir::Body], b)),
        _ => t.clone(),
    }
}

/// One Gross–Knuth step: the complete development of all redexes.
pub fn gross_knuth(t: &Term) -> Term {
    if t.is_normal() {
        return t.clone();
    }
    match t.kind() {
        TermKind::App(f, a) => match f.kind() {
            TermKind::Lam(_, m) => gross_knuth(m).instantiate(&gross_knuth(a)),
            _ => Term::app(gross_knuth(f), gross_knuth(a)),
        },
        TermKind::Lam(n, b) => Term::lam_named(n.clone(), gross_knuth(b)),
        _ => t.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::reduction::redex_positions;
    use crate::term::parse;

    fn t(s: &str) -> Term {
        parse(s).unwrap()
    }

    fn set(ps: &[&str]) -> BTreeSet<Position> {
        ps.iter().map(|p| p.parse().unwrap()).collect()
    }

    #[test]
    fn develops_nested_redexes() {
        let m = t("(\\x.x x) ((\\y.y) z)");
        assert_eq!(develop(&m, &set(&["e", "2"])).unwrap(), t("z z"));
        assert_eq!(develop(&m, &set(&["2"])).unwrap(), t("(\\x.x x) z"));
        assert_eq!(develop(&m, &set(&["e"])).unwrap(), t("(\\y.y) z ((\\y.y) z)"));
        assert_eq!(develop(&m, &set(&[])).unwrap(), m);
    }

    #[test]
    fn created_redexes_stay() {
        let m = t("(\\x.x y) (\\z.z)");
        assert_eq!(develop(&m, &set(&["e"])).unwrap(), t("(\\z.z) y"));
    }

    #[test]
    fn rejects_non_redexes() {
        let m = t("x ((\\y.y) z)");
        assert_eq!(develop(&m, &set(&["e"])), Err(Error::NotARedex("e".parse().unwrap())));
    }

    #[test]
    fn gross_knuth_is_full_development() {
        let m = t("(\\x.x x) ((\\y.y) z) ((\\a.a) b)");
        let all: BTreeSet<Position> = redex_positions(&m).into_iter().collect();
        assert_eq!(gross_knuth(&m), develop(&m, &all).unwrap());
    }
}
