use super::{constant, gvector, left_iter};
use crate::term::{Dir, Position, Term};

/// `Y^⟨n1,…,nk⟩`: Curry's fpc followed by the vectors `[](SS) S^ni I`.
pub fn scott_composite(ns: &[usize]) -> Term {
    ns.iter().fold(constant("Y0"), |y, &n| gvector(&y, n))
}

/// The simple reduct `θθ S^n1 I` followed by `SS' S^ni I` for the
/// remaining blocks, where `SS'` is the normal form of `SS`.
pub fn scott_composite_reduct(ns: &[usize]) -> Term {
    let (first, rest) = ns.split_first().expect("at least one block");
    let s = constant("S");
    let tt = Term::app(constant("theta"), constant("theta"));
    let mut t = Term::app(left_iter(tt, &s, *first), constant("I"));
    for &n in rest {
        t = Term::app(left_iter(Term::app(t, constant("SS'")), &s, n), constant("I"));
    }
    t
}

fn ones(p: &Position) -> Option<usize> {
    p.dirs().iter().all(|d| *d == Dir::Fun).then(|| p.len())
}

/// Occurrences of `1^l, 1^(l+1), 1^l, 1^(l-1), 1^(l-2)` (an increment
/// followed by four decrements) as consecutive entries of an atomic clock.
pub fn music_count(steps: &[Position]) -> usize {
    let lens: Vec<Option<usize>> = steps.iter().map(ones).collect();
    lens.windows(5)
        .filter(|w| match w {
            [Some(a), Some(b), Some(c), Some(d), Some(e)] => {
                *b == a + 1 && c == a && d + 1 == *a && *a >= 2 && e + 2 == *a
            }
            _ => false,
        })
        .count()
}
