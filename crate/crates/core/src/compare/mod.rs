//! Comparing clocked trees: pointwise, globally and eventually, and the
//! discrimination procedure built on top.

mod discriminate;
mod oracle;
mod product;

pub use discriminate::{
    discriminate, Conclusion, DiscriminateConfig, Evidence, Justification, ReductCertificate, Verdict,
};
pub use oracle::{joinable, JoinLimits};
pub use product::{Eventually, Product};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::trees::{Clock, Tree};

/// Relation between two annotations. The list relations compare atomic
/// clocks; on plain counts they are undefined, and the count relations
/// compare the lengths of atomic clocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Le,
    Eq,
    Ge,
    /// The left list is a subsequence of the right one.
    SubseqLe,
    ListEq,
    /// The right list is a subsequence of the left one.
    SubseqGe,
}

impl Relation {
    pub fn holds(self, a: &Clock, b: &Clock) -> Option<bool> {
        match self {
            Relation::Le => Some(a.count() <= b.count()),
            Relation::Eq => Some(a.count() == b.count()),
            Relation::Ge => Some(a.count() >= b.count()),
            Relation::SubseqLe => Some(subseq_le(a.steps()?, b.steps()?)),
            Relation::ListEq => Some(a.steps()? == b.steps()?),
            Relation::SubseqGe => Some(subseq_le(b.steps()?, a.steps()?)),
        }
    }

    /// The improvement relation for plain or atomic clocks.
    pub fn improvement(atomic: bool) -> Relation {
        if atomic {
            Relation::SubseqLe
        } else {
            Relation::Le
        }
    }

    /// The matching relation for plain or atomic clocks.
    pub fn matching(atomic: bool) -> Relation {
        if atomic {
            Relation::ListEq
        } else {
            Relation::Eq
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "le",
            Relation::Eq => "eq",
            Relation::Ge => "ge",
            Relation::SubseqLe => "subseq-le",
            Relation::ListEq => "list-eq",
            Relation::SubseqGe => "subseq-ge",
        })
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> Result<Relation, String> {
        match s {
            "le" => Ok(Relation::Le),
            "eq" => Ok(Relation::Eq),
            "ge" => Ok(Relation::Ge),
            "subseq-le" => Ok(Relation::SubseqLe),
            "list-eq" => Ok(Relation::ListEq),
            "subseq-ge" => Ok(Relation::SubseqGe),
            _ => Err(format!("unknown relation `{s}`")),
        }
    }
}

/// `q` is a (not necessarily contiguous) subsequence of `p`.
pub fn subseq_le<T: PartialEq>(q: &[T], p: &[T]) -> bool {
    let mut it = p.iter();
    q.iter().all(|x| it.any(|y| y == x))
}

/// The relation at the node reached by `path` (1-based child indices).
/// Undefined unless both nodes carry clocks or both carry none.
pub fn compare_at(t1: &Tree, t2: &Tree, path: &[usize], r: Relation) -> Option<bool> {
    let a = t1.node(t1.at_path(path).ok()?);
    let b = t2.node(t2.at_path(path).ok()?);
    match (&a.clock, &b.clock) {
        (Some(x), Some(y)) => r.holds(x, y),
        (None, None) if a.kind.is_resolved() == b.kind.is_resolved() => Some(true),
        _ => None,
    }
}

/// Same underlying tree and `r` at every position. Depth frontiers bound
/// the region compared; fuel exhaustion inside it makes the answer
/// undefined unless a violation is found.
pub fn holds_globally(t1: &Tree, t2: &Tree, r: Relation) -> Option<bool> {
    Product::build(t1, t2, r).globally()
}

/// Same underlying tree and `r` from some level on.
pub fn holds_eventually(t1: &Tree, t2: &Tree, r: Relation) -> Eventually {
    Product::build(t1, t2, r).eventually()
}

/// Same underlying tree, annotations ignored.
pub fn same_shape(t1: &Tree, t2: &Tree) -> Option<bool> {
    Product::build(t1, t2, Relation::Le).shape_equal()
}
