//! Fixed point combinators and the constructions built around them: the
//! Böhm and Scott sequences, generating schemes, Plotkin's terms, the
//! enumerators for combinatory logic and the Scott-vector composites.

mod cl;
mod plotkin;
mod scott;

pub use cl::{encode_cl, evaluator_check, CLTerm};
pub use plotkin::{
    balanced_development, is_balanced, label_plotkin_a, plotkin_a, plotkin_b, plotkin_bprime,
    plotkin_nonzero_witness, spine_second_annotations, LabeledTerm, PlotkinCertificate,
};
pub use scott::{music_count, scott_composite, scott_composite_reduct};

use crate::error::{Error, Result};
use crate::term::{Assoc, DefinitionTable, Name, Term};
use crate::trees::{clocked_bt, Head, NodeKind, UnknownReason};

/// A prelude constant.
pub fn constant(name: &str) -> Term {
    DefinitionTable::prelude().get(name).cloned().unwrap_or_else(|| panic!("`{name}` is in the prelude"))
}

/// Parameters of a catalog entry. Entries ignore the ones they do not use.
#[derive(Clone, Debug, Default)]
pub struct CatalogArgs {
    pub n: Option<usize>,
    /// The fpc a scheme starts from.
    pub y: Option<Term>,
    /// Dummy parameters.
    pub terms: Vec<Term>,
    /// Block sizes of a Scott composite.
    pub ns: Vec<usize>,
}

/// Catalog names with a one-line description.
pub const ENTRIES: &[(&str, &str)] = &[
    ("y0", "Curry's fpc λf.(λx.f(xx))(λx.f(xx))"),
    ("y1", "Turing's fpc ηη"),
    ("bohm-seq", "n-th member of the Böhm sequence, ηη δ^(n-1) (n=0 gives Curry's)"),
    ("scott-seq", "U_n = B Y0 S^n I"),
    ("gvector", "y (SS) S^n I"),
    ("bbb-scheme", "B B B y A^n I I with A = B S"),
    ("dummy-scheme", "y Q P1 .. Pn with Q = λy p1 .. pn x.x (y p1 .. pn x)"),
    ("delta", "δ = λab.b(ab)"),
    ("theta", "θ = λabc.bc(aabc)"),
    ("e1", "first enumerator for CL"),
    ("e2", "second enumerator for CL"),
    ("e3", "third enumerator for CL"),
    ("plotkin-a", "y (λz.f z z)"),
    ("plotkin-b", "y (λx.y (λy'.f x y'))"),
    ("plotkin-bprime", "y (λx.f x (f x (y (λy'.f x y'))))"),
    ("scott-composite", "Y0 G_n1 .. G_nk with G_n = [](SS) S^n I"),
    ("wfpc-flipflop", "Z with Z x = x (Z' x), Z' x = x (Z x)"),
];

fn need_n(entry: &str, args: &CatalogArgs) -> Result<usize> {
    args.n.ok_or_else(|| Error::BadParameter { entry: entry.into(), message: "needs a count n".into() })
}

fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
    Term::apps(head, args)
}

/// Left-iterated application `t a a .. a`.
fn left_iter(t: Term, a: &Term, n: usize) -> Term {
    Term::iterate(&t, n, a, Assoc::Left)
}

/// `y (SS) S^n I`, the Scott generating vector applied to `y`.
pub fn gvector(y: &Term, n: usize) -> Term {
    let ss = Term::app(constant("S"), constant("S"));
    Term::app(left_iter(Term::app(y.clone(), ss), &constant("S"), n), constant("I"))
}

pub fn bohm_seq(n: usize) -> Term {
    if n == 0 {
        return constant("Y0");
    }
    left_iter(constant("Y1"), &constant("delta"), n - 1)
}

pub fn scott_seq(n: usize) -> Term {
    let by = Term::app(constant("B"), constant("Y0"));
    Term::app(left_iter(by, &constant("S"), n), constant("I"))
}

pub fn bbb_scheme(y: &Term, n: usize) -> Term {
    let b = constant("B");
    let head = apps(b.clone(), [b.clone(), b, y.clone()]);
    apps(left_iter(head, &constant("A"), n), [constant("I"), constant("I")])
}

pub fn dummy_scheme(y: &Term, ps: &[Term]) -> Term {
    // Q = λy p1 .. pn x. x (y p1 .. pn x)
    let n = ps.len();
    let body = {
        let x = Term::bound(0);
        let ys = Term::bound(n as u32 + 1);
        let args = (0..n).map(|i| Term::bound((n - i) as u32)).chain([x.clone()]);
        Term::app(x, apps(ys, args))
    };
    let mut q = Term::lam("x", body);
    for i in (1..=n).rev() {
        q = Term::lam(&format!("p{i}"), q);
    }
    let q = Term::lam("y", q);
    apps(Term::app(y.clone(), q), ps.iter().cloned())
}

/// The flip-flop wfpc `Z = ηη(λz x.x((λy.y(z y)) x))`; `Z' = λy.y(Z y)`.
pub fn wfpc_flipflop() -> Term {
    let g = crate::term::parse("\\z x.x ((\\y.y (z y)) x)").expect("well-formed");
    Term::app(constant("Y1"), g)
}

/// Look up a catalog entry by name.
pub fn catalog(name: &str, args: &CatalogArgs) -> Result<Term> {
    let y = || args.y.clone();
    Ok(match name {
        "y0" => constant("Y0"),
        "y1" => constant("Y1"),
        "bohm-seq" => bohm_seq(need_n(name, args)?),
        "scott-seq" => scott_seq(need_n(name, args)?),
        "gvector" => gvector(&y().unwrap_or_else(|| constant("Y1")), need_n(name, args)?),
        "bbb-scheme" => bbb_scheme(&y().unwrap_or_else(|| constant("Y0")), need_n(name, args)?),
        "dummy-scheme" => dummy_scheme(&y().unwrap_or_else(|| constant("Y0")), &args.terms),
        "delta" => constant("delta"),
        "theta" => constant("theta"),
        "e1" => constant("E1"),
        "e2" => constant("E2"),
        "e3" => constant("E3"),
        "plotkin-a" => plotkin_a(&y().unwrap_or_else(|| constant("Y1"))),
        "plotkin-b" => plotkin_b(&y().unwrap_or_else(|| constant("Y1"))),
        "plotkin-bprime" => plotkin_bprime(&y().unwrap_or_else(|| constant("Y1"))),
        "scott-composite" => {
            if args.ns.is_empty() {
                return Err(Error::BadParameter { entry: name.into(), message: "needs at least one block size".into() });
            }
            scott_composite(&args.ns)
        }
        "wfpc-flipflop" => wfpc_flipflop(),
        _ => return Err(Error::UnknownEntry(name.into())),
    })
}

/// Whether `y x` has the Böhm tree `x (x (x ..))` down to `depth` levels.
/// Undefined when head reduction runs out of fuel first.
pub fn fpc_spine(y: &Term, depth: usize, fuel: usize) -> Option<bool> {
    let x: Name = Term::fresh_name("x", &[y]);
    let tree = clocked_bt(&Term::app(y.clone(), Term::free_name(x.clone())), depth, fuel);
    let mut id = crate::trees::Tree::ROOT;
    loop {
        let n = tree.node(id);
        match &n.kind {
            NodeKind::Hnf { binders, head: Head::Free(h) } if binders.is_empty() && *h == x && n.children.len() == 1 => {
                id = n.children[0];
            }
            NodeKind::Unknown(UnknownReason::Depth) => return Some(true),
            NodeKind::Unknown(UnknownReason::Fuel) => return None,
            _ => return Some(false),
        }
    }
}
