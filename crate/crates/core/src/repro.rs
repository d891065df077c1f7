//! Recomputation of the worked examples and figures, diffed against stored
//! goldens. Each golden holds the published values in the report format
//! below, so a mismatch shows exactly which number disagrees.

use std::fmt::Write;

use similar::TextDiff;

use crate::compare::{discriminate, subseq_le, DiscriminateConfig};
use crate::error::{Error, Result};
use crate::fpc::{
    bbb_scheme, bohm_seq, constant, gvector, label_plotkin_a, music_count, plotkin_b, plotkin_bprime,
    plotkin_nonzero_witness, scott_composite_reduct, scott_seq, spine_second_annotations, fpc_spine,
};
use crate::reduction::reducing_fpc_order;
use crate::term::{parse, Assoc, Dir, Position, Term};
use crate::trees::{atomic_bt, check_simple, clocked_bt, compact_cyclic, to_text, Semantics, Simplicity};

/// Known ids with a short title, in report order.
pub const IDS: &[(&str, &str)] = &[
    ("fig3", "clocked Böhm trees of Y0 f and Y1 f"),
    ("ex4-19", "clocks of the Böhm sequence, 2n"),
    ("ex4-20", "clocks of the Scott sequence reducts, 3n-2"),
    ("fig4", "clocked Böhm trees of A and B for Turing's fpc"),
    ("lemma5-3", "(12)*2 annotations of A and B'"),
    ("fig7", "compact clocked Böhm trees of E1 and E2"),
    ("fig8", "compact clocked Böhm tree of E3"),
    ("sec7-atomic", "atomic clocks of Y2 x and the reduct of U2 x"),
    ("ex7-4", "atomic clock of a Scott composite"),
    ("ex8-3", "clocked Lévy-Longo trees of PP and QQ"),
    ("thm3-8", "fpc-generating vectors"),
];

const DEPTH: usize = 12;
const FUEL: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproReport {
    pub id: String,
    pub actual: String,
    pub expected: String,
}

impl ReproReport {
    pub fn passed(&self) -> bool {
        self.actual == self.expected
    }

    /// Unified diff from the golden to the recomputed text; empty on a match.
    pub fn diff(&self) -> String {
        if self.passed() {
            return String::new();
        }
        TextDiff::from_lines(&self.expected, &self.actual)
            .unified_diff()
            .header(&format!("{}.golden", self.id), &format!("{}.actual", self.id))
            .to_string()
    }
}

pub fn golden(id: &str) -> Option<&'static str> {
    Some(match id {
        "fig3" => include_str!("../goldens/fig3.txt"),
        "ex4-19" => include_str!("../goldens/ex4-19.txt"),
        "ex4-20" => include_str!("../goldens/ex4-20.txt"),
        "fig4" => include_str!("../goldens/fig4.txt"),
        "lemma5-3" => include_str!("../goldens/lemma5-3.txt"),
        "fig7" => include_str!("../goldens/fig7.txt"),
        "fig8" => include_str!("../goldens/fig8.txt"),
        "sec7-atomic" => include_str!("../goldens/sec7-atomic.txt"),
        "ex7-4" => include_str!("../goldens/ex7-4.txt"),
        "ex8-3" => include_str!("../goldens/ex8-3.txt"),
        "thm3-8" => include_str!("../goldens/thm3-8.txt"),
        _ => return None,
    })
}

/// Normal spellings of the three enumerators, frozen to catch
/// transcription changes in the prelude.
pub const ENUMERATORS: &str = include_str!("../goldens/enumerators.txt");

pub fn enumerator_spellings() -> String {
    ["E1", "E2", "E3"].iter().map(|e| format!("{e} = {}\n", constant(e))).collect()
}

pub fn repro(id: &str) -> Result<ReproReport> {
    let expected = golden(id).ok_or_else(|| Error::UnknownRepro(id.into()))?;
    let actual = match id {
        "fig3" => fig3(),
        "ex4-19" => ex4_19(),
        "ex4-20" => ex4_20(),
        "fig4" => fig4(),
        "lemma5-3" => lemma5_3(),
        "fig7" => fig7(),
        "fig8" => fig8(),
        "sec7-atomic" => sec7_atomic(),
        "ex7-4" => ex7_4(),
        "ex8-3" => ex8_3(),
        "thm3-8" => thm3_8(),
        _ => unreachable!("every golden has a generator"),
    };
    Ok(ReproReport { id: id.into(), actual, expected: expected.into() })
}

fn term(s: &str) -> Term {
    parse(s).expect("built-in example parses")
}

fn with_x(t: Term) -> Term {
    Term::app(t, Term::free("x"))
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn fig3() -> String {
    let mut out = String::new();
    for y in ["Y0", "Y1"] {
        let tree = clocked_bt(&term(&format!("{y} f")), 6, FUEL);
        let _ = write!(out, "{y} f, depth 6\n{}\n", to_text(&tree));
    }
    out
}

fn ex4_19() -> String {
    let mut out = String::new();
    for n in 2..=6 {
        let t = with_x(bohm_seq(n));
        let tree = compact_cyclic(&t, Semantics::Bohm, false, DEPTH, FUEL);
        let simple = check_simple(&t, Semantics::Bohm, DEPTH, FUEL) == Simplicity::Simple;
        let _ = writeln!(
            out,
            "Y{n} x: annotations {} closed {} simple {simple}",
            list(&tree.annotations()),
            tree.is_closed()
        );
    }
    out
}

fn ex4_20() -> String {
    let mut out = String::new();
    let tt = Term::app(constant("theta"), constant("theta"));
    for n in 2..=6 {
        let reduct = Term::app(Term::iterate(&tt, n - 2, &constant("S"), Assoc::Left), constant("I"));
        let t = with_x(reduct);
        let tree = compact_cyclic(&t, Semantics::Bohm, false, DEPTH, FUEL);
        let simple = check_simple(&t, Semantics::Bohm, DEPTH, FUEL) == Simplicity::Simple;
        let _ = writeln!(
            out,
            "{t}: annotations {} closed {} simple {simple}",
            list(&tree.annotations()),
            tree.is_closed()
        );
    }
    out
}

fn fig4() -> String {
    let y = constant("Y1");
    let mut out = String::new();
    for (name, t) in [("A", label_plotkin_a(&y).term), ("B", plotkin_b(&y))] {
        let _ = write!(out, "{name}_Y1 = {t}, depth 4\n{}\n", to_text(&clocked_bt(&t, 4, FUEL)));
    }
    out
}

fn lemma5_3() -> String {
    let mut out = String::new();
    for y in ["Y0", "Y1"] {
        let yt = constant(y);
        let a = label_plotkin_a(&yt);
        let witness = plotkin_nonzero_witness(&a, 8, FUEL).map(|p| p.to_string()).unwrap_or_else(|| "none".into());
        let _ = writeln!(out, "A_{y}: first nonzero (12)*2 annotation at {witness}");
        let anns: Vec<String> = spine_second_annotations(&plotkin_bprime(&yt), 8, FUEL)
            .into_iter()
            .map(|(p, c)| format!("{p}:{}", c.map(|c| c.to_string()).unwrap_or_else(|| "?".into())))
            .collect();
        let _ = writeln!(out, "B'_{y}: (12)*2 annotations to depth 8: {}", anns.join(" "));
    }
    out
}

fn compact_text(name: &str) -> String {
    let tree = compact_cyclic(&constant(name), Semantics::Bohm, false, DEPTH, FUEL);
    format!("{name}: annotations {}\n{}\n", list(&tree.annotations()), to_text(&tree))
}

fn fig7() -> String {
    compact_text("E1") + &compact_text("E2")
}

fn fig8() -> String {
    compact_text("E3")
}

fn sec7_atomic() -> String {
    let mut out = String::new();
    let left = term("eta eta delta x");
    let right = term("theta theta I x");
    let clock = |t: &Term| atomic_bt(t, 3, FUEL).root().clock.clone().expect("root has a head normal form");
    let (cl, cr) = (clock(&left), clock(&right));
    for (t, c) in [(&left, &cl), (&right, &cr)] {
        let _ = writeln!(out, "{t}: {c}");
    }
    let (sl, sr) = (cl.steps().expect("atomic"), cr.steps().expect("atomic"));
    let _ = writeln!(out, "left subsequence of right: {}", subseq_le(sl, sr));
    let _ = writeln!(out, "right subsequence of left: {}", subseq_le(sr, sl));
    let cfg = DiscriminateConfig { atomic: true, ..DiscriminateConfig::default() };
    let v = discriminate(&constant("Y2"), &constant("U2"), &cfg);
    let _ = writeln!(out, "Y2 vs U2, atomic: {v}");
    let v = discriminate(&constant("Y2"), &constant("U2"), &DiscriminateConfig::default());
    let _ = writeln!(out, "Y2 vs U2, counting: {:?}", v.conclusion);
    out
}

fn ones(p: &Position) -> String {
    if p.dirs().iter().all(|d| *d == Dir::Fun) {
        format!("1^{}", p.len())
    } else {
        p.to_string()
    }
}

fn ex7_4() -> String {
    let t = with_x(scott_composite_reduct(&[2, 0, 1]));
    let tree = atomic_bt(&t, 2, FUEL);
    let steps = tree.root().clock.as_ref().and_then(|c| c.steps()).unwrap_or(&[]).to_vec();
    let rendered: Vec<String> = steps.iter().map(ones).collect();
    format!(
        "{t}\nroot clock ({} steps): ⟨{}⟩\nincrement-then-four-decrements windows: {}\n",
        steps.len(),
        rendered.join(","),
        music_count(&steps)
    )
}

fn ex8_3() -> String {
    let mut out = String::new();
    for t in ["(\\x y.x x) (\\x y.x x)", "(\\x y z.x x) (\\x y z.x x)"] {
        let t = term(t);
        let llt = compact_cyclic(&t, Semantics::LevyLongo, false, DEPTH, FUEL);
        let bt = compact_cyclic(&t, Semantics::Bohm, false, DEPTH, FUEL);
        let _ = write!(out, "{t}\nLévy-Longo:\n{}Böhm:\n{}\n", to_text(&llt), to_text(&bt));
    }
    out
}

fn thm3_8() -> String {
    let mut out = String::new();
    let y1 = constant("Y1");
    for n in 0..=4 {
        let order = reducing_fpc_order(&gvector(&y1, n), 1000).map(|k| k.to_string()).unwrap_or_else(|| "none".into());
        let _ = writeln!(out, "Y1 (SS) S^{n} I reduces in {order} steps");
    }
    for n in 0..=4 {
        let _ = writeln!(out, "U{n} spine to depth 10: {:?}", fpc_spine(&scott_seq(n), 10, FUEL));
    }
    let _ = writeln!(out, "B B B Y0 A^3 I I spine to depth 10: {:?}", fpc_spine(&bbb_scheme(&constant("Y0"), 3), 10, FUEL));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id() {
        assert_eq!(repro("fig9"), Err(Error::UnknownRepro("fig9".into())));
    }

    #[test]
    fn enumerators_are_frozen() {
        assert_eq!(enumerator_spellings(), ENUMERATORS);
    }

    #[test]
    fn diff_is_unified() {
        let r = ReproReport { id: "t".into(), actual: "a\nb\n".into(), expected: "a\nc\n".into() };
        let d = r.diff();
        assert!(d.starts_with("--- t.golden\n+++ t.actual\n"), "{d}");
        assert!(d.contains("-c\n+b\n"));
    }
}
