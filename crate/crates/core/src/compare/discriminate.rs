use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{Product, Relation};
use crate::reduction::{contract_at, leftmost_outermost_redex, normalize_with, one_step_reducts, NormalizeLimits};
use crate::term::{Term, TermKind};
use crate::trees::{build_tree, render_path, Semantics, Tree, TreeConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    Inconvertible,
    Inconclusive,
}

/// Why two terms are inconvertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Justification {
    /// The trees without clocks differ.
    #[serde(rename = "DifferentBT")]
    DifferentBt,
    /// Both sides have simple reducts whose clocks do not match eventually.
    SimpleEventualMismatch,
    /// One side has a simple reduct that does not improve the other side
    /// eventually.
    SimpleNoImprovement,
    /// No reduct of the left term improves the right one globally: the
    /// reducts were enumerated exhaustively, or a certificate covers them.
    GeneralNoReductImproves,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Justification::DifferentBt => "different trees",
            Justification::SimpleEventualMismatch => "simple terms that do not match eventually",
            Justification::SimpleNoImprovement => "simple term that does not improve eventually",
            Justification::GeneralNoReductImproves => "no reduct improves globally",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub depth: usize,
    /// Level from which the trees agree, when that was established.
    pub level: Option<usize>,
    pub left_closed: bool,
    pub right_closed: bool,
    /// Path (1-based child indices) of the witnessing node.
    pub position: Option<String>,
    /// The reducts the clocks were read from.
    pub left_term: Option<String>,
    pub right_term: Option<String>,
    /// The roles of the two terms were exchanged for the witness.
    pub swapped: bool,
    /// Fresh variable both terms were applied to.
    pub applied_to: Option<String>,
    pub reducts_explored: Option<usize>,
    pub certificate: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub conclusion: Conclusion,
    pub justification: Option<Justification>,
    pub evidence: Evidence,
}

impl Verdict {
    pub fn is_inconvertible(&self) -> bool {
        self.conclusion == Conclusion::Inconvertible
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.justification {
            Some(j) => write!(f, "{:?} ({j})", self.conclusion),
            None => write!(f, "{:?}", self.conclusion),
        }
    }
}

/// A structural invariant of the reducts of the left term, established
/// outside the engine, such that no term satisfying it improves the right
/// term globally. With such an argument a bounded enumeration is enough:
/// the engine checks the invariant and the failed improvement on every
/// reduct it visits.
pub trait ReductCertificate: Send + Sync {
    fn name(&self) -> &str;
    fn covers(&self, reduct: &Term) -> bool;
}

#[derive(Clone)]
pub struct DiscriminateConfig {
    pub semantics: Semantics,
    pub depth: usize,
    pub fuel: usize,
    pub atomic: bool,
    /// Leftmost reduction steps tried when looking for simple reducts.
    pub candidate_steps: usize,
    /// Steps allowed when normalising subterms of a candidate.
    pub inner_fuel: usize,
    /// Reducts enumerated for the global check.
    pub reduct_bound: usize,
    /// Reducts larger than this are not considered.
    pub size_cap: usize,
    pub left_reducts: Vec<Term>,
    pub right_reducts: Vec<Term>,
    pub certificate: Option<Arc<dyn ReductCertificate>>,
}

impl Default for DiscriminateConfig {
    fn default() -> DiscriminateConfig {
        DiscriminateConfig {
            semantics: Semantics::Bohm,
            depth: 12,
            fuel: 10_000,
            atomic: false,
            candidate_steps: 24,
            inner_fuel: 64,
            reduct_bound: 2_000,
            size_cap: 500,
            left_reducts: Vec::new(),
            right_reducts: Vec::new(),
            certificate: None,
        }
    }
}

impl fmt::Debug for DiscriminateConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiscriminateConfig")
            .field("semantics", &self.semantics)
            .field("depth", &self.depth)
            .field("fuel", &self.fuel)
            .field("atomic", &self.atomic)
            .field("candidate_steps", &self.candidate_steps)
            .field("inner_fuel", &self.inner_fuel)
            .field("reduct_bound", &self.reduct_bound)
            .field("size_cap", &self.size_cap)
            .field("certificate", &self.certificate.as_ref().map(|c| c.name().to_string()))
            .finish_non_exhaustive()
    }
}

impl DiscriminateConfig {
    fn tree_config(&self) -> TreeConfig {
        let mut cfg = TreeConfig::new(self.semantics, self.depth, self.fuel).atomic(self.atomic).compact();
        cfg.classify = true;
        cfg
    }
}

struct Candidate {
    term: Term,
    tree: Tree,
    simple: bool,
}

impl Candidate {
    fn new(term: Term, cfg: &TreeConfig) -> Candidate {
        let tree = build_tree(&term, cfg);
        let closed = tree.is_closed();
        let simple = closed
            && tree.nodes.iter().all(|n| !n.kind.is_resolved() || n.nonsimple_step.is_none());
        Candidate { term, tree, simple }
    }

    fn closed(&self) -> bool {
        self.tree.is_closed()
    }
}

// Replace every maximal subterm that normalises within `fuel` steps by its
// normal form.
fn inner_normalize(t: &Term, limits: &NormalizeLimits) -> Term {
    if t.is_normal() {
        return t.clone();
    }
    if let Some(nf) = normalize_with(t, limits).normal_form() {
        return nf.clone();
    }
    match t.kind() {
        TermKind::Lam(x, b) => Term::lam_named(x.clone(), inner_normalize(b, limits)),
        TermKind::App(f, a) => Term::app(inner_normalize(f, limits), inner_normalize(a, limits)),
        _ => t.clone(),
    }
}

// The term, its leftmost reducts with their inner normal forms, and the
// user's reducts, without repeats.
fn candidates(t: &Term, extra: &[Term], cfg: &DiscriminateConfig) -> Vec<Candidate> {
    let tc = cfg.tree_config();
    let limits = NormalizeLimits { fuel: cfg.inner_fuel, max_size: cfg.size_cap, ..NormalizeLimits::default() };
    let mut seen = HashSet::new();
    let mut terms = Vec::new();
    let mut keep = |x: Term, terms: &mut Vec<Term>| {
        if x.size() <= cfg.size_cap && seen.insert(x.clone()) {
            terms.push(x);
        }
    };
    let mut cur = t.clone();
    for _ in 0..=cfg.candidate_steps {
        if cur.size() > cfg.size_cap {
            break;
        }
        keep(cur.clone(), &mut terms);
        keep(inner_normalize(&cur, &limits), &mut terms);
        let Some(p) = leftmost_outermost_redex(&cur) else { break };
        cur = contract_at(&cur, &p).expect("leftmost redex position");
    }
    for e in extra {
        keep(e.clone(), &mut terms);
    }
    terms.into_iter().map(|term| Candidate::new(term, &tc)).collect()
}

/// Try to show `m ≠β n` from their clocked trees. Every `Inconvertible`
/// verdict rests on exact information: a difference at nodes both trees
/// resolved, or clock comparisons on closed trees of simple terms, or a
/// failed global improvement for every reduct of `m`.
pub fn discriminate(m: &Term, n: &Term, cfg: &DiscriminateConfig) -> Verdict {
    let base = Evidence { depth: cfg.depth, ..Evidence::default() };
    let tc = cfg.tree_config();
    let (tm, tn) = (build_tree(m, &tc), build_tree(n, &tc));
    let shapes = Product::build(&tm, &tn, Relation::Eq);
    let closed = (tm.is_closed(), tn.is_closed());
    if let Some(d) = shapes.first_difference() {
        return Verdict {
            conclusion: Conclusion::Inconvertible,
            justification: Some(Justification::DifferentBt),
            evidence: Evidence {
                left_closed: closed.0,
                right_closed: closed.1,
                position: Some(render_path(&d.path)),
                ..base
            },
        };
    }

    let cm = candidates(m, &cfg.left_reducts, cfg);
    let cn = candidates(n, &cfg.right_reducts, cfg);
    if let Some(v) = clock_witness(&cm, &cn, cfg, &base) {
        return v;
    }
    // m x ≠β n x implies m ≠β n, and applied terms often have simpler reducts
    let x = Term::fresh_name("x", &[m, n]);
    let (mx, nx) = (Term::app(m.clone(), Term::free_name(x.clone())), Term::app(n.clone(), Term::free_name(x.clone())));
    let (cmx, cnx) = (candidates(&mx, &[], cfg), candidates(&nx, &[], cfg));
    if let Some(mut v) = clock_witness(&cmx, &cnx, cfg, &base) {
        v.evidence.applied_to = Some(x.to_string());
        return v;
    }

    let improvement = Relation::improvement(cfg.atomic);
    let summary = Evidence {
        left_closed: closed.0,
        right_closed: closed.1,
        note: Some(format!(
            "{} of {} left and {} of {} right candidates simple",
            cm.iter().filter(|c| c.simple).count(),
            cm.len(),
            cn.iter().filter(|c| c.simple).count(),
            cn.len()
        )),
        ..base
    };
    general_search(m, &tn, cfg, improvement, summary)
}

// Clock comparisons between simple candidates, or a simple candidate and a
// closed one.
fn clock_witness(cm: &[Candidate], cn: &[Candidate], cfg: &DiscriminateConfig, base: &Evidence) -> Option<Verdict> {
    let witness = |a: &Candidate, b: &Candidate, r: Relation, swapped| -> Option<Evidence> {
        let p = Product::build(&a.tree, &b.tree, r);
        let e = p.eventually();
        (e.certified && e.holds == Some(false)).then(|| Evidence {
            left_closed: true,
            right_closed: true,
            position: p.first_violation().map(|s| render_path(&s.path)),
            left_term: Some(a.term.to_string()),
            right_term: Some(b.term.to_string()),
            swapped,
            ..base.clone()
        })
    };
    let found = |justification, evidence| Verdict {
        conclusion: Conclusion::Inconvertible,
        justification: Some(justification),
        evidence,
    };
    let matching = Relation::matching(cfg.atomic);
    for a in cm.iter().filter(|c| c.simple) {
        for b in cn.iter().filter(|c| c.simple) {
            if let Some(e) = witness(a, b, matching, false) {
                return Some(found(Justification::SimpleEventualMismatch, e));
            }
        }
    }
    let improvement = Relation::improvement(cfg.atomic);
    for (xs, ys, swapped) in [(cm, cn, false), (cn, cm, true)] {
        for a in xs.iter().filter(|c| c.simple) {
            for b in ys.iter().filter(|c| c.closed()) {
                if let Some(e) = witness(a, b, improvement, swapped) {
                    return Some(found(Justification::SimpleNoImprovement, e));
                }
            }
        }
    }
    None
}

// Enumerate reducts of `m` breadth-first. Each must fail to improve `tn`
// globally; the search then certifies inconvertibility if it ran out of
// reducts, or if the certificate covers every reduct it saw.
fn general_search(m: &Term, tn: &Tree, cfg: &DiscriminateConfig, r: Relation, mut evidence: Evidence) -> Verdict {
    let inconclusive = |evidence| Verdict { conclusion: Conclusion::Inconclusive, justification: None, evidence };
    let tc = {
        let mut c = cfg.tree_config();
        c.classify = false;
        c
    };
    let mut seen = HashSet::from([m.clone()]);
    let mut queue = VecDeque::from([m.clone()]);
    let mut explored = 0;
    let mut pruned = false;
    let mut covered = cfg.certificate.is_some();
    while let Some(t) = queue.pop_front() {
        if explored >= cfg.reduct_bound {
            pruned = true;
            break;
        }
        explored += 1;
        evidence.reducts_explored = Some(explored);
        let tree = build_tree(&t, &tc);
        let p = Product::build(&tree, tn, r);
        if p.globally() != Some(false) {
            evidence.left_term = Some(t.to_string());
            evidence.note = Some(match p.globally() {
                Some(true) => "a reduct improves globally".into(),
                _ => "a reduct could not be compared".into(),
            });
            return inconclusive(evidence);
        }
        if let Some(c) = &cfg.certificate {
            covered &= c.covers(&t);
        }
        for (_, s) in one_step_reducts(&t) {
            if s.size() > cfg.size_cap {
                pruned = true;
            } else if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let justified = if !pruned {
        evidence.certificate = Some("exhaustive".into());
        true
    } else if covered {
        evidence.certificate = cfg.certificate.as_ref().map(|c| c.name().to_string());
        true
    } else {
        false
    };
    if justified {
        evidence.note = None;
        Verdict { conclusion: Conclusion::Inconvertible, justification: Some(Justification::GeneralNoReductImproves), evidence }
    } else {
        inconclusive(evidence)
    }
}
