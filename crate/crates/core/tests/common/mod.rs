#![allow(dead_code)]

use lambda_clocks::fpc::constant;
use lambda_clocks::reduction::{contract_at, redex_positions};
use lambda_clocks::term::Term;
use lambda_clocks::trees::{Clock, NodeKind, Tree};
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngAlgorithm, RngSeed};

pub fn config(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        max_shrink_iters: 200,
        ..Config::default()
    }
}

/// Shape of a generated term. Indices are taken modulo the binders in
/// scope, so every shape denotes a term.
#[derive(Clone, Debug)]
pub enum Gen {
    Var(u8),
    Free(u8),
    Const(u8),
    Lam(u8, Box<Gen>),
    App(Box<Gen>, Box<Gen>),
}

const FREE: &[&str] = &["x", "y", "z", "f"];
const NAMES: &[&str] = &["a", "b", "x", "y", "w"];
pub const CONSTS: &[&str] = &["I", "K", "S", "B", "delta", "theta", "omega", "Y0", "Y1", "eta"];

impl Gen {
    pub fn term(&self) -> Term {
        self.build(0)
    }

    fn build(&self, depth: u32) -> Term {
        match self {
            Gen::Var(i) if depth > 0 => Term::bound(*i as u32 % depth),
            Gen::Var(i) | Gen::Free(i) => Term::free(FREE[*i as usize % FREE.len()]),
            Gen::Const(i) => constant(CONSTS[*i as usize % CONSTS.len()]),
            Gen::Lam(n, b) => Term::lam(NAMES[*n as usize % NAMES.len()], b.build(depth + 1)),
            Gen::App(f, a) => Term::app(f.build(depth), a.build(depth)),
        }
    }
}

pub fn gen(leaf_consts: bool) -> impl Strategy<Value = Gen> {
    let leaf = if leaf_consts {
        prop_oneof![
            3 => any::<u8>().prop_map(Gen::Var),
            2 => any::<u8>().prop_map(Gen::Free),
            2 => any::<u8>().prop_map(Gen::Const),
        ]
        .boxed()
    } else {
        prop_oneof![3 => any::<u8>().prop_map(Gen::Var), 1 => any::<u8>().prop_map(Gen::Free)].boxed()
    };
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            2 => (any::<u8>(), inner.clone()).prop_map(|(n, b)| Gen::Lam(n, Box::new(b))),
            3 => (inner.clone(), inner).prop_map(|(f, a)| Gen::App(Box::new(f), Box::new(a))),
        ]
    })
}

pub fn terms() -> impl Strategy<Value = Term> {
    gen(true).prop_map(|g| g.term())
}

/// Contract the redexes picked by `choices` one after another, stopping
/// early when no redex is left or the term outgrows `size_cap`. Returns the
/// reduct and the number of steps taken.
pub fn reduce_randomly(t: &Term, choices: &[u16], size_cap: usize) -> (Term, usize) {
    let mut cur = t.clone();
    let mut steps = 0;
    for &c in choices {
        let rs = redex_positions(&cur);
        if rs.is_empty() {
            break;
        }
        let next = contract_at(&cur, &rs[c as usize % rs.len()]).expect("redex position");
        if next.size() > size_cap {
            break;
        }
        cur = next;
        steps += 1;
    }
    (cur, steps)
}

/// Pairs of clocks at the paths where both trees have a resolved node.
pub fn common_clocks<'a>(t1: &'a Tree, t2: &'a Tree) -> Vec<(Vec<usize>, &'a Clock, &'a Clock)> {
    let mut out = Vec::new();
    for id in t1.preorder() {
        let n = t1.node(id);
        let Some(c1) = &n.clock else { continue };
        let Ok(id2) = t2.at_path(&n.path) else { continue };
        let n2 = t2.node(id2);
        if !n2.kind.is_resolved() || matches!(n2.kind, NodeKind::BackEdge { .. }) {
            continue;
        }
        if let Some(c2) = &n2.clock {
            out.push((n.path.clone(), c1, c2));
        }
    }
    out
}
pub mod suites;
