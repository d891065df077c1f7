//! Randomised suites shared by the `properties` and `soundness` tests and
//! the acceptance report. Each runs 500 cases from a fixed seed.

use std::sync::atomic::{AtomicUsize, Ordering};

use lambda_clocks::compare::{discriminate, subseq_le, Conclusion, DiscriminateConfig};
use lambda_clocks::fpc::{balanced_development, constant, is_balanced, label_plotkin_a, LabeledTerm};
use lambda_clocks::reduction::{gross_knuth, redex_positions};
use lambda_clocks::term::{parse, Term};
use lambda_clocks::trees::{atomic_bt, check_simple, clocked_bt, Semantics, Simplicity};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;

use super::{common_clocks, config, gen, reduce_randomly, terms};

pub type Outcome = Result<(), String>;

pub const CASES: u32 = 500;
const DEPTH: usize = 5;
const FUEL: usize = 2000;
const SIZE_CAP: usize = 400;

fn run<S: Strategy>(seed: u64, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome {
    TestRunner::new(config(CASES, seed)).run(&strategy, test).map_err(|e| e.to_string())
}

// Cases that compared at least one pair of clocks after a real reduction.
fn coverage(counter: &AtomicUsize, at_least: usize, what: &str) -> Outcome {
    let n = counter.load(Ordering::Relaxed);
    if n >= at_least {
        Ok(())
    } else {
        Err(format!("only {n} {what}"))
    }
}

pub fn clock_acceleration() -> Outcome {
    let informative = AtomicUsize::new(0);
    run(0x4_09, (terms(), vec(any::<u16>(), 1..6)), |(m, choices)| {
        let (n, steps) = reduce_randomly(&m, &choices, SIZE_CAP);
        let (tm, tn) = (clocked_bt(&m, DEPTH, FUEL), clocked_bt(&n, DEPTH, FUEL));
        let pairs = common_clocks(&tm, &tn);
        if steps > 0 && !pairs.is_empty() {
            informative.fetch_add(1, Ordering::Relaxed);
        }
        for (path, cm, cn) in pairs {
            prop_assert!(cn.count() <= cm.count(), "{m} ->> {n} at {path:?}: {cm} < {cn}");
        }
        Ok(())
    })?;
    coverage(&informative, 200, "informative cases")
}

pub fn atomic_acceleration() -> Outcome {
    let informative = AtomicUsize::new(0);
    run(0x4_09a, (terms(), vec(any::<u16>(), 1..6)), |(m, choices)| {
        let (n, steps) = reduce_randomly(&m, &choices, SIZE_CAP);
        let (tm, tn) = (atomic_bt(&m, DEPTH, FUEL), atomic_bt(&n, DEPTH, FUEL));
        let pairs = common_clocks(&tm, &tn);
        if steps > 0 && !pairs.is_empty() {
            informative.fetch_add(1, Ordering::Relaxed);
        }
        for (path, cm, cn) in pairs {
            let (sm, sn) = (cm.steps().expect("atomic"), cn.steps().expect("atomic"));
            prop_assert!(subseq_le(sn, sm), "{m} ->> {n} at {path:?}: {cn} not below {cm}");
        }
        Ok(())
    })?;
    coverage(&informative, 200, "informative cases")
}

// Terms known to be simple with closed infinite trees, mixed with random
// (mostly normalising) ones.
fn simple_candidates() -> impl Strategy<Value = Term> {
    let fixed = prop::sample::select(vec!["Y1 x", "eta eta delta x", "theta theta I x", "Y0 f", "E1", "E3", "Y1 (K x)"]);
    prop_oneof![
        1 => fixed.prop_map(|s| parse(s).expect("fixed term parses")),
        3 => terms(),
    ]
}

pub fn simple_invariance() -> Outcome {
    let informative = AtomicUsize::new(0);
    run(0x4_15, (simple_candidates(), vec(any::<u16>(), 1..6)), |(m, choices)| {
        // wide trees make the check expensive without adding coverage
        prop_assume!(clocked_bt(&m, 6, FUEL).nodes.len() <= 300);
        prop_assume!(check_simple(&m, Semantics::Bohm, 6, FUEL) == Simplicity::Simple);
        let (n, steps) = reduce_randomly(&m, &choices, SIZE_CAP);
        let (tm, tn) = (clocked_bt(&m, 6, FUEL), clocked_bt(&n, 6, FUEL));
        let pairs = common_clocks(&tm, &tn);
        if steps > 0 && !pairs.is_empty() {
            informative.fetch_add(1, Ordering::Relaxed);
        }
        let differing = pairs.iter().filter(|(_, a, b)| a.count() != b.count()).count();
        prop_assert!(differing <= steps, "{m} ->{steps} {n}: {differing} differing annotations");
        Ok(())
    })?;
    coverage(&informative, 200, "informative cases")
}

fn small_lists() -> impl Strategy<Value = Vec<u8>> {
    vec(0u8..3, 0..8)
}

fn subsequence_of(p: &[u8], mask: &[bool]) -> Vec<u8> {
    p.iter().zip(mask.iter().chain(std::iter::repeat(&true))).filter(|(_, k)| **k).map(|(x, _)| *x).collect()
}

pub fn subsequence_order() -> Outcome {
    let strat = (small_lists(), vec(any::<bool>(), 8), vec(any::<bool>(), 8), small_lists());
    run(0x5ab5, strat, |(p, m1, m2, other)| {
        prop_assert!(subseq_le(&p, &p), "reflexivity");
        let q = subsequence_of(&p, &m1);
        let r = subsequence_of(&q, &m2);
        prop_assert!(subseq_le(&q, &p) && subseq_le(&r, &q));
        prop_assert!(subseq_le(&r, &p), "transitivity");
        if subseq_le(&p, &q) {
            prop_assert_eq!(&p, &q, "antisymmetry");
        }
        if subseq_le(&p, &other) && subseq_le(&other, &p) {
            prop_assert_eq!(&p, &other, "antisymmetry");
        }
        Ok(())
    })
}

pub fn print_parse_roundtrip() -> Outcome {
    run(0x9a75e, gen(false).prop_map(|g| g.term()), |t| {
        let printed = t.to_string();
        let back = parse(&printed).map_err(|e| TestCaseError::fail(format!("{printed}: {e}")))?;
        prop_assert_eq!(&back, &t, "{}", printed);
        prop_assert_eq!(back.to_string(), printed);
        Ok(())
    })
}

/// Random balanced developments, and plain Gross–Knuth steps, of `A_Y`
/// for Curry's and Turing's fpc.
pub fn balance_preservation() -> Outcome {
    for y in ["Y0", "Y1"] {
        let mut t = label_plotkin_a(&constant(y));
        for i in 0..5 {
            t = LabeledTerm { term: gross_knuth(&t.term), label: t.label };
            if !is_balanced(&t) {
                return Err(format!("Gross–Knuth step {} of A_{y} is not balanced", i + 1));
            }
        }
    }
    let strat = (any::<bool>(), vec(vec(any::<bool>(), 64), 1..=5));
    run(0x5_06, strat, |(curry, rounds)| {
        let y = constant(if curry { "Y0" } else { "Y1" });
        let mut t = label_plotkin_a(&y);
        for picks in rounds {
            let redexes = redex_positions(&t.term);
            t = balanced_development(&t, |p| {
                let i = redexes.iter().position(|q| q == p).unwrap_or(0);
                picks[i % picks.len()]
            });
            prop_assert!(is_balanced(&t), "{}", t.term);
            if t.term.size() > 4000 {
                break;
            }
        }
        Ok(())
    })
}

// Seeds for the convertible corpus besides random terms: fixed points, the
// enumerators and Plotkin's terms, where the engine has something to find.
const SEEDS: &[&str] = &[
    "Y0 f", "Y1 f", "Y2 x", "U2 x", "E1", "E2", "E3", "Y1 (\\z.f z z)", "Y0 (\\x.Y0 (\\y.f x y))",
    "theta theta I x", "S K K x", "B Y0 S S I",
];

fn corpus_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        1 => prop::sample::select(SEEDS).prop_map(|s| parse(s).expect("seed parses")),
        2 => terms(),
    ]
}

/// Pairs of reducts of a common term are convertible, so none may come out
/// inconvertible. At least 200 of them must be distinct pairs.
pub fn verdict_soundness() -> Outcome {
    let cfg = DiscriminateConfig {
        depth: 6,
        fuel: 2000,
        candidate_steps: 8,
        reduct_bound: 30,
        size_cap: 300,
        ..DiscriminateConfig::default()
    };
    let distinct = AtomicUsize::new(0);
    let strat = (corpus_term(), vec(any::<u16>(), 0..6), vec(any::<u16>(), 0..6), any::<bool>());
    run(0x50_0d, strat, |(m, left, right, atomic)| {
        let (a, _) = reduce_randomly(&m, &left, 300);
        let (b, _) = reduce_randomly(&m, &right, 300);
        if a != b {
            distinct.fetch_add(1, Ordering::Relaxed);
        }
        let v = discriminate(&a, &b, &DiscriminateConfig { atomic, ..cfg.clone() });
        prop_assert_eq!(v.conclusion, Conclusion::Inconclusive, "{} vs {}: {}", a, b, v);
        Ok(())
    })?;
    coverage(&distinct, 200, "distinct convertible pairs")
}
