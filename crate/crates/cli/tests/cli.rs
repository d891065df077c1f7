use std::io::Write;
use std::process::{Command, Stdio};

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn lclock(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lclock"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

#[test]
fn atomic_tree_of_y2() {
    let r = lclock(&["bt", "--depth", "4", "--atomic", "Y2 x"], "");
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.matches("[⟨11,1,1,e⟩] x").count(), 4, "{}", r.stdout);
    assert!(r.stderr.is_empty());
}

#[test]
fn term_from_stdin() {
    let r = lclock(&["bt", "--closed-only"], "Y1 f\n");
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "#0 [2] f\n└─ ↺ #0 (phase e, period 2)\n");
    let r = lclock(&["bt", "-"], "S K K");
    assert_eq!(r.stdout, "[4] λz.z\n");
}

#[test]
fn compare_exit_codes() {
    let r = lclock(&["compare", "Y0", "Y1"], "");
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("Inconvertible"), "{}", r.stdout);
    let r = lclock(&["compare", "--reduct-bound", "20", "Y0 f", "f (Y0 f)"], "");
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("Inconclusive"));
}

#[test]
fn json_is_byte_stable() {
    let args = ["bt", "--json", "--closed-only", "E3"];
    let a = lclock(&args, "");
    let b = lclock(&args, "");
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["closed"], true);
    assert_eq!(v["root"]["clock"], 0);
    let c = lclock(&["compare", "--json", "E1", "E3"], "");
    let v: serde_json::Value = serde_json::from_str(&c.stdout).unwrap();
    assert_eq!(v["conclusion"], "Inconvertible");
}

#[test]
fn dot_draws_back_edges_dashed() {
    let r = lclock(&["llt", "--dot", "--closed-only", "(\\x y z.x x) (\\x y z.x x)"], "");
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("digraph"));
    assert!(r.stdout.contains("n1 -> n0 [style=dashed, label=\"(e, 00)\"];"), "{}", r.stdout);
}

#[test]
fn exhaustion_is_exit_3() {
    let r = lclock(&["bt", "--closed-only", "--depth", "8", "\\x.x (x (x (x x)))"], "");
    assert_eq!(r.code, 0, "finite trees are closed");
    let r = lclock(&["bt", "--closed-only", "--depth", "3", "Y1 (\\f x.x (f (x x)))"], "");
    assert_eq!(r.code, 3, "{}", r.stdout);
    assert!(r.stderr.contains("no closed tree"));
    let r = lclock(&["bet", "--fuel", "100", "delta delta (delta delta)"], "");
    assert_eq!(r.code, 3);
    assert_eq!(r.stdout, "? (fuel)\n");
}

#[test]
fn usage_errors_are_exit_2() {
    for args in [&["bt", "(\\x.x"][..], &["compare", "Y0"], &["catalog", "nope"], &["bt", "Foo"], &["bt", "--depth", "x", "I"]] {
        let r = lclock(args, "");
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stdout.is_empty());
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn definitions_file() {
    let path = std::env::temp_dir().join(format!("lclock-defs-{}.lam", std::process::id()));
    std::fs::write(&path, "# two combinators\nW = \\x y.x y y;\nWW = W W;\n").unwrap();
    let p = path.to_str().unwrap();
    let r = lclock(&["--defs", p, "bt", "W K x"], "");
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "[4] x\n");
    std::fs::write(&path, "Z = Z;\n").unwrap();
    let r = lclock(&["--defs", p, "bt", "I"], "");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("refers to itself"), "{}", r.stderr);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn catalog_and_check_simple() {
    let r = lclock(&["catalog"], "");
    assert_eq!(r.stdout.lines().count(), 17);
    let r = lclock(&["catalog", "bohm-seq", "--n", "2"], "");
    assert_eq!(r.stdout, "(\\x f.f (x x f)) (\\x f.f (x x f)) (\\a b.b (a b))\n");
    let r = lclock(&["check-simple", "Y2 x"], "");
    assert_eq!((r.code, r.stdout.as_str()), (0, "simple\n"));
    let r = lclock(&["check-simple", "U2 x"], "");
    assert!(r.stdout.starts_with("not simple"));
}

#[test]
fn repro_items() {
    let r = lclock(&["repro", "fig3"], "");
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("fig3: matches golden"));
    assert_eq!(r.stdout.matches("[1] f").count(), 5);
    let r = lclock(&["repro", "fig7"], "");
    assert_eq!(r.code, 3);
    assert!(r.stdout.contains("+E2: annotations 2,0,0,6,3"));
    assert!(r.stderr.contains("fig7"));
}
