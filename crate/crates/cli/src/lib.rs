//! The `lclock` command line. [`run`] takes the argument vector and a
//! reader for standard input (consulted only when a term is read from it)
//! and returns everything the process would print, so the binary is a thin
//! wrapper and tests drive the whole surface in-process.

use std::fmt::Write;
use std::io::Read;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use lambda_clocks::compare::{discriminate, Conclusion, DiscriminateConfig, ReductCertificate, Verdict};
use lambda_clocks::fpc::{self, CatalogArgs, PlotkinCertificate};
use lambda_clocks::repro::{self, IDS};
use lambda_clocks::term::parse_with;
use lambda_clocks::trees::{
    build_tree, check_simple, to_dot, to_json, to_text, Semantics, Simplicity, Tree, TreeConfig, UnknownReason,
};
use lambda_clocks::{DefinitionTable, Term};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// What a run printed, and its exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Parser, Debug)]
#[command(name = "lclock", version, about = "Clocked Böhm, Lévy-Longo and Berarducci trees")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Tree depth limit.
    #[arg(long, global = true, default_value_t = 12)]
    depth: usize,
    /// Head steps allowed per node.
    #[arg(long, global = true, default_value_t = 10_000)]
    fuel: usize,
    /// Record step positions instead of step counts.
    #[arg(long, global = true)]
    atomic: bool,
    /// bt, llt or bet (for compare and check-simple).
    #[arg(long, global = true, default_value = "bt")]
    semantics: Semantics,
    /// Definition file with `name = term;` entries, on top of the prelude.
    #[arg(long, global = true, value_name = "FILE")]
    defs: Option<String>,
    #[arg(long, global = true, conflicts_with = "dot")]
    json: bool,
    #[arg(long, global = true)]
    dot: bool,
    /// Emit the compact (cyclic) tree and fail unless it is closed.
    #[arg(long, global = true)]
    closed_only: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clocked Böhm tree. TERM `-` or absent reads standard input.
    Bt { term: Option<String> },
    /// Clocked Lévy-Longo tree.
    Llt { term: Option<String> },
    /// Clocked Berarducci tree.
    Bet { term: Option<String> },
    /// Try to show two terms inconvertible.
    Compare {
        left: String,
        right: String,
        /// Reducts of the left term explored by the general search.
        #[arg(long, default_value_t = 2000)]
        reduct_bound: usize,
        /// Extra reduct of the left term to read clocks from.
        #[arg(long = "left-reduct", value_name = "TERM")]
        left_reducts: Vec<String>,
        #[arg(long = "right-reduct", value_name = "TERM")]
        right_reducts: Vec<String>,
        /// Attach the balancedness certificate for Plotkin's A, with the
        /// given label variable.
        #[arg(long, value_name = "LABEL")]
        plotkin_label: Option<String>,
    },
    /// List the catalog, or build one entry.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Base fpc of a scheme.
        #[arg(long, value_name = "TERM")]
        y: Option<String>,
        /// Block sizes of a Scott composite, comma separated.
        #[arg(long, value_delimiter = ',')]
        ns: Vec<usize>,
        /// Parameter of dummy-scheme (repeatable).
        #[arg(long = "param", value_name = "TERM")]
        params: Vec<String>,
    },
    /// Recompute worked examples and diff them against the goldens.
    Repro { ids: Vec<String> },
    /// Decide whether head reduction along the tree uses only simple redexes.
    CheckSimple { term: Option<String> },
}

struct Ctx<'a> {
    opts: &'a Opts,
    defs: DefinitionTable,
    stdin: &'a mut dyn Read,
    out: Output,
}

impl Ctx<'_> {
    fn term(&mut self, src: Option<&str>) -> Result<Term, String> {
        let text;
        let src = match src {
            None | Some("-") => {
                let mut buf = String::new();
                self.stdin.read_to_string(&mut buf).map_err(|e| format!("cannot read standard input: {e}"))?;
                text = buf;
                text.trim()
            }
            Some(s) => s,
        };
        parse_with(src, &self.defs).map_err(|e| format!("{e}\n  in `{src}`"))
    }

    fn usage(&mut self, msg: impl AsRef<str>) {
        let _ = writeln!(self.out.stderr, "error: {}", msg.as_ref());
        self.out.code = EXIT_USAGE;
    }
}

/// Parse `argv` (including the program name) and execute it.
pub fn run(argv: &[String], stdin: &mut dyn Read) -> Output {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if code == 0 {
                Output { stdout: text, stderr: String::new(), code }
            } else {
                Output { stdout: String::new(), stderr: text, code: EXIT_USAGE }
            };
        }
    };
    let mut defs = DefinitionTable::prelude().clone();
    if let Some(path) = &cli.opts.defs {
        let loaded = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {path}: {e}"))
            .and_then(|text| defs.load(&text).map_err(|e| format!("{path}: {e}")));
        if let Err(msg) = loaded {
            return Output { stderr: format!("error: {msg}\n"), code: EXIT_USAGE, ..Output::default() };
        }
    }
    let mut ctx = Ctx { opts: &cli.opts, defs, stdin, out: Output::default() };
    match &cli.command {
        Command::Bt { term } => tree_cmd(&mut ctx, Semantics::Bohm, term.as_deref()),
        Command::Llt { term } => tree_cmd(&mut ctx, Semantics::LevyLongo, term.as_deref()),
        Command::Bet { term } => tree_cmd(&mut ctx, Semantics::Berarducci, term.as_deref()),
        Command::Compare { left, right, reduct_bound, left_reducts, right_reducts, plotkin_label } => {
            compare_cmd(&mut ctx, [left, right], *reduct_bound, [left_reducts, right_reducts], plotkin_label.as_deref())
        }
        Command::Catalog { name, n, y, ns, params } => catalog_cmd(&mut ctx, name.as_deref(), *n, y.as_deref(), ns, params),
        Command::Repro { ids } => repro_cmd(&mut ctx, ids),
        Command::CheckSimple { term } => check_simple_cmd(&mut ctx, term.as_deref()),
    }
    ctx.out
}

/// Run on a thread with a large stack: deep terms recurse deeply.
pub fn run_with_big_stack(argv: Vec<String>) -> Output {
    std::thread::Builder::new()
        .stack_size(512 << 20)
        .spawn(move || run(&argv, &mut std::io::stdin().lock()))
        .expect("spawn worker thread")
        .join()
        .unwrap_or_else(|_| Output { stderr: "error: internal failure\n".into(), code: EXIT_USAGE, ..Output::default() })
}

fn emit_tree(ctx: &mut Ctx, tree: &Tree) {
    let o = ctx.opts;
    if o.json {
        ctx.out.stdout = serde_json::to_string_pretty(&to_json(tree)).expect("json") + "\n";
    } else if o.dot {
        ctx.out.stdout = to_dot(tree);
    } else {
        ctx.out.stdout = to_text(tree);
    }
}

fn tree_cmd(ctx: &mut Ctx, semantics: Semantics, src: Option<&str>) {
    let t = match ctx.term(src) {
        Ok(t) => t,
        Err(e) => return ctx.usage(e),
    };
    let o = ctx.opts;
    let mut cfg = TreeConfig::new(semantics, o.depth, o.fuel).atomic(o.atomic);
    if o.closed_only {
        cfg = cfg.compact();
    }
    let tree = build_tree(&t, &cfg);
    emit_tree(ctx, &tree);
    if tree.has_unknown(UnknownReason::Fuel) {
        let _ = writeln!(ctx.out.stderr, "error: head reduction ran out of fuel ({}) below some node", o.fuel);
        ctx.out.code = EXIT_EXHAUSTED;
    } else if o.closed_only && !tree.is_closed() {
        let _ = writeln!(ctx.out.stderr, "error: no closed tree within depth {}", o.depth);
        ctx.out.code = EXIT_EXHAUSTED;
    }
}

fn verdict_text(v: &Verdict) -> String {
    let mut s = format!("{v}\n");
    let e = &v.evidence;
    let mut line = |k: &str, val: String| {
        let _ = writeln!(s, "  {k}: {val}");
    };
    if let Some(p) = &e.position {
        line("position", p.clone());
    }
    if let Some(l) = e.level {
        line("level", l.to_string());
    }
    if let Some(t) = &e.left_term {
        line("left", t.clone());
    }
    if let Some(t) = &e.right_term {
        line("right", t.clone());
    }
    if e.swapped {
        line("swapped", "true".into());
    }
    if let Some(x) = &e.applied_to {
        line("applied to", x.clone());
    }
    if let Some(n) = e.reducts_explored {
        line("reducts explored", n.to_string());
    }
    if let Some(c) = &e.certificate {
        line("certificate", c.clone());
    }
    if let Some(n) = &e.note {
        line("note", n.clone());
    }
    s
}

fn compare_cmd(
    ctx: &mut Ctx,
    terms: [&String; 2],
    reduct_bound: usize,
    reducts: [&Vec<String>; 2],
    plotkin_label: Option<&str>,
) {
    let parsed: Result<Vec<Term>, String> = terms.iter().map(|s| ctx.term(Some(s))).collect();
    let extra: Result<Vec<Vec<Term>>, String> =
        reducts.iter().map(|rs| rs.iter().map(|s| ctx.term(Some(s))).collect()).collect();
    let (parsed, extra) = match (parsed, extra) {
        (Ok(p), Ok(e)) => (p, e),
        (Err(e), _) | (_, Err(e)) => return ctx.usage(e),
    };
    let o = ctx.opts;
    let certificate = plotkin_label.map(|label| {
        Arc::new(PlotkinCertificate { label: label.into(), depth: 8, fuel: o.fuel }) as Arc<dyn ReductCertificate>
    });
    let cfg = DiscriminateConfig {
        semantics: o.semantics,
        depth: o.depth,
        fuel: o.fuel,
        atomic: o.atomic,
        reduct_bound,
        left_reducts: extra[0].clone(),
        right_reducts: extra[1].clone(),
        certificate,
        ..DiscriminateConfig::default()
    };
    let v = discriminate(&parsed[0], &parsed[1], &cfg);
    ctx.out.stdout = if o.json {
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    } else {
        verdict_text(&v)
    };
    ctx.out.code = match v.conclusion {
        Conclusion::Inconvertible => EXIT_OK,
        Conclusion::Inconclusive => EXIT_INCONCLUSIVE,
    };
}

fn catalog_cmd(ctx: &mut Ctx, name: Option<&str>, n: Option<usize>, y: Option<&str>, ns: &[usize], params: &[String]) {
    let Some(name) = name else {
        if ctx.opts.json {
            let list: Vec<_> = fpc::ENTRIES.iter().map(|(n, d)| serde_json::json!({ "name": n, "description": d })).collect();
            ctx.out.stdout = serde_json::to_string_pretty(&list).expect("json") + "\n";
        } else {
            let width = fpc::ENTRIES.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
            for (n, d) in fpc::ENTRIES {
                let _ = writeln!(ctx.out.stdout, "{n:width$}  {d}");
            }
        }
        return;
    };
    let y = match y.map(|s| ctx.term(Some(s))).transpose() {
        Ok(y) => y,
        Err(e) => return ctx.usage(e),
    };
    let terms: Result<Vec<Term>, String> = params.iter().map(|s| ctx.term(Some(s))).collect();
    let terms = match terms {
        Ok(t) => t,
        Err(e) => return ctx.usage(e),
    };
    let args = CatalogArgs { n, y, terms, ns: ns.to_vec() };
    match fpc::catalog(name, &args) {
        Ok(t) if ctx.opts.json => {
            ctx.out.stdout = serde_json::to_string_pretty(&serde_json::json!({ "name": name, "term": t.to_string() }))
                .expect("json")
                + "\n";
        }
        Ok(t) => ctx.out.stdout = format!("{t}\n"),
        Err(e) => ctx.usage(e.to_string()),
    }
}

fn repro_cmd(ctx: &mut Ctx, ids: &[String]) {
    let ids: Vec<String> = if ids.is_empty() { IDS.iter().map(|(id, _)| id.to_string()).collect() } else { ids.to_vec() };
    if let Some(bad) = ids.iter().find(|id| repro::golden(id).is_none()) {
        let known: Vec<&str> = IDS.iter().map(|(id, _)| *id).collect();
        return ctx.usage(format!("unknown reproduction id `{bad}` (known: {})", known.join(", ")));
    }
    // items are independent; run them side by side, report in the given order
    let reports: Vec<repro::ReproReport> = std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|id| s.spawn(move || repro::repro(id).expect("id checked above"))).collect();
        handles.into_iter().map(|h| h.join().expect("repro item panicked")).collect()
    });
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.id.as_str()).collect();
    if ctx.opts.json {
        let items: Vec<_> = reports
            .iter()
            .map(|r| serde_json::json!({ "id": r.id, "passed": r.passed(), "actual": r.actual, "diff": r.diff() }))
            .collect();
        ctx.out.stdout = serde_json::to_string_pretty(&items).expect("json") + "\n";
    } else {
        for r in &reports {
            let title = IDS.iter().find(|(id, _)| *id == r.id).map(|(_, t)| *t).unwrap_or("");
            let _ = writeln!(ctx.out.stdout, "## {}: {title}\n{}", r.id, r.actual.trim_end());
            if r.passed() {
                let _ = writeln!(ctx.out.stdout, "{}: matches golden\n", r.id);
            } else {
                let _ = writeln!(ctx.out.stdout, "{}: differs from golden\n{}", r.id, r.diff());
            }
        }
    }
    if !failed.is_empty() {
        let _ = writeln!(ctx.out.stderr, "error: differs from golden: {}", failed.join(", "));
        ctx.out.code = EXIT_EXHAUSTED;
    }
}

fn check_simple_cmd(ctx: &mut Ctx, src: Option<&str>) {
    let t = match ctx.term(src) {
        Ok(t) => t,
        Err(e) => return ctx.usage(e),
    };
    let o = ctx.opts;
    let s = check_simple(&t, o.semantics, o.depth, o.fuel);
    ctx.out.stdout = if o.json {
        serde_json::to_string_pretty(&s).expect("json") + "\n"
    } else {
        match &s {
            Simplicity::Simple => "simple\n".into(),
            Simplicity::NotSimple { node, path, step } => {
                format!("not simple: node {node} (path {path}), non-simple step at {step}\n")
            }
            Simplicity::Unknown { reason } => format!("unknown ({})\n", serde_json::to_value(reason).expect("json").as_str().unwrap_or("?")),
        }
    };
    if let Simplicity::Unknown { .. } = s {
        let _ = writeln!(ctx.out.stderr, "error: simplicity undetermined within depth {} and fuel {}", o.depth, o.fuel);
        ctx.out.code = EXIT_EXHAUSTED;
    }
}
