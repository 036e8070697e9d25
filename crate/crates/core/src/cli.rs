//! Command-line front end. `run` returns the process exit code:
//! 0 when the property holds, 1 with a `CE` line when it fails, 2 on bad input.

use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::betweenness::{
    check_betweenness_axiom, check_chain_rule, check_fan_rule, find_asteroidal_triple, interval,
    interval_table_from, IntervalTable,
};
use crate::convexity::{
    self, closure, convexity_witness, elements, enumerate_convex_sets, parse_set_system,
    union_counterexample_among, verify_convex_geometry, Mask, SetSystem, Verdict,
};
use crate::graph::{component_table, is_clique, is_connected, parse_graph};
use crate::gray::{self, bench_cat, canonical_order, check_sigma_split, decompose, generate_gray, GrayStep};
use crate::orders::{enumerate_at_free_orders, is_at_free_order, verify_antimatroid_language, LinearOrder};
use crate::{corpus, Error, Graph, Names, VertexSet};

#[derive(Parser, Debug)]
#[command(name = "atfree", version, about = "AT-free graphs, convex sets and Gray codes of AT-free orders")]
struct Cli {
    /// Input file (edge list or set system); stdin when absent.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Print the name-to-id map first, as `# name id` lines.
    #[arg(long, global = true)]
    names: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Is the graph AT-free? Prints an asteroidal triple if not.
    Check,
    /// Vertices between x and y.
    Interval { x: String, y: String },
    /// Convex hull of the given vertices.
    Closure { vertices: Vec<String> },
    /// Is the given vertex set convex?
    Convex { vertices: Vec<String> },
    /// All convex sets, one per line (`-` for the empty set).
    Family {
        #[arg(long, default_value_t = convexity::DEFAULT_FAMILY_CAP)]
        cap: usize,
    },
    /// Alignment, anti-exchange, augmentation and cycle checks.
    VerifyGeometry {
        /// Read a set system instead of a graph.
        #[arg(long)]
        set_system: bool,
        #[arg(long, default_value_t = convexity::DEFAULT_FAMILY_CAP)]
        cap: usize,
    },
    /// Is the family closed under unions?
    UnionClosed {
        #[arg(long)]
        set_system: bool,
        #[arg(long, default_value_t = convexity::DEFAULT_FAMILY_CAP)]
        cap: usize,
        /// Only test these two members, e.g. `--sets {y1,z2,u} {y2,z1,u}`.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        sets: Option<Vec<String>>,
    },
    /// All AT-free orders, lexicographic, one per line.
    Enumerate,
    /// The four antimatroid language axioms.
    VerifyAntimatroid,
    /// Pivot and the Omega / S / C split.
    Decompose,
    /// The canonical AT-free order.
    Canonical,
    /// Gray-code listing of all AT-free orders.
    Gray {
        #[arg(long, value_enum, default_value_t = Mode::Delta)]
        mode: Mode,
    },
    /// Time the delta stream.
    Bench {
        #[arg(long, default_value_t = 0)]
        warmup: usize,
    },
    /// Interval rules and the split check over the built-in graph catalog.
    Selftest {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Full,
    Delta,
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type Code = io::Result<i32>;

pub fn run(args: Vec<String>) -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = run_with(args, &mut out, &mut err);
    let _ = out.flush();
    code
}

pub fn run_with(args: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 2 { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { out, err };
    match dispatch(&cli, &mut ctx) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            2
        }
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            2
        }
    }
}

fn read_input(cli: &Cli) -> io::Result<String> {
    match &cli.input {
        Some(p) => std::fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Splits `{a,b}`, `a,b` or separate tokens into vertex tokens.
fn tokens(args: &[String]) -> Vec<String> {
    args.iter()
        .flat_map(|a| {
            a.trim_matches(|c| c == '{' || c == '}')
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect::<Vec<_>>()
        })
        .collect()
}

fn resolve(names: &Names, tok: &str) -> Result<usize, Error> {
    names.lookup(tok).ok_or_else(|| Error::Usage(format!("unknown vertex '{tok}'")))
}

fn vertex_set(g: &Graph, names: &Names, args: &[String]) -> Result<VertexSet, Error> {
    let mut s = VertexSet::new(g.n());
    for t in tokens(args) {
        s.insert(resolve(names, &t)?);
    }
    Ok(s)
}

fn join(names: &Names, vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| names.name(v)).collect::<Vec<_>>().join(" ")
}

fn set_str(names: &Names, m: Mask) -> String {
    names.set_to_string(elements(m))
}

struct Loaded {
    g: Graph,
    names: Names,
    tbl: IntervalTable,
}

fn load_graph(cli: &Cli, ctx: &mut Ctx) -> io::Result<Result<Loaded, Error>> {
    let text = read_input(cli)?;
    let (g, names) = match parse_graph(&text) {
        Ok(x) => x,
        Err(e) => return Ok(Err(e)),
    };
    if cli.names {
        for v in 0..g.n() {
            writeln!(ctx.out, "# {} {}", names.name(v), v)?;
        }
    }
    let tbl = interval_table_from(&g, &component_table(&g));
    Ok(Ok(Loaded { g, names, tbl }))
}

macro_rules! tryu {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Ok(Err(e)),
        }
    };
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> io::Result<Result<i32, Error>> {
    match &cli.cmd {
        Cmd::VerifyGeometry { set_system: true, .. } | Cmd::UnionClosed { set_system: true, .. } => {
            let text = read_input(cli)?;
            let s = tryu!(parse_set_system(&text));
            let names = Names::numeric(s.universe());
            return set_command(&cli.cmd, &s, &names, ctx);
        }
        Cmd::Selftest { max_n } => return selftest(*max_n, ctx).map(Ok),
        _ => {}
    }
    let l = tryu!(load_graph(cli, ctx)?);
    graph_command(&cli.cmd, &l, ctx)
}

fn graph_command(cmd: &Cmd, l: &Loaded, ctx: &mut Ctx) -> io::Result<Result<i32, Error>> {
    let (g, names, tbl) = (&l.g, &l.names, &l.tbl);
    let out = &mut *ctx.out;
    let code: Code = match cmd {
        Cmd::Check => {
            let ct = component_table(g);
            match find_asteroidal_triple(g, &ct) {
                None => writeln!(out, "OK").map(|_| 0),
                Some((x, y, z)) => writeln!(out, "CE {}", join(names, [x, y, z])).map(|_| 1),
            }
        }
        Cmd::Interval { x, y } => {
            let (x, y) = (tryu!(resolve(names, x)), tryu!(resolve(names, y)));
            let s = tryu!(interval(g, &component_table(g), x, y));
            writeln!(out, "{}", join(names, s.iter())).map(|_| 0)
        }
        Cmd::Closure { vertices } => {
            let u = tryu!(vertex_set(g, names, vertices));
            writeln!(out, "{}", join(names, closure(tbl, &u).iter())).map(|_| 0)
        }
        Cmd::Convex { vertices } => {
            let x = tryu!(vertex_set(g, names, vertices));
            match convexity_witness(tbl, &x) {
                None => writeln!(out, "OK").map(|_| 0),
                Some((a, b, z)) => writeln!(out, "CE {}", join(names, [a, b, z])).map(|_| 1),
            }
        }
        Cmd::Family { cap } => {
            let fam = tryu!(enumerate_convex_sets(tbl, *cap));
            for &m in fam.members() {
                if m == 0 {
                    writeln!(out, "-")?;
                } else {
                    writeln!(out, "{}", join(names, elements(m)))?;
                }
            }
            Ok(0)
        }
        Cmd::VerifyGeometry { cap, .. } | Cmd::UnionClosed { cap, .. } => {
            let fam = tryu!(enumerate_convex_sets(tbl, *cap));
            return set_command(cmd, &fam, names, ctx);
        }
        Cmd::Enumerate => {
            for o in tryu!(enumerate_at_free_orders(tbl)) {
                writeln!(out, "{}", join(names, o.perm().iter().copied()))?;
            }
            Ok(0)
        }
        Cmd::VerifyAntimatroid => {
            let r = tryu!(verify_antimatroid_language(tbl));
            let word = |w: &[usize]| format!("({})", join(names, w.iter().copied()));
            let mut line = |label: &str, ce: Option<String>| match ce {
                None => writeln!(out, "{label} OK"),
                Some(c) => writeln!(out, "{label} CE {c}"),
            };
            line("alphabet", r.alphabet.map(|v| names.name(v).to_string()))?;
            line("simple", r.simple.as_deref().map(word))?;
            line("hereditary", r.hereditary.as_deref().map(word))?;
            line("exchange", r.exchange.as_ref().map(|(s, t)| format!("{} {}", word(s), word(t))))?;
            Ok(if r.all_pass() { 0 } else { 1 })
        }
        Cmd::Decompose => {
            let d = tryu!(decompose(g, &component_table(g)));
            writeln!(out, "omega {}", names.name(d.omega))?;
            writeln!(out, "Omega {}", names.set_to_string(d.big_omega.iter()))?;
            writeln!(out, "S {}", names.set_to_string(d.s.iter()))?;
            writeln!(out, "C {}", names.set_to_string(d.c.iter())).map(|_| 0)
        }
        Cmd::Canonical => {
            let ct = component_table(g);
            if let Some((x, y, z)) = find_asteroidal_triple(g, &ct) {
                writeln!(out, "CE {}", join(names, [x, y, z])).map(|_| 1)
            } else {
                let o = tryu!(canonical_order(g, tbl));
                writeln!(out, "{}", join(names, o.perm().iter().copied())).map(|_| 0)
            }
        }
        Cmd::Gray { mode } => {
            let ct = component_table(g);
            if let Some((x, y, z)) = find_asteroidal_triple(g, &ct) {
                writeln!(out, "CE {}", join(names, [x, y, z])).map(|_| 1)
            } else {
                let mut s = tryu!(generate_gray(g));
                write_gray(&mut s, *mode, names, out).map(|_| 0)
            }
        }
        Cmd::Bench { warmup } => {
            let b = tryu!(bench_cat(g, *warmup));
            let mem = b.peak_mem_kb.map_or("na".to_string(), |k| k.to_string());
            writeln!(
                out,
                "orders={} ns_per_order={:.1} total_ns={} preprocessing_ns={} peak_mem_kb={} cyclic={}",
                b.orders, b.ns_per_order, b.total_ns, b.preprocessing_ns, mem, b.cyclic
            )
            .map(|_| 0)
        }
        Cmd::Selftest { .. } => unreachable!(),
    };
    code.map(Ok)
}

fn write_gray(s: &mut gray::GrayStream, mode: Mode, names: &Names, out: &mut dyn Write) -> io::Result<()> {
    while let Some(step) = s.next() {
        match (mode, step) {
            (Mode::Delta, GrayStep::Init(o)) => writeln!(out, "INIT {}", join(names, o.perm().iter().copied()))?,
            (Mode::Delta, GrayStep::Delta(d)) => match d.as_slice() {
                [j] => writeln!(out, "T {j}")?,
                [j, k] => writeln!(out, "T {j} {k}")?,
                _ => unreachable!(),
            },
            (Mode::Full, _) => writeln!(out, "{}", join(names, s.order().perm().iter().copied()))?,
        }
    }
    Ok(())
}

fn set_command(cmd: &Cmd, s: &SetSystem, names: &Names, ctx: &mut Ctx) -> io::Result<Result<i32, Error>> {
    let out = &mut *ctx.out;
    match cmd {
        Cmd::VerifyGeometry { .. } => {
            let r = verify_convex_geometry(s);
            if !r.alignment {
                writeln!(out, "alignment CE")?;
                return Ok(Err(Error::NotAlignment));
            }
            writeln!(out, "alignment OK")?;
            match &r.anti_exchange {
                Verdict::Fail((y, x, z)) => {
                    writeln!(out, "anti-exchange CE {} {} {}", set_str(names, *y), names.name(*x), names.name(*z))?
                }
                _ => writeln!(out, "anti-exchange OK")?,
            }
            match &r.ej_augment {
                Verdict::Fail(x) => writeln!(out, "augmentation CE {}", set_str(names, *x))?,
                _ => writeln!(out, "augmentation OK")?,
            }
            match &r.cycle_char {
                Verdict::Fail((x, ys)) => {
                    writeln!(out, "cycles CE {} {}", set_str(names, *x), join(names, ys.iter().copied()))?
                }
                _ => writeln!(out, "cycles OK")?,
            }
            Ok(Ok(if r.all_pass() { 0 } else { 1 }))
        }
        Cmd::UnionClosed { sets, .. } => {
            let candidates: Vec<Mask> = match sets {
                None => s.members().to_vec(),
                Some(two) => {
                    let mut c = Vec::new();
                    for a in two {
                        let mut m = 0;
                        for t in tokens(std::slice::from_ref(a)) {
                            m |= 1 << tryu!(resolve(names, &t));
                        }
                        if !s.contains(m) {
                            return Ok(Err(Error::Usage(format!("{a} is not a member of the family"))));
                        }
                        c.push(m);
                    }
                    c
                }
            };
            match union_counterexample_among(s, &candidates) {
                None => writeln!(out, "OK").map(|_| Ok(0)),
                Some((a, b)) => {
                    // keep the order the sets were given in
                    let (a, b) = if candidates.len() == 2 && candidates[0] == b { (b, a) } else { (a, b) };
                    writeln!(out, "CE {} {}", set_str(names, a), set_str(names, b)).map(|_| Ok(1))
                }
            }
        }
        _ => unreachable!(),
    }
}

/// Interval rules on every catalog graph, and the split check against
/// direct validation on all orders of the AT-free ones.
fn selftest(max_n: usize, ctx: &mut Ctx) -> Code {
    if max_n > 7 {
        writeln!(ctx.err, "error: selftest catalog is limited to 7 vertices")?;
        return Ok(2);
    }
    let out = &mut *ctx.out;
    let mut failures = 0;
    let graphs = corpus::connected_catalog(max_n);
    let mut at_free = 0;
    for g in &graphs {
        let ct = component_table(g);
        let tbl = interval_table_from(g, &ct);
        let has_at = find_asteroidal_triple(g, &ct).is_some();
        let axiom = check_betweenness_axiom(&tbl);
        if has_at {
            if axiom.is_none() {
                writeln!(out, "CE betweenness {g:?}")?;
                failures += 1;
            }
            continue;
        }
        at_free += 1;
        if axiom.is_some() || check_chain_rule(&tbl).is_some() || check_fan_rule(g, &tbl).is_some() {
            writeln!(out, "CE rules {g:?}")?;
            failures += 1;
        }
        if is_connected(g) && !is_clique(g, &g.vertices()) && g.n() <= 6 {
            let d = decompose(g, &ct).expect("connected non-clique");
            let mut perm: Vec<usize> = (0..g.n()).collect();
            let mut ok = true;
            for_each_perm(&mut perm, 0, &mut |p| {
                let o = LinearOrder::new(p.to_vec()).unwrap();
                ok &= check_sigma_split(&tbl, &d, &o) == is_at_free_order(&tbl, &o).is_none();
            });
            if !ok {
                writeln!(out, "CE split {g:?}")?;
                failures += 1;
            }
        }
    }
    writeln!(out, "graphs={} at_free={} failures={}", graphs.len(), at_free, failures)?;
    if failures == 0 {
        writeln!(out, "OK")?;
        Ok(0)
    } else {
        Ok(1)
    }
}

fn for_each_perm(xs: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        for_each_perm(xs, k + 1, f);
        xs.swap(k, i);
    }
}
