//! The `fillin` command line.
//!
//! Exit codes: 0 for YES or success, 1 for NO, 2 for usage and parse
//! errors, 3 when a result fails its final verification.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use fillin::chordal::{find_chordless_cycle, is_chordal, minimal_triangulation};
use fillin::dp::FillSolution;
use fillin::graph::{EdgePair, Graph, VertexSet};
use fillin::io::{parse_input, Input, ParseError};
use fillin::kernel::{kernelize, KernelStatus, SandwichInstance};
use fillin::oracle::oracle_mfi;
use fillin::pmc::enumerate_vital_pmcs;
use fillin::reductions::{colored_to_sandwich, is_chain_graph, solve_chain};
use fillin::solver::{solve_sandwich_with_stats, solve_with_stats, SolveError, SolveStats};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser)]
#[command(
    name = "fillin",
    version,
    about = "Exact minimum fill-in and chordal completion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Fill budget.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
    /// Input file, or `-` for stdin.
    #[arg(long, default_value = "-")]
    input: String,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Emit {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum fill-in within budget k.
    Solve(Common),
    /// Chordal sandwich; allowed pairs follow a `---` line.
    Sandwich(Common),
    /// Chain completion; `left <v>...` lines follow a `---` line.
    Chain(Common),
    /// Colored triangulation; `c <vertex> <color>` lines follow a `---` line.
    Colored(Common),
    /// Print the kernel of the fill-in instance.
    Kernelize(Common),
    /// Print the vital potential maximal cliques for budget k.
    Pmcs(Common),
    /// Exit 0 if the graph is chordal, 1 otherwise.
    CheckChordal(Common),
    /// A minimal triangulation (not necessarily minimum).
    Triangulate(Common),
    /// Brute-force minimum fill-in, for small graphs.
    Oracle(Common),
    /// Compare the solver against the oracle on random graphs.
    Selftest {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
    },
}

/// The report of the decision commands. Field names are fixed.
#[derive(Serialize, Debug)]
pub struct RunReport {
    pub answer: &'static str,
    pub k: usize,
    pub fill: Vec<[usize; 2]>,
    pub stats: Stats,
}

#[derive(Serialize, Debug, Default)]
pub struct Stats {
    pub kernel_vertices: usize,
    pub kernel_forced: usize,
    pub leaves: usize,
    pub pmcs: usize,
    pub dp_states: usize,
    pub elapsed_ms: u128,
}

impl Stats {
    fn from_solver(s: &SolveStats, start: Instant) -> Self {
        Stats {
            kernel_vertices: s.kernel_vertices,
            kernel_forced: s.kernel_forced,
            leaves: s.leaves,
            pmcs: s.pmcs,
            dp_states: s.dp_states,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure::Verify(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

struct Ctx<'a> {
    out: &'a mut dyn Write,
    emit: Emit,
    base: usize,
}

impl Ctx<'_> {
    fn label(&self, v: usize) -> usize {
        v + self.base
    }

    fn pair(&self, e: &EdgePair) -> [usize; 2] {
        [self.label(e.u), self.label(e.v)]
    }

    fn set(&self, s: &VertexSet) -> Vec<usize> {
        s.iter().map(|v| self.label(v)).collect()
    }

    fn json<T: Serialize>(&mut self, value: &T) -> std::io::Result<()> {
        serde_json::to_writer(&mut *self.out, value)?;
        writeln!(self.out)
    }

    fn text(&mut self, s: &str) -> std::io::Result<()> {
        write!(self.out, "{s}")
    }
}

/// Runs the command line on `args` (program name first) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdin, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_VERIFY
        }
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    Ok(text)
}

fn need_k(c: &Common) -> Result<usize, Failure> {
    c.k.ok_or_else(|| Failure::Usage("--k is required".into()))
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let (c, kind) = match command {
        Command::Selftest { count, seed, max_n } => return selftest(count, seed, max_n, out),
        Command::Solve(c) => (c, "solve"),
        Command::Sandwich(c) => (c, "sandwich"),
        Command::Chain(c) => (c, "chain"),
        Command::Colored(c) => (c, "colored"),
        Command::Kernelize(c) => (c, "kernelize"),
        Command::Pmcs(c) => (c, "pmcs"),
        Command::CheckChordal(c) => (c, "check-chordal"),
        Command::Triangulate(c) => (c, "triangulate"),
        Command::Oracle(c) => (c, "oracle"),
    };
    let text = read_input(&c.input, stdin)?;
    let input = parse_input(&text)?;
    let mut ctx = Ctx {
        out,
        emit: c.emit,
        base: input.format.base(),
    };
    let io = |e: std::io::Error| Failure::Usage(e.to_string());
    match kind {
        "solve" | "sandwich" | "chain" | "colored" => decide(kind, &c, &input, &mut ctx),
        "kernelize" => kernel_cmd(&c, &input, &mut ctx).map_err(io),
        "pmcs" => {
            let k = need_k(&c)?;
            pmcs_cmd(k, &input.graph, &mut ctx).map_err(io)
        }
        "check-chordal" => chordal_cmd(&input.graph, &mut ctx).map_err(io),
        "triangulate" => triangulate_cmd(&input.graph, &mut ctx).map_err(io),
        _ => oracle_cmd(c.k, &input.graph, &mut ctx),
    }
}

fn decide(kind: &str, c: &Common, input: &Input<'_>, ctx: &mut Ctx<'_>) -> Outcome {
    let k = need_k(c)?;
    let start = Instant::now();
    let g = &input.graph;
    let (fill, stats): (Option<BTreeSet<EdgePair>>, Stats) = match kind {
        "solve" => {
            let (sol, s) = solve_with_stats(g, k)?;
            (sol.map(|s| s.fill), Stats::from_solver(&s, start))
        }
        "sandwich" => {
            let inst = SandwichInstance::new(g.clone(), input.allowed_pairs()?, k)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let (sol, s) = solve_sandwich_with_stats(&inst)?;
            check_subset(sol.as_ref(), &inst.allowed)?;
            (sol.map(|s| s.fill), Stats::from_solver(&s, start))
        }
        "colored" => {
            let col = input.coloring()?;
            let inst =
                colored_to_sandwich(g, &col, k).map_err(|e| Failure::Usage(e.to_string()))?;
            let (sol, s) = solve_sandwich_with_stats(&inst)?;
            if let Some(sol) = &sol {
                if sol.fill.iter().any(|e| col.color(e.u) == col.color(e.v)) {
                    return Err(Failure::Verify("monochromatic fill edge".into()));
                }
            }
            (sol.map(|s| s.fill), Stats::from_solver(&s, start))
        }
        _ => {
            let b = input.bipartite()?;
            let fill = solve_chain(&b, k)?;
            if let Some(f) = &fill {
                if !is_chain_graph(&b.with_edges(f.iter().copied())) {
                    return Err(Failure::Verify("result is not a chain graph".into()));
                }
            }
            let stats = Stats {
                elapsed_ms: start.elapsed().as_millis(),
                ..Stats::default()
            };
            (fill, stats)
        }
    };

    if let Some(f) = &fill {
        if f.len() > k || f.iter().any(|e| g.has_edge(e.u, e.v)) {
            return Err(Failure::Verify(
                "fill is not a set of at most k non-edges".into(),
            ));
        }
        // chain completions are not chordal completions of the bipartite graph
        if kind != "chain" && !is_chordal(&g.with_edges(f.iter().copied())) {
            return Err(Failure::Verify("graph plus fill is not chordal".into()));
        }
    }
    let report = RunReport {
        answer: if fill.is_some() { "YES" } else { "NO" },
        k,
        fill: fill.iter().flatten().map(|e| ctx.pair(e)).collect(),
        stats,
    };
    let io = |e: std::io::Error| Failure::Usage(e.to_string());
    match ctx.emit {
        Emit::Json => ctx.json(&report).map_err(io)?,
        Emit::Text => {
            let mut s = format!("{}\n", report.answer);
            for [u, v] in &report.fill {
                s.push_str(&format!("{u} {v}\n"));
            }
            ctx.text(&s).map_err(io)?;
        }
    }
    Ok(if fill.is_some() { EXIT_YES } else { EXIT_NO })
}

fn check_subset(sol: Option<&FillSolution>, allowed: &BTreeSet<EdgePair>) -> Result<(), Failure> {
    match sol {
        Some(s) if !s.fill.is_subset(allowed) => {
            Err(Failure::Verify("fill leaves the allowed set".into()))
        }
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct KernelReport {
    status: &'static str,
    k: usize,
    vertices: Vec<usize>,
    edges: Vec<[usize; 2]>,
    forced: Vec<[usize; 2]>,
}

fn kernel_cmd(c: &Common, input: &Input<'_>, ctx: &mut Ctx<'_>) -> Result<i32, std::io::Error> {
    let Some(k) = c.k else {
        return Err(std::io::Error::other("--k is required"));
    };
    let g = &input.graph;
    let inst = match &input.section {
        Some(_) => match input.allowed_pairs() {
            Ok(a) => SandwichInstance::new(g.clone(), a, k).map_err(std::io::Error::other)?,
            Err(e) => return Err(std::io::Error::other(e)),
        },
        None => SandwichInstance::unrestricted(g.clone(), k),
    };
    let r = kernelize(&inst);
    let (status, code) = match r.status {
        KernelStatus::Reduced => ("REDUCED", EXIT_YES),
        KernelStatus::TrivialYes => ("TRIVIAL_YES", EXIT_YES),
        KernelStatus::No => ("NO", EXIT_NO),
    };
    let map = |v: usize| ctx.label(r.vertex_map[v]);
    let (vertices, edges, kk) = match &r.instance {
        Some(ki) => (
            (0..ki.graph.n()).map(map).collect(),
            ki.graph.edges().map(|e| [map(e.u), map(e.v)]).collect(),
            ki.k,
        ),
        None => (Vec::new(), Vec::new(), k),
    };
    let report = KernelReport {
        status,
        k: kk,
        vertices,
        edges,
        forced: r.forced_fill.iter().map(|e| ctx.pair(e)).collect(),
    };
    match ctx.emit {
        Emit::Json => ctx.json(&report)?,
        Emit::Text => {
            let mut s = format!("{} k={}\n", report.status, report.k);
            s.push_str(&format!(
                "vertices {}\n",
                report
                    .vertices
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            for [u, v] in &report.edges {
                s.push_str(&format!("{u} {v}\n"));
            }
            for [u, v] in &report.forced {
                s.push_str(&format!("forced {u} {v}\n"));
            }
            ctx.text(&s)?;
        }
    }
    Ok(code)
}

fn pmcs_cmd(k: usize, g: &Graph, ctx: &mut Ctx<'_>) -> Result<i32, std::io::Error> {
    let cat = enumerate_vital_pmcs(g, k);
    let sets: Vec<Vec<usize>> = cat.omegas().map(|o| ctx.set(o)).collect();
    match ctx.emit {
        Emit::Json => ctx.json(&serde_json::json!({ "k": k, "pmcs": sets }))?,
        Emit::Text => {
            let mut s = String::new();
            for set in sets {
                let line: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                s.push_str(&line.join(" "));
                s.push('\n');
            }
            ctx.text(&s)?;
        }
    }
    Ok(EXIT_YES)
}

fn chordal_cmd(g: &Graph, ctx: &mut Ctx<'_>) -> Result<i32, std::io::Error> {
    let cycle = find_chordless_cycle(g);
    let labels: Option<Vec<usize>> = cycle.map(|c| c.into_iter().map(|v| ctx.label(v)).collect());
    match ctx.emit {
        Emit::Json => ctx.json(&serde_json::json!({
            "chordal": labels.is_none(),
            "cycle": labels,
        }))?,
        Emit::Text => match &labels {
            None => ctx.text("chordal\n")?,
            Some(c) => {
                let c: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                ctx.text(&format!("not chordal: {}\n", c.join(" ")))?
            }
        },
    }
    Ok(if labels.is_none() { EXIT_YES } else { EXIT_NO })
}

fn triangulate_cmd(g: &Graph, ctx: &mut Ctx<'_>) -> Result<i32, std::io::Error> {
    let t = minimal_triangulation(g);
    let fill: Vec<[usize; 2]> = t.fill.iter().map(|e| ctx.pair(e)).collect();
    match ctx.emit {
        Emit::Json => ctx.json(&serde_json::json!({ "size": fill.len(), "fill": fill }))?,
        Emit::Text => {
            let mut s = format!("{}\n", fill.len());
            for [u, v] in &fill {
                s.push_str(&format!("{u} {v}\n"));
            }
            ctx.text(&s)?;
        }
    }
    Ok(EXIT_YES)
}

fn oracle_cmd(k: Option<usize>, g: &Graph, ctx: &mut Ctx<'_>) -> Outcome {
    let mfi = oracle_mfi(g).map_err(|e| Failure::Usage(e.to_string()))?;
    let io = |e: std::io::Error| Failure::Usage(e.to_string());
    match ctx.emit {
        Emit::Json => ctx.json(&serde_json::json!({ "mfi": mfi })).map_err(io)?,
        Emit::Text => ctx.text(&format!("{mfi}\n")).map_err(io)?,
    }
    Ok(match k {
        Some(k) if mfi > k => EXIT_NO,
        _ => EXIT_YES,
    })
}

/// Random connected graph: a random tree plus independent extra edges.
pub fn random_connected(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push(EdgePair::new(v, rng.gen_range(0..v)));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(EdgePair::new(u, v));
            }
        }
    }
    Graph::empty(n).with_edges(edges)
}

fn selftest(count: usize, seed: u64, max_n: usize, out: &mut dyn Write) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_n = max_n.clamp(3, 12);
    let mut bad = 0;
    for i in 0..count {
        let n = rng.gen_range(3..=max_n);
        let p = rng.gen_range(0.1..0.6);
        let g = random_connected(&mut rng, n, p);
        let k = rng.gen_range(0..=4);
        let want = oracle_mfi(&g).map_err(|e| Failure::Usage(e.to_string()))?;
        let got = solve_with_stats(&g, k).map(|(s, _)| s.map(|s| s.size()));
        let ok = match &got {
            Ok(Some(size)) => want <= k && *size == want,
            Ok(None) => want > k,
            Err(_) => false,
        };
        if !ok {
            bad += 1;
            let _ = writeln!(
                out,
                "mismatch #{i}: n={n} k={k} oracle={want} solver={got:?}"
            );
        }
    }
    let _ = writeln!(out, "{} of {count} agree", count - bad);
    Ok(if bad == 0 { EXIT_YES } else { EXIT_VERIFY })
}
