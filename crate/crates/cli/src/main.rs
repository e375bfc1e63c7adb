mod input;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hamlab::closure::{classify_closure, closure};
use hamlab::families::{deletion_budget, FamilyInstance, FamilyKind, FamilyParams, Tier};
use hamlab::graph::graph6;
use hamlab::hamiltonicity::{has_hamilton_cycle, has_hamilton_path, is_k_edge_hamiltonian, is_k_hamiltonian};
use hamlab::spectral::{adjacency_radius, q_radius, PerronPair};
use hamlab::verifier::{verify, CorpusSpec, TheoremId};

use input::{read_graphs, read_json_graphs, Sink};

/// Exact Hamiltonicity deciders, Perron spectra and theorem checks for the
/// extremal families H(n,k,δ) and L(n,k,δ).
#[derive(Parser)]
#[command(name = "hamlab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a family graph or seeded family members as graph6.
    Gen(GenArgs),
    /// Adjacency and signless Laplacian spectral radii, one JSON record per graph.
    Spectra(SpectraArgs),
    /// Run one decider, one JSON record per graph.
    Check(CheckArgs),
    /// s-closure of each graph as graph6, with diagnostics in a sidecar.
    Closure(ClosureArgs),
    /// Run a registered check over a parameter grid and write the report.
    Verify(VerifyArgs),
    /// Convert between graph6 lines and JSON adjacency lists.
    Convert(ConvertArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Family: h or l.
    kind: FamilyKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long)]
    delta: usize,
    /// Sample members with deletions inside Y∪Z: 1 (at most the budget) or 2 (budget + 1).
    #[arg(long)]
    tier: Option<Tier>,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where the JSON sidecar goes (default: stderr).
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct SpectraArgs {
    /// graph6 file; stdin when omitted or "-".
    input: Option<PathBuf>,
    /// Include the max-normalised Perron vectors.
    #[arg(long)]
    vectors: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Ham,
    KHam,
    KEdgeHam,
    Traceable,
}

#[derive(Args)]
struct CheckArgs {
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Ham)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    k: usize,
}

#[derive(Args)]
#[command(group(ArgGroup::new("threshold").required(true).args(["s", "k"])))]
struct ClosureArgs {
    input: Option<PathBuf>,
    /// Degree-sum threshold.
    #[arg(long)]
    s: Option<usize>,
    /// Use s = n + k.
    #[arg(long)]
    k: Option<usize>,
    /// With --k, also classify the closure against δ.
    #[arg(long, requires = "k")]
    delta: Option<usize>,
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    theorem: TheoremId,
    /// Order range A..B (inclusive) or a single value.
    #[arg(long)]
    n: String,
    #[arg(long, default_value = "0")]
    k: String,
    /// Defaults to the smallest δ the check accepts for each (n, k).
    #[arg(long)]
    delta: Option<String>,
    /// Corpus items per cell; 0 selects the per-check default.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; HAMLAB_THREADS takes precedence.
    #[arg(long)]
    threads: Option<usize>,
    /// Report JSON path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-cell CSV summary path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

#[derive(Args)]
struct ConvertArgs {
    input: Option<PathBuf>,
    /// Output format; the input is the other one.
    #[arg(long, value_enum)]
    to: Format,
}

fn after_help() -> String {
    let mut s = String::from("Theorem tags for `verify --theorem`:\n");
    for t in TheoremId::ALL {
        s.push_str(&format!("  {:<13} {}\n", t.tag(), t.about()));
    }
    s.push_str(
        "\nExit codes:\n  0  success (verify: no violations)\n  1  usage, input or I/O error\n  2  verify found violations\n  3  verify found vacuous cells (no graph met the hypotheses)\n",
    );
    s
}

fn main() -> ExitCode {
    let cmd = Cli::command().after_help(after_help());
    let cli = match cmd.try_get_matches().and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.cmd {
        Cmd::Gen(a) => gen(a, &mut out),
        Cmd::Spectra(a) => spectra(a, &mut out),
        Cmd::Check(a) => check(a, &mut out),
        Cmd::Closure(a) => closure_cmd(a, &mut out),
        Cmd::Verify(a) => verify_cmd(a, &mut out),
        Cmd::Convert(a) => convert(a, &mut out),
    }
}

fn gen(a: GenArgs, out: &mut impl Write) -> Result<u8> {
    let p = FamilyParams::new(a.n, a.k, a.delta)?;
    let inst = FamilyInstance::new(p, a.kind)?;
    let deletions = match a.tier {
        None => vec![Vec::new()],
        Some(t) => hamlab::families::sample_deletions(&inst, t, a.count, a.seed)?,
    };
    let base = inst.dense();
    let mut members = Vec::new();
    for del in deletions {
        let mut g = base.clone();
        for &(u, v) in &del {
            g.remove_edge(u, v);
        }
        let line = graph6::encode(&g);
        writeln!(out, "{line}")?;
        members.push(json!({ "graph6": line, "deleted": del }));
    }
    let sidecar = json!({
        "kind": inst.kind,
        "params": p,
        "partition": inst.partition,
        "edges": inst.edge_count(),
        "budget": deletion_budget(&p, a.kind),
        "e1Size": inst.e1().len(),
        "tier": a.tier.map(|t| if t == Tier::One { 1 } else { 2 }),
        "seed": a.seed,
        "members": members,
    });
    let mut side = Sink::open(a.sidecar.as_deref())?;
    side.line(&serde_json::to_string_pretty(&sidecar)?)?;
    Ok(0)
}

fn pair_json(p: &PerronPair<f64>, vectors: bool) -> serde_json::Value {
    let mut v = json!({ "radius": p.radius, "residual": p.residual, "iterations": p.iterations, "method": p.method });
    if vectors {
        v["vector"] = json!(p.vector);
    }
    v
}

fn spectra(a: SpectraArgs, out: &mut impl Write) -> Result<u8> {
    for (line, g) in read_graphs(a.input.as_deref())? {
        let lambda = adjacency_radius(&g).with_context(|| format!("line {line}"))?;
        let q = q_radius(&g).with_context(|| format!("line {line}"))?;
        let rec = json!({
            "line": line,
            "graph6": graph6::encode(&g),
            "order": g.order(),
            "size": g.size(),
            "lambda": pair_json(&lambda, a.vectors),
            "q": pair_json(&q, a.vectors),
        });
        writeln!(out, "{rec}")?;
    }
    Ok(0)
}

fn check(a: CheckArgs, out: &mut impl Write) -> Result<u8> {
    let mode = Mode::to_possible_value(&a.mode).expect("no skipped variants").get_name().to_string();
    for (line, g) in read_graphs(a.input.as_deref())? {
        let result = match a.mode {
            Mode::Ham => has_hamilton_cycle(&g),
            Mode::KHam => is_k_hamiltonian(&g, a.k).with_context(|| format!("line {line}"))?,
            Mode::KEdgeHam => is_k_edge_hamiltonian(&g, a.k),
            Mode::Traceable => has_hamilton_path(&g).with_context(|| format!("line {line}"))?,
        };
        let rec = json!({ "line": line, "graph6": graph6::encode(&g), "mode": mode, "k": a.k, "result": result });
        writeln!(out, "{rec}")?;
    }
    Ok(0)
}

fn closure_cmd(a: ClosureArgs, out: &mut impl Write) -> Result<u8> {
    let mut side = Sink::open(a.sidecar.as_deref())?;
    for (line, g) in read_graphs(a.input.as_deref())? {
        let s = a.s.unwrap_or_else(|| g.order() + a.k.unwrap_or(0));
        let cl = closure(&g, s);
        writeln!(out, "{}", graph6::encode(&cl))?;
        let added: Vec<(usize, usize)> = cl.edges().into_iter().filter(|&(u, v)| !g.is_adjacent(u, v)).collect();
        let mut rec = json!({ "line": line, "input": graph6::encode(&g), "s": s, "closure": graph6::encode(&cl), "addedEdges": added });
        if let (Some(k), Some(delta)) = (a.k, a.delta) {
            match classify_closure(&g, k, delta) {
                Ok(d) => rec["diagnostic"] = serde_json::to_value(d)?,
                Err(e) => rec["diagnosticError"] = json!(e.to_string()),
            }
        }
        side.line(&rec.to_string())?;
    }
    Ok(0)
}

/// `A..B` (inclusive) or `A`.
fn parse_range(s: &str, what: &str) -> Result<Vec<usize>> {
    let parse = |t: &str| t.trim().parse::<usize>().with_context(|| format!("--{what}: bad value {t:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        bail!("--{what}: empty range {s:?}");
    }
    Ok((lo..=hi).collect())
}

fn build_grid(a: &VerifyArgs) -> Result<(Vec<FamilyParams>, usize)> {
    let ns = parse_range(&a.n, "n")?;
    let ks = parse_range(&a.k, "k")?;
    let deltas = a.delta.as_deref().map(|d| parse_range(d, "delta")).transpose()?;
    let valid = |n: usize, k: usize, d: usize| FamilyParams::new(n, k, d).ok().filter(|p| a.theorem.check_cell(p).is_ok());
    let mut grid = Vec::new();
    let mut dropped = 0;
    for &n in &ns {
        for &k in &ks {
            match &deltas {
                Some(ds) => {
                    for &d in ds {
                        match valid(n, k, d) {
                            Some(p) => grid.push(p),
                            None => dropped += 1,
                        }
                    }
                }
                None => match (k + 1..=n).find_map(|d| valid(n, k, d)) {
                    Some(p) => grid.push(p),
                    None => dropped += 1,
                },
            }
        }
    }
    if grid.is_empty() {
        bail!("no cell of the requested ranges is valid for {}", a.theorem);
    }
    Ok((grid, dropped))
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    match std::env::var("HAMLAB_THREADS") {
        Ok(v) if !v.trim().is_empty() => {
            let t: usize = v.trim().parse().with_context(|| format!("HAMLAB_THREADS={v:?}"))?;
            Ok(Some(t))
        }
        _ => Ok(flag),
    }
}

fn verify_cmd(a: VerifyArgs, out: &mut impl Write) -> Result<u8> {
    let (grid, dropped) = build_grid(&a)?;
    if dropped > 0 {
        eprintln!("skipping {dropped} cells outside the domain of {}", a.theorem);
    }
    let spec = CorpusSpec::with_samples(a.samples);
    let report = match thread_count(a.threads)? {
        Some(0) => bail!("thread count must be positive"),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()?
            .install(|| verify(a.theorem, &grid, &spec, a.seed))?,
        None => verify(a.theorem, &grid, &spec, a.seed)?,
    };
    let text = report.to_json();
    match &a.out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?,
        None => writeln!(out, "{text}")?,
    }
    if let Some(path) = &a.csv {
        fs::write(path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!(
        "{}: {} cells, corpus {}, {} violations, {} vacuous cells, {} ms",
        report.theorem,
        report.grid.len(),
        report.corpus_size,
        report.violations.len(),
        report.vacuous_cells.len(),
        report.elapsed_ms
    );
    Ok(report.exit_code() as u8)
}

fn convert(a: ConvertArgs, out: &mut impl Write) -> Result<u8> {
    match a.to {
        Format::Json => {
            for (_, g) in read_graphs(a.input.as_deref())? {
                let adjacency: Vec<Vec<usize>> = (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect();
                writeln!(out, "{}", json!({ "order": g.order(), "adjacency": adjacency }))?;
            }
        }
        Format::Graph6 => {
            for (_, g) in read_json_graphs(a.input.as_deref())? {
                writeln!(out, "{}", graph6::encode(&g))?;
            }
        }
    }
    Ok(0)
}
